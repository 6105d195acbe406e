#include "qmix/noisy_prep.hpp"

#include <cmath>

namespace qmix {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_prep_n(int n, int width) {
  if (n < 2) throw std::invalid_argument("noisy prep: need n >= 2");
  if (width > kMaxPureQubits) {
    throw std::invalid_argument("noisy prep: width exceeds pure-state cap");
  }
}

// Excitation cascade for W_n on qubits sys[0..n-1]: after X on sys[0],
// step k leaves amplitude 1/sqrt(n) on the k-th single-excitation string
// and passes the rest along.
void emit_w_cascade(Circuit& c, const std::vector<int>& sys) {
  const int n = int(sys.size());
  c.gates.push_back(Gate::x(sys[0]));
  for (int k = 1; k < n; ++k) {
    const double theta = 2.0 * std::acos(std::sqrt(1.0 / double(n - k + 1)));
    c.gates.push_back(Gate::controlled_rotation_const(
        GateKind::CRY, sys[std::size_t(k - 1)], sys[std::size_t(k)], theta));
    c.gates.push_back(Gate::cnot(sys[std::size_t(k)], sys[std::size_t(k - 1)]));
  }
}

}  // namespace

Circuit build_noisy_ghz_prep(int n) {
  check_prep_n(n, 2 * n + 1);
  Circuit c;
  c.width = 2 * n + 1;
  c.n_params = 1;

  const int control = 0;
  auto coin = [&](int k) { return 1 + k; };
  auto sys = [&](int k) { return 1 + n + k; };

  // GHZ on the system register.
  c.gates.push_back(Gate::h(sys(0)));
  for (int k = 1; k < n; ++k) c.gates.push_back(Gate::cnot(sys(0), sys(k)));

  // Branch split: p = cos^2(phi/2) stays in the signal branch.
  c.gates.push_back(Gate::rotation(GateKind::RY, control, 0));

  // Noise branch: coins to |+>, CNOT fan, one CZ phase patch.
  for (int k = 0; k < n; ++k) {
    c.gates.push_back(Gate::controlled_rotation_const(GateKind::CRY, control,
                                                      coin(k), kPi / 2.0));
  }
  for (int k = 0; k < n; ++k) c.gates.push_back(Gate::cnot(coin(k), sys(k)));
  c.gates.push_back(Gate::cz(coin(0), sys(0)));

  c.validate();
  return c;
}

Circuit build_noisy_w_prep(int n) {
  check_prep_n(n, 3 * n + 1);
  Circuit c;
  c.width = 3 * n + 1;
  c.n_params = 1;

  const int control = 0;
  auto bell_a = [&](int k) { return 1 + k; };
  auto bell_b = [&](int k) { return 1 + n + k; };

  std::vector<int> sys(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) sys[std::size_t(k)] = 1 + 2 * n + k;

  c.gates.push_back(Gate::rotation(GateKind::RY, control, 0));
  emit_w_cascade(c, sys);
  for (int k = 0; k < n; ++k) {
    c.gates.push_back(Gate::h(bell_a(k)));
    c.gates.push_back(Gate::cnot(bell_a(k), bell_b(k)));
  }
  // Noise branch: swap in the Bell halves; their marginals are I/2 each.
  for (int k = 0; k < n; ++k) {
    c.gates.push_back(Gate::cswap(control, bell_a(k), sys[std::size_t(k)]));
  }

  c.validate();
  return c;
}

int noisy_ghz_prep_ancillas(int n) { return n + 1; }
int noisy_w_prep_ancillas(int n) { return 2 * n + 1; }

}  // namespace qmix
