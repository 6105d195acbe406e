#include "qmix/states.hpp"


#include <cmath>

namespace qmix {

PureState basis_state(int n_qubits, std::uint64_t index) {
  if (index >= dim_of(n_qubits)) {
    throw std::out_of_range("basis_state: index out of range");
  }
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index(dim_of(n_qubits)));
  amp(Eigen::Index(index)) = cplx{1.0, 0.0};
  return PureState(n_qubits, std::move(amp));
}

PureState ghz_state(int n_qubits) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index(dim_of(n_qubits)));
  const double r = 1.0 / std::sqrt(2.0);
  amp(0) = cplx{r, 0.0};
  amp(Eigen::Index(dim_of(n_qubits) - 1)) = cplx{r, 0.0};
  return PureState(n_qubits, std::move(amp));
}

PureState w_state(int n_qubits) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index(dim_of(n_qubits)));
  const double r = 1.0 / std::sqrt(double(n_qubits));
  for (int q = 0; q < n_qubits; ++q) {
    amp(Eigen::Index(std::uint64_t(1) << bit_of(n_qubits, q))) = cplx{r, 0.0};
  }
  return PureState(n_qubits, std::move(amp));
}

DensityMatrix maximally_mixed(int n_qubits) {
  const auto d = Eigen::Index(dim_of(n_qubits));
  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Identity(d, d) / double(dim_of(n_qubits));
  return DensityMatrix(n_qubits, std::move(m));
}

namespace {

DensityMatrix white_noise_mix(const PureState& psi, double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::domain_error("white noise weight p must lie in [0, 1]");
  }
  const int n = psi.n_qubits();
  const auto d = Eigen::Index(dim_of(n));
  Eigen::MatrixXcd m = p * (psi.amplitudes() * psi.amplitudes().adjoint());
  m += ((1.0 - p) / double(dim_of(n))) * Eigen::MatrixXcd::Identity(d, d);
  return DensityMatrix(n, std::move(m));
}

}  // namespace

DensityMatrix noisy_ghz_state(int n_qubits, double p) {
  if (n_qubits < 2) throw std::domain_error("noisy_ghz_state: need n >= 2");
  return white_noise_mix(ghz_state(n_qubits), p);
}

DensityMatrix noisy_w_state(int n_qubits, double p) {
  if (n_qubits < 2) throw std::domain_error("noisy_w_state: need n >= 2");
  return white_noise_mix(w_state(n_qubits), p);
}

}  // namespace qmix
