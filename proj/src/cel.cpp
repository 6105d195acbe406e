#include "qmix/cel.hpp"

#include "qmix/linalg.hpp"

#include <cmath>

namespace qmix {

namespace {

void check_cel_width(int n) {
  if (n < 1 || n > kMaxDensityQubits) {
    throw std::invalid_argument(
        "CEL: power-set enumeration supported up to 8 qubits");
  }
}

}  // namespace

double subset_purity_sum(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  check_cel_width(n);
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < dim_of(n); ++mask) {
    if (mask == 0) {
      sum += 1.0;  // rho_empty := 1
    } else if (mask + 1 == dim_of(n)) {
      sum += purity(rho);
    } else {
      sum += purity(partial_trace(rho, QubitSet::from_mask(mask, n)));
    }
  }
  return sum;
}

double subset_purity_sum(const PureState& psi) {
  const int n = psi.n_qubits();
  check_cel_width(n);
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < dim_of(n); ++mask) {
    sum += marginal_purity(psi, QubitSet::from_mask(mask, n));
  }
  return sum;
}

double ce_pure(const PureState& psi) {
  psi.check_normalized(1e-10);
  return 1.0 - subset_purity_sum(psi) / double(dim_of(psi.n_qubits()));
}

CelReport cel_mixed(const DensityMatrix& rho) {
  CelReport r;
  r.n_qubits = rho.n_qubits();
  r.purity = purity(rho);
  r.subset_purity_sum = subset_purity_sum(rho);
  r.value = r.reconstruct();
  return r;
}

namespace {

void check_family_args(int n, double p) {
  if (n < 2) throw std::domain_error("noisy family: need n >= 2");
  if (p < 0.0 || p > 1.0) {
    throw std::domain_error("noisy family: p must lie in [0, 1]");
  }
}

}  // namespace

double cel_ghz_noisy(int n, double p) {
  check_family_args(n, p);
  const double d = double(dim_of(n));
  return p * p / 2.0 - 1.0 / d +
         (1.0 - p * p) *
             (3.0 / d - 1.0 / (d * d) - std::pow(0.75, double(n)));
}

double cel_w_noisy(int n, double p) {
  check_family_args(n, p);
  const double d = double(dim_of(n));
  return (double(n) - 1.0) * p * p / (2.0 * double(n)) +
         (1.0 - p * p) *
             (2.0 / d - 1.0 / (d * d) - std::pow(0.75, double(n)));
}

double ghz_sep_threshold(int n) {
  if (n < 2) throw std::domain_error("ghz_sep_threshold: need n >= 2");
  return 1.0 / (1.0 + double(dim_of(n - 1)));
}

double w_sep_threshold(int n) {
  if (n < 2) throw std::domain_error("w_sep_threshold: need n >= 2");
  return double(n) / (double(n) + double(dim_of(n)));
}

double continuity_bound(int n, double trace_dist) {
  if (n < 1) throw std::domain_error("continuity_bound: need n >= 1");
  if (trace_dist < 0.0) {
    throw std::domain_error("continuity_bound: distance must be >= 0");
  }
  return (1.0 / double(dim_of(n)) + 1.0) * std::sqrt(2.0) * trace_dist;
}

}  // namespace qmix
