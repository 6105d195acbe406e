// Concentratable entanglement for pure states and its computable lower
// bound (CEL) for mixed states, plus the closed-form curves and
// separability thresholds for the white-noise GHZ/W families.

#pragma once

#include "qmix/types.hpp"

namespace qmix {

// One CEL evaluation with the quantities it is assembled from.
//
//   value = purity + (1 - purity)/2^n - subset_purity_sum/2^n
//
// where subset_purity_sum runs over the full power set of qubit indices,
// the empty set contributing 1 and the full set contributing Tr[rho^2].
struct CelReport {
  double value = 0.0;
  int n_qubits = 0;
  double purity = 0.0;
  double subset_purity_sum = 0.0;

  double reconstruct() const {
    const double d = double(dim_of(n_qubits));
    return purity + (1.0 - purity) / d - subset_purity_sum / d;
  }
};

// Sum of Tr[rho_alpha^2] over all 2^n subsets, enumerated by increasing
// bitmask (mask bit q selects qubit q).
double subset_purity_sum(const DensityMatrix& rho);
double subset_purity_sum(const PureState& psi);

// Concentratable entanglement 1 - (1/2^n) * subset_purity_sum of a
// normalized pure state; lies in [0, 1/2]. Requires n <= 8.
double ce_pure(const PureState& psi);

// CEL of a mixed state; coincides with ce_pure on pure inputs.
CelReport cel_mixed(const DensityMatrix& rho);

// Closed forms for the white-noise GHZ/W families (p in [0, 1], n >= 2).
double cel_ghz_noisy(int n_qubits, double p);
double cel_w_noisy(int n_qubits, double p);

// Exact separability thresholds: noisy GHZ is fully separable iff
// p <= 1/(1 + 2^{n-1}); noisy W iff p <= n/(n + 2^n).
double ghz_sep_threshold(int n_qubits);
double w_sep_threshold(int n_qubits);

// Continuity bound: states d-close in trace distance have CEL values
// within (1/2^n + 1) * sqrt(2) * d.
double continuity_bound(int n_qubits, double trace_dist);

}  // namespace qmix
