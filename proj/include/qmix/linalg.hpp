// Composition, reduction and distance operations on states.

#pragma once

#include "qmix/types.hpp"

namespace qmix {

// Kronecker product; `a` occupies the leading (leftmost) qubits.
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_product(const PureState& a, const PureState& b);

// Reduced state on `keep` (order preserved). keep = full set returns rho
// unchanged, keep = {} the 1x1 matrix [1].
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSet& keep);

// Reduced state of |psi><psi| on `keep`, computed from the amplitudes
// directly (never materializes the full density matrix).
DensityMatrix reduce_pure(const PureState& psi, const QubitSet& keep);

// Tr[rho^2]. For Hermitian rho this equals the squared Frobenius norm.
double purity(const DensityMatrix& rho);

// Purity of the reduced state on `keep` of a pure state. Uses the smaller
// of keep/complement (their reduced purities coincide for pure states).
double marginal_purity(const PureState& psi, const QubitSet& keep);

// (1/2) sum |eigenvalues(rho - sigma)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

DensityMatrix pure_to_density(const PureState& psi);

// Purification of rho: a pure state on (ancilla + system) qubits, ancillas
// occupying the leading indices, whose partial trace over the ancillas
// reproduces rho. Uses ceil(log2(rank)) ancillas; a rank-1 input purifies
// to itself (zero ancillas).
struct Purification {
  int n_ancilla;
  PureState state;
};
Purification purify(const DensityMatrix& rho, double rank_tol = 1e-12);

}  // namespace qmix
