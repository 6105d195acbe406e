// Circuit execution on pure states and density matrices, plus exact
// ancilla measurement statistics. Measurement is never sampled inside the
// library proper; sample_ancilla is a seeded demonstration wrapper.

#pragma once

#include <map>

#include "qmix/circuit.hpp"
#include "qmix/types.hpp"

namespace qmix {

// 2x2 matrix of a (possibly controlled) rotation gate.
Eigen::Matrix2cd rotation_gate_matrix(GateKind k, double angle);

// Low-level kernels on raw amplitude storage (length 2^width). `adjoint`
// applies the inverse gate (rotations negate their angle; the permutation
// and phase gates are self-inverse).
void apply_gate_amps(cplx* amps, int width, const Gate& g, double angle,
                     bool adjoint = false);
void apply_circuit_amps(cplx* amps, int width, const Circuit& c,
                        const ParamVector& params);

// Single-gate matrix conjugation: M -> G M G^dag, or G^dag M G when
// `heisenberg` is set.
void conjugate_matrix_gate(Eigen::MatrixXcd& m, int width, const Gate& g,
                           double angle, bool heisenberg = false);

// Whole-circuit conjugation. heisenberg=false evolves a density matrix
// forward (U M U^dag); heisenberg=true pulls an observable back through
// the circuit (U^dag M U).
void conjugate_matrix(Eigen::MatrixXcd& m, int width, const Circuit& c,
                      const ParamVector& params, bool heisenberg = false);

PureState apply_to_pure(const Circuit& c, const ParamVector& params,
                        const PureState& psi);

DensityMatrix apply_to_density(const Circuit& c, const ParamVector& params,
                               const DensityMatrix& rho);

// Exact outcome distribution over the listed qubits after running the
// circuit: key bit order follows the listed order, first qubit most
// significant. All 2^|ancillas| keys are present.
std::map<std::uint64_t, double> ancilla_distribution(const Circuit& c,
                                                     const ParamVector& params,
                                                     const PureState& input,
                                                     const QubitSet& ancillas);

// Seeded multinomial draw from ancilla_distribution (demo output only).
std::map<std::uint64_t, std::uint64_t> sample_ancilla(
    const Circuit& c, const ParamVector& params, const PureState& input,
    const QubitSet& ancillas, std::uint64_t shots, std::uint64_t seed);

}  // namespace qmix
