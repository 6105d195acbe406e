// Named state factories.

#pragma once

#include "qmix/types.hpp"

namespace qmix {

PureState basis_state(int n_qubits, std::uint64_t index);
PureState ghz_state(int n_qubits);
// Equal superposition of the n single-excitation basis states.
PureState w_state(int n_qubits);

DensityMatrix maximally_mixed(int n_qubits);

// p * |GHZ_n><GHZ_n| + (1 - p)/2^n * I, and the W analogue.
DensityMatrix noisy_ghz_state(int n_qubits, double p);
DensityMatrix noisy_w_state(int n_qubits, double p);

}  // namespace qmix
