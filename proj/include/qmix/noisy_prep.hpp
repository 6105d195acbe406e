// Preparation circuits for the white-noise GHZ and W families. Each
// circuit carries one free parameter phi (slot 0) with p = cos^2(phi/2);
// tracing the prep ancillas out of the output leaves
// p |state><state| + (1-p) I/2^n exactly.

#pragma once

#include "qmix/circuit.hpp"

namespace qmix {

// Width 2n+1. Qubit 0 is the branch control, qubits [1, n] a coin
// register, the system sits on [n+1, 2n]. In the noise branch the coins
// become |+>, CNOT-fan into the system, and a single CZ clears the
// surviving GHZ coherence, which makes the reduced state exactly maximally
// mixed.
Circuit build_noisy_ghz_prep(int n);

// Width 3n+1. Qubit 0 is the branch control; [1, n] and [n+1, 2n] hold n
// Bell pairs; the system sits on [2n+1, 3n]. The W state is built by a
// rotation cascade, and the noise branch controlled-swaps the system with
// fresh Bell-pair halves. For n = 2 the cascade's controlled rotation is
// RY(pi/2), i.e. the matrix [[sqrt(1/2), -sqrt(1/2)], [sqrt(1/2), sqrt(1/2)]].
Circuit build_noisy_w_prep(int n);

// Number of leading qubits to trace out of each prep circuit's output.
int noisy_ghz_prep_ancillas(int n);
int noisy_w_prep_ancillas(int n);

}  // namespace qmix
