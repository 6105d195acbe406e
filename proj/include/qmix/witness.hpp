// Measurement observable and its Heisenberg-picture pullback. The trained
// circuits act as entanglement witnesses through U^dag O U.

#pragma once

#include "qmix/circuit.hpp"
#include "qmix/types.hpp"

namespace qmix {

// Z on one qubit, identity elsewhere. Diagonal with eigenvalues +-1.
struct ObservableSpec {
  int width = 0;
  int z_qubit = 0;

  // Z on the last qubit of an n_target-qubit register embedded in a
  // register of the given width.
  static ObservableSpec last_target_z(int width, int n_target);

  void check() const;

  // Diagonal entries (+1 / -1) in basis order.
  Eigen::VectorXd diagonal() const;
  Eigen::MatrixXcd matrix() const;
};

// U(theta)^dag O U(theta) as a dense Hermitian matrix. For every state rho
// of matching width, Tr[rho * result] equals Tr[U rho U^dag O].
Eigen::MatrixXcd effective_witness(const Circuit& circuit,
                                   const ParamVector& params,
                                   const ObservableSpec& obs);

}  // namespace qmix
