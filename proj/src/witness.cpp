#include "qmix/witness.hpp"

#include "qmix/simulate.hpp"

namespace qmix {

ObservableSpec ObservableSpec::last_target_z(int width, int n_target) {
  if (n_target < 1 || n_target > width) {
    throw std::invalid_argument("ObservableSpec: bad target register");
  }
  return ObservableSpec{width, n_target - 1};
}

void ObservableSpec::check() const {
  if (width < 1 || z_qubit < 0 || z_qubit >= width) {
    throw std::invalid_argument("ObservableSpec: qubit out of range");
  }
}

Eigen::VectorXd ObservableSpec::diagonal() const {
  check();
  const std::uint64_t d = dim_of(width);
  const std::uint64_t zbit = std::uint64_t(1) << bit_of(width, z_qubit);
  Eigen::VectorXd diag(static_cast<Eigen::Index>(d));
  for (std::uint64_t i = 0; i < d; ++i) {
    diag(Eigen::Index(i)) = (i & zbit) ? -1.0 : 1.0;
  }
  return diag;
}

Eigen::MatrixXcd ObservableSpec::matrix() const {
  return diagonal().cast<cplx>().asDiagonal();
}

Eigen::MatrixXcd effective_witness(const Circuit& circuit,
                                   const ParamVector& params,
                                   const ObservableSpec& obs) {
  if (circuit.width != obs.width) {
    throw std::invalid_argument("effective_witness: width mismatch");
  }
  circuit.check_params(params);
  Eigen::MatrixXcd w = obs.matrix();
  conjugate_matrix(w, circuit.width, circuit, params, /*heisenberg=*/true);
  return w;
}

}  // namespace qmix
