#include "qmix/types.hpp"

#include <Eigen/Eigenvalues>

namespace qmix {

PureState::PureState(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amp_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > kMaxPureQubits) {
    throw std::invalid_argument("PureState: qubit count out of range");
  }
  if (std::size_t(amp_.size()) != dim_of(n_qubits)) {
    throw std::invalid_argument("PureState: amplitude vector has wrong length");
  }
}

double PureState::norm_error() const { return std::abs(amp_.squaredNorm() - 1.0); }

void PureState::check_normalized(double tol) const {
  if (norm_error() > tol) {
    throw std::invalid_argument("PureState: not normalized");
  }
}

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd entries)
    : n_qubits_(n_qubits), m_(std::move(entries)) {
  if (n_qubits < 0 || n_qubits > kMaxDensityQubits) {
    throw std::invalid_argument("DensityMatrix: qubit count out of range");
  }
  const auto d = Eigen::Index(dim_of(n_qubits));
  if (m_.rows() != d || m_.cols() != d) {
    throw std::invalid_argument("DensityMatrix: entries have wrong shape");
  }
}

void DensityMatrix::validate(double hermit_tol, double trace_tol,
                             double psd_tol) const {
  const double herm_dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > hermit_tol) {
    throw std::runtime_error("DensityMatrix: not Hermitian");
  }
  if (std::abs(m_.trace() - cplx(1.0, 0.0)) > trace_tol) {
    throw std::runtime_error("DensityMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tol) {
    throw std::runtime_error("DensityMatrix: not positive semidefinite");
  }
}

QubitSet::QubitSet(std::vector<int> idx) : indices(std::move(idx)) {
  for (std::size_t i = 0; i + 1 < indices.size(); ++i) {
    if (indices[i] >= indices[i + 1]) {
      throw std::invalid_argument("QubitSet: indices must strictly increase");
    }
  }
  if (!indices.empty() && indices.front() < 0) {
    throw std::invalid_argument("QubitSet: negative index");
  }
}

QubitSet QubitSet::full(int n_qubits) {
  std::vector<int> idx(n_qubits);
  for (int i = 0; i < n_qubits; ++i) idx[i] = i;
  return QubitSet(std::move(idx));
}

QubitSet QubitSet::from_mask(std::uint64_t mask, int n_qubits) {
  std::vector<int> idx;
  for (int q = 0; q < n_qubits; ++q) {
    if (mask & (std::uint64_t(1) << q)) idx.push_back(q);
  }
  return QubitSet(std::move(idx));
}

QubitSet QubitSet::complement(int n_qubits) const {
  std::vector<int> idx;
  std::size_t k = 0;
  for (int q = 0; q < n_qubits; ++q) {
    if (k < indices.size() && indices[k] == q) {
      ++k;
    } else {
      idx.push_back(q);
    }
  }
  return QubitSet(std::move(idx));
}

void QubitSet::check_range(int n_qubits) const {
  for (int q : indices) {
    if (q < 0 || q >= n_qubits) {
      throw std::out_of_range("QubitSet: index out of range");
    }
  }
}

}  // namespace qmix
