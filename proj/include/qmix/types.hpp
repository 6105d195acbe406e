// Core value types for multi-qubit simulation: pure states, density
// matrices, and qubit index sets.
//
// Index convention used across the whole library: qubit 0 is the leftmost
// tensor factor, i.e. the most significant bit of a basis index. A basis
// ket |q0 q1 ... q_{n-1}> has index q0*2^{n-1} + ... + q_{n-1}.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qmix {

using cplx = std::complex<double>;

// Dense density matrices are capped at 8 qubits (64k entries), pure
// states at 20 qubits (1M amplitudes).
inline constexpr int kMaxDensityQubits = 8;
inline constexpr int kMaxPureQubits = 20;

inline std::size_t dim_of(int n_qubits) { return std::size_t(1) << n_qubits; }

// Bit position of qubit q inside a basis index of an n-qubit register.
inline int bit_of(int n_qubits, int qubit) { return n_qubits - 1 - qubit; }

class PureState {
 public:
  PureState(int n_qubits, Eigen::VectorXcd amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t(amp_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }

  double norm_error() const;     // | ||psi||^2 - 1 |
  void check_normalized(double tol = 1e-12) const;

 private:
  int n_qubits_;
  Eigen::VectorXcd amp_;
};

class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, Eigen::MatrixXcd entries);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t(m_.rows()); }
  const Eigen::MatrixXcd& entries() const { return m_; }
  Eigen::MatrixXcd& entries() { return m_; }

  // Full physicality check: Hermitian within hermit_tol (max element
  // deviation), unit trace within trace_tol, and min eigenvalue >= -psd_tol.
  // Operations trust their inputs; this is applied at API boundaries
  // (file loads, CLI input) and throughout the tests.
  void validate(double hermit_tol = 1e-10, double trace_tol = 1e-10,
                double psd_tol = 1e-9) const;

 private:
  int n_qubits_;
  Eigen::MatrixXcd m_;
};

// Strictly increasing, duplicate-free set of qubit positions.
struct QubitSet {
  std::vector<int> indices;

  QubitSet() = default;
  explicit QubitSet(std::vector<int> idx);

  int size() const { return int(indices.size()); }
  static QubitSet full(int n_qubits);
  static QubitSet from_mask(std::uint64_t mask, int n_qubits);
  QubitSet complement(int n_qubits) const;
  void check_range(int n_qubits) const;
};

}  // namespace qmix
