#include "qmix/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qmix {

namespace {

// Deposits the bits of `packed` (listed qubits, leftmost-first) into a
// full basis index of an n-qubit register.
std::uint64_t scatter_bits(std::uint64_t packed, const std::vector<int>& qubits,
                           int n_qubits) {
  std::uint64_t out = 0;
  const int k = int(qubits.size());
  for (int j = 0; j < k; ++j) {
    if ((packed >> (k - 1 - j)) & 1u) {
      out |= std::uint64_t(1) << bit_of(n_qubits, qubits[j]);
    }
  }
  return out;
}

}  // namespace

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const int n = a.n_qubits() + b.n_qubits();
  if (n > kMaxDensityQubits) {
    throw std::invalid_argument("tensor_product: result exceeds qubit cap");
  }
  const auto da = Eigen::Index(a.dim()), db = Eigen::Index(b.dim());
  Eigen::MatrixXcd out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index k = 0; k < da; ++k) {
      out.block(i * db, k * db, db, db) = a.entries()(i, k) * b.entries();
    }
  }
  return DensityMatrix(n, std::move(out));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  const int n = a.n_qubits() + b.n_qubits();
  if (n > kMaxPureQubits) {
    throw std::invalid_argument("tensor_product: result exceeds qubit cap");
  }
  const auto da = Eigen::Index(a.dim()), db = Eigen::Index(b.dim());
  Eigen::VectorXcd out(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
  }
  return PureState(n, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSet& keep) {
  const int n = rho.n_qubits();
  keep.check_range(n);
  const int k = keep.size();
  const QubitSet traced = keep.complement(n);
  const std::uint64_t dk = std::uint64_t(1) << k;
  const std::uint64_t dt = std::uint64_t(1) << (n - k);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Eigen::Index(dk), Eigen::Index(dk));

  std::vector<std::uint64_t> keep_off(dk), tr_off(dt);
  for (std::uint64_t r = 0; r < dk; ++r) keep_off[r] = scatter_bits(r, keep.indices, n);
  for (std::uint64_t t = 0; t < dt; ++t) tr_off[t] = scatter_bits(t, traced.indices, n);

  for (std::uint64_t r = 0; r < dk; ++r) {
    for (std::uint64_t c = 0; c < dk; ++c) {
      cplx acc{0.0, 0.0};
      for (std::uint64_t t = 0; t < dt; ++t) {
        acc += rho.entries()(Eigen::Index(keep_off[r] | tr_off[t]),
                             Eigen::Index(keep_off[c] | tr_off[t]));
      }
      out(Eigen::Index(r), Eigen::Index(c)) = acc;
    }
  }
  return DensityMatrix(k, std::move(out));
}

DensityMatrix reduce_pure(const PureState& psi, const QubitSet& keep) {
  const int n = psi.n_qubits();
  keep.check_range(n);
  const int k = keep.size();
  if (k > kMaxDensityQubits) {
    throw std::invalid_argument("reduce_pure: reduced state exceeds qubit cap");
  }
  const QubitSet traced = keep.complement(n);
  const std::uint64_t dk = std::uint64_t(1) << k;
  const std::uint64_t dt = std::uint64_t(1) << (n - k);

  std::vector<std::uint64_t> keep_off(dk), tr_off(dt);
  for (std::uint64_t r = 0; r < dk; ++r) keep_off[r] = scatter_bits(r, keep.indices, n);
  for (std::uint64_t t = 0; t < dt; ++t) tr_off[t] = scatter_bits(t, traced.indices, n);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Eigen::Index(dk), Eigen::Index(dk));
  const auto& a = psi.amplitudes();
  for (std::uint64_t t = 0; t < dt; ++t) {
    for (std::uint64_t r = 0; r < dk; ++r) {
      const cplx ar = a(Eigen::Index(keep_off[r] | tr_off[t]));
      if (ar == cplx{0.0, 0.0}) continue;
      for (std::uint64_t c = 0; c < dk; ++c) {
        out(Eigen::Index(r), Eigen::Index(c)) +=
            ar * std::conj(a(Eigen::Index(keep_off[c] | tr_off[t])));
      }
    }
  }
  return DensityMatrix(k, std::move(out));
}

double purity(const DensityMatrix& rho) { return rho.entries().squaredNorm(); }

double marginal_purity(const PureState& psi, const QubitSet& keep) {
  const int n = psi.n_qubits();
  if (keep.size() == 0 || keep.size() == n) {
    return 1.0;  // rho_empty := 1; full set of a pure state is pure
  }
  const QubitSet comp = keep.complement(n);
  const QubitSet& side = (keep.size() <= comp.size()) ? keep : comp;
  return purity(reduce_pure(psi, side));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.n_qubits() != sigma.n_qubits()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      rho.entries() - sigma.entries(), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityMatrix pure_to_density(const PureState& psi) {
  if (psi.n_qubits() > kMaxDensityQubits) {
    throw std::invalid_argument("pure_to_density: exceeds density qubit cap");
  }
  Eigen::MatrixXcd m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix(psi.n_qubits(), std::move(m));
}

Purification purify(const DensityMatrix& rho, double rank_tol) {
  const int n = rho.n_qubits();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries());
  const auto& vals = es.eigenvalues();

  std::vector<int> kept;
  double total = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) > rank_tol) {
      kept.push_back(int(i));
      total += vals(i);
    }
  }
  if (kept.empty()) {
    throw std::invalid_argument("purify: input has no positive spectrum");
  }

  int n_anc = 0;
  while ((std::size_t(1) << n_anc) < kept.size()) ++n_anc;

  const std::uint64_t ds = std::uint64_t(1) << n;
  const std::uint64_t da = std::uint64_t(1) << n_anc;
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index(da * ds));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const double w = std::sqrt(vals(kept[r]) / total);
    amp.segment(Eigen::Index(r * ds), Eigen::Index(ds)) =
        w * es.eigenvectors().col(kept[r]);
  }
  return Purification{n_anc, PureState(n + n_anc, std::move(amp))};
}

}  // namespace qmix
