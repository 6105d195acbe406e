#include "qmix/simulate.hpp"

#include "qmix/rng.hpp"

#include <cmath>

namespace qmix {

Eigen::Matrix2cd rotation_gate_matrix(GateKind k, double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  Eigen::Matrix2cd u;
  switch (k) {
    case GateKind::RX:
    case GateKind::CRX:
      u << cplx{c, 0}, cplx{0, -s}, cplx{0, -s}, cplx{c, 0};
      break;
    case GateKind::RY:
    case GateKind::CRY:
      u << cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0};
      break;
    case GateKind::RZ:
    case GateKind::CRZ:
      u << std::exp(cplx{0, -angle / 2.0}), cplx{0, 0}, cplx{0, 0},
          std::exp(cplx{0, angle / 2.0});
      break;
    default:
      throw std::logic_error("rotation_gate_matrix: not a rotation");
  }
  return u;
}

namespace {

Eigen::Matrix2cd gate_unitary(const Gate& g, double angle, bool adjoint) {
  switch (g.kind) {
    case GateKind::H: {
      Eigen::Matrix2cd u;
      const double r = 1.0 / std::sqrt(2.0);
      u << cplx{r, 0}, cplx{r, 0}, cplx{r, 0}, cplx{-r, 0};
      return u;
    }
    case GateKind::X: {
      Eigen::Matrix2cd u;
      u << cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0};
      return u;
    }
    case GateKind::Fixed1q:
      return adjoint ? Eigen::Matrix2cd(g.fixed.adjoint()) : g.fixed;
    default:
      return rotation_gate_matrix(g.kind, adjoint ? -angle : angle);
  }
}

inline void apply_1q_masked(cplx* a, std::uint64_t dim, std::uint64_t tbit,
                            std::uint64_t ctrl_mask,
                            const Eigen::Matrix2cd& u) {
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & tbit) != 0 || (i & ctrl_mask) != ctrl_mask) continue;
    const std::uint64_t j = i | tbit;
    const cplx a0 = a[i], a1 = a[j];
    a[i] = u00 * a0 + u01 * a1;
    a[j] = u10 * a0 + u11 * a1;
  }
}

}  // namespace

void apply_gate_amps(cplx* amps, int width, const Gate& g, double angle,
                     bool adjoint) {
  const std::uint64_t dim = std::uint64_t(1) << width;
  std::uint64_t ctrl_mask = 0;
  for (int c : g.controls) ctrl_mask |= std::uint64_t(1) << bit_of(width, c);

  switch (g.kind) {
    case GateKind::CNOT: {
      const std::uint64_t tbit = std::uint64_t(1) << bit_of(width, g.targets[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & tbit) == 0 && (i & ctrl_mask) == ctrl_mask) {
          std::swap(amps[i], amps[i | tbit]);
        }
      }
      return;
    }
    case GateKind::CZ: {
      const std::uint64_t tbit = std::uint64_t(1) << bit_of(width, g.targets[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & tbit) != 0 && (i & ctrl_mask) == ctrl_mask) {
          amps[i] = -amps[i];
        }
      }
      return;
    }
    case GateKind::CSWAP: {
      const std::uint64_t b1 = std::uint64_t(1) << bit_of(width, g.targets[0]);
      const std::uint64_t b2 = std::uint64_t(1) << bit_of(width, g.targets[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & ctrl_mask) == ctrl_mask && (i & b1) != 0 && (i & b2) == 0) {
          std::swap(amps[i], amps[i ^ b1 ^ b2]);
        }
      }
      return;
    }
    default: {
      const std::uint64_t tbit = std::uint64_t(1) << bit_of(width, g.targets[0]);
      apply_1q_masked(amps, dim, tbit, ctrl_mask, gate_unitary(g, angle, adjoint));
      return;
    }
  }
}

void apply_circuit_amps(cplx* amps, int width, const Circuit& c,
                        const ParamVector& params) {
  for (const auto& g : c.gates) {
    apply_gate_amps(amps, width, g, g.angle(params));
  }
}

void conjugate_matrix_gate(Eigen::MatrixXcd& m, int width, const Gate& g,
                           double angle, bool heisenberg) {
  // m -> G m G^dag, done as two column-space passes:
  //   A = G m;  result = (G A^dag)^dag.
  const auto cols = m.cols();
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      apply_gate_amps(m.col(j).data(), width, g, angle, heisenberg);
    }
    m.adjointInPlace();
  }
}

void conjugate_matrix(Eigen::MatrixXcd& m, int width, const Circuit& c,
                      const ParamVector& params, bool heisenberg) {
  if (!heisenberg) {
    for (const auto& g : c.gates) {
      conjugate_matrix_gate(m, width, g, g.angle(params), false);
    }
  } else {
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
      conjugate_matrix_gate(m, width, *it, it->angle(params), true);
    }
  }
}

PureState apply_to_pure(const Circuit& c, const ParamVector& params,
                        const PureState& psi) {
  if (psi.n_qubits() != c.width) {
    throw std::invalid_argument("apply_to_pure: width mismatch");
  }
  c.check_params(params);
  Eigen::VectorXcd amps = psi.amplitudes();
  apply_circuit_amps(amps.data(), c.width, c, params);
  return PureState(c.width, std::move(amps));
}

DensityMatrix apply_to_density(const Circuit& c, const ParamVector& params,
                               const DensityMatrix& rho) {
  if (rho.n_qubits() != c.width) {
    throw std::invalid_argument("apply_to_density: width mismatch");
  }
  c.check_params(params);
  Eigen::MatrixXcd m = rho.entries();
  conjugate_matrix(m, c.width, c, params, false);
  return DensityMatrix(c.width, std::move(m));
}

std::map<std::uint64_t, double> ancilla_distribution(const Circuit& c,
                                                     const ParamVector& params,
                                                     const PureState& input,
                                                     const QubitSet& ancillas) {
  if (input.n_qubits() != c.width) {
    throw std::invalid_argument("ancilla_distribution: width mismatch");
  }
  ancillas.check_range(c.width);
  const int m = ancillas.size();
  if (m > 16) {
    throw std::invalid_argument("ancilla_distribution: too many ancillas");
  }

  const PureState out = apply_to_pure(c, params, input);

  std::map<std::uint64_t, double> dist;
  for (std::uint64_t key = 0; key < (std::uint64_t(1) << m); ++key) {
    dist[key] = 0.0;
  }
  const auto& a = out.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    std::uint64_t key = 0;
    for (int j = 0; j < m; ++j) {
      const int bit = bit_of(c.width, ancillas.indices[std::size_t(j)]);
      if ((std::uint64_t(i) >> bit) & 1u) key |= std::uint64_t(1) << (m - 1 - j);
    }
    dist[key] += std::norm(a(i));
  }
  return dist;
}

std::map<std::uint64_t, std::uint64_t> sample_ancilla(
    const Circuit& c, const ParamVector& params, const PureState& input,
    const QubitSet& ancillas, std::uint64_t shots, std::uint64_t seed) {
  const auto dist = ancilla_distribution(c, params, input, ancillas);
  std::vector<std::pair<std::uint64_t, double>> cdf;
  double acc = 0.0;
  for (const auto& [key, p] : dist) {
    acc += p;
    cdf.emplace_back(key, acc);
  }
  RngStream rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform(0.0, acc);
    for (const auto& [key, edge] : cdf) {
      if (u <= edge) {
        ++counts[key];
        break;
      }
    }
  }
  return counts;
}

}  // namespace qmix
