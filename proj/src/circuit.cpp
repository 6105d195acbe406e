#include "qmix/circuit.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace qmix {

bool is_rotation(GateKind k) {
  switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CRX:
    case GateKind::CRY:
    case GateKind::CRZ:
      return true;
    default:
      return false;
  }
}

bool is_controlled(GateKind k) {
  switch (k) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::CRX:
    case GateKind::CRY:
    case GateKind::CRZ:
    case GateKind::CSWAP:
      return true;
    default:
      return false;
  }
}

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::CRX: return "CRX";
    case GateKind::CRY: return "CRY";
    case GateKind::CRZ: return "CRZ";
    case GateKind::CSWAP: return "CSWAP";
    case GateKind::Fixed1q: return "FIXED1Q";
  }
  return "?";
}

Gate Gate::h(int target) { return Gate{GateKind::H, {}, {target}}; }
Gate Gate::x(int target) { return Gate{GateKind::X, {}, {target}}; }

Gate Gate::rotation(GateKind k, int target, int slot) {
  Gate g{k, {}, {target}};
  g.param_slot = slot;
  return g;
}

Gate Gate::rotation_const(GateKind k, int target, double angle) {
  Gate g{k, {}, {target}};
  g.bound_angle = angle;
  return g;
}

Gate Gate::controlled_rotation(GateKind k, int control, int target, int slot) {
  Gate g{k, {control}, {target}};
  g.param_slot = slot;
  return g;
}

Gate Gate::controlled_rotation_const(GateKind k, int control, int target,
                                     double angle) {
  Gate g{k, {control}, {target}};
  g.bound_angle = angle;
  return g;
}

Gate Gate::cnot(int control, int target) {
  return Gate{GateKind::CNOT, {control}, {target}};
}

Gate Gate::cz(int a, int b) { return Gate{GateKind::CZ, {a}, {b}}; }

Gate Gate::cswap(int control, int target_a, int target_b) {
  return Gate{GateKind::CSWAP, {control}, {target_a, target_b}};
}

Gate Gate::fixed_1q(int target, const Eigen::Matrix2cd& u) {
  Gate g{GateKind::Fixed1q, {}, {target}};
  g.fixed = u;
  return g;
}

double Gate::angle(const ParamVector& params) const {
  if (param_slot >= 0) return params[std::size_t(param_slot)];
  return bound_angle;
}

void Circuit::validate() const {
  for (const auto& g : gates) {
    std::vector<int> touched = g.controls;
    touched.insert(touched.end(), g.targets.begin(), g.targets.end());
    for (int q : touched) {
      if (q < 0 || q >= width) {
        throw std::invalid_argument("Circuit: gate index out of range");
      }
    }
    std::sort(touched.begin(), touched.end());
    if (std::adjacent_find(touched.begin(), touched.end()) != touched.end()) {
      throw std::invalid_argument("Circuit: gate indices must be distinct");
    }
    const std::size_t expect_targets = (g.kind == GateKind::CSWAP) ? 2 : 1;
    const std::size_t expect_controls =
        (g.kind == GateKind::CSWAP || is_controlled(g.kind)) ? 1 : 0;
    if (g.targets.size() != expect_targets ||
        g.controls.size() != expect_controls) {
      throw std::invalid_argument("Circuit: malformed gate arity");
    }
    if (g.param_slot >= n_params) {
      throw std::invalid_argument("Circuit: parameter slot out of range");
    }
    if (g.param_slot >= 0 && !is_rotation(g.kind)) {
      throw std::invalid_argument("Circuit: only rotations take parameters");
    }
    if (g.kind == GateKind::Fixed1q) {
      const Eigen::Matrix2cd err =
          g.fixed * g.fixed.adjoint() - Eigen::Matrix2cd::Identity();
      if (err.cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("Circuit: FIXED1Q matrix is not unitary");
      }
    }
  }
}

void Circuit::check_params(const ParamVector& params) const {
  if (int(params.size()) != n_params) {
    throw std::invalid_argument("Circuit: parameter vector length mismatch");
  }
}

std::string Circuit::dump() const {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& g : gates) {
    out << gate_name(g.kind);
    for (int c : g.controls) out << " c" << c;
    for (int t : g.targets) out << " q" << t;
    if (g.param_slot >= 0) {
      out << " slot=" << g.param_slot;
    } else if (is_rotation(g.kind)) {
      out << " const=" << g.bound_angle;
    } else if (g.kind == GateKind::Fixed1q) {
      out << " m=";
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          out << "(" << g.fixed(r, c).real() << "," << g.fixed(r, c).imag()
              << ")";
        }
      }
    }
    out << "\n";
  }
  return out.str();
}

Circuit inverse(const Circuit& c, const ParamVector& params) {
  c.check_params(params);
  Circuit inv;
  inv.width = c.width;
  inv.n_params = 0;
  inv.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    if (is_rotation(g.kind)) {
      g.bound_angle = -g.angle(params);
      g.param_slot = -1;
    } else if (g.kind == GateKind::Fixed1q) {
      g.fixed = it->fixed.adjoint().eval();
    }
    // H, X, CNOT, CZ, CSWAP are self-inverse
    inv.gates.push_back(std::move(g));
  }
  return inv;
}

const char* ansatz_name(AnsatzKind k) {
  switch (k) {
    case AnsatzKind::HWE: return "HWE";
    case AnsatzKind::SEA: return "SEA";
    case AnsatzKind::SD: return "SD";
  }
  return "?";
}

AnsatzKind ansatz_from_name(const std::string& name) {
  if (name == "HWE" || name == "hwe") return AnsatzKind::HWE;
  if (name == "SEA" || name == "sea") return AnsatzKind::SEA;
  if (name == "SD" || name == "sd") return AnsatzKind::SD;
  throw std::invalid_argument("unknown ansatz kind: " + name);
}

int ansatz_param_count(const AnsatzSpec& spec) {
  switch (spec.kind) {
    case AnsatzKind::HWE: return spec.depth * spec.width * 2;
    case AnsatzKind::SEA: return spec.depth * spec.width * 3;
    case AnsatzKind::SD:
      return (spec.width - 1) + spec.depth * (spec.width - 1) * 2;
  }
  return 0;
}

Circuit build_ansatz(const AnsatzSpec& spec) {
  if (spec.width < 2 || spec.depth < 1) {
    throw std::invalid_argument("AnsatzSpec: need width >= 2 and depth >= 1");
  }
  Circuit c;
  c.width = spec.width;
  c.n_params = ansatz_param_count(spec);
  int slot = 0;
  const int w = spec.width;

  switch (spec.kind) {
    case AnsatzKind::HWE:
      for (int l = 0; l < spec.depth; ++l) {
        for (int q = 0; q < w; ++q) {
          c.gates.push_back(Gate::rotation(GateKind::RY, q, slot++));
          c.gates.push_back(Gate::rotation(GateKind::RZ, q, slot++));
        }
        for (int q = 0; q + 1 < w; ++q) {
          c.gates.push_back(Gate::cnot(q, q + 1));
        }
      }
      break;

    case AnsatzKind::SEA:
      for (int l = 1; l <= spec.depth; ++l) {
        for (int q = 0; q < w; ++q) {
          c.gates.push_back(Gate::rotation(GateKind::RZ, q, slot++));
          c.gates.push_back(Gate::rotation(GateKind::RY, q, slot++));
          c.gates.push_back(Gate::rotation(GateKind::RZ, q, slot++));
        }
        const int stride = ((l - 1) % (w - 1)) + 1;
        for (int q = 0; q < w; ++q) {
          c.gates.push_back(Gate::cnot(q, (q + stride) % w));
        }
      }
      break;

    case AnsatzKind::SD:
      for (int q = 0; q + 1 < w; ++q) {
        c.gates.push_back(Gate::rotation(GateKind::RY, q, slot++));
      }
      for (int l = 0; l < spec.depth; ++l) {
        for (int start : {0, 1}) {
          for (int q = start; q + 1 < w; q += 2) {
            c.gates.push_back(Gate::cz(q, q + 1));
            c.gates.push_back(Gate::rotation(GateKind::RY, q, slot++));
            c.gates.push_back(Gate::rotation(GateKind::RY, q + 1, slot++));
          }
        }
      }
      break;
  }

  c.validate();
  if (slot != c.n_params) {
    throw std::logic_error("build_ansatz: slot count mismatch");
  }
  return c;
}

}  // namespace qmix
