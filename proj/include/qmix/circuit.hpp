// Gate-level circuit representation and the three ansatz families.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmix/types.hpp"

namespace qmix {

enum class GateKind {
  H,
  X,
  RX,
  RY,
  RZ,
  CNOT,
  CZ,
  CRX,
  CRY,
  CRZ,
  CSWAP,
  Fixed1q,
};

bool is_rotation(GateKind k);       // RX/RY/RZ/CRX/CRY/CRZ
bool is_controlled(GateKind k);     // CNOT/CZ/CR*/CSWAP
const char* gate_name(GateKind k);

using ParamVector = std::vector<double>;

struct Gate {
  GateKind kind;
  std::vector<int> controls;  // at most one control qubit
  std::vector<int> targets;   // one target (two for CSWAP)
  int param_slot = -1;        // >= 0: angle comes from the parameter vector
  double bound_angle = 0.0;   // used by rotations when param_slot < 0
  Eigen::Matrix2cd fixed = Eigen::Matrix2cd::Zero();  // Fixed1q payload

  static Gate h(int target);
  static Gate x(int target);
  static Gate rotation(GateKind k, int target, int slot);
  static Gate rotation_const(GateKind k, int target, double angle);
  static Gate controlled_rotation(GateKind k, int control, int target, int slot);
  static Gate controlled_rotation_const(GateKind k, int control, int target,
                                        double angle);
  static Gate cnot(int control, int target);
  static Gate cz(int a, int b);
  static Gate cswap(int control, int target_a, int target_b);
  static Gate fixed_1q(int target, const Eigen::Matrix2cd& u);

  double angle(const ParamVector& params) const;
};

struct Circuit {
  int width = 0;
  std::vector<Gate> gates;
  int n_params = 0;

  // Index/slot sanity plus unitarity of Fixed1q payloads.
  void validate() const;

  void check_params(const ParamVector& params) const;

  // One gate per line: KIND control(s) target(s) param. Stable format.
  std::string dump() const;
};

// Circuit implementing the inverse unitary at the given parameters.
// All angles come out bound (the result has no free parameters).
Circuit inverse(const Circuit& c, const ParamVector& params);

enum class AnsatzKind { HWE, SEA, SD };

const char* ansatz_name(AnsatzKind k);
AnsatzKind ansatz_from_name(const std::string& name);

struct AnsatzSpec {
  AnsatzKind kind;
  int width = 0;
  int depth = 0;
};

// Deterministic layouts:
//   HWE: per layer, RY+RZ on each qubit, then the CNOT chain (i, i+1).
//        Parameters: depth * width * 2.
//   SEA: per layer, RZ+RY+RZ on each qubit, then a CNOT ring of stride
//        r = ((layer - 1) mod (width - 1)) + 1, control i -> (i + r) mod w.
//        Parameters: depth * width * 3.
//   SD:  an initial RY column on qubits 0..width-2, then per layer CZ on
//        the even neighbor pairs (0,1),(2,3),... followed by RY on both
//        ends of each pair, then the same for the odd pairs (1,2),(3,4),...
//        Parameters: (width - 1) + depth * (width - 1) * 2.
Circuit build_ansatz(const AnsatzSpec& spec);

int ansatz_param_count(const AnsatzSpec& spec);

}  // namespace qmix
