// Labeled dataset generation: random mixed states by ancilla trace-out,
// CEL-targeted entangled families through trained ansatz circuits, and
// certified separable states. Ancilla registers always occupy the lowest
// qubit indices.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qmix/circuit.hpp"
#include "qmix/rng.hpp"
#include "qmix/types.hpp"

namespace qmix {

struct Provenance {
  std::string generator;  // "entangled" / "separable" / ...
  std::string ansatz;     // ansatz kind, or "-" where not applicable
  int width = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

// Dataset atom. label = +1 states carry cel > 0, label = -1 states carry
// cel <= 1e-9; both are certified at generation time.
struct LabeledState {
  DensityMatrix state;
  int label = 0;
  double cel = 0.0;
  Provenance provenance;
};

struct GenConfig {
  int n_target = 2;
  int n_ancilla = 2;
  double xi = 0.25;      // target CEL
  double delta = 0.01;   // training tolerance
  double epsilon = 0.5;  // perturbation half-width (radians)
  std::uint64_t seed = 0;
};

// One row of a dataset manifest, mirroring the published table layout.
struct ManifestRow {
  AnsatzKind ansatz;
  int width = 0;
  int depth = 0;
  int count = 0;
};

// The full-scale dataset layout: HWE/SD/SEA at width n_target + 2,
// depths 2..5, 500 states each (12 rows).
std::vector<ManifestRow> table1_rows(int n_target);

// Reduced layout used by the acceptance checks: HWE/SD/SEA at depths
// {2, 3}, count_per_row each.
std::vector<ManifestRow> reduced_rows(int n_target, int count_per_row);

// Uniform [0, 2pi) parameters, circuit applied to |0...0>, first
// n_ancilla qubits traced out.
DensityMatrix random_mixed_via_circuit(const Circuit& c, int n_ancilla,
                                       std::uint64_t seed);
DensityMatrix random_mixed_via_ansatz(const AnsatzSpec& spec, int n_ancilla,
                                      std::uint64_t seed);

struct PuritySample {
  AnsatzKind kind;
  int width = 0;
  int depth = 0;
  int sample = 0;
  double purity = 0.0;
};

// Purity samples (one traced ancilla) per (kind, width, depth) cell.
std::vector<PuritySample> purity_survey(const std::vector<AnsatzKind>& kinds,
                                        const std::vector<int>& widths,
                                        const std::vector<int>& depths,
                                        int samples, std::uint64_t seed);

// Local-rotation perturbations V = tensor_j RZ(c_j) RY(b_j) RZ(a_j) with
// angles uniform in (-epsilon, epsilon); returns V rho V^dag per item.
std::vector<DensityMatrix> perturb_family(const DensityMatrix& rho_in,
                                          double epsilon, int count,
                                          std::uint64_t seed);

// Raised when generator training cannot reach the target band, carrying
// the best |cel - xi| achieved.
class GeneratorError : public std::runtime_error {
 public:
  GeneratorError(const std::string& msg, double best_cel)
      : std::runtime_error(msg), best_cel_(best_cel) {}
  double best_cel() const { return best_cel_; }

 private:
  double best_cel_;
};

class ResamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenTrainOptions {
  double learning_rate = 0.05;
  int max_iters = 500;
  double fd_step = 1e-4;
};

// rho_in padded with |0><0| ancillas to the ansatz width on the low qubit
// indices.
DensityMatrix embed_with_ancillas(const DensityMatrix& rho, int n_ancilla);

ParamVector initial_generator_params(const AnsatzSpec& spec,
                                     std::uint64_t seed);

// CEL of the generator output Tr_anc[U(theta) (|0><0| (x) rho_in) U^dag],
// via the density-matrix route. The training loop uses an equivalent
// purified pure-state route; the two must agree to 1e-10.
double generator_cel_density(const DensityMatrix& rho_in,
                             const AnsatzSpec& spec, const ParamVector& theta);

// Trains theta so that |cel(output) - xi| <= delta. Deterministic in seed;
// throws GeneratorError on non-convergence (or for xi outside the
// attainable range).
ParamVector train_generator(const DensityMatrix& rho_in,
                            const AnsatzSpec& spec, double xi, double delta,
                            std::uint64_t seed,
                            const GenTrainOptions& options = {});

// Per manifest row: trains a generator on a row-derived random input
// state, then emits `count` perturbed inputs pushed through it, keeping
// only outputs with cel > 0 (resampling up to 10x count attempts).
std::vector<LabeledState> generate_entangled_dataset(
    const GenConfig& config, const std::vector<ManifestRow>& rows);

// Certified separable states: per-qubit random rotations, then
// `gates_per_state` controlled rotations from the ancilla register into
// single target qubits, ancillas traced out.
std::vector<LabeledState> generate_separable_dataset(int n_target,
                                                     int n_ancilla, int count,
                                                     int gates_per_state,
                                                     std::uint64_t seed);

// Gate log of one separable state, exposed so the mixture expansion below
// can audit the generator.
struct SeparableRecipe {
  int n_target = 0;
  int n_ancilla = 0;
  std::vector<double> local_angles;  // 3 per qubit: RZ, RY, RZ in gate order
  struct CtrlRot {
    GateKind kind;
    int control;  // ancilla register index
    int target;   // target register index
    double angle;
  };
  std::vector<CtrlRot> controlled;
};

SeparableRecipe sample_separable_recipe(int n_target, int n_ancilla,
                                        int gates_per_state, RngStream& rng);

// Circuit-simulation route.
DensityMatrix build_separable_state(const SeparableRecipe& recipe);

// Independent route: expands the same recipe as an explicit convex
// combination of product states over ancilla basis outcomes.
DensityMatrix expand_separable_mixture(const SeparableRecipe& recipe);

struct SpreadPoint {
  double epsilon = 0.0;
  int index = 0;
  double cel = 0.0;
};

// Distribution study: one trained generator, `per_eps` perturbed inputs
// per epsilon, unfiltered CEL values of the outputs.
std::vector<SpreadPoint> epsilon_spread(const GenConfig& config,
                                        const AnsatzSpec& spec,
                                        const std::vector<double>& epsilons,
                                        int per_eps);

}  // namespace qmix
