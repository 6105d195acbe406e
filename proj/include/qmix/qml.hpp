// Variational classifier for the entangled-vs-separable task: prediction,
// MSE loss, parameter-shift gradients, the training loop, metrics and the
// benchmark grid.

#pragma once

#include <iosfwd>

#include "qmix/circuit.hpp"
#include "qmix/genesis.hpp"
#include "qmix/witness.hpp"

namespace qmix {

struct TrainConfig {
  int batch_size = 32;
  int iterations = 100;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;
  double train_fraction = 0.75;  // stratified by label
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct TrainRecord {
  ParamVector params;
  std::vector<double> loss_trajectory;            // per iteration, post-step
  std::vector<double> batch_accuracy_trajectory;  // per iteration, post-step
  Metrics test_metrics;
};

struct Prediction {
  double expectation = 0.0;  // Tr[U rho U^dag O], in [-1, 1]
  int label = 0;             // +1 if expectation > 0, else -1
};

// States narrower than the circuit are padded with |0><0| on the highest
// qubit indices; the observable width must match the circuit width.
Prediction predict(const Circuit& circuit, const ParamVector& params,
                   const DensityMatrix& rho, const ObservableSpec& obs);

// (1/|T|) sum (expectation_i - y_i)^2 on the raw expectations.
double mse_loss(const std::vector<LabeledState>& batch, const Circuit& circuit,
                const ParamVector& params, const ObservableSpec& obs);

// Parameter-shift gradients of the batch MSE: each rotation angle is
// shifted by +-pi/2 and the two-point rule chains into the MSE derivative.
// Every parameter slot must be used by exactly one rotation gate.
std::vector<double> gradient(const std::vector<LabeledState>& batch,
                             const Circuit& circuit, const ParamVector& params,
                             const ObservableSpec& obs);

Metrics evaluate(const Circuit& circuit, const ParamVector& params,
                 const std::vector<LabeledState>& testset,
                 const ObservableSpec& obs);

// Stratified split, seeded shuffle, one optimizer step per iteration on
// cyclic batches. Bitwise reproducible for a fixed config.
TrainRecord train_classifier(const std::vector<LabeledState>& dataset,
                             const AnsatzSpec& spec, const TrainConfig& config,
                             const ObservableSpec& obs);

struct BenchmarkRow {
  int n_target = 0;
  AnsatzKind kind;
  int width = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  TrainRecord record;
};

// Grid runs across kinds x widths x depths x seeds on one dataset.
std::vector<BenchmarkRow> benchmark_suite(
    const std::vector<LabeledState>& dataset, int n_target,
    const std::vector<AnsatzKind>& kinds, const std::vector<int>& widths,
    const std::vector<int>& depths, const std::vector<std::uint64_t>& seeds,
    const TrainConfig& base_config);

// CSV schemas (headers fixed):
//   n,ansatz,width,depth,seed,iteration,loss,batch_accuracy
//   n,ansatz,width,depth,seed,accuracy,precision,recall,f1
void write_trajectory_csv(std::ostream& out,
                          const std::vector<BenchmarkRow>& rows);
void write_finals_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows);

}  // namespace qmix
