#include "qmix/qml.hpp"

#include "qmix/linalg.hpp"
#include "qmix/optim.hpp"
#include "qmix/simulate.hpp"
#include "qmix/states.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <ostream>

namespace qmix {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

// Ancillas are appended maximally mixed: with a traceless observable this
// keeps Tr[U (rho (x) I/2^k) U^dag O] free of a padding-induced offset, so
// a trained witness measures the data register and not the embedding.
DensityMatrix pad_to_width(const DensityMatrix& rho, int width) {
  if (rho.n_qubits() == width) return rho;
  if (rho.n_qubits() > width) {
    throw std::invalid_argument("state is wider than the circuit");
  }
  return tensor_product(rho, maximally_mixed(width - rho.n_qubits()));
}

// Batch evaluation engine. States enter as eigendecompositions padded to
// the circuit width, so forward expectations run on state vectors. The
// parameter-shift gradient reads
//   dL/dtheta_k = sum_i w_i (e_i(+) - e_i(-)) / 2,  w_i = 2(e_i - y_i)/N,
// and since every term is linear in the item state, the batch collapses
// into one weighted matrix Rbar that is evolved through the circuit once,
// with suffix-conjugated observables supplying the two shifted readouts
// per parameter. Values match the literal two-point evaluation.
class BatchEngine {
 public:
  BatchEngine(Circuit circuit, const ObservableSpec& obs)
      : circuit_(std::move(circuit)),
        width_(circuit_.width),
        obs_diag_(obs.diagonal()) {
    if (obs.width != width_) {
      throw std::invalid_argument("observable width must match the circuit");
    }
    circuit_.validate();
    slot_gate_.assign(std::size_t(circuit_.n_params), -1);
    for (std::size_t gi = 0; gi < circuit_.gates.size(); ++gi) {
      const int slot = circuit_.gates[gi].param_slot;
      if (slot < 0) continue;
      if (slot_gate_[std::size_t(slot)] != -1) {
        throw std::invalid_argument(
            "parameter-shift gradient requires unique parameter slots");
      }
      slot_gate_[std::size_t(slot)] = int(gi);
    }
    for (int g : slot_gate_) {
      if (g == -1) {
        throw std::invalid_argument("unused parameter slot in circuit");
      }
    }
  }

  struct Item {
    std::vector<double> weights;
    std::vector<Eigen::VectorXcd> vectors;  // padded to 2^width
    int label = 0;
  };

  Item prepare(const DensityMatrix& rho, int label) const {
    Item item;
    item.label = label;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries());
    const int extra = width_ - rho.n_qubits();
    if (extra < 0) {
      throw std::invalid_argument("state is wider than the circuit");
    }
    const std::uint64_t dn = rho.dim();
    const std::uint64_t de = dim_of(extra);
    for (Eigen::Index r = 0; r < es.eigenvalues().size(); ++r) {
      const double lam = es.eigenvalues()(r);
      if (lam <= 1e-14) continue;
      // rho (x) I/2^extra: each eigenvector fans out over the ancilla basis
      for (std::uint64_t j = 0; j < de; ++j) {
        Eigen::VectorXcd padded =
            Eigen::VectorXcd::Zero(Eigen::Index(dim_of(width_)));
        for (std::uint64_t t = 0; t < dn; ++t) {
          padded(Eigen::Index((t << extra) | j)) =
              es.eigenvectors()(Eigen::Index(t), r);
        }
        item.weights.push_back(lam / double(de));
        item.vectors.push_back(std::move(padded));
      }
    }
    return item;
  }

  double expectation(const Item& item, const ParamVector& params) const {
    double e = 0.0;
    for (std::size_t r = 0; r < item.weights.size(); ++r) {
      Eigen::VectorXcd amps = item.vectors[r];
      apply_circuit_amps(amps.data(), width_, circuit_, params);
      double c = 0.0;
      for (Eigen::Index u = 0; u < amps.size(); ++u) {
        c += obs_diag_(u) * std::norm(amps(u));
      }
      e += item.weights[r] * c;
    }
    return e;
  }

  std::vector<double> expectations(const std::vector<const Item*>& items,
                                   const ParamVector& params) const {
    std::vector<double> out(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      out[i] = expectation(*items[i], params);
    }
    return out;
  }

  std::vector<double> mse_gradient(const std::vector<const Item*>& items,
                                   const ParamVector& params,
                                   std::vector<double>* expectations_out) const {
    circuit_.check_params(params);
    const auto exps = expectations(items, params);
    if (expectations_out) *expectations_out = exps;
    std::vector<double> grad(params.size(), 0.0);
    if (params.empty() || items.empty()) return grad;

    const auto dim = Eigen::Index(dim_of(width_));
    Eigen::MatrixXcd rbar = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const double w =
          2.0 * (exps[i] - double(items[i]->label)) / double(items.size());
      for (std::size_t r = 0; r < items[i]->weights.size(); ++r) {
        rbar += (w * items[i]->weights[r]) *
                (items[i]->vectors[r] * items[i]->vectors[r].adjoint());
      }
    }

    // Forward pass: snapshot the weighted state before each parameterized
    // gate.
    std::vector<Eigen::MatrixXcd> before(params.size());
    Eigen::MatrixXcd m = rbar;
    for (const auto& g : circuit_.gates) {
      if (g.param_slot >= 0) before[std::size_t(g.param_slot)] = m;
      conjugate_matrix_gate(m, width_, g, g.angle(params), false);
    }

    // Backward pass: pull the observable back and evaluate the two shifted
    // readouts at each parameterized gate.
    Eigen::MatrixXcd w_suffix = obs_diag_.cast<cplx>().asDiagonal();
    for (auto it = circuit_.gates.rbegin(); it != circuit_.gates.rend(); ++it) {
      const Gate& g = *it;
      if (g.param_slot >= 0) {
        const double theta = g.angle(params);
        double shifted[2];
        for (int s = 0; s < 2; ++s) {
          Eigen::MatrixXcd a = before[std::size_t(g.param_slot)];
          conjugate_matrix_gate(a, width_, g,
                                theta + (s == 0 ? kHalfPi : -kHalfPi), false);
          shifted[s] = (a.transpose().cwiseProduct(w_suffix)).sum().real();
        }
        grad[std::size_t(g.param_slot)] = (shifted[0] - shifted[1]) / 2.0;
      }
      conjugate_matrix_gate(w_suffix, width_, g, g.angle(params), true);
    }
    return grad;
  }

  const Circuit& circuit() const { return circuit_; }

 private:
  Circuit circuit_;
  int width_;
  Eigen::VectorXd obs_diag_;
  std::vector<int> slot_gate_;
};

void fisher_yates(std::vector<std::size_t>& v, RngStream& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[std::size_t(rng.uniform_index(i))]);
  }
}

int threshold_label(double expectation) { return expectation > 0.0 ? 1 : -1; }

}  // namespace

Prediction predict(const Circuit& circuit, const ParamVector& params,
                   const DensityMatrix& rho, const ObservableSpec& obs) {
  if (obs.width != circuit.width) {
    throw std::invalid_argument("predict: observable width mismatch");
  }
  const auto padded = pad_to_width(rho, circuit.width);
  const auto evolved = apply_to_density(circuit, params, padded);
  const Eigen::VectorXd diag = obs.diagonal();
  double e = 0.0;
  for (Eigen::Index u = 0; u < diag.size(); ++u) {
    e += diag(u) * evolved.entries()(u, u).real();
  }
  return Prediction{e, threshold_label(e)};
}

double mse_loss(const std::vector<LabeledState>& batch, const Circuit& circuit,
                const ParamVector& params, const ObservableSpec& obs) {
  if (batch.empty()) throw std::invalid_argument("mse_loss: empty batch");
  double acc = 0.0;
  for (const auto& item : batch) {
    const double e = predict(circuit, params, item.state, obs).expectation;
    acc += (e - double(item.label)) * (e - double(item.label));
  }
  return acc / double(batch.size());
}

std::vector<double> gradient(const std::vector<LabeledState>& batch,
                             const Circuit& circuit, const ParamVector& params,
                             const ObservableSpec& obs) {
  if (batch.empty()) throw std::invalid_argument("gradient: empty batch");
  BatchEngine engine(circuit, obs);
  std::vector<BatchEngine::Item> items;
  items.reserve(batch.size());
  for (const auto& b : batch) items.push_back(engine.prepare(b.state, b.label));
  std::vector<const BatchEngine::Item*> ptrs;
  for (const auto& it : items) ptrs.push_back(&it);
  return engine.mse_gradient(ptrs, params, nullptr);
}

Metrics evaluate(const Circuit& circuit, const ParamVector& params,
                 const std::vector<LabeledState>& testset,
                 const ObservableSpec& obs) {
  if (testset.empty()) throw std::invalid_argument("evaluate: empty testset");
  int tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto& item : testset) {
    const int pred = predict(circuit, params, item.state, obs).label;
    if (item.label == 1 && pred == 1) ++tp;
    if (item.label == -1 && pred == 1) ++fp;
    if (item.label == 1 && pred == -1) ++fn;
    if (item.label == -1 && pred == -1) ++tn;
  }
  Metrics m;
  m.accuracy = double(tp + tn) / double(testset.size());
  m.precision = (tp + fp > 0) ? double(tp) / double(tp + fp) : 0.0;
  m.recall = (tp + fn > 0) ? double(tp) / double(tp + fn) : 0.0;
  m.f1 = (m.precision + m.recall > 0.0)
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

TrainRecord train_classifier(const std::vector<LabeledState>& dataset,
                             const AnsatzSpec& spec, const TrainConfig& config,
                             const ObservableSpec& obs) {
  if (config.batch_size < 1 || config.iterations < 1) {
    throw std::invalid_argument("train_classifier: bad config");
  }
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    (dataset[i].label == 1 ? pos : neg).push_back(i);
  }
  if (pos.empty() || neg.empty()) {
    throw std::invalid_argument("train_classifier: dataset has a single class");
  }

  RngStream shuffle_pos(derive_seed(config.seed, {1}));
  RngStream shuffle_neg(derive_seed(config.seed, {2}));
  fisher_yates(pos, shuffle_pos);
  fisher_yates(neg, shuffle_neg);

  std::vector<std::size_t> train_idx, test_idx;
  const auto split = [&](const std::vector<std::size_t>& cls) {
    const auto n_train = std::size_t(config.train_fraction * double(cls.size()));
    for (std::size_t i = 0; i < cls.size(); ++i) {
      (i < n_train ? train_idx : test_idx).push_back(cls[i]);
    }
  };
  split(pos);
  split(neg);
  RngStream shuffle_train(derive_seed(config.seed, {3}));
  fisher_yates(train_idx, shuffle_train);

  const Circuit circuit = build_ansatz(spec);
  BatchEngine engine(circuit, obs);

  std::vector<BatchEngine::Item> train_items;
  train_items.reserve(train_idx.size());
  for (std::size_t i : train_idx) {
    train_items.push_back(engine.prepare(dataset[i].state, dataset[i].label));
  }

  RngStream init(derive_seed(config.seed, {4}));
  ParamVector theta(std::size_t(circuit.n_params));
  for (auto& p : theta) p = init.uniform(-kPi, kPi);

  AdamOptimizer adam(theta.size(), config.learning_rate);
  TrainRecord record;
  record.loss_trajectory.reserve(std::size_t(config.iterations));
  record.batch_accuracy_trajectory.reserve(std::size_t(config.iterations));

  for (int step = 0; step < config.iterations; ++step) {
    std::vector<const BatchEngine::Item*> batch;
    batch.reserve(std::size_t(config.batch_size));
    for (int j = 0; j < config.batch_size; ++j) {
      const std::size_t k =
          (std::size_t(step) * std::size_t(config.batch_size) + std::size_t(j)) %
          train_items.size();
      batch.push_back(&train_items[k]);
    }

    const auto grad = engine.mse_gradient(batch, theta, nullptr);
    adam.step(theta, grad);

    // post-step batch statistics
    const auto exps = engine.expectations(batch, theta);
    double loss = 0.0;
    int hits = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const double d = exps[i] - double(batch[i]->label);
      loss += d * d;
      hits += (threshold_label(exps[i]) == batch[i]->label) ? 1 : 0;
    }
    record.loss_trajectory.push_back(loss / double(batch.size()));
    record.batch_accuracy_trajectory.push_back(double(hits) /
                                               double(batch.size()));
  }

  record.params = theta;
  std::vector<LabeledState> test_states;
  test_states.reserve(test_idx.size());
  for (std::size_t i : test_idx) test_states.push_back(dataset[i]);
  record.test_metrics = evaluate(circuit, theta, test_states, obs);
  return record;
}

std::vector<BenchmarkRow> benchmark_suite(
    const std::vector<LabeledState>& dataset, int n_target,
    const std::vector<AnsatzKind>& kinds, const std::vector<int>& widths,
    const std::vector<int>& depths, const std::vector<std::uint64_t>& seeds,
    const TrainConfig& base_config) {
  std::vector<BenchmarkRow> rows;
  for (AnsatzKind kind : kinds) {
    for (int width : widths) {
      for (int depth : depths) {
        for (std::uint64_t seed : seeds) {
          TrainConfig config = base_config;
          config.seed = derive_seed(seed, {std::uint64_t(kind),
                                           std::uint64_t(width),
                                           std::uint64_t(depth)});
          const auto obs = ObservableSpec::last_target_z(width, n_target);
          auto record =
              train_classifier(dataset, {kind, width, depth}, config, obs);
          rows.push_back(
              BenchmarkRow{n_target, kind, width, depth, seed, std::move(record)});
        }
      }
    }
  }
  return rows;
}

void write_trajectory_csv(std::ostream& out,
                          const std::vector<BenchmarkRow>& rows) {
  out << "n,ansatz,width,depth,seed,iteration,loss,batch_accuracy\n";
  out.precision(17);
  for (const auto& row : rows) {
    for (std::size_t t = 0; t < row.record.loss_trajectory.size(); ++t) {
      out << row.n_target << ',' << ansatz_name(row.kind) << ',' << row.width
          << ',' << row.depth << ',' << row.seed << ',' << (t + 1) << ','
          << row.record.loss_trajectory[t] << ','
          << row.record.batch_accuracy_trajectory[t] << '\n';
    }
  }
}

void write_finals_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  out << "n,ansatz,width,depth,seed,accuracy,precision,recall,f1\n";
  out.precision(17);
  for (const auto& row : rows) {
    const Metrics& m = row.record.test_metrics;
    out << row.n_target << ',' << ansatz_name(row.kind) << ',' << row.width
        << ',' << row.depth << ',' << row.seed << ',' << m.accuracy << ','
        << m.precision << ',' << m.recall << ',' << m.f1 << '\n';
  }
}

}  // namespace qmix
