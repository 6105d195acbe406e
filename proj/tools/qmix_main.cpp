// qmix: generation, measurement, training and reporting for certified
// entangled/separable mixed-state datasets.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "qmix/cel.hpp"
#include "qmix/datastore.hpp"
#include "qmix/genesis.hpp"
#include "qmix/linalg.hpp"
#include "qmix/qml.hpp"
#include "qmix/report.hpp"
#include "qmix/simulate.hpp"
#include "qmix/swap_test.hpp"

namespace {

using namespace qmix;
using nlohmann::json;

// All numeric output is CSV, to stdout unless --out is given.
class CsvSink {
 public:
  explicit CsvSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::trunc);
      if (!file_) throw StoreError("io", "cannot open output file: " + path);
    }
    stream().precision(17);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<ManifestRow> rows_for_layout(const std::string& layout, int n,
                                         int count, const std::string& ansatz,
                                         int width, int depth) {
  if (layout == "table1") return table1_rows(n);
  if (layout == "reduced") return reduced_rows(n, count);
  if (layout == "single") {
    return {ManifestRow{ansatz_from_name(ansatz), width, depth, count}};
  }
  throw CLI::ValidationError("--layout must be single, reduced or table1");
}

int run_gen_entangled(int n, int n_ancilla, int count, std::uint64_t seed,
                      double xi, double eps, double delta,
                      const std::string& layout, const std::string& ansatz,
                      int depth, const std::string& out_dir) {
  GenConfig config;
  config.n_target = n;
  config.n_ancilla = n_ancilla;
  config.xi = xi;
  config.epsilon = eps;
  config.delta = delta;
  config.seed = seed;
  const auto rows =
      rows_for_layout(layout, n, count, ansatz, n + n_ancilla, depth);
  const auto states = generate_entangled_dataset(config, rows);
  save_dataset(out_dir, "entangled-n" + std::to_string(n), states, xi, eps);
  std::cout << "states,rows\n" << states.size() << ',' << rows.size() << "\n";
  return 0;
}

int run_gen_separable(int n, int n_ancilla, int count, int gates,
                      std::uint64_t seed, const std::string& out_dir) {
  const auto states =
      generate_separable_dataset(n, n_ancilla, count, gates, seed);
  save_dataset(out_dir, "separable-n" + std::to_string(n), states, 0.0, 0.0);
  std::cout << "states,rows\n" << states.size() << ",1\n";
  return 0;
}

int run_cel(const std::string& input, const std::string& out) {
  const auto rho = load_state_as_density(input);
  const auto report = cel_mixed(rho);
  CsvSink sink(out);
  sink.stream() << "value,n_qubits,purity,subset_purity_sum\n"
                << report.value << ',' << report.n_qubits << ','
                << report.purity << ',' << report.subset_purity_sum << "\n";
  return 0;
}

int run_families(const std::string& family, int n, double p,
                 const std::string& out) {
  const bool ghz = (family == "ghz");
  if (!ghz && family != "w") {
    throw CLI::ValidationError("family must be ghz or w");
  }
  const double cel = ghz ? cel_ghz_noisy(n, p) : cel_w_noisy(n, p);
  const double threshold = ghz ? ghz_sep_threshold(n) : w_sep_threshold(n);
  CsvSink sink(out);
  sink.stream() << "family,n,p,cel,threshold,below_threshold,cel_positive\n"
                << family << ',' << n << ',' << p << ',' << cel << ','
                << threshold << ',' << (p <= threshold ? 1 : 0) << ','
                << (cel > 0.0 ? 1 : 0) << "\n";
  return 0;
}

int run_swap_test(const std::string& input, std::uint64_t shots,
                  std::uint64_t seed, bool have_seed, const std::string& out) {
  const auto rho = load_state_as_density(input);
  const double estimate = estimate_cel_swap(rho);
  const double exact = cel_mixed(rho).value;
  CsvSink sink(out);
  if (shots == 0) {
    sink.stream() << "estimate,exact,abs_error\n"
                  << estimate << ',' << exact << ','
                  << std::abs(estimate - exact) << "\n";
    return 0;
  }
  if (!have_seed) {
    throw CLI::ValidationError("--shots requires --seed");
  }
  const auto run = prepare_cel_swap(rho);
  const auto counts =
      sample_ancilla(run.circuit, {}, run.input, run.ancillas, shots, seed);
  std::uint64_t zeros = 0;
  if (auto it = counts.find(0); it != counts.end()) zeros = it->second;
  const double p0 = double(zeros) / double(shots);
  const double pur = purity(rho);
  const double d = double(dim_of(rho.n_qubits()));
  const double sampled = pur + (1.0 - pur) / d - p0;
  sink.stream() << "estimate,exact,abs_error,shots,sampled_estimate\n"
                << estimate << ',' << exact << ','
                << std::abs(estimate - exact) << ',' << shots << ',' << sampled
                << "\n";
  return 0;
}

int run_purity_survey(std::uint64_t seed, int samples, const std::string& out) {
  CsvSink sink(out);
  report_purity_survey(sink.stream(), seed, samples);
  return 0;
}

void save_params_json(const std::string& path, const AnsatzSpec& spec,
                      int n_target, std::uint64_t seed,
                      const ParamVector& params) {
  json j;
  j["ansatz"] = ansatz_name(spec.kind);
  j["width"] = spec.width;
  j["depth"] = spec.depth;
  j["n_target"] = n_target;
  j["seed"] = seed;
  j["params"] = params;
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw StoreError("io", "cannot open params file: " + path);
  f << j.dump(2) << "\n";
}

int run_train(const std::string& dataset_dir, const std::string& ansatz,
              int width, int depth, int iters, int batch, double lr,
              std::uint64_t seed, const std::string& out,
              const std::string& traj_out, const std::string& params_out) {
  const auto data = load_dataset(dataset_dir);
  int n_target = 0;
  for (const auto& s : data.states) {
    n_target = std::max(n_target, s.state.n_qubits());
  }
  TrainConfig config;
  config.batch_size = batch;
  config.iterations = iters;
  config.learning_rate = lr;
  config.seed = seed;
  const AnsatzSpec spec{ansatz_from_name(ansatz), width, depth};
  const auto obs = ObservableSpec::last_target_z(width, n_target);
  auto record = train_classifier(data.states, spec, config, obs);

  BenchmarkRow row{n_target, spec.kind, width, depth, seed, std::move(record)};
  if (!traj_out.empty()) {
    CsvSink sink(traj_out);
    write_trajectory_csv(sink.stream(), {row});
  }
  if (!params_out.empty()) {
    save_params_json(params_out, spec, n_target, seed, row.record.params);
  }
  CsvSink sink(out);
  write_finals_csv(sink.stream(), {row});
  return 0;
}

int run_eval(const std::string& dataset_dir, const std::string& params_path,
             const std::string& out) {
  std::ifstream f(params_path);
  if (!f) throw StoreError("io", "cannot open params file: " + params_path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw StoreError("format", std::string("bad params file: ") + e.what());
  }
  const AnsatzSpec spec{ansatz_from_name(j.at("ansatz").get<std::string>()),
                        j.at("width").get<int>(), j.at("depth").get<int>()};
  const int n_target = j.at("n_target").get<int>();
  const auto params = j.at("params").get<ParamVector>();

  const auto data = load_dataset(dataset_dir);
  const auto circuit = build_ansatz(spec);
  const auto obs = ObservableSpec::last_target_z(spec.width, n_target);
  const auto metrics = evaluate(circuit, params, data.states, obs);

  CsvSink sink(out);
  sink.stream() << "n,ansatz,width,depth,seed,accuracy,precision,recall,f1\n"
                << n_target << ',' << ansatz_name(spec.kind) << ','
                << spec.width << ',' << spec.depth << ','
                << j.value("seed", std::uint64_t(0)) << ',' << metrics.accuracy
                << ',' << metrics.precision << ',' << metrics.recall << ','
                << metrics.f1 << "\n";
  return 0;
}

int run_report(const std::string& figure, std::uint64_t seed, bool have_seed,
               int samples, int per_eps, int n, int n_ancilla,
               const std::string& ansatz, int width, int depth, double xi,
               double delta, const std::string& dataset_dir, int iters,
               int batch, const std::string& out) {
  const bool needs_seed =
      (figure == "purity" || figure == "epsilon-spread" || figure == "benchmark");
  if (needs_seed && !have_seed) {
    throw CLI::ValidationError("report --figure " + figure + " requires --seed");
  }

  if (figure == "cel-curves") {
    CsvSink sink(out);
    report_cel_curves(sink.stream(), {2, 3, 4, 5}, 200);
    return 0;
  }
  if (figure == "purity") {
    CsvSink sink(out);
    report_purity_survey(sink.stream(), seed, samples);
    return 0;
  }
  if (figure == "epsilon-spread") {
    GenConfig config;
    config.n_target = n;
    config.n_ancilla = n_ancilla;
    config.xi = xi;
    config.delta = delta;
    config.seed = seed;
    const AnsatzSpec spec{ansatz_from_name(ansatz), width, depth};
    CsvSink sink(out);
    report_epsilon_spread(sink.stream(), config, spec, {0.25, 0.5, 0.75, 1.0},
                          per_eps);
    return 0;
  }
  if (figure == "benchmark") {
    if (dataset_dir.empty() || out.empty()) {
      throw CLI::ValidationError(
          "report --figure benchmark requires --dataset and --out");
    }
    const auto data = load_dataset(dataset_dir);
    int n_target = 0;
    for (const auto& s : data.states) {
      n_target = std::max(n_target, s.state.n_qubits());
    }
    std::vector<int> widths, depths;
    for (int w = n_target; w < n_target + 4; ++w) widths.push_back(w);
    for (int d = 3; d <= 6; ++d) depths.push_back(d);
    TrainConfig config;
    config.iterations = iters;
    config.batch_size = batch;
    const auto rows = benchmark_suite(
        data.states, n_target,
        {AnsatzKind::HWE, AnsatzKind::SEA, AnsatzKind::SD}, widths, depths,
        {seed}, config);
    {
      CsvSink sink(out + ".traj.csv");
      write_trajectory_csv(sink.stream(), rows);
    }
    CsvSink sink(out + ".final.csv");
    write_finals_csv(sink.stream(), rows);
    return 0;
  }
  throw CLI::ValidationError("unknown figure: " + figure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified entangled/separable mixed-state datasets"};
  app.require_subcommand(1);

  int n = 2, n_ancilla = 2, count = 100, depth = 2;
  std::uint64_t seed = 0;
  double xi = 0.25, eps = 0.5, delta = 0.01;
  std::string layout = "single", ansatz = "SEA", out_dir, out, input;

  auto* gen_ent = app.add_subcommand("gen-entangled",
                                     "generate a certified entangled dataset");
  gen_ent->add_option("--n", n, "target qubits")->required();
  gen_ent->add_option("--count", count, "states per row")->required();
  gen_ent->add_option("--seed", seed, "RNG seed")->required();
  gen_ent->add_option("--out", out_dir, "output directory")->required();
  gen_ent->add_option("--n-ancilla", n_ancilla, "ancilla qubits (default 2)");
  gen_ent->add_option("--xi", xi, "target CEL (default 0.25)");
  gen_ent->add_option("--eps", eps, "perturbation half-width (default 0.5)");
  gen_ent->add_option("--delta", delta, "training tolerance (default 0.01)");
  gen_ent->add_option("--layout", layout, "single | reduced | table1");
  gen_ent->add_option("--ansatz", ansatz, "HWE | SEA | SD (single layout)");
  gen_ent->add_option("--depth", depth, "ansatz depth (single layout)");

  auto* gen_sep = app.add_subcommand("gen-separable",
                                     "generate a certified separable dataset");
  std::string sep_out;
  int sep_n = 2, sep_anc = 2, sep_count = 100, sep_gates = 6;
  std::uint64_t sep_seed = 0;
  gen_sep->add_option("--n", sep_n, "target qubits")->required();
  gen_sep->add_option("--count", sep_count, "number of states")->required();
  gen_sep->add_option("--seed", sep_seed, "RNG seed")->required();
  gen_sep->add_option("--out", sep_out, "output directory")->required();
  gen_sep->add_option("--n-ancilla", sep_anc, "ancilla qubits (default 2)");
  gen_sep->add_option("--gates", sep_gates,
                      "controlled rotations per state (default 6)");

  auto* cel_cmd = app.add_subcommand("cel", "CEL of a stored state");
  cel_cmd->add_option("--input", input, "QMIX1 state file")->required();
  cel_cmd->add_option("--out", out, "CSV output path (default stdout)");

  auto* fam = app.add_subcommand("families",
                                 "closed-form CEL vs separability threshold");
  std::string family;
  int fam_n = 3;
  double fam_p = 0.5;
  std::string fam_out;
  fam->add_option("family", family, "ghz | w")->required();
  fam->add_option("--n", fam_n, "qubit count")->required();
  fam->add_option("--p", fam_p, "signal weight p")->required();
  fam->add_option("--out", fam_out, "CSV output path (default stdout)");

  auto* swap = app.add_subcommand("swap-test",
                                  "swap-test CEL estimate of a stored state");
  std::string swap_in, swap_out;
  std::uint64_t shots = 0, swap_seed = 0;
  swap->add_option("--input", swap_in, "QMIX1 state file")->required();
  swap->add_option("--out", swap_out, "CSV output path (default stdout)");
  swap->add_option("--shots", shots, "also sample the ancilla register");
  auto* swap_seed_opt = swap->add_option("--seed", swap_seed, "sampling seed");

  auto* survey = app.add_subcommand("purity-survey",
                                    "purity samples across the ansatz grid");
  std::uint64_t survey_seed = 0;
  int samples = 100;
  std::string survey_out;
  survey->add_option("--seed", survey_seed, "RNG seed")->required();
  survey->add_option("--samples", samples, "samples per cell (default 100)");
  survey->add_option("--out", survey_out, "CSV output path (default stdout)");

  auto* train = app.add_subcommand("train", "train a classifier on a dataset");
  std::string train_dir, train_ansatz = "SEA", train_out, traj_out, params_out;
  int train_width = 4, train_depth = 5, iters = 100, batch = 32;
  double lr = 0.05;
  std::uint64_t train_seed = 0;
  train->add_option("--dataset", train_dir, "dataset directory")->required();
  train->add_option("--ansatz", train_ansatz, "HWE | SEA | SD")->required();
  train->add_option("--width", train_width, "circuit width")->required();
  train->add_option("--depth", train_depth, "circuit depth")->required();
  train->add_option("--seed", train_seed, "RNG seed")->required();
  train->add_option("--iters", iters, "iterations (default 100)");
  train->add_option("--batch", batch, "batch size (default 32)");
  train->add_option("--lr", lr, "learning rate (default 0.05)");
  train->add_option("--out", train_out, "final metrics CSV (default stdout)");
  train->add_option("--traj-out", traj_out, "trajectory CSV path");
  train->add_option("--save-params", params_out, "trained parameter JSON path");

  auto* eval_cmd = app.add_subcommand("eval",
                                      "evaluate saved parameters on a dataset");
  std::string eval_dir, eval_params, eval_out;
  eval_cmd->add_option("--dataset", eval_dir, "dataset directory")->required();
  eval_cmd->add_option("--params", eval_params, "trained parameter JSON")
      ->required();
  eval_cmd->add_option("--out", eval_out, "CSV output path (default stdout)");

  auto* report = app.add_subcommand("report",
                                    "regenerate figure-style study data");
  std::string fig, rep_out, rep_dataset, rep_ansatz = "SEA";
  std::uint64_t rep_seed = 0;
  int rep_samples = 100, per_eps = 200, rep_n = 3, rep_anc = 2;
  int rep_width = 5, rep_depth = 4, rep_iters = 100, rep_batch = 32;
  double rep_xi = 0.25, rep_delta = 0.01;
  report->add_option("--figure", fig,
                     "cel-curves | purity | epsilon-spread | benchmark")
      ->required();
  auto* rep_seed_opt = report->add_option("--seed", rep_seed, "RNG seed");
  report->add_option("--samples", rep_samples, "purity samples per cell");
  report->add_option("--per-eps", per_eps, "states per epsilon");
  report->add_option("--n", rep_n, "target qubits (epsilon-spread)");
  report->add_option("--n-ancilla", rep_anc, "ancillas (epsilon-spread)");
  report->add_option("--ansatz", rep_ansatz, "generator ansatz");
  report->add_option("--width", rep_width, "generator width");
  report->add_option("--depth", rep_depth, "generator depth");
  report->add_option("--xi", rep_xi, "target CEL");
  report->add_option("--delta", rep_delta, "training tolerance");
  report->add_option("--dataset", rep_dataset, "dataset directory (benchmark)");
  report->add_option("--iters", rep_iters, "iterations (benchmark)");
  report->add_option("--batch", rep_batch, "batch size (benchmark)");
  report->add_option("--out", rep_out, "output path or prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_ent->parsed()) {
      return run_gen_entangled(n, n_ancilla, count, seed, xi, eps, delta,
                               layout, ansatz, depth, out_dir);
    }
    if (gen_sep->parsed()) {
      return run_gen_separable(sep_n, sep_anc, sep_count, sep_gates, sep_seed,
                               sep_out);
    }
    if (cel_cmd->parsed()) return run_cel(input, out);
    if (fam->parsed()) return run_families(family, fam_n, fam_p, fam_out);
    if (swap->parsed()) {
      return run_swap_test(swap_in, shots, swap_seed,
                           swap_seed_opt->count() > 0, swap_out);
    }
    if (survey->parsed()) {
      return run_purity_survey(survey_seed, samples, survey_out);
    }
    if (train->parsed()) {
      return run_train(train_dir, train_ansatz, train_width, train_depth,
                       iters, batch, lr, train_seed, train_out, traj_out,
                       params_out);
    }
    if (eval_cmd->parsed()) return run_eval(eval_dir, eval_params, eval_out);
    if (report->parsed()) {
      return run_report(fig, rep_seed, rep_seed_opt->count() > 0, rep_samples,
                        per_eps, rep_n, rep_anc, rep_ansatz, rep_width,
                        rep_depth, rep_xi, rep_delta, rep_dataset, rep_iters,
                        rep_batch, rep_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const StoreError& e) {
    std::cerr << "error: " << e.category() << ": " << e.what() << "\n";
    return 1;
  } catch (const GeneratorError& e) {
    std::cerr << "error: non_convergence: " << e.what() << "\n";
    return 1;
  } catch (const ResamplingError& e) {
    std::cerr << "error: resampling_budget: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
