#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qmix/cel.hpp"
#include "qmix/genesis.hpp"
#include "qmix/linalg.hpp"
#include "qmix/states.hpp"

#include "oracles.hpp"

using namespace qmix;

TEST_CASE("random_mixed_via_circuit: identity circuit gives the pure zero state") {
  Circuit id;
  id.width = 3;
  id.n_params = 0;
  const auto rho = random_mixed_via_circuit(id, 1, 99);
  CHECK(rho.n_qubits() == 2);
  CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.entries()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random_mixed_via_ansatz outputs valid states with bounded purity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_mixed_via_ansatz({AnsatzKind::SEA, 3, 4}, 1, seed);
    rho.validate();
    const double p = purity(rho);
    REQUIRE(p >= 1.0 / 4.0 - 1e-12);
    REQUIRE(p <= 1.0 + 1e-12);
  }
}

TEST_CASE("SEA anti-purification produces genuinely mixed states") {
  double mean = 0.0;
  double min_p = 1.0;
  const int n = 100;
  for (std::uint64_t seed = 0; seed < n; ++seed) {
    const double p = purity(random_mixed_via_ansatz({AnsatzKind::SEA, 3, 4}, 1, seed));
    mean += p;
    min_p = std::min(min_p, p);
  }
  mean /= n;
  CHECK(mean < 0.95);
  CHECK(min_p < 0.75);
}

TEST_CASE("purity_survey: cell sizes, one-qubit bound, determinism") {
  const auto rows = purity_survey({AnsatzKind::HWE, AnsatzKind::SD}, {2, 3},
                                  {1, 2}, 25, 31);
  CHECK(rows.size() == 2 * 2 * 2 * 25);
  int w2 = 0;
  for (const auto& r : rows) {
    if (r.width == 2) {
      ++w2;
      REQUIRE(r.purity >= 0.5 - 1e-12);
      REQUIRE(r.purity <= 1.0 + 1e-12);
    }
  }
  CHECK(w2 == 2 * 2 * 25);

  const auto again = purity_survey({AnsatzKind::HWE, AnsatzKind::SD}, {2, 3},
                                   {1, 2}, 25, 31);
  REQUIRE(rows.size() == again.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].purity == again[i].purity);
  }
}

TEST_CASE("perturb_family: zero epsilon copies the input exactly") {
  RngStream rng(40);
  const auto rho = oracle::random_density(2, rng);
  const auto family = perturb_family(rho, 0.0, 5, 7);
  CHECK(family.size() == 5);
  for (const auto& s : family) {
    REQUIRE((s.entries() - rho.entries()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("perturb_family preserves spectrum and purity") {
  RngStream rng(41);
  const auto rho = oracle::random_density(3, rng);
  for (const auto& s : perturb_family(rho, 0.8, 10, 8)) {
    REQUIRE(purity(s) == doctest::Approx(purity(rho)).epsilon(1e-10));
    s.validate();
  }
  CHECK_THROWS(perturb_family(rho, -0.1, 1, 0));
}

TEST_CASE("perturbed pairs respect the continuity bound") {
  RngStream rng(42);
  const auto rho = oracle::random_density(3, rng);
  const auto family = perturb_family(rho, 0.5, 20, 9);
  for (std::size_t i = 1; i < family.size(); ++i) {
    const double d = trace_distance(family[0], family[i]);
    const double dc =
        std::abs(cel_mixed(family[0]).value - cel_mixed(family[i]).value);
    REQUIRE(dc <= continuity_bound(3, d) + 1e-12);
  }
}

TEST_CASE("embed_with_ancillas pads on the low indices") {
  const auto rho = pure_to_density(ghz_state(2));
  const auto embedded = embed_with_ancillas(rho, 1);
  CHECK(embedded.n_qubits() == 3);
  // |0><0| (x) rho: the top-left block carries rho
  CHECK((embedded.entries().block(0, 0, 4, 4) - rho.entries()).norm() < 1e-15);
  CHECK(embedded.entries().block(4, 4, 4, 4).norm() < 1e-15);
}

TEST_CASE("train_generator: fixed point returns the initial parameters") {
  const AnsatzSpec spec{AnsatzKind::HWE, 3, 1};
  const auto rho = pure_to_density(basis_state(2, 0));
  const auto theta0 = initial_generator_params(spec, 5);
  const double xi = generator_cel_density(rho, spec, theta0);
  const auto theta = train_generator(rho, spec, xi, 0.05, 5);
  REQUIRE(theta.size() == theta0.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    REQUIRE(theta[k] == theta0[k]);
  }
}

TEST_CASE("train_generator converges and reruns bitwise") {
  const AnsatzSpec spec{AnsatzKind::SEA, 5, 4};
  const auto rho = pure_to_density(basis_state(3, 0));
  const auto theta = train_generator(rho, spec, 0.25, 0.01, 7);
  const double cel = generator_cel_density(rho, spec, theta);
  CHECK(std::abs(cel - 0.25) <= 0.01);

  const auto theta2 = train_generator(rho, spec, 0.25, 0.01, 7);
  REQUIRE(theta.size() == theta2.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    REQUIRE(theta[k] == theta2[k]);
  }
}

TEST_CASE("train_generator rejects unattainable targets") {
  const AnsatzSpec spec{AnsatzKind::SEA, 4, 2};
  const auto rho = pure_to_density(basis_state(2, 0));
  CHECK_THROWS_AS((void)train_generator(rho, spec, 0.75, 0.01, 1),
                  GeneratorError);
  CHECK_THROWS(train_generator(rho, spec, 0.25, 0.0, 1));
}

TEST_CASE("generate_entangled_dataset: certified labels, means, determinism") {
  GenConfig config;
  config.n_target = 2;
  config.n_ancilla = 2;
  config.seed = 42;
  const std::vector<ManifestRow> rows{{AnsatzKind::SEA, 4, 2, 40},
                                      {AnsatzKind::HWE, 4, 3, 40}};
  const auto states = generate_entangled_dataset(config, rows);
  REQUIRE(states.size() == 80);

  double mean_row0 = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    REQUIRE(s.label == 1);
    REQUIRE(s.cel > 0.0);
    REQUIRE(s.cel ==
            doctest::Approx(cel_mixed(s.state).value).epsilon(1e-12));
    s.state.validate();
    if (i < 40) mean_row0 += s.cel;
  }
  mean_row0 /= 40.0;
  CHECK(mean_row0 > 0.15);
  CHECK(mean_row0 < 0.35);
  CHECK(states[0].provenance.ansatz == std::string("SEA"));
  CHECK(states[40].provenance.ansatz == std::string("HWE"));

  const auto again = generate_entangled_dataset(config, rows);
  for (std::size_t i = 0; i < states.size(); ++i) {
    REQUIRE((states[i].state.entries() - again[i].state.entries()).norm() == 0.0);
  }
}

TEST_CASE("entangled rows reject inconsistent widths") {
  GenConfig config;
  config.n_target = 2;
  config.n_ancilla = 2;
  CHECK_THROWS(
      generate_entangled_dataset(config, {{AnsatzKind::SEA, 5, 2, 4}}));
}

TEST_CASE("table layouts") {
  const auto full = table1_rows(5);
  REQUIRE(full.size() == 12);
  for (const auto& row : full) {
    CHECK(row.width == 7);
    CHECK(row.count == 500);
    CHECK(row.depth >= 2);
    CHECK(row.depth <= 5);
  }
  const auto reduced = reduced_rows(2, 100);
  REQUIRE(reduced.size() == 6);
  for (const auto& row : reduced) CHECK(row.width == 4);
}

TEST_CASE("separable generator: certified labels and structure") {
  const auto states = generate_separable_dataset(2, 2, 60, 6, 7);
  REQUIRE(states.size() == 60);
  for (const auto& s : states) {
    REQUIRE(s.label == -1);
    REQUIRE(s.cel <= 1e-9);
    s.state.validate();
  }

  // gates_per_state = 0 leaves a pure product state
  const auto pure = generate_separable_dataset(3, 2, 5, 0, 11);
  for (const auto& s : pure) {
    REQUIRE(purity(s.state) == doctest::Approx(1.0).epsilon(1e-10));
    REQUIRE(std::abs(s.cel) <= 1e-10);
  }

  const auto again = generate_separable_dataset(2, 2, 60, 6, 7);
  for (std::size_t i = 0; i < states.size(); ++i) {
    REQUIRE((states[i].state.entries() - again[i].state.entries()).norm() == 0.0);
  }
}

TEST_CASE("separable structural audit: mixture expansion matches simulation") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    RngStream rng(seed);
    const int nt = 2 + int(rng.uniform_index(3));
    const int gates = int(rng.uniform_index(9));
    const auto recipe = sample_separable_recipe(nt, 2, gates, rng);
    const auto via_circuit = build_separable_state(recipe);
    const auto via_mixture = expand_separable_mixture(recipe);
    REQUIRE((via_circuit.entries() - via_mixture.entries())
                .cwiseAbs()
                .maxCoeff() < 1e-10);
  }
}

TEST_CASE("epsilon_spread: deterministic, correct shape") {
  GenConfig config;
  config.n_target = 2;
  config.n_ancilla = 2;
  config.seed = 5;
  const AnsatzSpec spec{AnsatzKind::SEA, 4, 2};
  const auto pts = epsilon_spread(config, spec, {0.25, 1.0}, 30);
  REQUIRE(pts.size() == 60);
  const auto again = epsilon_spread(config, spec, {0.25, 1.0}, 30);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    REQUIRE(pts[i].cel == again[i].cel);
  }

  auto stddev = [&](double eps) {
    double mean = 0.0, m2 = 0.0;
    int n = 0;
    for (const auto& p : pts) {
      if (p.epsilon == eps) {
        mean += p.cel;
        ++n;
      }
    }
    mean /= n;
    for (const auto& p : pts) {
      if (p.epsilon == eps) m2 += (p.cel - mean) * (p.cel - mean);
    }
    return std::sqrt(m2 / (n - 1));
  };
  CHECK(stddev(0.25) < stddev(1.0));
}
