#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmix/linalg.hpp"
#include "qmix/states.hpp"
#include "qmix/types.hpp"

#include "oracles.hpp"

using namespace qmix;

namespace {

DensityMatrix bell_density() { return pure_to_density(ghz_state(2)); }

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("type invariants are enforced") {
  CHECK_THROWS(PureState(2, Eigen::VectorXcd::Zero(3)));
  CHECK_THROWS(DensityMatrix(1, Eigen::MatrixXcd::Zero(3, 3)));
  CHECK_THROWS(QubitSet({1, 1}));
  CHECK_THROWS(QubitSet({2, 1}));

  Eigen::VectorXcd bad(2);
  bad << cplx{0.5, 0}, cplx{0, 0};
  CHECK_THROWS(PureState(1, bad).check_normalized());

  // trace-1 violation
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS(DensityMatrix(1, m).validate());
  // non-Hermitian
  m << cplx{0.5, 0}, cplx{0.5, 0}, cplx{-0.5, 0}, cplx{0.5, 0};
  CHECK_THROWS(DensityMatrix(1, m).validate());
  // negative eigenvalue
  m << cplx{1.5, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-0.5, 0};
  CHECK_THROWS(DensityMatrix(1, m).validate());

  maximally_mixed(3).validate();
  bell_density().validate();
}

TEST_CASE("tensor_product basics") {
  const auto i2 = maximally_mixed(1);
  const auto prod = tensor_product(i2, i2);
  CHECK(prod.n_qubits() == 2);
  CHECK(max_abs_diff(prod.entries(), maximally_mixed(2).entries()) < 1e-15);

  const auto zero = pure_to_density(basis_state(1, 0));
  const auto one = pure_to_density(basis_state(1, 1));
  const auto zo = tensor_product(zero, one);
  // |01> has index 1 with qubit 0 leftmost
  CHECK(zo.entries()(1, 1).real() == doctest::Approx(1.0));
  CHECK(zo.entries().cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("purity is multiplicative over tensor products") {
  RngStream rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = oracle::random_density(1, rng);
    const auto b = oracle::random_density(1, rng);
    const auto ab = tensor_product(a, b);
    CHECK(purity(ab) == doctest::Approx(purity(a) * purity(b)).epsilon(1e-12));
    CHECK(purity(ab) == doctest::Approx(oracle::brute_purity(ab)).epsilon(1e-12));
  }
}

TEST_CASE("partial_trace of a Bell state is maximally mixed") {
  const auto red = partial_trace(bell_density(), QubitSet({0}));
  CHECK(max_abs_diff(red.entries(), maximally_mixed(1).entries()) < 1e-14);
}

TEST_CASE("partial_trace recovers factors of a product state") {
  RngStream rng(12);
  const auto a = oracle::random_density(2, rng);
  const auto b = oracle::random_density(1, rng);
  const auto ab = tensor_product(a, b);
  const auto ra = partial_trace(ab, QubitSet({0, 1}));
  CHECK(max_abs_diff(ra.entries(), a.entries()) < 1e-13);
  const auto rb = partial_trace(ab, QubitSet({2}));
  CHECK(max_abs_diff(rb.entries(), b.entries()) < 1e-13);
}

TEST_CASE("partial_trace edge cases: full set and empty set") {
  RngStream rng(13);
  const auto rho = oracle::random_density(3, rng);
  const auto full = partial_trace(rho, QubitSet::full(3));
  CHECK(max_abs_diff(full.entries(), rho.entries()) == 0.0);
  const auto none = partial_trace(rho, QubitSet(std::vector<int>{}));
  CHECK(none.dim() == 1);
  CHECK(none.entries()(0, 0).real() == doctest::Approx(1.0));
  CHECK_THROWS(partial_trace(rho, QubitSet({0, 3})));
}

TEST_CASE("noisy GHZ two-qubit marginal matches the analytic form") {
  const double p = 0.5;
  const auto rho = noisy_ghz_state(3, p);
  const auto red = partial_trace(rho, QubitSet({0, 1}));

  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
  expect(0, 0) = p / 2.0;
  expect(3, 3) = p / 2.0;
  expect += ((1.0 - p) / 4.0) * Eigen::MatrixXcd::Identity(4, 4);
  CHECK(max_abs_diff(red.entries(), expect) < 1e-14);

  const auto brute = oracle::brute_partial_trace(rho, {0, 1});
  CHECK(max_abs_diff(red.entries(), brute.entries()) < 1e-14);
  red.validate();
}

TEST_CASE("partial_trace agrees with the contraction oracle on random states") {
  RngStream rng(14);
  for (int rep = 0; rep < 10; ++rep) {
    const auto rho = oracle::random_density(4, rng);
    for (std::uint64_t mask : {0x1ull, 0x6ull, 0xbull, 0x5ull}) {
      const auto keep = QubitSet::from_mask(mask, 4);
      const auto fast = partial_trace(rho, keep);
      const auto slow = oracle::brute_partial_trace(rho, keep.indices);
      CHECK(max_abs_diff(fast.entries(), slow.entries()) < 1e-13);
    }
  }
}

TEST_CASE("purity anchors") {
  RngStream rng(15);
  const auto psi = oracle::haar_random_state(3, rng);
  CHECK(purity(pure_to_density(psi)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(maximally_mixed(3)) == doctest::Approx(1.0 / 8.0));
  CHECK(purity(noisy_ghz_state(2, 0.5)) == doctest::Approx(0.4375).epsilon(1e-12));
}

TEST_CASE("trace_distance anchors") {
  const auto zero = pure_to_density(basis_state(1, 0));
  const auto one = pure_to_density(basis_state(1, 1));
  CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
  CHECK(trace_distance(zero, maximally_mixed(1)) == doctest::Approx(0.5));
  CHECK_THROWS(trace_distance(zero, maximally_mixed(2)));
}

TEST_CASE("trace_distance is symmetric and zero iff equal") {
  RngStream rng(16);
  const auto a = oracle::random_density(2, rng);
  const auto b = oracle::random_density(2, rng);
  CHECK(trace_distance(a, b) == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));
  CHECK(trace_distance(a, a) < 1e-14);
  CHECK(trace_distance(a, b) > 1e-6);
}

TEST_CASE("trace_distance triangle inequality on random triples") {
  RngStream rng(17);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 1 + int(rng.uniform_index(4));
    const auto a = oracle::random_density(n, rng);
    const auto b = oracle::random_density(n, rng);
    const auto c = oracle::random_density(n, rng);
    const double ab = trace_distance(a, b);
    const double bc = trace_distance(b, c);
    const double ac = trace_distance(a, c);
    REQUIRE(ac <= ab + bc + 1e-10);
  }
}

TEST_CASE("partial traces compose across disjoint complements") {
  RngStream rng(18);
  const auto rho = oracle::random_density(4, rng);
  // trace out qubit 1, then qubit 3 (index 2 after the first reduction)
  const auto step1 = partial_trace(rho, QubitSet({0, 2, 3}));
  const auto step2 = partial_trace(step1, QubitSet({0, 1}));
  const auto direct = partial_trace(rho, QubitSet({0, 2}));
  CHECK(max_abs_diff(step2.entries(), direct.entries()) < 1e-12);
}

TEST_CASE("reduce_pure matches partial_trace of the outer product") {
  RngStream rng(19);
  for (int n = 2; n <= 5; ++n) {
    const auto psi = oracle::haar_random_state(n, rng);
    const auto rho = pure_to_density(psi);
    for (int rep = 0; rep < 5; ++rep) {
      const std::uint64_t mask = rng.uniform_index(dim_of(n));
      const auto keep = QubitSet::from_mask(mask, n);
      if (keep.size() == 0) continue;
      const auto a = reduce_pure(psi, keep);
      const auto b = partial_trace(rho, keep);
      CHECK(max_abs_diff(a.entries(), b.entries()) < 1e-12);
    }
  }
}

TEST_CASE("purify reproduces the input state") {
  RngStream rng(20);
  for (int n = 1; n <= 3; ++n) {
    const auto rho = oracle::random_density(n, rng);
    const auto pur = purify(rho);
    CHECK(pur.n_ancilla == n);  // full rank
    std::vector<int> sys;
    for (int q = pur.n_ancilla; q < pur.state.n_qubits(); ++q) sys.push_back(q);
    const auto back = reduce_pure(pur.state, QubitSet(sys));
    CHECK(max_abs_diff(back.entries(), rho.entries()) < 1e-12);
  }
  // rank-1 input purifies to itself
  const auto pure_in = pure_to_density(ghz_state(2));
  const auto pur = purify(pure_in);
  CHECK(pur.n_ancilla == 0);
  CHECK(pur.state.n_qubits() == 2);
}
