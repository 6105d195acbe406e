#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qmix/datastore.hpp"
#include "qmix/linalg.hpp"
#include "qmix/states.hpp"

#include "oracles.hpp"

using namespace qmix;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qmix_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("crc64 known vector") {
  const char* s = "123456789";
  CHECK(crc64(reinterpret_cast<const unsigned char*>(s), 9) ==
        0x995DC9BBDF1939FAull);
}

TEST_CASE("density matrix round-trip is bitwise") {
  TempDir dir;
  const auto zero = pure_to_density(basis_state(2, 0));
  save_state(dir.file("zero.qmix"), zero);
  const auto back = load_state_as_density(dir.file("zero.qmix"));
  CHECK((back.entries() - zero.entries()).cwiseAbs().maxCoeff() == 0.0);

  RngStream rng(60);
  const auto rho = oracle::random_density(3, rng);
  save_state(dir.file("rho.qmix"), rho);
  const auto rho2 = load_state_as_density(dir.file("rho.qmix"));
  REQUIRE(rho2.n_qubits() == 3);
  for (Eigen::Index r = 0; r < rho.entries().rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.entries().cols(); ++c) {
      REQUIRE(rho2.entries()(r, c) == rho.entries()(r, c));
    }
  }
}

TEST_CASE("pure state round-trip is bitwise") {
  TempDir dir;
  RngStream rng(61);
  const auto psi = oracle::haar_random_state(4, rng);
  save_state(dir.file("psi.qmix"), psi);
  const auto stored = load_state(dir.file("psi.qmix"));
  REQUIRE(std::holds_alternative<PureState>(stored));
  const auto& back = std::get<PureState>(stored);
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    REQUIRE(back.amplitudes()(i) == psi.amplitudes()(i));
  }
}

TEST_CASE("corrupted and malformed files are rejected") {
  TempDir dir;
  const auto rho = maximally_mixed(2);
  save_state(dir.file("ok.qmix"), rho);

  // truncation
  {
    std::ifstream in(dir.file("ok.qmix"), std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    std::ofstream out(dir.file("trunc.qmix"), std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size() - 10));
  }
  CHECK_THROWS_AS((void)load_state(dir.file("trunc.qmix")), StoreError);

  // payload corruption -> checksum mismatch
  {
    std::ifstream in(dir.file("ok.qmix"), std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    bytes[20] = char(bytes[20] ^ 0x40);
    std::ofstream out(dir.file("corrupt.qmix"), std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size()));
  }
  try {
    (void)load_state(dir.file("corrupt.qmix"));
    FAIL_CHECK("expected a checksum error");
  } catch (const StoreError& e) {
    CHECK(e.category() == "checksum");
  }

  // bad magic
  {
    std::ofstream out(dir.file("bad.qmix"), std::ios::binary);
    out << "NOTQMIXFILE_____________";
  }
  try {
    (void)load_state(dir.file("bad.qmix"));
    FAIL_CHECK("expected a format error");
  } catch (const StoreError& e) {
    CHECK(e.category() == "format");
  }

  CHECK_THROWS_AS((void)load_state(dir.file("missing.qmix")), StoreError);

  // version byte rejection
  {
    std::ifstream in(dir.file("ok.qmix"), std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    bytes[5] = 9;
    std::ofstream out(dir.file("ver.qmix"), std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size()));
  }
  try {
    (void)load_state(dir.file("ver.qmix"));
    FAIL_CHECK("expected a format error");
  } catch (const StoreError& e) {
    CHECK(e.category() == "format");
  }
}

TEST_CASE("dataset round-trip preserves manifest structure and counts") {
  TempDir dir;
  const auto ent = generate_separable_dataset(2, 2, 8, 4, 77);
  auto mixed = ent;
  GenConfig config;
  config.n_target = 2;
  config.n_ancilla = 2;
  config.seed = 5;
  for (auto& s : generate_entangled_dataset(config, {{AnsatzKind::SEA, 4, 2, 7}})) {
    mixed.push_back(std::move(s));
  }

  const auto manifest =
      save_dataset(dir.path.string(), "roundtrip", mixed, 0.25, 0.5);
  REQUIRE(manifest.rows.size() == 2);
  CHECK(manifest.rows[0].count == 8);
  CHECK(manifest.rows[1].count == 7);

  const auto loaded = load_dataset(dir.path.string());
  REQUIRE(loaded.states.size() == mixed.size());
  CHECK(loaded.manifest.name == "roundtrip");
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    REQUIRE(loaded.states[i].label == mixed[i].label);
    REQUIRE(loaded.states[i].cel == mixed[i].cel);
    REQUIRE((loaded.states[i].state.entries() - mixed[i].state.entries())
                .cwiseAbs()
                .maxCoeff() == 0.0);
  }
  CHECK(loaded.states[8].provenance.ansatz == "SEA");

  // count mismatch is detected
  fs::remove(dir.path / "state_000003.qmix");
  CHECK_THROWS_AS((void)load_dataset(dir.path.string()), StoreError);
}

TEST_CASE("large dataset directory round-trip keeps counts") {
  TempDir dir;
  const auto states = generate_separable_dataset(2, 2, 6000, 4, 123);
  const auto manifest =
      save_dataset(dir.path.string(), "bulk", states, 0.25, 0.5);
  int total = 0;
  for (const auto& row : manifest.rows) total += row.count;
  REQUIRE(total == 6000);

  const auto loaded = load_dataset(dir.path.string());
  REQUIRE(loaded.states.size() == 6000);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    if (entry.path().extension() == ".qmix") ++files;
  }
  CHECK(files == 6000);
}
