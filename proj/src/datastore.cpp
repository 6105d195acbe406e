#include "qmix/datastore.hpp"

#include "qmix/linalg.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qmix {

namespace {

constexpr char kMagic[5] = {'Q', 'M', 'I', 'X', '1'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::string& buf, std::uint16_t v) {
  buf.push_back(char(v & 0xFF));
  buf.push_back(char((v >> 8) & 0xFF));
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(char((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& buf, double d) {
  put_u64(buf, std::bit_cast<std::uint64_t>(d));
}

std::uint16_t get_u16(const unsigned char* p) {
  return std::uint16_t(p[0] | (std::uint16_t(p[1]) << 8));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

double get_f64(const unsigned char* p) {
  return std::bit_cast<double>(get_u64(p));
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StoreError("io", "cannot open for writing: " + path);
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw StoreError("io", "write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("io", "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string encode_state(int kind, int n_qubits,
                         const std::vector<cplx>& entries) {
  std::string buf;
  buf.reserve(13 + entries.size() * 16 + 8);
  buf.append(kMagic, sizeof(kMagic));
  put_u16(buf, kVersion);
  buf.push_back(char(kind));
  buf.push_back(char(n_qubits));

  std::string payload;
  payload.reserve(entries.size() * 16);
  for (const cplx& z : entries) {
    put_f64(payload, z.real());
    put_f64(payload, z.imag());
  }
  buf += payload;
  put_u64(buf, crc64(reinterpret_cast<const unsigned char*>(payload.data()),
                     payload.size()));
  return buf;
}

}  // namespace

std::uint64_t crc64(const unsigned char* data, std::size_t len) {
  // CRC-64/XZ: reflected, poly 0xC96C5795D7870F42, init/xorout all-ones.
  static const std::array<std::uint64_t, 256> table = [] {
    std::array<std::uint64_t, 256> t{};
    for (std::uint64_t i = 0; i < 256; ++i) {
      std::uint64_t c = i;
      for (int k = 0; k < 8; ++k) {
        c = (c & 1) ? (0xC96C5795D7870F42ull ^ (c >> 1)) : (c >> 1);
      }
      t[std::size_t(i)] = c;
    }
    return t;
  }();
  std::uint64_t crc = ~std::uint64_t(0);
  for (std::size_t i = 0; i < len; ++i) {
    crc = table[std::size_t((crc ^ data[i]) & 0xFF)] ^ (crc >> 8);
  }
  return ~crc;
}

void save_state(const std::string& path, const DensityMatrix& rho) {
  std::vector<cplx> entries;
  entries.reserve(rho.dim() * rho.dim());
  for (Eigen::Index r = 0; r < rho.entries().rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.entries().cols(); ++c) {
      entries.push_back(rho.entries()(r, c));
    }
  }
  write_file(path, encode_state(0, rho.n_qubits(), entries));
}

void save_state(const std::string& path, const PureState& psi) {
  std::vector<cplx> entries(psi.amplitudes().data(),
                            psi.amplitudes().data() + psi.amplitudes().size());
  write_file(path, encode_state(1, psi.n_qubits(), entries));
}

StoredState load_state(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < 13 + 8) throw StoreError("format", "truncated: " + path);
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw StoreError("format", "bad magic: " + path);
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint16_t version = get_u16(p + 5);
  if (version != kVersion) {
    throw StoreError("format", "unsupported version: " + path);
  }
  const int kind = p[7];
  const int n = p[8];
  if (kind != 0 && kind != 1) {
    throw StoreError("format", "unknown state kind: " + path);
  }
  const std::size_t count =
      (kind == 0) ? dim_of(n) * dim_of(n) : dim_of(n);
  const std::size_t payload_len = count * 16;
  if (bytes.size() != 9 + payload_len + 8) {
    throw StoreError("format", "truncated or oversized payload: " + path);
  }
  const unsigned char* payload = p + 9;
  const std::uint64_t want = get_u64(payload + payload_len);
  if (crc64(payload, payload_len) != want) {
    throw StoreError("checksum", "checksum mismatch: " + path);
  }

  std::vector<cplx> entries(count);
  for (std::size_t i = 0; i < count; ++i) {
    entries[i] =
        cplx{get_f64(payload + 16 * i), get_f64(payload + 16 * i + 8)};
  }
  if (kind == 0) {
    Eigen::MatrixXcd m(Eigen::Index(dim_of(n)), Eigen::Index(dim_of(n)));
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = entries[i++];
    }
    return DensityMatrix(n, std::move(m));
  }
  Eigen::VectorXcd amp(Eigen::Index(dim_of(n)));
  for (std::size_t i = 0; i < count; ++i) amp(Eigen::Index(i)) = entries[i];
  return PureState(n, std::move(amp));
}

DensityMatrix load_state_as_density(const std::string& path) {
  auto stored = load_state(path);
  if (std::holds_alternative<DensityMatrix>(stored)) {
    auto rho = std::get<DensityMatrix>(std::move(stored));
    rho.validate();
    return rho;
  }
  const auto& psi = std::get<PureState>(stored);
  psi.check_normalized(1e-10);
  return pure_to_density(psi);
}

namespace {

using nlohmann::json;

std::string row_key(const Provenance& p) {
  return p.generator + "|" + p.ansatz + "|" + std::to_string(p.width) + "|" +
         std::to_string(p.depth) + "|" + std::to_string(p.seed);
}

}  // namespace

DatasetManifest save_dataset(const std::string& dir, const std::string& name,
                             const std::vector<LabeledState>& states,
                             double xi, double epsilon) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  DatasetManifest manifest;
  manifest.name = name;

  std::string current_key;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    char fname[32];
    std::snprintf(fname, sizeof(fname), "state_%06zu.qmix", i);
    save_state((fs::path(dir) / fname).string(), s.state);

    const std::string key = row_key(s.provenance);
    if (manifest.rows.empty() || key != current_key) {
      ManifestRowRecord row;
      row.generator = s.provenance.generator;
      row.ansatz = s.provenance.ansatz;
      row.width = s.provenance.width;
      row.depth = s.provenance.depth;
      row.label = s.label;
      row.xi = xi;
      row.epsilon = epsilon;
      row.seed = s.provenance.seed;
      manifest.rows.push_back(std::move(row));
      current_key = key;
    }
    auto& row = manifest.rows.back();
    row.files.push_back(ManifestEntry{fname, s.label, s.cel, s.provenance.index});
    row.count = int(row.files.size());
  }

  json j;
  j["name"] = manifest.name;
  j["rows"] = json::array();
  for (const auto& row : manifest.rows) {
    json jr;
    jr["generator"] = row.generator;
    jr["ansatz"] = row.ansatz;
    jr["width"] = row.width;
    jr["depth"] = row.depth;
    jr["count"] = row.count;
    jr["label"] = row.label;
    jr["xi"] = row.xi;
    jr["epsilon"] = row.epsilon;
    jr["seed"] = row.seed;
    jr["files"] = json::array();
    for (const auto& f : row.files) {
      jr["files"].push_back(
          {{"file", f.file}, {"label", f.label}, {"cel", f.cel}, {"index", f.index}});
    }
    j["rows"].push_back(std::move(jr));
  }
  // manifest written last so a partial generation never looks complete
  write_file((fs::path(dir) / "manifest.json").string(), j.dump(2) + "\n");
  return manifest;
}

LoadedDataset load_dataset(const std::string& dir) {
  namespace fs = std::filesystem;
  const std::string text = read_file((fs::path(dir) / "manifest.json").string());
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StoreError("format", std::string("bad manifest: ") + e.what());
  }

  LoadedDataset out;
  out.manifest.name = j.value("name", "");
  for (const auto& jr : j.at("rows")) {
    ManifestRowRecord row;
    row.generator = jr.value("generator", "");
    row.ansatz = jr.value("ansatz", "");
    row.width = jr.at("width").get<int>();
    row.depth = jr.at("depth").get<int>();
    row.count = jr.at("count").get<int>();
    row.label = jr.at("label").get<int>();
    row.xi = jr.value("xi", 0.0);
    row.epsilon = jr.value("epsilon", 0.0);
    row.seed = jr.at("seed").get<std::uint64_t>();
    for (const auto& jf : jr.at("files")) {
      row.files.push_back(ManifestEntry{jf.at("file").get<std::string>(),
                                        jf.at("label").get<int>(),
                                        jf.at("cel").get<double>(),
                                        jf.at("index").get<std::uint64_t>()});
    }
    if (int(row.files.size()) != row.count) {
      throw StoreError("format", "manifest count does not match file list");
    }
    for (const auto& f : row.files) {
      const auto path = (fs::path(dir) / f.file).string();
      LabeledState s{load_state_as_density(path), f.label, f.cel,
                     Provenance{row.generator, row.ansatz, row.width, row.depth,
                                row.seed, f.index}};
      out.states.push_back(std::move(s));
    }
    out.manifest.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace qmix
