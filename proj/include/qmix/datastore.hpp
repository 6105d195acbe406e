// Persistence: the QMIX1 binary state format and JSON dataset manifests.
//
// QMIX1 layout (little-endian):
//   magic   5 bytes  "QMIX1"
//   version u16      1
//   kind    u8       0 = density matrix, 1 = pure state
//   n       u8       qubit count
//   payload          row-major complex entries as f64 (re, im) pairs
//   crc     u64      CRC-64/XZ of the payload bytes

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qmix/genesis.hpp"
#include "qmix/types.hpp"

namespace qmix {

class StoreError : public std::runtime_error {
 public:
  StoreError(std::string category, const std::string& msg)
      : std::runtime_error(msg), category_(std::move(category)) {}
  const std::string& category() const { return category_; }

 private:
  std::string category_;
};

std::uint64_t crc64(const unsigned char* data, std::size_t len);

void save_state(const std::string& path, const DensityMatrix& rho);
void save_state(const std::string& path, const PureState& psi);

using StoredState = std::variant<DensityMatrix, PureState>;
StoredState load_state(const std::string& path);

// Loads either kind and returns a density matrix (pure states are
// converted). The loaded state is validated.
DensityMatrix load_state_as_density(const std::string& path);

struct ManifestEntry {
  std::string file;
  int label = 0;
  double cel = 0.0;
  std::uint64_t index = 0;
};

struct ManifestRowRecord {
  std::string generator;
  std::string ansatz;
  int width = 0;
  int depth = 0;
  int count = 0;
  int label = 0;
  double xi = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::vector<ManifestEntry> files;
};

struct DatasetManifest {
  std::string name;
  std::vector<ManifestRowRecord> rows;
};

// Writes state files first and the manifest last; consecutive states with
// the same provenance signature form one manifest row.
DatasetManifest save_dataset(const std::string& dir, const std::string& name,
                             const std::vector<LabeledState>& states,
                             double xi, double epsilon);

struct LoadedDataset {
  DatasetManifest manifest;
  std::vector<LabeledState> states;
};

// Verifies per-row counts against the file lists and loads every state.
LoadedDataset load_dataset(const std::string& dir);

}  // namespace qmix
