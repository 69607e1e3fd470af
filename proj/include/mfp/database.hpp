#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfp/model.hpp"

namespace mfp {

enum class ExperimentKind : std::uint32_t {
  Supervised = 0,    // homogeneous UT+SS stress fingerprints
  Unsupervised = 1,  // plate-with-hole force + probe-displacement fingerprints
};

/// Metadata stored next to each normalized fingerprint row.
struct DatabaseRecord {
  Family family = Family::NeoHooke;
  std::vector<double> theta_bar;  // theta / normalization factor
  std::vector<double> alpha;
  double source_norm = 1.0;  // ||f|| (supervised) or ||f_R|| (unsupervised)
};

/// Immutable fingerprint database. Rows of `fingerprints` are normalized:
/// unit Euclidean norm for supervised rows; for unsupervised rows the force
/// block [0, n_force) and the displacement block [n_force, n_f) are each
/// unit-normalized, so the row norm is sqrt(2).
struct Database {
  ExperimentKind kind = ExperimentKind::Supervised;
  nlohmann::json protocol;  // canonical experiment descriptor
  std::size_t n_f = 0;
  std::size_t n_force = 0;  // == n_f for supervised databases
  std::vector<double> fingerprints;  // row-major, size() == n_d * n_f
  std::vector<DatabaseRecord> records;

  std::size_t size() const { return records.size(); }

  std::span<const double> row(std::size_t i) const {
    return {fingerprints.data() + i * n_f, n_f};
  }

  std::uint64_t protocol_hash() const;
};

std::uint64_t fnv1a64(std::string_view data);

/// Reconstructs the model stored at a record: incompressible for supervised
/// databases, compressible (theta_bar[0] = scaled theta0) otherwise.
MaterialModel record_model(const Database& db, std::size_t index);

}  // namespace mfp
