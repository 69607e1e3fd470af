#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfp/database.hpp"

namespace mfp {

struct MatchOptions {
  std::size_t top_k = 5;
  double sparsity_weight = 0.0;  // penalizes ||theta||_0 in the score
  unsigned n_threads = 0;        // 0 = hardware concurrency
};

struct MatchEntry {
  std::size_t index = 0;
  double similarity = 0.0;  // inner product of normalized fingerprints
  double score = 0.0;       // similarity - sparsity_weight * ||theta||_0
};

struct MatchResult {
  std::size_t best_index = 0;
  double similarity = 0.0;
  double score = 0.0;
  bool tie = false;  // another record attains the same score exactly
  double query_norm = 0.0;  // ||f*|| (supervised) or ||f*_R|| (unsupervised)
  MaterialModel discovered;  // rescaled via query_norm
  std::vector<MatchEntry> top;
};

/// Normalizes a raw query fingerprint per the database kind's rule and
/// scans all records for the highest inner product. The parallel row-block
/// scan is bitwise identical to a sequential scan; ties break to the lowest
/// index. Throws ProtocolMismatch on a length mismatch and ZeroFingerprint
/// when a query block has zero norm.
MatchResult match(const Database& db, std::span<const double> raw_query,
                  const MatchOptions& options = {});

/// theta* = norm * theta_bar, alpha* = alpha.
MaterialModel rescale(const Database& db, std::size_t index, double norm);

}  // namespace mfp
