#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfp/database.hpp"
#include "mfp/matcher.hpp"
#include "mfp/model.hpp"
#include "mfp/noise.hpp"
#include "mfp/supervised.hpp"
#include "mfp/unsupervised.hpp"

namespace mfp {

struct BenchmarkCase {
  std::string name;
  MaterialModel truth;
};

/// The five supervised reference materials (incompressible).
std::vector<BenchmarkCase> supervised_benchmarks();

/// The four unsupervised reference materials (compressible penalty).
std::vector<BenchmarkCase> unsupervised_benchmarks();

struct BenchmarkRow {
  std::string benchmark;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // category: message, when !ok
  MaterialModel discovered;
  double similarity = 0.0;
  double e_incompr = 0.0;
  std::optional<double> e_compr;  // unsupervised runs only
};

/// simulate truth fingerprint -> add noise -> match -> rescale -> E metrics,
/// one row per (benchmark, noise level, seed). Per-row failures are
/// captured in the row instead of aborting the run.
std::vector<BenchmarkRow> run_supervised_benchmark(
    const Database& db, const HomogeneousProtocol& protocol,
    const std::vector<BenchmarkCase>& cases,
    const std::vector<double>& noise_levels,
    const std::vector<std::uint64_t>& seeds);

std::vector<BenchmarkRow> run_unsupervised_benchmark(
    const Database& db, const PlateProtocol& protocol,
    const std::vector<BenchmarkCase>& cases,
    const std::vector<double>& noise_levels,
    const std::vector<std::uint64_t>& seeds);

std::string format_benchmark_table(const std::vector<BenchmarkRow>& rows);
std::string format_benchmark_jsonl(const std::vector<BenchmarkRow>& rows);

}  // namespace mfp
