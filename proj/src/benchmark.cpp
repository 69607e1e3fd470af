#include "mfp/benchmark.hpp"

#include <cstdio>
#include <sstream>

#include "mfp/metrics.hpp"

namespace mfp {

std::vector<BenchmarkCase> supervised_benchmarks() {
  return {
      {"blatz-ko", make_incompressible(Family::BlatzKo, {50.0})},
      {"demiray", make_incompressible(Family::Demiray, {10.0}, {8.0})},
      {"mooney-rivlin", make_incompressible(Family::MooneyRivlin, {10.0, 40.0})},
      {"neo-hooke", make_incompressible(Family::NeoHooke, {10.0})},
      {"ogden", make_incompressible(Family::Ogden, {5.0}, {8.0})},
  };
}

std::vector<BenchmarkCase> unsupervised_benchmarks() {
  return {
      {"blatz-ko", make_compressible(Family::BlatzKo, 5.0, {50.0})},
      {"demiray", make_compressible(Family::Demiray, 5.0, {10.0}, {8.0})},
      {"mooney-rivlin",
       make_compressible(Family::MooneyRivlin, 20.0, {10.0, 40.0})},
      {"neo-hooke", make_compressible(Family::NeoHooke, 20.0, {10.0})},
  };
}

namespace {

template <typename QueryFn>
std::vector<BenchmarkRow> run_rows(const Database& db,
                                   const std::vector<BenchmarkCase>& cases,
                                   const std::vector<double>& noise_levels,
                                   const std::vector<std::uint64_t>& seeds,
                                   bool with_compr, QueryFn make_noisy_query) {
  std::vector<BenchmarkRow> rows;
  for (const BenchmarkCase& bc : cases) {
    std::vector<double> clean;
    bool clean_ok = true;
    std::string clean_error;
    try {
      clean = make_noisy_query(bc.truth, NoiseSpec{0.0, 0});
    } catch (const Error& e) {
      clean_ok = false;
      clean_error = e.category() + ": " + e.what();
    }
    for (double level : noise_levels) {
      for (std::uint64_t seed : seeds) {
        BenchmarkRow row;
        row.benchmark = bc.name;
        row.noise_level = level;
        row.seed = seed;
        if (!clean_ok) {
          row.error = clean_error;
          rows.push_back(std::move(row));
          continue;
        }
        try {
          std::vector<double> query =
              level == 0.0
                  ? clean
                  : (db.kind == ExperimentKind::Supervised
                         ? add_noise(clean, {level, seed})
                         : add_noise_split(clean, db.n_force, {level, seed}));
          const MatchResult m = match(db, query);
          row.discovered = m.discovered;
          row.similarity = m.similarity;
          row.e_incompr = e_incompr(bc.truth, m.discovered);
          if (with_compr) row.e_compr = e_compr(bc.truth, m.discovered);
          row.ok = true;
        } catch (const Error& e) {
          row.error = e.category() + ": " + e.what();
        }
        rows.push_back(std::move(row));
        if (level == 0.0) break;  // noiseless rows are seed-independent
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<BenchmarkRow> run_supervised_benchmark(
    const Database& db, const HomogeneousProtocol& protocol,
    const std::vector<BenchmarkCase>& cases,
    const std::vector<double>& noise_levels,
    const std::vector<std::uint64_t>& seeds) {
  return run_rows(db, cases, noise_levels, seeds, /*with_compr=*/false,
                  [&](const MaterialModel& truth, const NoiseSpec&) {
                    return simulate_fingerprint(truth, protocol);
                  });
}

std::vector<BenchmarkRow> run_unsupervised_benchmark(
    const Database& db, const PlateProtocol& protocol,
    const std::vector<BenchmarkCase>& cases,
    const std::vector<double>& noise_levels,
    const std::vector<std::uint64_t>& seeds) {
  const Mesh mesh =
      build_plate_mesh(protocol.geometry, protocol.refinement_level);
  return run_rows(db, cases, noise_levels, seeds, /*with_compr=*/true,
                  [&](const MaterialModel& truth, const NoiseSpec&) {
                    return fem_fingerprint(truth, mesh, protocol.program,
                                           protocol.newton)
                        .concatenated();
                  });
}

std::string format_benchmark_table(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-14s %7s %6s  %-52s %10s %10s\n",
                "benchmark", "noise", "seed", "discovered", "E_incompr",
                "E_compr");
  os << buf;
  for (const BenchmarkRow& r : rows) {
    if (!r.ok) {
      std::snprintf(buf, sizeof(buf), "%-14s %6.1f%% %6llu  FAILED: %s\n",
                    r.benchmark.c_str(), 100.0 * r.noise_level,
                    static_cast<unsigned long long>(r.seed), r.error.c_str());
      os << buf;
      continue;
    }
    std::snprintf(buf, sizeof(buf), "%-14s %6.1f%% %6llu  %-52s %10.3e",
                  r.benchmark.c_str(), 100.0 * r.noise_level,
                  static_cast<unsigned long long>(r.seed),
                  r.discovered.describe().c_str(), r.e_incompr);
    os << buf;
    if (r.e_compr) {
      std::snprintf(buf, sizeof(buf), " %10.3e", *r.e_compr);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

std::string format_benchmark_jsonl(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream os;
  for (const BenchmarkRow& r : rows) {
    nlohmann::json j{
        {"benchmark", r.benchmark},
        {"noise_level", r.noise_level},
        {"seed", r.seed},
        {"ok", r.ok},
    };
    if (r.ok) {
      j["discovered"] = {{"family", family_name(r.discovered.family)},
                         {"theta", r.discovered.theta},
                         {"alpha", r.discovered.alpha},
                         {"expression", r.discovered.describe()}};
      j["similarity"] = r.similarity;
      j["e_incompr"] = r.e_incompr;
      if (r.e_compr) j["e_compr"] = *r.e_compr;
    } else {
      j["error"] = r.error;
    }
    os << j.dump() << "\n";
  }
  return os.str();
}

}  // namespace mfp
