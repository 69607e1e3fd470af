// Command-line frontend for the material fingerprinting pipeline:
// database generation, query matching, benchmark runs, standalone FEM
// experiments, and CSV export.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfp/benchmark.hpp"
#include "mfp/io.hpp"
#include "mfp/matcher.hpp"
#include "mfp/metrics.hpp"
#include "mfp/supervised.hpp"
#include "mfp/unsupervised.hpp"

namespace {

using namespace mfp;

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

// Rebuilds the plate protocol stored in an unsupervised database header so
// benchmark queries are simulated under exactly the database's experiment.
PlateProtocol plate_protocol_from(const nlohmann::json& desc) {
  PlateProtocol p;
  p.geometry.halfwidth = desc.at("geometry").at("halfwidth").get<double>();
  p.geometry.hole_radius = desc.at("geometry").at("hole_radius").get<double>();
  p.refinement_level = desc.at("refinement_level").get<int>();
  p.program.n_steps = desc.at("program").at("n_steps").get<int>();
  p.program.delta_max = desc.at("program").at("delta_max").get<double>();
  p.newton.rel_tol = desc.at("newton").at("rel_tol").get<double>();
  p.newton.max_iters = desc.at("newton").at("max_iters").get<int>();
  return p;
}

HomogeneousProtocol homogeneous_protocol_from(const nlohmann::json& desc) {
  HomogeneousProtocol p;
  p.ut_stretches = desc.at("ut_stretches").get<std::vector<double>>();
  p.ss_shears = desc.at("ss_shears").get<std::vector<double>>();
  return p;
}

void print_match(const Database& db, const MatchResult& m) {
  std::printf("best match: record %zu  similarity %.15g  score %.15g%s\n",
              m.best_index, m.similarity, m.score, m.tie ? "  (tie)" : "");
  std::printf("query norm: %.15g\n", m.query_norm);
  std::printf("discovered: %s\n", m.discovered.describe().c_str());
  std::printf("%-6s %-14s %-22s %s\n", "rank", "record", "similarity",
              "family");
  for (std::size_t k = 0; k < m.top.size(); ++k) {
    const MatchEntry& e = m.top[k];
    std::printf("%-6zu %-14zu %-22.15g %s\n", k + 1, e.index, e.similarity,
                family_name(db.records[e.index].family));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"material fingerprinting pipeline"};
  app.require_subcommand(1);

  // ---- gen-db ----
  auto* gen = app.add_subcommand("gen-db", "generate a fingerprint database");
  std::string mode = "supervised";
  std::size_t grid_points = 0;  // 0 = mode default
  int refinement = 2;
  unsigned workers = 0;
  bool log_spacing = false;
  std::string gen_out;
  gen->add_option("--mode", mode, "supervised or unsupervised")
      ->check(CLI::IsMember({"supervised", "unsupervised"}));
  gen->add_option("--grid-points", grid_points,
                  "points per parameter axis (default: 100)");
  gen->add_option("--refinement", refinement,
                  "plate mesh refinement level (unsupervised)");
  gen->add_option("--workers", workers,
                  "FEM worker threads, 0 = all cores (unsupervised)");
  gen->add_flag("--log-spacing", log_spacing, "logarithmic parameter grids");
  gen->add_option("--out", gen_out, "output database path")->required();

  // ---- match ----
  auto* mt = app.add_subcommand("match", "match a query fingerprint");
  std::string match_db, match_query;
  std::size_t top_k = 5;
  double sparsity = 0.0;
  double scale = 1.0;
  mt->add_option("--db", match_db, "database file")->required();
  mt->add_option("--query", match_query, "query CSV file")->required();
  mt->add_option("--top-k", top_k, "number of candidates to report");
  mt->add_option("--sparsity", sparsity, "parameter-count penalty weight");
  mt->add_option("--scale", scale,
                 "specimen scale factor applied to the raw query");

  // ---- benchmark ----
  auto* bench = app.add_subcommand("benchmark", "run the reference benchmarks");
  std::string bench_db, jsonl_out;
  std::vector<double> noise_levels{0.0, 0.01, 0.05};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  bench->add_option("--db", bench_db, "database file")->required();
  bench->add_option("--noise", noise_levels, "noise levels");
  bench->add_option("--seeds", seeds, "noise seeds");
  bench->add_option("--jsonl", jsonl_out, "also write JSON-lines rows here");

  // ---- fem-run ----
  auto* fem = app.add_subcommand("fem-run", "solve one plate experiment");
  std::string family_name_arg = "neo-hooke";
  std::vector<double> theta{1.0, 1.0};
  std::vector<double> alpha;
  int fem_refinement = 2;
  int n_steps = 10;
  double delta_max = 0.3;
  std::string dump_fields;
  fem->add_option("--family", family_name_arg, "material family");
  fem->add_option("--theta", theta, "theta0 followed by family thetas");
  fem->add_option("--alpha", alpha, "family alpha parameters");
  fem->add_option("--refinement", fem_refinement, "mesh refinement level");
  fem->add_option("--steps", n_steps, "load steps");
  fem->add_option("--delta-max", delta_max, "final pull displacement");
  fem->add_option("--dump-fields", dump_fields,
                  "write final nodal field CSV here");

  // ---- export ----
  auto* exp = app.add_subcommand("export", "export a database");
  std::string exp_db, exp_out, exp_format = "csv";
  exp->add_option("--db", exp_db, "database file")->required();
  exp->add_option("--out", exp_out, "output path")->required();
  exp->add_option("--format", exp_format, "export format")
      ->check(CLI::IsMember({"csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (gen->parsed()) {
    Database db;
    if (mode == "supervised") {
      SupervisedGridSpec spec;
      if (grid_points) spec.points_per_axis = grid_points;
      spec.log_spacing = log_spacing;
      db = generate_supervised_database(HomogeneousProtocol::standard(), spec);
    } else {
      PlateProtocol protocol;
      protocol.refinement_level = refinement;
      UnsupervisedGridSpec spec;
      if (grid_points) spec.points_per_axis = grid_points;
      spec.log_spacing = log_spacing;
      db = generate_unsupervised_database(protocol, spec, workers);
    }
    write_database(db, gen_out);
    std::printf("wrote %zu records (n_f = %zu) to %s\n", db.size(), db.n_f,
                gen_out.c_str());
    std::printf("protocol_hash=%s\n", hex64(db.protocol_hash()).c_str());
  } else if (mt->parsed()) {
    const Database db = read_database(match_db);
    const QueryFile q = read_query_csv(match_query);
    if (q.protocol_hash != db.protocol_hash()) {
      throw ProtocolMismatch("query protocol hash " + hex64(q.protocol_hash) +
                             " does not match database hash " +
                             hex64(db.protocol_hash()));
    }
    std::vector<double> values = q.values;
    for (double& v : values) v *= scale;
    MatchOptions opt;
    opt.top_k = top_k;
    opt.sparsity_weight = sparsity;
    print_match(db, match(db, values, opt));
  } else if (bench->parsed()) {
    const Database db = read_database(bench_db);
    std::vector<BenchmarkRow> rows;
    if (db.kind == ExperimentKind::Supervised) {
      rows = run_supervised_benchmark(
          db, homogeneous_protocol_from(db.protocol), supervised_benchmarks(),
          noise_levels, seeds);
    } else {
      rows = run_unsupervised_benchmark(db, plate_protocol_from(db.protocol),
                                        unsupervised_benchmarks(),
                                        noise_levels, seeds);
    }
    std::fputs(format_benchmark_table(rows).c_str(), stdout);
    if (!jsonl_out.empty()) {
      std::ofstream os(jsonl_out);
      if (!os) throw IoError("cannot open " + jsonl_out + " for writing");
      os << format_benchmark_jsonl(rows);
    }
  } else if (fem->parsed()) {
    if (theta.size() < 2) {
      throw UsageError("--theta needs theta0 plus the family parameters");
    }
    const MaterialModel model = make_compressible(
        family_from_name(family_name_arg), theta[0],
        {theta.begin() + 1, theta.end()}, alpha);
    const Mesh mesh = build_plate_mesh({}, fem_refinement);
    LoadProgram program;
    program.n_steps = n_steps;
    program.delta_max = delta_max;
    const FemSolution sol = solve(model, mesh, program);

    std::printf("model: %s\n", model.describe().c_str());
    std::printf("%-6s %-14s %-20s %-20s %s\n", "step", "delta", "R1", "R2",
                "newton-iters");
    const std::vector<double> deltas = program.deltas();
    for (std::size_t s = 0; s < deltas.size(); ++s) {
      std::printf("%-6zu %-14.6g %-20.12g %-20.12g %d\n", s + 1, deltas[s],
                  sol.R1[s], sol.R2[s], sol.newton_iterations[s]);
    }
    if (!dump_fields.empty()) {
      std::ofstream os(dump_fields);
      if (!os) throw IoError("cannot open " + dump_fields + " for writing");
      os << "node,X1,X2,u1,u2\n";
      const Eigen::VectorXd& u = sol.displacements.back();
      for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
        os << n << "," << format_double(mesh.nodes[n].x()) << ","
           << format_double(mesh.nodes[n].y()) << ","
           << format_double(u(2 * n)) << "," << format_double(u(2 * n + 1))
           << "\n";
      }
      std::printf("wrote nodal fields to %s\n", dump_fields.c_str());
    }
  } else if (exp->parsed()) {
    export_database_csv(read_database(exp_db), exp_out);
    std::printf("exported %s to %s\n", exp_db.c_str(), exp_out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mfp::UsageError& e) {
    std::fprintf(stderr, "UsageError: %s\n", e.what());
    return 2;
  } catch (const mfp::Error& e) {
    std::fprintf(stderr, "%s: %s\n", e.category().c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "InternalError: %s\n", e.what());
    return 1;
  }
}
