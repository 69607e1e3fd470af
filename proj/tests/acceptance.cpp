// Acceptance gate: one check block per release criterion, each printing a
// single PASS/FAIL line. The process exits nonzero if any block fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mfp/benchmark.hpp"
#include "mfp/fem.hpp"
#include "mfp/matcher.hpp"
#include "mfp/metrics.hpp"
#include "mfp/noise.hpp"
#include "mfp/supervised.hpp"
#include "mfp/unsupervised.hpp"

using namespace mfp;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

#define REQUIRE_C(cond)                                                     \
  do {                                                                      \
    if (!(cond)) {                                                          \
      g_notes.push_back(std::string("    failed: ") + #cond + " at line " + \
                        std::to_string(__LINE__));                          \
      return false;                                                         \
    }                                                                       \
  } while (0)

void criterion(int number, const std::string& title,
               const std::function<bool()>& body) {
  g_notes.clear();
  bool ok = false;
  try {
    ok = body();
  } catch (const Error& e) {
    g_notes.push_back("    exception " + e.category() + ": " + e.what());
  } catch (const std::exception& e) {
    g_notes.push_back(std::string("    exception: ") + e.what());
  }
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", number,
              title.c_str());
  for (const std::string& n : g_notes) std::printf("%s\n", n.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool theta_close(const MaterialModel& a, const MaterialModel& b, double tol) {
  if (a.theta.size() != b.theta.size() || a.alpha.size() != b.alpha.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.theta.size(); ++i) {
    if (std::abs(a.theta[i] - b.theta[i]) > tol * std::abs(b.theta[i])) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.alpha.size(); ++i) {
    if (std::abs(a.alpha[i] - b.alpha[i]) > tol * std::abs(b.alpha[i])) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

bool supervised_exact_recovery() {
  const auto t0 = Clock::now();
  const auto protocol = HomogeneousProtocol::standard();
  const Database db = generate_supervised_database(protocol);
  REQUIRE_C(db.size() == 502);

  const std::vector<MaterialModel> on_grid = {
      make_incompressible(Family::BlatzKo, {50.0}),
      make_incompressible(Family::Demiray, {10.0}, {8.0}),
      make_incompressible(Family::NeoHooke, {10.0}),
      make_incompressible(Family::Ogden, {5.0}, {8.0}),
  };
  for (const MaterialModel& truth : on_grid) {
    const MatchResult m = match(db, simulate_fingerprint(truth, protocol));
    REQUIRE_C(m.discovered.family == truth.family);
    REQUIRE_C(theta_close(m.discovered, truth, 1e-9));
    REQUIRE_C(e_incompr(truth, m.discovered) <= 1e-12);
  }
  // Off-grid Mooney-Rivlin benchmark still runs; no exactness asserted.
  const auto mr = make_incompressible(Family::MooneyRivlin, {10.0, 40.0});
  match(db, simulate_fingerprint(mr, protocol));

  const double elapsed = seconds_since(t0);
  g_notes.push_back("    database + 5 matches in " + std::to_string(elapsed) +
                    " s");
  REQUIRE_C(elapsed < 5.0);
  return true;
}

bool metric_reproduction() {
  bool ok = true;
  auto check = [&](const char* label, double got, double want, double tol) {
    const double rel = std::abs(got - want) / want;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "    %-22s recomputed %.3e, published %.3e (rel %.1f%%)",
                  label, got, want, 100.0 * rel);
    g_notes.push_back(buf);
    if (rel > tol) ok = false;
  };

  // Published supervised error values for their printed discovered models.
  check("blatz-ko 1% (sup)",
        e_incompr(make_incompressible(Family::BlatzKo, {50.0}),
                  make_incompressible(Family::BlatzKo, {50.35})),
        6.98e-3, 0.05);
  check("mooney-rivlin 1%",
        e_incompr(make_incompressible(Family::MooneyRivlin, {10.0, 40.0}),
                  make_incompressible(Family::MooneyRivlin, {9.47, 40.73})),
        3.70e-3, 0.05);
  check("mooney-rivlin 5%",
        e_incompr(make_incompressible(Family::MooneyRivlin, {10.0, 40.0}),
                  make_incompressible(Family::MooneyRivlin, {12.28, 36.83})),
        1.69e-2, 0.05);

  // Published compressible pairs.
  const auto bk_truth = make_compressible(Family::BlatzKo, 5.0, {50.0});
  check("blatz-ko 1% (compr)",
        e_compr(bk_truth, make_compressible(Family::BlatzKo, 5.05, {49.52})),
        8.61e-3, 0.10);
  check("blatz-ko 5% (compr)",
        e_compr(bk_truth, make_compressible(Family::BlatzKo, 5.19, {48.25})),
        3.13e-2, 0.10);

  // The published Demiray value 6.27e-4 equals |Δθ|/θ for the exact grid
  // ratio θ0/θ2 = 0.5; the printed parameters (10.01, 8.00, 5.00) round the
  // true discovered θ2 ≈ 10.0063 to two decimals, and that rounding error
  // (0.004) is of the same order as Δθ itself. Recomputing from the printed
  // digits therefore gives ~9.8e-4 and cannot land within 10%.
  check("demiray 1% (compr)",
        e_compr(make_compressible(Family::Demiray, 5.0, {10.0}, {8.0}),
                make_compressible(Family::Demiray, 5.0, {10.01}, {8.0})),
        6.27e-4, 0.10);
  return ok;
}

// Shared by criteria 3 and 4.
struct NoiseStudy {
  std::vector<BenchmarkRow> rows_1pct;
  std::vector<BenchmarkRow> rows_5pct;
  double elapsed = 0.0;
};

NoiseStudy& noise_study() {
  static NoiseStudy study = [] {
    NoiseStudy s;
    const auto t0 = Clock::now();
    const auto protocol = HomogeneousProtocol::standard();
    const Database db = generate_supervised_database(protocol);
    std::vector<std::uint64_t> seeds(100);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i + 1;
    s.rows_1pct = run_supervised_benchmark(db, protocol,
                                           supervised_benchmarks(), {0.01},
                                           seeds);
    s.rows_5pct = run_supervised_benchmark(db, protocol,
                                           supervised_benchmarks(), {0.05},
                                           seeds);
    s.elapsed = seconds_since(t0);
    return s;
  }();
  return study;
}

bool family_equivalent(Family truth, Family discovered) {
  if (truth == discovered) return true;
  return (truth == Family::NeoHooke && discovered == Family::Ogden) ||
         (truth == Family::Ogden && discovered == Family::NeoHooke);
}

bool noise_robustness() {
  const NoiseStudy& s = noise_study();
  bool ok = true;
  for (const BenchmarkCase& bc : supervised_benchmarks()) {
    std::vector<double> e1, e5;
    int family_hits = 0, errors = 0;
    // Rows whose discovered model has no valid energy on the metric domain
    // (e.g. a Gent record past its locking limit) count as infinite error.
    for (const BenchmarkRow& r : s.rows_1pct) {
      if (r.benchmark != bc.name) continue;
      e1.push_back(r.ok ? r.e_incompr
                        : std::numeric_limits<double>::infinity());
      if (!r.ok) ++errors;
      if (r.ok && family_equivalent(bc.truth.family, r.discovered.family)) {
        ++family_hits;
      }
    }
    for (const BenchmarkRow& r : s.rows_5pct) {
      if (r.benchmark != bc.name) continue;
      e5.push_back(r.ok ? r.e_incompr
                        : std::numeric_limits<double>::infinity());
      if (!r.ok) ++errors;
    }
    REQUIRE_C(e1.size() == 100);
    const bool bench_ok =
        median(e1) <= 2e-2 && median(e5) <= 0.3 && family_hits >= 80;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "    %-14s median E: %.2e (1%%), %.2e (5%%); family "
                  "%d/100; %d undefined%s",
                  bc.name.c_str(), median(e1), median(e5), family_hits,
                  errors, bench_ok ? "" : "  <- bound violated");
    g_notes.push_back(buf);
    ok = ok && bench_ok;
  }
  g_notes.push_back("    2 x 500 noisy matches in " +
                    std::to_string(s.elapsed) + " s");
  if (!ok) {
    g_notes.push_back(
        "    note: the Demiray medians are dominated by the exponent grid "
        "step (0.1); a one-step alpha miss alone costs E ~ 3.6e-2 at alpha "
        "= 8, so the bounds require exact alpha recovery in most seeds, "
        "which whole-vector noise does not deliver (25/100 at 1%).");
  }
  REQUIRE_C(s.elapsed < 60.0);
  return ok;
}

bool model_equivalence() {
  const NoiseStudy& s = noise_study();
  int ogden_hits = 0, violations = 0;
  double worst_alpha = 2.0, worst_e = 0.0;
  for (const BenchmarkRow& r : s.rows_5pct) {
    if (r.benchmark != "neo-hooke" || !r.ok) continue;
    if (r.discovered.family != Family::Ogden) continue;
    ++ogden_hits;
    if (std::abs(r.discovered.alpha[0] - 2.0) >
        std::abs(worst_alpha - 2.0)) {
      worst_alpha = r.discovered.alpha[0];
    }
    worst_e = std::max(worst_e, r.e_incompr);
    if (std::abs(r.discovered.alpha[0] - 2.0) > 0.5 || r.e_incompr > 5e-2) {
      ++violations;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "    Ogden stood in for neo-Hooke in %d/100 noisy queries; "
                "worst alpha %.2f, worst E %.2e, %d outside bounds",
                ogden_hits, worst_alpha, worst_e, violations);
  g_notes.push_back(buf);
  REQUIRE_C(violations == 0);
  return true;
}

bool unsupervised_desk_scale() {
  const auto t0 = Clock::now();
  PlateProtocol protocol;
  protocol.refinement_level = 1;  // coarse desk-scale mesh
  const Database db = generate_unsupervised_database(protocol, {10, false});
  REQUIRE_C(db.size() == 320);

  const Mesh mesh =
      build_plate_mesh(protocol.geometry, protocol.refinement_level);
  double worst_self = 2.0;
  for (std::size_t i = 0; i < db.size(); ++i) {
    const MaterialModel m = record_model(db, i);
    const auto raw = fem_fingerprint(m, mesh, protocol.program).concatenated();
    const MatchResult r = match(db, raw);
    worst_self = std::min(worst_self, r.similarity);
    REQUIRE_C(r.best_index == i);
    REQUIRE_C(r.similarity >= 2.0 - 1e-8);
  }
  g_notes.push_back("    worst self-similarity 2 - " +
                    std::to_string(2.0 - worst_self));

  const std::vector<MaterialModel> on_grid = {
      make_compressible(Family::BlatzKo, 5.0, {50.0}),
      make_compressible(Family::Demiray, 12.0, {10.0}, {7.8}),
      make_compressible(Family::Gent, 12.0, {10.0}, {0.3}),
      make_compressible(Family::MooneyRivlin, 12.0, {10.0, 45.0}),
      make_compressible(Family::NeoHooke, 12.0, {10.0}),
  };
  for (const MaterialModel& truth : on_grid) {
    const auto raw =
        fem_fingerprint(truth, mesh, protocol.program).concatenated();
    const MatchResult r = match(db, raw);
    const double e = e_compr(truth, r.discovered);
    g_notes.push_back("    " + std::string(family_name(truth.family)) +
                      " E_compr = " + std::to_string(e));
    REQUIRE_C(r.discovered.family == truth.family);
    REQUIRE_C(theta_close(r.discovered, truth, 1e-7));
    REQUIRE_C(e <= 1e-10);
  }

  const double elapsed = seconds_since(t0);
  g_notes.push_back("    desk-scale build + 325 solves in " +
                    std::to_string(elapsed) + " s");
  REQUIRE_C(elapsed < 900.0);
  return true;
}

bool fem_verification() {
  // Patch test: affine boundary data reproduces the affine field.
  {
    const Mesh mesh = build_square_mesh(1.0, 4);
    Eigen::Matrix2d A;
    A << 0.08, 0.03, 0.02, -0.05;
    std::set<int> boundary;
    for (const auto* side : {&mesh.bottom_nodes, &mesh.left_nodes,
                             &mesh.top_nodes, &mesh.right_nodes}) {
      boundary.insert(side->begin(), side->end());
    }
    std::vector<DirichletBC> bcs;
    for (int n : boundary) {
      const Eigen::Vector2d u = A * mesh.nodes[n];
      bcs.push_back({2 * n, u.x()});
      bcs.push_back({2 * n + 1, u.y()});
    }
    const Eigen::VectorXd u =
        newton_solve(make_compressible(Family::NeoHooke, 2.0, {1.0}), mesh,
                     bcs, Eigen::VectorXd::Zero(mesh.dof_count()), {});
    double worst = 0.0;
    for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
      const Eigen::Vector2d want = A * mesh.nodes[n];
      worst = std::max(worst, std::abs(u(2 * n) - want.x()));
      worst = std::max(worst, std::abs(u(2 * n + 1) - want.y()));
    }
    g_notes.push_back("    patch-test deviation " + std::to_string(worst));
    REQUIRE_C(worst < 1e-9);
  }

  // Residual as the energy gradient.
  {
    const Mesh mesh = build_square_mesh(1.0, 3);
    const auto model = make_compressible(Family::Gent, 1.5, {0.8}, {0.3});
    Eigen::VectorXd u(mesh.dof_count());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      u(i) = 0.02 * std::sin(0.7 * static_cast<double>(i) + 0.3);
    }
    const Eigen::VectorXd f = internal_forces(model, mesh, u);
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < u.size(); i += 3) {
      Eigen::VectorXd up = u, um = u;
      up(i) += h;
      um(i) -= h;
      const double fd =
          (total_energy(model, mesh, up) - total_energy(model, mesh, um)) /
          (2 * h);
      REQUIRE_C(std::abs(f(i) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }

  // Force homogeneity / displacement invariance, one model per family.
  {
    const Mesh mesh = build_plate_mesh({}, 1);
    for (const MaterialModel& base :
         {make_compressible(Family::BlatzKo, 1.0, {1.0}),
          make_compressible(Family::Demiray, 1.0, {1.0}, {2.0}),
          make_compressible(Family::Gent, 1.0, {1.0}, {0.3}),
          make_compressible(Family::MooneyRivlin, 1.0, {1.0, 2.0}),
          make_compressible(Family::NeoHooke, 1.0, {1.0})}) {
      MaterialModel scaled = base;
      for (double& t : scaled.theta) t *= 10.0;
      const FemSolution a = solve(base, mesh, LoadProgram{});
      const FemSolution b = solve(scaled, mesh, LoadProgram{});
      for (std::size_t s = 0; s < a.R2.size(); ++s) {
        REQUIRE_C((a.displacements[s] - b.displacements[s]).norm() <=
                  1e-8 * a.displacements[s].norm());
        REQUIRE_C(std::abs(b.R2[s] - 10.0 * a.R2[s]) <=
                  1e-8 * std::abs(10.0 * a.R2[s]));
      }
    }
  }

  // Mesh refinement sensitivity of the final reaction.
  {
    const auto nh = make_compressible(Family::NeoHooke, 1.0, {1.0});
    const FemSolution coarse = solve(nh, build_plate_mesh({}, 1), {});
    const FemSolution fine = solve(nh, build_plate_mesh({}, 2), {});
    const double rel = std::abs(fine.R2.back() - coarse.R2.back()) /
                       std::abs(fine.R2.back());
    g_notes.push_back("    refinement change in final R2: " +
                      std::to_string(100.0 * rel) + "%");
    REQUIRE_C(rel < 0.01);
  }
  return true;
}

bool matcher_correctness() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> dist;
  Database db;
  db.kind = ExperimentKind::Supervised;
  db.protocol = {{"kind", "synthetic"}};
  db.n_f = 30;
  db.n_force = 30;
  const std::size_t n_d = 10000;
  db.fingerprints.resize(n_d * db.n_f);
  db.records.resize(n_d);
  for (std::size_t i = 0; i < n_d; ++i) {
    double norm = 0.0;
    double* row = db.fingerprints.data() + i * db.n_f;
    for (std::size_t k = 0; k < db.n_f; ++k) {
      row[k] = dist(rng);
      norm += row[k] * row[k];
    }
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < db.n_f; ++k) row[k] /= norm;
    db.records[i] = {Family::NeoHooke, {1.0 / norm}, {}, norm};
  }

  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> q(db.n_f);
    for (double& x : q) x = dist(rng);

    MatchOptions seq, par;
    seq.n_threads = 1;
    par.n_threads = 4;
    const MatchResult a = match(db, q, seq);
    const MatchResult b = match(db, q, par);
    REQUIRE_C(a.best_index == b.best_index);
    REQUIRE_C(a.similarity == b.similarity);  // bitwise

    for (double scale : {1e-3, 1.0, 1e3}) {
      std::vector<double> qs = q;
      for (double& x : qs) x *= scale;
      REQUIRE_C(match(db, qs).best_index == a.best_index);
    }

    MatchOptions plain;
    plain.sparsity_weight = 0.0;
    const MatchResult c = match(db, q, plain);
    REQUIRE_C(c.score == c.similarity);
    for (const MatchEntry& e : c.top) REQUIRE_C(e.score == e.similarity);
  }
  return true;
}

bool excluded_targets() {
  g_notes.push_back(
      "    single-seed noisy parameter values and absolute field curves "
      "depend on unpublished noise draws and experiment constants; they are "
      "covered in distribution by criteria 3-5 instead of pointwise.");
  return true;
}

}  // namespace

int main() {
  criterion(1, "supervised exact recovery of on-grid benchmarks",
            supervised_exact_recovery);
  criterion(2, "published error-metric values reproduce from printed pairs",
            metric_reproduction);
  criterion(3, "noise robustness over 100 seeds", noise_robustness);
  criterion(4, "neo-Hooke/Ogden equivalence under 5% noise",
            model_equivalence);
  criterion(5, "unsupervised desk-scale self-consistency",
            unsupervised_desk_scale);
  criterion(6, "FEM verification suite", fem_verification);
  criterion(7, "matcher parallel/sequential equivalence and invariances",
            matcher_correctness);
  criterion(8, "pointwise noisy-seed values excluded by design",
            excluded_targets);

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
