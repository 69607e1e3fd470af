#include "mfp/supervised.hpp"

#include <cmath>
#include <numeric>

namespace mfp {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + step * static_cast<double>(i);
  v.back() = hi;
  return v;
}

double euclidean_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

HomogeneousProtocol HomogeneousProtocol::standard() {
  HomogeneousProtocol p;
  p.ut_stretches = linspace(1.0, 1.5, 15);
  p.ss_shears = linspace(0.0, 0.5, 15);
  return p;
}

nlohmann::json HomogeneousProtocol::descriptor() const {
  return {
      {"kind", "supervised"},
      {"experiments", "uniaxial-tension+simple-shear"},
      {"block_order", "ut-then-ss"},
      {"ut_stretches", ut_stretches},
      {"ss_shears", ss_shears},
  };
}

std::vector<double> simulate_fingerprint(const MaterialModel& model,
                                         const HomogeneousProtocol& protocol) {
  if (model.compressible()) {
    throw Error("InvalidModel",
                "supervised fingerprints require an incompressible model");
  }
  std::vector<double> f;
  f.reserve(protocol.fingerprint_length());
  for (double lambda : protocol.ut_stretches) {
    try {
      f.push_back(ut_stress(model, lambda));
    } catch (const Error& e) {
      throw Error(e.category(), std::string(e.what()) + " (at UT stretch " +
                                    std::to_string(lambda) + ")");
    }
  }
  for (double gamma : protocol.ss_shears) {
    try {
      f.push_back(ss_stress(model, gamma));
    } catch (const Error& e) {
      throw Error(e.category(), std::string(e.what()) + " (at SS shear " +
                                    std::to_string(gamma) + ")");
    }
  }
  return f;
}

NormalizedTriplet normalize(std::span<const double> fingerprint,
                            std::span<const double> theta) {
  const double norm = euclidean_norm(fingerprint);
  if (norm == 0.0) {
    throw ZeroFingerprint("fingerprint has zero norm; degenerate material");
  }
  NormalizedTriplet t;
  t.norm = norm;
  t.fingerprint.assign(fingerprint.begin(), fingerprint.end());
  for (double& x : t.fingerprint) x /= norm;
  t.theta_bar.assign(theta.begin(), theta.end());
  for (double& x : t.theta_bar) x /= norm;
  return t;
}

std::vector<double> parameter_grid(double lo, double hi, std::size_t n,
                                   bool log_spacing) {
  if (n == 0) throw UsageError("parameter grid needs at least one point");
  if (!log_spacing) return linspace(lo, hi, n);
  std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
  for (double& x : v) x = std::exp(x);
  return v;
}

Database generate_supervised_database(const HomogeneousProtocol& protocol,
                                      const SupervisedGridSpec& grid) {
  Database db;
  db.kind = ExperimentKind::Supervised;
  db.protocol = protocol.descriptor();
  db.protocol["grid_points_per_axis"] = grid.points_per_axis;
  db.protocol["grid_log_spacing"] = grid.log_spacing;
  db.n_f = protocol.fingerprint_length();
  db.n_force = db.n_f;

  const std::size_t n = grid.points_per_axis;
  struct Entry {
    MaterialModel model;
  };
  std::vector<Entry> entries;

  auto sweep = [&](Family fam, std::vector<double> alphas) {
    for (double a : alphas) {
      entries.push_back({make_incompressible(fam, {1.0}, {a})});
    }
  };

  // Family order and parameter ranges of the canonical grid.
  entries.push_back({make_incompressible(Family::BlatzKo, {1.0})});
  sweep(Family::Demiray, parameter_grid(0.1, 10.0, n, grid.log_spacing));
  sweep(Family::Gent, parameter_grid(0.1, 1.0, n, grid.log_spacing));
  sweep(Family::Holzapfel, parameter_grid(0.1, 10.0, n, grid.log_spacing));
  for (double t5 : parameter_grid(0.1, 10.0, n, grid.log_spacing)) {
    entries.push_back({make_incompressible(Family::MooneyRivlin, {t5, 1.0})});
  }
  entries.push_back({make_incompressible(Family::NeoHooke, {1.0})});
  sweep(Family::Ogden, parameter_grid(0.1, 10.0, n, grid.log_spacing));

  db.fingerprints.reserve(entries.size() * db.n_f);
  db.records.reserve(entries.size());
  for (const Entry& e : entries) {
    std::vector<double> f;
    try {
      f = simulate_fingerprint(e.model, protocol);
    } catch (const Error& err) {
      throw Error(err.category(),
                  std::string("database generation failed for ") +
                      e.model.describe() + ": " + err.what());
    }
    NormalizedTriplet t = normalize(f, e.model.theta);
    db.fingerprints.insert(db.fingerprints.end(), t.fingerprint.begin(),
                           t.fingerprint.end());
    db.records.push_back({e.model.family, std::move(t.theta_bar),
                          e.model.alpha, t.norm});
  }
  return db;
}

}  // namespace mfp
