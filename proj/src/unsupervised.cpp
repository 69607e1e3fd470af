#include "mfp/unsupervised.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "mfp/supervised.hpp"

namespace mfp {

std::vector<double> UnsupervisedFingerprint::concatenated() const {
  std::vector<double> f;
  f.reserve(forces.size() + displacements.size());
  f.insert(f.end(), forces.begin(), forces.end());
  f.insert(f.end(), displacements.begin(), displacements.end());
  return f;
}

UnsupervisedFingerprint fem_fingerprint(const MaterialModel& model,
                                        const Mesh& mesh,
                                        const LoadProgram& program,
                                        const NewtonOptions& options) {
  const FemSolution sol = solve(model, mesh, program, options);
  const std::size_t n_t = sol.R1.size();
  const std::size_t n_u = mesh.probe_nodes.size();

  UnsupervisedFingerprint f;
  f.forces.reserve(2 * n_t);
  f.forces.insert(f.forces.end(), sol.R1.begin(), sol.R1.end());
  f.forces.insert(f.forces.end(), sol.R2.begin(), sol.R2.end());

  f.displacements.reserve(2 * n_u * n_t);
  for (std::size_t t = 0; t < n_t; ++t) {
    for (std::size_t p = 0; p < n_u; ++p) {
      f.displacements.push_back(sol.probe_displacements[t](0, p));
    }
    for (std::size_t p = 0; p < n_u; ++p) {
      f.displacements.push_back(sol.probe_displacements[t](1, p));
    }
  }
  return f;
}

nlohmann::json PlateProtocol::descriptor() const {
  return {
      {"kind", "unsupervised"},
      {"experiment", "plate-with-hole-biaxial-plane-strain"},
      {"geometry", geometry_descriptor(geometry)},
      {"refinement_level", refinement_level},
      {"program", program.descriptor()},
      {"element", "quad4-gauss2x2-total-lagrangian"},
      {"probe_angles_deg", {0, 9, 18, 27, 36, 45, 54, 63, 72, 81, 90}},
      {"force_layout", "R1-block-then-R2-block"},
      {"displacement_layout", "step-major-x1-block-then-x2-block"},
      {"newton", {{"rel_tol", newton.rel_tol}, {"max_iters", newton.max_iters}}},
      {"noise_convention", "split-std-per-block-from-own-max-abs"},
  };
}

std::vector<MaterialModel> unsupervised_grid(const UnsupervisedGridSpec& grid) {
  const std::size_t n = grid.points_per_axis;
  const std::vector<double> theta0_grid =
      parameter_grid(0.1, 10.0, n, grid.log_spacing);

  std::vector<MaterialModel> models;
  auto sweep_alpha = [&](Family fam, const std::vector<double>& alphas) {
    for (double a : alphas) {
      for (double t0 : theta0_grid) {
        models.push_back(make_compressible(fam, t0, {1.0}, {a}));
      }
    }
  };

  for (double t0 : theta0_grid) {
    models.push_back(make_compressible(Family::BlatzKo, t0, {1.0}));
  }
  sweep_alpha(Family::Demiray, parameter_grid(0.1, 10.0, n, grid.log_spacing));
  sweep_alpha(Family::Gent, parameter_grid(0.1, 1.0, n, grid.log_spacing));
  for (double t1 : parameter_grid(0.1, 10.0, n, grid.log_spacing)) {
    for (double t0 : theta0_grid) {
      models.push_back(make_compressible(Family::MooneyRivlin, t0, {1.0, t1}));
    }
  }
  for (double t0 : theta0_grid) {
    models.push_back(make_compressible(Family::NeoHooke, t0, {1.0}));
  }
  return models;
}

Database generate_unsupervised_database(const PlateProtocol& protocol,
                                        const UnsupervisedGridSpec& grid,
                                        unsigned n_workers) {
  const Mesh mesh =
      build_plate_mesh(protocol.geometry, protocol.refinement_level);
  const std::vector<MaterialModel> models = unsupervised_grid(grid);
  const std::size_t n_t = protocol.program.n_steps;
  const std::size_t n_u = mesh.probe_nodes.size();

  Database db;
  db.kind = ExperimentKind::Unsupervised;
  db.protocol = protocol.descriptor();
  db.protocol["grid_points_per_axis"] = grid.points_per_axis;
  db.protocol["grid_log_spacing"] = grid.log_spacing;
  db.n_force = 2 * n_t;
  db.n_f = 2 * n_t + 2 * n_u * n_t;
  db.fingerprints.resize(models.size() * db.n_f);
  db.records.resize(models.size());

  if (n_workers == 0) {
    n_workers = std::max(1u, std::thread::hardware_concurrency());
  }
  n_workers = std::min<unsigned>(n_workers,
                                 static_cast<unsigned>(models.size()));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::string first_error_category;
  std::string first_error;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= models.size()) return;
      try {
        const UnsupervisedFingerprint f =
            fem_fingerprint(models[i], mesh, protocol.program, protocol.newton);
        const NormalizedTriplet forces = normalize(f.forces, models[i].theta);
        const NormalizedTriplet disp = normalize(f.displacements, {});
        double* row = db.fingerprints.data() + i * db.n_f;
        std::copy(forces.fingerprint.begin(), forces.fingerprint.end(), row);
        std::copy(disp.fingerprint.begin(), disp.fingerprint.end(),
                  row + db.n_force);
        db.records[i] = {models[i].family, forces.theta_bar, models[i].alpha,
                         forces.norm};
      } catch (const Error& e) {
        std::scoped_lock lock(error_mutex);
        if (first_error.empty()) {
          first_error_category = e.category();
          first_error = "record " + std::to_string(i) + " (" +
                        models[i].describe() + "): " + e.what();
        }
        next.store(models.size());
        return;
      }
    }
  };

  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (!first_error.empty()) {
    throw Error(first_error_category,
                "unsupervised database generation failed: " + first_error);
  }
  return db;
}

}  // namespace mfp
