#pragma once

#include <cstddef>
#include <vector>

#include "mfp/database.hpp"
#include "mfp/fem.hpp"
#include "mfp/mesh.hpp"
#include "mfp/model.hpp"

namespace mfp {

/// Raw plate-experiment fingerprint. `forces` lists the R1 block then the
/// R2 block, each in load-step order (length 2*n_t). `displacements` is
/// step-major: for each step the x1 probe values then the x2 probe values
/// (length 2*n_u*n_t).
struct UnsupervisedFingerprint {
  std::vector<double> forces;
  std::vector<double> displacements;

  std::vector<double> concatenated() const;
};

UnsupervisedFingerprint fem_fingerprint(const MaterialModel& model,
                                        const Mesh& mesh,
                                        const LoadProgram& program,
                                        const NewtonOptions& options = {});

/// Full experiment protocol for the unsupervised database; the descriptor
/// hash gates query/database compatibility.
struct PlateProtocol {
  PlateGeometry geometry;
  int refinement_level = 2;
  LoadProgram program;
  NewtonOptions newton;

  nlohmann::json descriptor() const;
};

struct UnsupervisedGridSpec {
  std::size_t points_per_axis = 100;  // 30,200 records; use 10 for desk scale
  bool log_spacing = false;
};

/// Grid of compressible models in canonical order (Blatz-Ko, Demiray, Gent,
/// Mooney-Rivlin, Neo-Hooke; theta0 is the fastest-varying axis).
std::vector<MaterialModel> unsupervised_grid(const UnsupervisedGridSpec& grid);

/// Runs one FEM solve per grid point (optionally in parallel) and collects
/// split-normalized records: force and displacement blocks unit-normalized
/// separately, theta_bar = theta / ||f_R||. Any solver failure aborts
/// generation with the offending model attached.
Database generate_unsupervised_database(const PlateProtocol& protocol,
                                        const UnsupervisedGridSpec& grid = {},
                                        unsigned n_workers = 0);

}  // namespace mfp
