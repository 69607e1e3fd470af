#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include <json.hpp>

#include "mfp/mesh.hpp"
#include "mfp/model.hpp"

namespace mfp {

/// Displacement-controlled biaxial ramp: at step k the bottom edge is
/// pulled down by delta_k and the left edge left by delta_k/2, with
/// delta_k = k * delta_max / n_steps.
struct LoadProgram {
  int n_steps = 10;
  double delta_max = 0.3;

  std::vector<double> deltas() const;
  nlohmann::json descriptor() const;
};

struct NewtonOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_iters = 25;
  int max_bisections = 4;  // load-substep bisection depth on divergence
};

struct DirichletBC {
  int dof = 0;
  double value = 0.0;  // total prescribed displacement
};

struct FemSolution {
  std::vector<Eigen::VectorXd> displacements;  // per step, 2 * n_nodes
  std::vector<double> R1;  // left-edge horizontal resultant, positive outward
  std::vector<double> R2;  // bottom-edge vertical resultant, positive outward
  std::vector<Eigen::Matrix2Xd> probe_displacements;  // per step, 2 x n_u
  std::vector<int> newton_iterations;  // per step, including substeps
};

/// Plane-strain deformation gradient (F33 = 1) at a natural coordinate of
/// an element, embedded as a 3x3 matrix.
Matrix3 deformation_gradient_at(const Mesh& mesh, const Eigen::VectorXd& u,
                                std::size_t element, double xi, double eta);

/// Total stored strain energy of the discretized body (2x2 Gauss).
double total_energy(const MaterialModel& model, const Mesh& mesh,
                    const Eigen::VectorXd& u);

/// Assembled internal nodal force vector, the gradient of total_energy.
Eigen::VectorXd internal_forces(const MaterialModel& model, const Mesh& mesh,
                                const Eigen::VectorXd& u);

/// Newton solve of quasi-static equilibrium under the given total Dirichlet
/// values, starting from u0. Throws NewtonDivergence when the iteration
/// fails even with update backtracking.
Eigen::VectorXd newton_solve(const MaterialModel& model, const Mesh& mesh,
                             const std::vector<DirichletBC>& bcs,
                             Eigen::VectorXd u0, const NewtonOptions& options,
                             int* iterations = nullptr);

/// Runs the full load program on the plate mesh. Compressible models only.
FemSolution solve(const MaterialModel& model, const Mesh& mesh,
                  const LoadProgram& program, const NewtonOptions& options = {});

}  // namespace mfp
