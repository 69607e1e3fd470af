#include "mfp/fem.hpp"

#include <cmath>
#include <unordered_map>

#include "mfp/errors.hpp"

namespace mfp {

namespace {

constexpr double kGauss = 0.5773502691896257;  // 1/sqrt(3)
constexpr double kTangentStep = 1e-6;          // FD step for dP/dF

struct QuadPoint {
  double xi, eta;
};
constexpr QuadPoint kQuadrature[4] = {
    {-kGauss, -kGauss}, {kGauss, -kGauss}, {kGauss, kGauss}, {-kGauss, kGauss}};

void shape_derivs(double xi, double eta, double dN[4][2]) {
  dN[0][0] = -0.25 * (1 - eta); dN[0][1] = -0.25 * (1 - xi);
  dN[1][0] = 0.25 * (1 - eta);  dN[1][1] = -0.25 * (1 + xi);
  dN[2][0] = 0.25 * (1 + eta);  dN[2][1] = 0.25 * (1 + xi);
  dN[3][0] = -0.25 * (1 + eta); dN[3][1] = 0.25 * (1 - xi);
}

// Reference-gradient data of one quadrature point.
struct QpGeometry {
  double grad[4][2];  // dN_a/dX
  double weight;      // gauss weight * det(reference Jacobian)
};

// Precomputed per-element quadrature geometry; depends on the mesh only.
std::vector<std::array<QpGeometry, 4>> precompute_geometry(const Mesh& mesh) {
  std::vector<std::array<QpGeometry, 4>> geo(mesh.elements.size());
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    for (int q = 0; q < 4; ++q) {
      double dN[4][2];
      shape_derivs(kQuadrature[q].xi, kQuadrature[q].eta, dN);
      Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
      for (int a = 0; a < 4; ++a) {
        const Eigen::Vector2d& x = mesh.nodes[mesh.elements[e][a]];
        J(0, 0) += x(0) * dN[a][0];
        J(0, 1) += x(0) * dN[a][1];
        J(1, 0) += x(1) * dN[a][0];
        J(1, 1) += x(1) * dN[a][1];
      }
      const double detJ = J.determinant();
      if (detJ <= 0.0) {
        throw MeshDegenerate("non-positive reference Jacobian in element " +
                             std::to_string(e));
      }
      const Eigen::Matrix2d Jinv = J.inverse();
      QpGeometry& g = geo[e][q];
      for (int a = 0; a < 4; ++a) {
        g.grad[a][0] = dN[a][0] * Jinv(0, 0) + dN[a][1] * Jinv(1, 0);
        g.grad[a][1] = dN[a][0] * Jinv(0, 1) + dN[a][1] * Jinv(1, 1);
      }
      g.weight = detJ;
    }
  }
  return geo;
}

Eigen::Matrix2d qp_deformation(const Mesh& mesh, const Eigen::VectorXd& u,
                               std::size_t e, const QpGeometry& g) {
  Eigen::Matrix2d F = Eigen::Matrix2d::Identity();
  for (int a = 0; a < 4; ++a) {
    const int n = mesh.elements[e][a];
    F(0, 0) += u(2 * n) * g.grad[a][0];
    F(0, 1) += u(2 * n) * g.grad[a][1];
    F(1, 0) += u(2 * n + 1) * g.grad[a][0];
    F(1, 1) += u(2 * n + 1) * g.grad[a][1];
  }
  return F;
}

Matrix3 embed_plane_strain(const Eigen::Matrix2d& F2) {
  Matrix3 F = Matrix3::Identity();
  F.topLeftCorner<2, 2>() = F2;
  return F;
}

Eigen::Matrix2d plane_piola(const MaterialModel& model,
                            const Eigen::Matrix2d& F2) {
  return piola_stress(model, embed_plane_strain(F2)).topLeftCorner<2, 2>();
}

// dP/dF restricted to the in-plane components, central differences of the
// analytic stress. A[i][k][j][l] = dP_ik / dF_jl.
void plane_tangent(const MaterialModel& model, const Eigen::Matrix2d& F2,
                   double A[2][2][2][2]) {
  for (int j = 0; j < 2; ++j) {
    for (int l = 0; l < 2; ++l) {
      Eigen::Matrix2d Fp = F2, Fm = F2;
      Fp(j, l) += kTangentStep;
      Fm(j, l) -= kTangentStep;
      const Eigen::Matrix2d dP =
          (plane_piola(model, Fp) - plane_piola(model, Fm)) /
          (2.0 * kTangentStep);
      for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) A[i][k][j][l] = dP(i, k);
      }
    }
  }
}

using Geometry = std::vector<std::array<QpGeometry, 4>>;

Eigen::VectorXd assemble_forces(const MaterialModel& model, const Mesh& mesh,
                                const Geometry& geo, const Eigen::VectorXd& u) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(u.size());
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    for (int q = 0; q < 4; ++q) {
      const QpGeometry& g = geo[e][q];
      const Eigen::Matrix2d P = plane_piola(model, qp_deformation(mesh, u, e, g));
      for (int a = 0; a < 4; ++a) {
        const int n = mesh.elements[e][a];
        f(2 * n) += g.weight * (P(0, 0) * g.grad[a][0] + P(0, 1) * g.grad[a][1]);
        f(2 * n + 1) +=
            g.weight * (P(1, 0) * g.grad[a][0] + P(1, 1) * g.grad[a][1]);
      }
    }
  }
  return f;
}

Eigen::SparseMatrix<double> assemble_tangent(const MaterialModel& model,
                                             const Mesh& mesh,
                                             const Geometry& geo,
                                             const Eigen::VectorXd& u) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.elements.size() * 64);
  double A[2][2][2][2];
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    Eigen::Matrix<double, 8, 8> Ke = Eigen::Matrix<double, 8, 8>::Zero();
    for (int q = 0; q < 4; ++q) {
      const QpGeometry& g = geo[e][q];
      plane_tangent(model, qp_deformation(mesh, u, e, g), A);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
              double v = 0.0;
              for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                  v += A[i][k][j][l] * g.grad[a][k] * g.grad[b][l];
                }
              }
              Ke(2 * a + i, 2 * b + j) += g.weight * v;
            }
          }
        }
      }
    }
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            triplets.emplace_back(2 * mesh.elements[e][a] + i,
                                  2 * mesh.elements[e][b] + j,
                                  Ke(2 * a + i, 2 * b + j));
          }
        }
      }
    }
  }
  Eigen::SparseMatrix<double> K(u.size(), u.size());
  K.setFromTriplets(triplets.begin(), triplets.end());
  return K;
}

}  // namespace

std::vector<double> LoadProgram::deltas() const {
  std::vector<double> d(n_steps);
  for (int k = 1; k <= n_steps; ++k) {
    d[k - 1] = delta_max * static_cast<double>(k) / n_steps;
  }
  return d;
}

nlohmann::json LoadProgram::descriptor() const {
  return {{"n_steps", n_steps},
          {"delta_max", delta_max},
          {"bottom_pull", "delta"},
          {"left_pull", "delta/2"}};
}

Matrix3 deformation_gradient_at(const Mesh& mesh, const Eigen::VectorXd& u,
                                std::size_t element, double xi, double eta) {
  double dN[4][2];
  shape_derivs(xi, eta, dN);
  Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d G = Eigen::Matrix2d::Zero();  // du/dxi
  for (int a = 0; a < 4; ++a) {
    const int n = mesh.elements[element][a];
    const Eigen::Vector2d& x = mesh.nodes[n];
    for (int d = 0; d < 2; ++d) {
      J(0, d) += x(0) * dN[a][d];
      J(1, d) += x(1) * dN[a][d];
      G(0, d) += u(2 * n) * dN[a][d];
      G(1, d) += u(2 * n + 1) * dN[a][d];
    }
  }
  return embed_plane_strain(Eigen::Matrix2d::Identity() + G * J.inverse());
}

double total_energy(const MaterialModel& model, const Mesh& mesh,
                    const Eigen::VectorXd& u) {
  const Geometry geo = precompute_geometry(mesh);
  double energy = 0.0;
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    for (int q = 0; q < 4; ++q) {
      const QpGeometry& g = geo[e][q];
      energy += g.weight *
                strain_energy(model, embed_plane_strain(
                                         qp_deformation(mesh, u, e, g)));
    }
  }
  return energy;
}

Eigen::VectorXd internal_forces(const MaterialModel& model, const Mesh& mesh,
                                const Eigen::VectorXd& u) {
  return assemble_forces(model, mesh, precompute_geometry(mesh), u);
}

namespace {

Eigen::VectorXd newton_solve_impl(const MaterialModel& model, const Mesh& mesh,
                                  const Geometry& geo,
                                  const std::vector<DirichletBC>& bcs,
                                  Eigen::VectorXd u,
                                  const NewtonOptions& options,
                                  int* iterations) {
  const Eigen::Index n_dof = u.size();
  std::vector<bool> constrained(n_dof, false);
  for (const DirichletBC& bc : bcs) {
    constrained[bc.dof] = true;
    u(bc.dof) = bc.value;
  }
  std::vector<int> free_dofs;
  free_dofs.reserve(n_dof);
  for (Eigen::Index d = 0; d < n_dof; ++d) {
    if (!constrained[d]) free_dofs.push_back(static_cast<int>(d));
  }
  const Eigen::Index n_free = static_cast<Eigen::Index>(free_dofs.size());
  std::vector<int> full_to_free(n_dof, -1);
  for (Eigen::Index k = 0; k < n_free; ++k) full_to_free[free_dofs[k]] = k;

  auto free_residual = [&](const Eigen::VectorXd& f) {
    Eigen::VectorXd r(n_free);
    for (Eigen::Index k = 0; k < n_free; ++k) r(k) = f(free_dofs[k]);
    return r;
  };

  Eigen::VectorXd f = assemble_forces(model, mesh, geo, u);
  Eigen::VectorXd r = free_residual(f);
  double ref_norm = r.norm();
  int iters = 0;

  while (true) {
    if (r.norm() <= std::max(options.rel_tol * ref_norm, options.abs_tol)) {
      break;
    }
    if (iters >= options.max_iters) {
      throw NewtonDivergence("Newton failed to converge in " +
                             std::to_string(options.max_iters) +
                             " iterations (residual " +
                             std::to_string(r.norm()) + ")");
    }
    ++iters;

    const Eigen::SparseMatrix<double> K_full =
        assemble_tangent(model, mesh, geo, u);
    // Condense to free dofs.
    std::vector<Eigen::Triplet<double>> triplets;
    for (int col = 0; col < K_full.outerSize(); ++col) {
      const int jc = full_to_free[col];
      if (jc < 0) continue;
      for (Eigen::SparseMatrix<double>::InnerIterator it(K_full, col); it;
           ++it) {
        const int ir = full_to_free[it.row()];
        if (ir >= 0) triplets.emplace_back(ir, jc, it.value());
      }
    }
    Eigen::SparseMatrix<double> K(n_free, n_free);
    K.setFromTriplets(triplets.begin(), triplets.end());

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(K);
    if (lu.info() != Eigen::Success) {
      throw NewtonDivergence("singular tangent matrix");
    }
    const Eigen::VectorXd du = lu.solve(-r);

    // Backtrack on invalid trial states (e.g. Gent limit, det F <= 0).
    bool accepted = false;
    for (int half = 0; half < 10 && !accepted; ++half) {
      Eigen::VectorXd u_trial = u;
      const double scale = std::ldexp(1.0, -half);
      for (Eigen::Index k = 0; k < n_free; ++k) {
        u_trial(free_dofs[k]) += scale * du(k);
      }
      try {
        Eigen::VectorXd f_trial = assemble_forces(model, mesh, geo, u_trial);
        const Eigen::VectorXd r_trial = free_residual(f_trial);
        // Require a residual decrease so the iteration cannot wander off
        // to far-away states whose forces merely happen to be finite.
        if (!r_trial.allFinite() || r_trial.norm() >= r.norm()) continue;
        u = std::move(u_trial);
        f = std::move(f_trial);
        r = r_trial;
        accepted = true;
      } catch (const Error&) {
        // shrink the update and retry
      }
    }
    if (!accepted) {
      throw NewtonDivergence("no admissible Newton update found");
    }
  }

  if (iterations) *iterations += iters;
  return u;
}

std::vector<DirichletBC> plate_bcs(const Mesh& mesh, double delta) {
  std::vector<DirichletBC> bcs;
  for (int n : mesh.bottom_nodes) bcs.push_back({2 * n + 1, -delta});
  for (int n : mesh.left_nodes) bcs.push_back({2 * n, -0.5 * delta});
  for (int n : mesh.top_nodes) bcs.push_back({2 * n + 1, 0.0});
  for (int n : mesh.right_nodes) bcs.push_back({2 * n, 0.0});
  return bcs;
}

// Advances from delta_from (state u) to delta_to, bisecting on divergence.
Eigen::VectorXd advance(const MaterialModel& model, const Mesh& mesh,
                        const Geometry& geo, Eigen::VectorXd u,
                        double delta_from, double delta_to,
                        const NewtonOptions& options, int depth,
                        int* iterations) {
  try {
    // Keep `u` intact for the bisection fallback below.
    return newton_solve_impl(model, mesh, geo, plate_bcs(mesh, delta_to), u,
                             options, iterations);
  } catch (const Error&) {
    // Divergence, domain violations, and overflow during a step attempt are
    // all handled the same way: load substeps by bisection.
    if (depth >= options.max_bisections) throw;
    const double mid = 0.5 * (delta_from + delta_to);
    Eigen::VectorXd u_mid =
        advance(model, mesh, geo, std::move(u), delta_from, mid, options,
                depth + 1, iterations);
    return advance(model, mesh, geo, std::move(u_mid), mid, delta_to, options,
                   depth + 1, iterations);
  }
}

}  // namespace

Eigen::VectorXd newton_solve(const MaterialModel& model, const Mesh& mesh,
                             const std::vector<DirichletBC>& bcs,
                             Eigen::VectorXd u0, const NewtonOptions& options,
                             int* iterations) {
  return newton_solve_impl(model, mesh, precompute_geometry(mesh), bcs,
                           std::move(u0), options, iterations);
}

FemSolution solve(const MaterialModel& model, const Mesh& mesh,
                  const LoadProgram& program, const NewtonOptions& options) {
  if (!model.compressible()) {
    throw Error("InvalidModel",
                "the plate experiment requires a compressible model");
  }
  const Geometry geo = precompute_geometry(mesh);
  FemSolution sol;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(mesh.dof_count());
  double delta_prev = 0.0;
  for (double delta : program.deltas()) {
    int iters = 0;
    u = advance(model, mesh, geo, std::move(u), delta_prev, delta, options, 0,
                &iters);
    delta_prev = delta;

    const Eigen::VectorXd f = assemble_forces(model, mesh, geo, u);
    double r1 = 0.0, r2 = 0.0;
    for (int n : mesh.left_nodes) r1 -= f(2 * n);
    for (int n : mesh.bottom_nodes) r2 -= f(2 * n + 1);

    Eigen::Matrix2Xd probes(2, mesh.probe_nodes.size());
    for (std::size_t p = 0; p < mesh.probe_nodes.size(); ++p) {
      probes(0, p) = u(2 * mesh.probe_nodes[p]);
      probes(1, p) = u(2 * mesh.probe_nodes[p] + 1);
    }

    sol.displacements.push_back(u);
    sol.R1.push_back(r1);
    sol.R2.push_back(r2);
    sol.probe_displacements.push_back(std::move(probes));
    sol.newton_iterations.push_back(iters);
  }
  return sol;
}

}  // namespace mfp
