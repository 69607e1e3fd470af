#include <cmath>
#include <set>

#include "doctest.h"
#include "mfp/fem.hpp"
#include "mfp/mesh.hpp"

using namespace mfp;

namespace {

const PlateGeometry kGeometry{};

MaterialModel nh(double theta0 = 1.0, double theta5 = 1.0) {
  return make_compressible(Family::NeoHooke, theta0, {theta5});
}

}  // namespace

TEST_CASE("plate mesh sizes and probes follow the refinement rule") {
  const Mesh m1 = build_plate_mesh(kGeometry, 1);
  const Mesh m2 = build_plate_mesh(kGeometry, 2);
  CHECK(m1.elements.size() == 50);
  CHECK(m2.elements.size() == 4 * m1.elements.size());
  CHECK(m1.nodes.size() == 66);

  REQUIRE(m1.probe_nodes.size() == 11);
  REQUIRE(m1.probe_angles_deg.size() == 11);
  const double cx = kGeometry.halfwidth, cy = kGeometry.halfwidth;
  for (std::size_t k = 0; k < 11; ++k) {
    CHECK(m1.probe_angles_deg[k] == doctest::Approx(9.0 * k).epsilon(1e-13));
    const Eigen::Vector2d p = m1.nodes[m1.probe_nodes[k]];
    const double r = std::hypot(cx - p.x(), cy - p.y());
    CHECK(std::abs(r - kGeometry.hole_radius) < 1e-12);
    const double ang = std::atan2(cy - p.y(), cx - p.x()) * 180.0 / M_PI;
    CHECK(std::abs(ang - m1.probe_angles_deg[k]) < 1e-10);
  }
}

TEST_CASE("affine boundary data reproduces the affine field exactly") {
  const Mesh mesh = build_square_mesh(1.0, 4);
  Eigen::Matrix2d A;
  A << 0.08, 0.03, 0.02, -0.05;  // u = A X, i.e. F2d = I + A

  std::set<int> boundary;
  for (const auto* side :
       {&mesh.bottom_nodes, &mesh.left_nodes, &mesh.top_nodes,
        &mesh.right_nodes}) {
    boundary.insert(side->begin(), side->end());
  }
  std::vector<DirichletBC> bcs;
  for (int n : boundary) {
    const Eigen::Vector2d u = A * mesh.nodes[n];
    bcs.push_back({2 * n, u.x()});
    bcs.push_back({2 * n + 1, u.y()});
  }

  const Eigen::VectorXd u = newton_solve(
      nh(2.0, 1.0), mesh, bcs, Eigen::VectorXd::Zero(mesh.dof_count()), {});

  for (std::size_t n = 0; n < mesh.nodes.size(); ++n) {
    const Eigen::Vector2d want = A * mesh.nodes[n];
    CHECK(std::abs(u(2 * n) - want.x()) < 1e-9);
    CHECK(std::abs(u(2 * n + 1) - want.y()) < 1e-9);
  }

  const Matrix3 F = deformation_gradient_at(mesh, u, 3, 0.3, -0.7);
  CHECK(std::abs(F(0, 0) - 1.08) < 1e-9);
  CHECK(std::abs(F(0, 1) - 0.03) < 1e-9);
  CHECK(std::abs(F(1, 0) - 0.02) < 1e-9);
  CHECK(std::abs(F(1, 1) - 0.95) < 1e-9);
  CHECK(F(2, 2) == 1.0);  // plane strain
}

TEST_CASE("internal forces are the gradient of the total energy") {
  const Mesh mesh = build_square_mesh(1.0, 3);
  const MaterialModel model = nh(1.5, 0.8);
  Eigen::VectorXd u(mesh.dof_count());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    u(i) = 0.02 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  }
  const Eigen::VectorXd f = internal_forces(model, mesh, u);
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < u.size(); i += 5) {
    Eigen::VectorXd up = u, um = u;
    up(i) += h;
    um(i) -= h;
    const double fd =
        (total_energy(model, mesh, up) - total_energy(model, mesh, um)) /
        (2 * h);
    CHECK(std::abs(f(i) - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("scaling theta scales forces and leaves displacements unchanged") {
  const Mesh mesh = build_plate_mesh(kGeometry, 1);
  const LoadProgram program{};
  for (const MaterialModel& base :
       {make_compressible(Family::BlatzKo, 1.0, {1.0}),
        make_compressible(Family::Demiray, 1.0, {1.0}, {2.0}),
        make_compressible(Family::Gent, 1.0, {1.0}, {0.3}),
        make_compressible(Family::MooneyRivlin, 1.0, {1.0, 2.0}),
        make_compressible(Family::NeoHooke, 1.0, {1.0})}) {
    MaterialModel scaled = base;
    for (double& t : scaled.theta) t *= 10.0;

    const FemSolution a = solve(base, mesh, program);
    const FemSolution b = solve(scaled, mesh, program);
    for (int s = 0; s < program.n_steps; ++s) {
      const double uscale = a.displacements[s].norm();
      CHECK((a.displacements[s] - b.displacements[s]).norm() <=
            1e-8 * uscale);
      CHECK(std::abs(b.R2[s] - 10.0 * a.R2[s]) <=
            1e-8 * std::abs(10.0 * a.R2[s]));
      CHECK(std::abs(b.R1[s] - 10.0 * a.R1[s]) <=
            1e-8 * std::max(std::abs(10.0 * a.R1[s]), 1e-12));
    }
  }
}

TEST_CASE("reaction magnitude grows monotonically along the ramp") {
  const Mesh mesh = build_plate_mesh(kGeometry, 1);
  const FemSolution sol = solve(nh(), mesh, LoadProgram{});
  REQUIRE(sol.R2.size() == 10);
  double prev = 0.0;
  for (double r2 : sol.R2) {
    CHECK(std::abs(r2) > prev);
    prev = std::abs(r2);
  }
  CHECK(std::abs(sol.R2.back()) > 0.1);
}

TEST_CASE("a zero-amplitude ramp stays at rest") {
  const Mesh mesh = build_plate_mesh(kGeometry, 1);
  LoadProgram idle;
  idle.delta_max = 0.0;
  const FemSolution sol = solve(nh(), mesh, idle);
  for (int s = 0; s < idle.n_steps; ++s) {
    CHECK(sol.displacements[s].norm() < 1e-10);
    CHECK(std::abs(sol.R1[s]) < 1e-10);
    CHECK(std::abs(sol.R2[s]) < 1e-10);
  }
}

TEST_CASE("mesh refinement changes the final reaction by less than 1%") {
  const FemSolution coarse =
      solve(nh(), build_plate_mesh(kGeometry, 1), LoadProgram{});
  const FemSolution fine =
      solve(nh(), build_plate_mesh(kGeometry, 2), LoadProgram{});
  const double rel =
      std::abs(fine.R2.back() - coarse.R2.back()) / std::abs(fine.R2.back());
  CHECK(rel < 0.01);
}

TEST_CASE("incompressible models are rejected by the plate solver") {
  const Mesh mesh = build_plate_mesh(kGeometry, 1);
  const auto m = make_incompressible(Family::NeoHooke, {1.0});
  CHECK_THROWS_AS(solve(m, mesh, LoadProgram{}), Error);
}
