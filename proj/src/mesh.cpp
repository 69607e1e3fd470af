#include "mfp/mesh.hpp"

#include <cmath>

#include "mfp/errors.hpp"

namespace mfp {

namespace {

// Bilinear shape-function derivatives at (xi, eta) in [-1, 1]^2.
void shape_derivs(double xi, double eta, double dN[4][2]) {
  dN[0][0] = -0.25 * (1 - eta); dN[0][1] = -0.25 * (1 - xi);
  dN[1][0] = 0.25 * (1 - eta);  dN[1][1] = -0.25 * (1 + xi);
  dN[2][0] = 0.25 * (1 + eta);  dN[2][1] = 0.25 * (1 + xi);
  dN[3][0] = -0.25 * (1 + eta); dN[3][1] = 0.25 * (1 - xi);
}

void check_jacobians(const Mesh& mesh) {
  const double g = 1.0 / std::sqrt(3.0);
  const double pts[4][2] = {{-g, -g}, {g, -g}, {g, g}, {-g, g}};
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    for (const auto& p : pts) {
      double dN[4][2];
      shape_derivs(p[0], p[1], dN);
      Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
      for (int a = 0; a < 4; ++a) {
        const Eigen::Vector2d& x = mesh.nodes[mesh.elements[e][a]];
        J(0, 0) += x(0) * dN[a][0];
        J(0, 1) += x(0) * dN[a][1];
        J(1, 0) += x(1) * dN[a][0];
        J(1, 1) += x(1) * dN[a][1];
      }
      if (J.determinant() <= 0.0) {
        throw MeshDegenerate("non-positive reference Jacobian in element " +
                             std::to_string(e));
      }
    }
  }
}

}  // namespace

Mesh build_plate_mesh(const PlateGeometry& geometry, int refinement_level) {
  if (refinement_level < 1) {
    throw UsageError("refinement level must be >= 1");
  }
  const double hw = geometry.halfwidth;
  const double r = geometry.hole_radius;
  if (!(r > 0.0 && r < hw)) {
    throw MeshDegenerate("hole radius must lie in (0, halfwidth)");
  }

  const int scale = 1 << (refinement_level - 1);
  const int nc = 10 * scale;  // angular divisions, multiple of 10 so the
                              // probe angles land exactly on nodes
  const int nr = 5 * scale;   // radial divisions

  auto arc_point = [&](double t) {
    const double phi = 0.5 * M_PI * t;
    return Eigen::Vector2d(hw - r * std::cos(phi), hw - r * std::sin(phi));
  };
  auto outer_point = [&](double t) {
    // L-path from the top-left corner through the origin to bottom-right.
    if (t <= 0.5) return Eigen::Vector2d(0.0, hw * (1.0 - 2.0 * t));
    return Eigen::Vector2d(hw * (2.0 * t - 1.0), 0.0);
  };

  Mesh mesh;
  mesh.nodes.reserve((nc + 1) * (nr + 1));
  auto node_id = [&](int i, int j) { return i * (nr + 1) + j; };
  for (int i = 0; i <= nc; ++i) {
    const double t = static_cast<double>(i) / nc;
    const Eigen::Vector2d a = arc_point(t);
    const Eigen::Vector2d o = outer_point(t);
    for (int j = 0; j <= nr; ++j) {
      const double rho = static_cast<double>(j) / nr;
      mesh.nodes.push_back((1.0 - rho) * a + rho * o);
    }
  }

  mesh.elements.reserve(nc * nr);
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nr; ++j) {
      mesh.elements.push_back({node_id(i, j), node_id(i, j + 1),
                               node_id(i + 1, j + 1), node_id(i + 1, j)});
    }
  }

  for (int j = 0; j <= nr; ++j) {
    mesh.top_nodes.push_back(node_id(0, j));
    mesh.right_nodes.push_back(node_id(nc, j));
  }
  for (int i = 0; i <= nc; ++i) {
    mesh.hole_arc_nodes.push_back(node_id(i, 0));
    if (i <= nc / 2) mesh.left_nodes.push_back(node_id(i, nr));
    if (i >= nc / 2) mesh.bottom_nodes.push_back(node_id(i, nr));
  }

  for (int k = 0; k <= 10; ++k) {
    mesh.probe_nodes.push_back(node_id(k * nc / 10, 0));
    mesh.probe_angles_deg.push_back(9.0 * k);
  }

  check_jacobians(mesh);
  return mesh;
}

Mesh build_square_mesh(double size, int nx) {
  if (nx < 1) throw UsageError("square mesh needs at least one division");
  Mesh mesh;
  auto node_id = [&](int i, int j) { return i * (nx + 1) + j; };
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= nx; ++j) {
      mesh.nodes.emplace_back(size * i / nx, size * j / nx);
    }
  }
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < nx; ++j) {
      mesh.elements.push_back({node_id(i, j), node_id(i + 1, j),
                               node_id(i + 1, j + 1), node_id(i, j + 1)});
    }
  }
  for (int k = 0; k <= nx; ++k) {
    mesh.bottom_nodes.push_back(node_id(k, 0));
    mesh.top_nodes.push_back(node_id(k, nx));
    mesh.left_nodes.push_back(node_id(0, k));
    mesh.right_nodes.push_back(node_id(nx, k));
  }
  check_jacobians(mesh);
  return mesh;
}

nlohmann::json geometry_descriptor(const PlateGeometry& g) {
  return {{"halfwidth", g.halfwidth}, {"hole_radius", g.hole_radius}};
}

}  // namespace mfp
