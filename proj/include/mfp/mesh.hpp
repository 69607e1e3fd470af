#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include <json.hpp>

namespace mfp {

/// Quarter of a unit plate with a central hole. The quarter domain is
/// [0, halfwidth]^2 with the hole quarter at the top-right corner
/// (halfwidth, halfwidth); top and right edges are the symmetry planes,
/// bottom and left are the pulled edges.
struct PlateGeometry {
  double halfwidth = 0.5;
  double hole_radius = 0.25;
};

struct Mesh {
  std::vector<Eigen::Vector2d> nodes;
  std::vector<std::array<int, 4>> elements;  // counterclockwise quads

  std::vector<int> bottom_nodes;  // y = 0, prescribed vertical pull
  std::vector<int> left_nodes;    // x = 0, prescribed horizontal pull
  std::vector<int> top_nodes;     // y = halfwidth, symmetry (u2 = 0)
  std::vector<int> right_nodes;   // x = halfwidth, symmetry (u1 = 0)
  std::vector<int> hole_arc_nodes;

  std::vector<int> probe_nodes;          // on the hole arc
  std::vector<double> probe_angles_deg;  // measured from the top edge

  std::size_t dof_count() const { return 2 * nodes.size(); }
};

/// Structured transfinite mesh between the hole arc and the outer L-shaped
/// boundary. Level 1 uses 10 angular x 5 radial divisions; each level
/// quadruples the element count. The 11 probe nodes sit exactly at
/// 0, 9, ..., 90 degrees on the arc. Throws MeshDegenerate when any
/// reference Jacobian is non-positive.
Mesh build_plate_mesh(const PlateGeometry& geometry, int refinement_level);

/// Uniform nx x nx quad mesh of [0, size]^2; all four edge tags filled,
/// no hole, no probes. Used for patch and consistency tests.
Mesh build_square_mesh(double size, int nx);

nlohmann::json geometry_descriptor(const PlateGeometry& g);

}  // namespace mfp
