#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mfp/errors.hpp"

namespace mfp {

using Matrix3 = Eigen::Matrix3d;

/// Hyperelastic strain-energy families available for database generation.
enum class Family {
  BlatzKo,
  Demiray,
  Gent,
  Holzapfel,
  MooneyRivlin,
  NeoHooke,
  Ogden,
};

/// Incompressible materials carry a Lagrange-multiplier pressure term;
/// compressible ones replace it by the volumetric penalty theta0*[J-1]^2.
enum class Regime {
  IncompressibleLagrange,
  CompressiblePenalty,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

/// A strain-energy family together with its parameters.
///
/// `theta` holds the homogeneity parameters, i.e. W is linear in each entry.
/// In the compressible regime theta[0] is the volumetric penalty factor
/// theta0 and the family parameters follow; in the incompressible regime
/// theta holds the family parameters only (Mooney-Rivlin: {theta5, theta1}).
/// `alpha` holds the non-homogeneity parameters (exponents, locking limits).
struct MaterialModel {
  Family family = Family::NeoHooke;
  Regime regime = Regime::IncompressibleLagrange;
  std::vector<double> theta;
  std::vector<double> alpha;

  bool compressible() const { return regime == Regime::CompressiblePenalty; }

  /// Number of family parameters expected in theta (excluding theta0).
  static std::size_t family_theta_count(Family f);
  static std::size_t family_alpha_count(Family f);

  /// Human-readable strain-energy expression with the current parameters.
  std::string describe() const;
};

MaterialModel make_incompressible(Family f, std::vector<double> theta,
                                  std::vector<double> alpha = {});
MaterialModel make_compressible(Family f, double theta0,
                                std::vector<double> theta,
                                std::vector<double> alpha = {});

/// Kinematic quantities derived from a deformation gradient.
struct Invariants {
  double I1 = 3.0;
  double I2 = 3.0;
  double J = 1.0;
  double iso_I1 = 3.0;  // J^{-2/3} I1
  double iso_I2 = 3.0;  // J^{-4/3} I2
  std::array<double, 3> principal_stretches{1.0, 1.0, 1.0};
};

Matrix3 uniaxial_tension_gradient(double lambda);
Matrix3 simple_shear_gradient(double gamma);

/// Throws InvalidDeformation when det F <= 0.
Invariants compute_invariants(const Matrix3& F);

/// Strain energy density W(F).
///
/// Incompressible regime: the isochoric part only; the pressure term
/// p[J-1] vanishes on all experiment manifolds used here (J = 1).
/// Compressible regime: isochoric invariants plus theta0*[J-1]^2.
double strain_energy(const MaterialModel& model, const Matrix3& F);

/// First Piola-Kirchhoff stress P = dW/dF, compressible regime only.
Matrix3 piola_stress(const MaterialModel& model, const Matrix3& F);

/// Uniaxial-tension stress P11(lambda) with the pressure eliminated
/// through P22 = P33 = 0. Incompressible regime only.
double ut_stress(const MaterialModel& model, double lambda);

/// Simple-shear stress P12(gamma); independent of the pressure.
/// Incompressible regime only.
double ss_stress(const MaterialModel& model, double gamma);

/// Principal stretches of the simple-shear state, closed form.
/// Returns (lambda1, 1, lambda3) with lambda1*lambda3 = 1, lambda1 <= 1.
std::array<double, 3> ogden_shear_stretches(double gamma);

}  // namespace mfp
