#pragma once

#include <random>

#include "mfp/model.hpp"

namespace mfp::testing {

/// Central finite differences of strain_energy with respect to F.
inline Matrix3 fd_piola(const MaterialModel& model, const Matrix3& F,
                        double h = 1e-6) {
  Matrix3 P;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Matrix3 Fp = F, Fm = F;
      Fp(i, j) += h;
      Fm(i, j) -= h;
      P(i, j) = (strain_energy(model, Fp) - strain_energy(model, Fm)) / (2 * h);
    }
  }
  return P;
}

/// UT stress oracle that eliminates the pressure numerically: build the
/// full unconstrained stress by finite differences of the isochoric energy
/// and solve P22 = 0 for p.
inline double fd_ut_stress(const MaterialModel& model, double lambda) {
  const Matrix3 F = uniaxial_tension_gradient(lambda);
  const Matrix3 Pt = fd_piola(model, F, 1e-7);
  const Matrix3 Fit = F.inverse().transpose();
  const double p = Pt(1, 1) / Fit(1, 1);
  return Pt(0, 0) - p * Fit(0, 0);
}

/// SS stress oracle: d/dgamma of the isochoric energy along the shear path.
inline double fd_ss_stress(const MaterialModel& model, double gamma,
                           double h = 1e-7) {
  return (strain_energy(model, simple_shear_gradient(gamma + h)) -
          strain_energy(model, simple_shear_gradient(gamma - h))) /
         (2 * h);
}

/// Random deformation gradient with det F > 0, a bounded perturbation of
/// the identity so every family's domain constraints hold.
inline Matrix3 random_admissible_F(std::mt19937_64& rng, double spread = 0.15) {
  std::uniform_real_distribution<double> dist(-spread, spread);
  while (true) {
    Matrix3 F = Matrix3::Identity();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) F(i, j) += dist(rng);
    }
    if (F.determinant() > 0.1) return F;
  }
}

/// One representative parameterization per family.
inline std::vector<MaterialModel> sample_models(Regime regime) {
  const double theta0 = 1.2;
  auto build = [&](Family f, std::vector<double> th, std::vector<double> al) {
    return regime == Regime::IncompressibleLagrange
               ? make_incompressible(f, std::move(th), std::move(al))
               : make_compressible(f, theta0, std::move(th), std::move(al));
  };
  return {
      build(Family::BlatzKo, {1.3}, {}),
      build(Family::Demiray, {0.8}, {2.5}),
      build(Family::Gent, {1.1}, {0.4}),
      build(Family::Holzapfel, {0.9}, {1.2}),
      build(Family::MooneyRivlin, {0.7, 1.4}, {}),
      build(Family::NeoHooke, {1.0}, {}),
      build(Family::Ogden, {0.6}, {3.5}),
  };
}

inline MaterialModel scaled_theta(MaterialModel m, double a) {
  for (double& t : m.theta) t *= a;
  return m;
}

}  // namespace mfp::testing
