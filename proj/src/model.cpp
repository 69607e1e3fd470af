#include "mfp/model.hpp"

#include <cmath>
#include <cstdio>

namespace mfp {

namespace {

// exp() arguments above this raise OverflowError instead of returning inf.
constexpr double kExpArgCap = 700.0;

double guarded_exp(double arg) {
  if (arg > kExpArgCap) {
    throw ExpOverflowError("exponential argument " + std::to_string(arg) +
                           " exceeds cap " + std::to_string(kExpArgCap));
  }
  return std::exp(arg);
}

struct TildeDerivs {
  double w1 = 0.0;  // dW~/dI1
  double w2 = 0.0;  // dW~/dI2
};

// Derivatives of the isochoric energy W~(I1, I2) for the invariant-based
// families. `th` points at the family theta block, `al` at alpha.
TildeDerivs tilde_derivs(Family family, const double* th, const double* al,
                         double i1, double i2) {
  (void)i2;
  TildeDerivs d;
  switch (family) {
    case Family::BlatzKo:
      d.w2 = th[0];
      break;
    case Family::Demiray:
      d.w1 = th[0] * al[0] * guarded_exp(al[0] * (i1 - 3.0));
      break;
    case Family::Gent: {
      const double denom = 1.0 - al[0] * (i1 - 3.0);
      if (denom <= 0.0) {
        throw GentDomainError("Gent locking limit reached: 1 - alpha3*[I1-3] = " +
                              std::to_string(denom));
      }
      d.w1 = th[0] * al[0] / denom;
      break;
    }
    case Family::Holzapfel: {
      const double q = i1 - 3.0;
      d.w1 = 2.0 * th[0] * al[0] * q * guarded_exp(al[0] * q * q);
      break;
    }
    case Family::MooneyRivlin:
      d.w1 = th[0];
      d.w2 = th[1];
      break;
    case Family::NeoHooke:
      d.w1 = th[0];
      break;
    case Family::Ogden:
      throw Error("Internal", "Ogden has no invariant-based derivatives");
  }
  return d;
}

double tilde_energy(Family family, const double* th, const double* al,
                    double i1, double i2) {
  switch (family) {
    case Family::BlatzKo:
      return th[0] * (i2 - 3.0);
    case Family::Demiray:
      return th[0] * (guarded_exp(al[0] * (i1 - 3.0)) - 1.0);
    case Family::Gent: {
      const double denom = 1.0 - al[0] * (i1 - 3.0);
      if (denom <= 0.0) {
        throw GentDomainError("Gent locking limit reached: 1 - alpha3*[I1-3] = " +
                              std::to_string(denom));
      }
      return -th[0] * std::log(denom);
    }
    case Family::Holzapfel: {
      const double q = i1 - 3.0;
      return th[0] * (guarded_exp(al[0] * q * q) - 1.0);
    }
    case Family::MooneyRivlin:
      return th[0] * (i1 - 3.0) + th[1] * (i2 - 3.0);
    case Family::NeoHooke:
      return th[0] * (i1 - 3.0);
    case Family::Ogden:
      throw Error("Internal", "Ogden has no invariant-based energy");
  }
  return 0.0;
}

double ogden_energy(double theta, double alpha, const std::array<double, 3>& l) {
  return theta * (std::pow(l[0], alpha) + std::pow(l[1], alpha) +
                  std::pow(l[2], alpha) - 3.0);
}

// Offsets theta past theta0 in the compressible regime.
const double* family_theta(const MaterialModel& m) {
  return m.theta.data() + (m.compressible() ? 1 : 0);
}

void check_parameters(const MaterialModel& m) {
  const std::size_t want_theta = MaterialModel::family_theta_count(m.family) +
                                 (m.compressible() ? 1 : 0);
  const std::size_t want_alpha = MaterialModel::family_alpha_count(m.family);
  if (m.theta.size() != want_theta || m.alpha.size() != want_alpha) {
    throw Error("InvalidModel",
                std::string("parameter count mismatch for family ") +
                    family_name(m.family));
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::BlatzKo: return "blatz-ko";
    case Family::Demiray: return "demiray";
    case Family::Gent: return "gent";
    case Family::Holzapfel: return "holzapfel";
    case Family::MooneyRivlin: return "mooney-rivlin";
    case Family::NeoHooke: return "neo-hooke";
    case Family::Ogden: return "ogden";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::BlatzKo, Family::Demiray, Family::Gent,
                   Family::Holzapfel, Family::MooneyRivlin, Family::NeoHooke,
                   Family::Ogden}) {
    if (name == family_name(f)) return f;
  }
  throw UsageError("unknown material family: " + name);
}

std::size_t MaterialModel::family_theta_count(Family f) {
  return f == Family::MooneyRivlin ? 2 : 1;
}

std::size_t MaterialModel::family_alpha_count(Family f) {
  switch (f) {
    case Family::Demiray:
    case Family::Gent:
    case Family::Holzapfel:
    case Family::Ogden:
      return 1;
    default:
      return 0;
  }
}

std::string MaterialModel::describe() const {
  const double* th = theta.data() + (compressible() ? 1 : 0);
  const std::string i1 = compressible() ? "Ib1" : "I1";
  const std::string i2 = compressible() ? "Ib2" : "I2";
  std::string body;
  switch (family) {
    case Family::BlatzKo:
      body = fmt(th[0]) + " [" + i2 + " - 3]";
      break;
    case Family::Demiray:
      body = fmt(th[0]) + " [exp(" + fmt(alpha[0]) + " [" + i1 + " - 3]) - 1]";
      break;
    case Family::Gent:
      body = "-" + fmt(th[0]) + " ln(1 - " + fmt(alpha[0]) + " [" + i1 + " - 3])";
      break;
    case Family::Holzapfel:
      body = fmt(th[0]) + " [exp(" + fmt(alpha[0]) + " [" + i1 + " - 3]^2) - 1]";
      break;
    case Family::MooneyRivlin:
      body = fmt(th[0]) + " [" + i1 + " - 3] + " + fmt(th[1]) + " [" + i2 + " - 3]";
      break;
    case Family::NeoHooke:
      body = fmt(th[0]) + " [" + i1 + " - 3]";
      break;
    case Family::Ogden: {
      const std::string a = fmt(alpha[0]);
      const std::string l = compressible() ? "lb" : "l";
      body = fmt(th[0]) + " [" + l + "1^" + a + " + " + l + "2^" + a + " + " +
             l + "3^" + a + " - 3]";
      break;
    }
  }
  if (compressible()) return body + " + " + fmt(theta[0]) + " [J - 1]^2";
  return body + " + p [J - 1]";
}

MaterialModel make_incompressible(Family f, std::vector<double> theta,
                                  std::vector<double> alpha) {
  MaterialModel m{f, Regime::IncompressibleLagrange, std::move(theta),
                  std::move(alpha)};
  check_parameters(m);
  return m;
}

MaterialModel make_compressible(Family f, double theta0,
                                std::vector<double> theta,
                                std::vector<double> alpha) {
  theta.insert(theta.begin(), theta0);
  MaterialModel m{f, Regime::CompressiblePenalty, std::move(theta),
                  std::move(alpha)};
  check_parameters(m);
  return m;
}

Matrix3 uniaxial_tension_gradient(double lambda) {
  if (lambda <= 0.0) {
    throw NonPositiveStretch("uniaxial stretch must be positive, got " +
                             std::to_string(lambda));
  }
  Matrix3 F = Matrix3::Zero();
  F(0, 0) = lambda;
  F(1, 1) = F(2, 2) = 1.0 / std::sqrt(lambda);
  return F;
}

Matrix3 simple_shear_gradient(double gamma) {
  Matrix3 F = Matrix3::Identity();
  F(0, 1) = gamma;
  return F;
}

Invariants compute_invariants(const Matrix3& F) {
  const double J = F.determinant();
  if (J <= 0.0) {
    throw InvalidDeformation("det F = " + std::to_string(J) +
                             " is not positive");
  }
  const Matrix3 C = F.transpose() * F;
  Invariants inv;
  inv.J = J;
  inv.I1 = C.trace();
  inv.I2 = 0.5 * (inv.I1 * inv.I1 - (C * C).trace());
  inv.iso_I1 = std::pow(J, -2.0 / 3.0) * inv.I1;
  inv.iso_I2 = std::pow(J, -4.0 / 3.0) * inv.I2;
  Eigen::SelfAdjointEigenSolver<Matrix3> es(C);
  for (int i = 0; i < 3; ++i) {
    inv.principal_stretches[i] = std::sqrt(es.eigenvalues()(i));
  }
  return inv;
}

double strain_energy(const MaterialModel& model, const Matrix3& F) {
  check_parameters(model);
  const Invariants inv = compute_invariants(F);
  const double* th = family_theta(model);

  double w = 0.0;
  if (model.family == Family::Ogden) {
    std::array<double, 3> l = inv.principal_stretches;
    if (model.compressible()) {
      const double s = std::pow(inv.J, -1.0 / 3.0);
      for (double& li : l) li *= s;
    }
    w = ogden_energy(th[0], model.alpha[0], l);
  } else if (model.compressible()) {
    w = tilde_energy(model.family, th, model.alpha.data(), inv.iso_I1,
                     inv.iso_I2);
  } else {
    w = tilde_energy(model.family, th, model.alpha.data(), inv.I1, inv.I2);
  }

  if (model.compressible()) {
    const double jm1 = inv.J - 1.0;
    w += model.theta[0] * jm1 * jm1;
  }
  return w;
}

namespace {

Matrix3 piola_invariant_families(const MaterialModel& model, const Matrix3& F,
                                 const Invariants& inv) {
  const double* th = family_theta(model);
  const TildeDerivs d = tilde_derivs(model.family, th, model.alpha.data(),
                                     inv.iso_I1, inv.iso_I2);
  const Matrix3 Fit = F.inverse().transpose();
  const Matrix3 C = F.transpose() * F;

  // dIb1/dF = J^{-2/3} [2F - (2/3) I1 F^{-T}]
  // dIb2/dF = J^{-4/3} [2 I1 F - 2 F C - (4/3) I2 F^{-T}]
  const double j23 = std::pow(inv.J, -2.0 / 3.0);
  const double j43 = std::pow(inv.J, -4.0 / 3.0);
  Matrix3 P = d.w1 * j23 * (2.0 * F - (2.0 / 3.0) * inv.I1 * Fit) +
              d.w2 * j43 * (2.0 * inv.I1 * F - 2.0 * F * C -
                            (4.0 / 3.0) * inv.I2 * Fit);
  P += 2.0 * model.theta[0] * (inv.J - 1.0) * inv.J * Fit;
  return P;
}

Matrix3 piola_ogden(const MaterialModel& model, const Matrix3& F,
                    const Invariants& inv) {
  const double theta = model.theta[1];
  const double alpha = model.alpha[0];
  const double theta0 = model.theta[0];
  const double J = inv.J;

  Eigen::JacobiSVD<Matrix3> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d l = svd.singularValues();

  const double s = std::pow(J, -1.0 / 3.0);
  Eigen::Vector3d lb = s * l;

  // dW/dl_i through the isochoric stretches plus the penalty part.
  Eigen::Vector3d dW;
  for (int i = 0; i < 3; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double dlb = s * ((i == j ? 1.0 : 0.0) - l(j) / (3.0 * l(i)));
      acc += theta * alpha * std::pow(lb(j), alpha - 1.0) * dlb;
    }
    acc += 2.0 * theta0 * (J - 1.0) * J / l(i);
    dW(i) = acc;
  }

  Matrix3 P = Matrix3::Zero();
  for (int i = 0; i < 3; ++i) {
    P += dW(i) * svd.matrixU().col(i) * svd.matrixV().col(i).transpose();
  }
  return P;
}

}  // namespace

Matrix3 piola_stress(const MaterialModel& model, const Matrix3& F) {
  check_parameters(model);
  if (!model.compressible()) {
    throw Error("InvalidModel",
                "piola_stress requires the compressible penalty regime");
  }
  const Invariants inv = compute_invariants(F);
  if (model.family == Family::Ogden) return piola_ogden(model, F, inv);
  return piola_invariant_families(model, F, inv);
}

double ut_stress(const MaterialModel& model, double lambda) {
  check_parameters(model);
  if (model.compressible()) {
    throw Error("InvalidModel", "ut_stress requires the incompressible regime");
  }
  if (lambda <= 0.0) {
    throw NonPositiveStretch("uniaxial stretch must be positive, got " +
                             std::to_string(lambda));
  }
  const double* th = model.theta.data();
  if (model.family == Family::Ogden) {
    const double a = model.alpha[0];
    // dW~/dlambda with lambda2 = lambda3 = lambda^{-1/2}
    return th[0] * a *
           (std::pow(lambda, a - 1.0) - std::pow(lambda, -a / 2.0 - 1.0));
  }
  const double i1 = lambda * lambda + 2.0 / lambda;
  const double i2 = 2.0 * lambda + 1.0 / (lambda * lambda);
  const TildeDerivs d = tilde_derivs(model.family, th, model.alpha.data(), i1, i2);
  const double li2 = lambda * lambda;
  // P11 = W1 dI1/dl + W2 dI2/dl; the pressure from P22 = P33 = 0 cancels.
  return d.w1 * (2.0 * lambda - 2.0 / li2) + d.w2 * (2.0 - 2.0 / (li2 * lambda));
}

double ss_stress(const MaterialModel& model, double gamma) {
  check_parameters(model);
  if (model.compressible()) {
    throw Error("InvalidModel", "ss_stress requires the incompressible regime");
  }
  const double* th = model.theta.data();
  if (model.family == Family::Ogden) {
    if (gamma == 0.0) return 0.0;
    const double a = model.alpha[0];
    const double l3 = ogden_shear_stretches(gamma)[2];
    const double l3sq = l3 * l3;
    // dl3/dgamma = l3^2/(l3^2+1), from l3 - 1/l3 = gamma.
    return th[0] * a * (std::pow(l3, a - 1.0) - std::pow(l3, -a - 1.0)) *
           l3sq / (l3sq + 1.0);
  }
  const double i = 3.0 + gamma * gamma;
  const TildeDerivs d = tilde_derivs(model.family, th, model.alpha.data(), i, i);
  return 2.0 * gamma * (d.w1 + d.w2);
}

std::array<double, 3> ogden_shear_stretches(double gamma) {
  const double c = 1.0 + 0.5 * gamma * gamma;
  const double s = std::sqrt(c * c - 1.0);
  const double l3 = std::sqrt(c + s);
  return {1.0 / l3, 1.0, l3};
}

}  // namespace mfp
