#include "mfp/metrics.hpp"

#include <cmath>

#include "mfp/errors.hpp"

namespace mfp {

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Initial guess, then Newton on P_n(x) = 0.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels,
                                        int points) {
  std::vector<double> x, w;
  gauss_legendre(points, x, w);
  QuadratureRule rule;
  rule.nodes.reserve(panels * points);
  rule.weights.reserve(panels * points);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int k = 0; k < points; ++k) {
      rule.nodes.push_back(lo + 0.5 * h * (x[k] + 1.0));
      rule.weights.push_back(0.5 * h * w[k]);
    }
  }
  return rule;
}

namespace {

double energy_at(const MaterialModel& m, double l1, double l2, double l3) {
  Matrix3 F = Matrix3::Zero();
  F(0, 0) = l1;
  F(1, 1) = l2;
  F(2, 2) = l3;
  return strain_energy(m, F);
}

double ratio(double num, double den) {
  if (den == 0.0) {
    throw DivisionByZero("reference strain energy integrates to zero");
  }
  return num / den;
}

}  // namespace

double e_incompr(const MaterialModel& truth, const MaterialModel& discovered,
                 const MetricOptions& o) {
  const QuadratureRule q =
      composite_gauss_legendre(o.a, o.b, o.panels, o.points);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    for (std::size_t j = 0; j < q.nodes.size(); ++j) {
      const double l1 = q.nodes[i], l2 = q.nodes[j];
      const double l3 = 1.0 / (l1 * l2);
      const double w = q.weights[i] * q.weights[j];
      const double wt = energy_at(truth, l1, l2, l3);
      const double wd = energy_at(discovered, l1, l2, l3);
      num += w * std::abs(wt - wd);
      den += w * std::abs(wt);
    }
  }
  return ratio(num, den);
}

double e_compr(const MaterialModel& truth, const MaterialModel& discovered,
               const MetricOptions& o) {
  const QuadratureRule q =
      composite_gauss_legendre(o.a, o.b, o.panels, o.points);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    for (std::size_t j = 0; j < q.nodes.size(); ++j) {
      for (std::size_t k = 0; k < q.nodes.size(); ++k) {
        const double w = q.weights[i] * q.weights[j] * q.weights[k];
        const double wt =
            energy_at(truth, q.nodes[i], q.nodes[j], q.nodes[k]);
        const double wd =
            energy_at(discovered, q.nodes[i], q.nodes[j], q.nodes[k]);
        num += w * std::abs(wt - wd);
        den += w * std::abs(wt);
      }
    }
  }
  return ratio(num, den);
}

}  // namespace mfp
