#pragma once

#include <vector>

#include "mfp/model.hpp"

namespace mfp {

/// Composite Gauss-Legendre rule on [a, b]: `panels` equal subintervals,
/// `points` nodes per panel.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule composite_gauss_legendre(double a, double b, int panels,
                                        int points);

/// Gauss-Legendre nodes/weights on [-1, 1] for arbitrary order n.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

struct MetricOptions {
  double a = 0.75;
  double b = 1.25;
  int panels = 8;
  int points = 4;
};

/// Relative L1 mismatch of two strain energies over the incompressible
/// stretch manifold lambda3 = 1/(lambda1*lambda2), (lambda1, lambda2) in
/// [a, b]^2. Energies are evaluated at F = diag(l1, l2, l3); the manifold
/// keeps J = 1, so Lagrange and penalty terms vanish identically.
double e_incompr(const MaterialModel& truth, const MaterialModel& discovered,
                 const MetricOptions& options = {});

/// Relative L1 mismatch over the unconstrained box [a, b]^3.
double e_compr(const MaterialModel& truth, const MaterialModel& discovered,
               const MetricOptions& options = {});

}  // namespace mfp
