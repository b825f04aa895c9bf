#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "nikolskii/weight.hpp"

namespace nikolskii {

/// Gauss rule for the integral of f(s) (1-s)^a (1+s)^b over [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, inside (-1, 1)
  std::vector<double> weights;  // all positive
  double a_exp = 0.0;
  double b_exp = 0.0;

  std::size_t size() const { return nodes.size(); }
  double apply(const std::function<double(double)>& f) const;
};

struct Accuracy {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_points = 4096;  // per panel
};

/// A scalar integrand together with the points where it is not smooth
/// (kinks of |P|^p, for instance). Breakpoints become panel boundaries.
struct Integrand {
  std::function<double(double)> fn;
  std::vector<double> breakpoints;
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;  // sum of |Q_2m - Q_m| over panels
  long points = 0;     // function evaluations spent
};

/// Golub-Welsch m-point Gauss-Jacobi rule.
QuadratureRule gauss_jacobi_rule(double a_exp, double b_exp, int m);

/// Same rule served from a process-wide immutable cache.
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(double a_exp, double b_exp, int m);

/// Integral of f(x) w(x) over [-1, 1] for the generalized Jacobi weight w.
IntegralResult integrate_weighted_algebraic(const Integrand& f, const WeightParams& w,
                                            const Accuracy& acc = {});

/// Integral of f(t) |sin t|^alpha |cos t|^mu over [-pi, pi].
IntegralResult integrate_weighted_trig(const Integrand& f, const TrigWeightParams& tw,
                                       const Accuracy& acc = {});

/// Same integrand restricted to [lo, hi] within [-pi, pi].
IntegralResult integrate_weighted_trig(const Integrand& f, const TrigWeightParams& tw, double lo,
                                       double hi, const Accuracy& acc = {});

/// Brute-force cross-check: midpoint rule on a mesh graded geometrically
/// toward every singular point of the weight (ratio 0.7, 80 levels). On each
/// cell the power of the distance to the nearest singular point is integrated
/// exactly and the remaining smooth part is sampled at the weight centroid
/// of the cell.
double oracle_integrate(const std::function<double(double)>& f, const WeightParams& w, long panels);
double oracle_integrate(const std::function<double(double)>& f, const TrigWeightParams& tw,
                        long panels);
double oracle_integrate(const std::function<double(double)>& f, const TrigWeightParams& tw,
                        double lo, double hi, long panels);

}  // namespace nikolskii
