#pragma once

#include <limits>

namespace nikolskii {

/// Exponent value standing for q = infinity. Its reciprocal is taken as 0.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// 1/p with 1/inf = 0.
inline double reciprocal_exponent(double p) { return p == kInfinity ? 0.0 : 1.0 / p; }

/// Exponents of the generalized Jacobi weight (1-x)^alpha (1+x)^beta |x|^gamma.
struct WeightParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  bool valid() const { return alpha > -1.0 && beta > -1.0 && gamma > -1.0; }
};

/// Exponents of |sin t|^alpha |cos t|^mu.
struct TrigWeightParams {
  double alpha = 0.0;
  double mu = 0.0;

  bool valid() const { return alpha >= 0.0 && mu >= 0.0; }
};

/// Parameters of the different-metrics inequality. The weight is
/// (1-x)^alpha (1+x)^beta |x|^mu.
struct NikolskiiParams {
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 0.0;
  double p = 1.0;
  double q = kInfinity;
  int n = 1;

  bool valid() const {
    return alpha >= beta && beta >= -0.5 && mu >= 0.0 && p >= 1.0 && p < kInfinity && q > p &&
           n >= 1;
  }
  WeightParams weight() const { return {alpha, beta, mu}; }
};

struct LRatios {
  double l = 0.0;
  double l_max = 0.0;
};

/// (1-x)^alpha (1+x)^beta |x|^gamma. Returns +inf where a factor 0 carries a
/// negative exponent; 0^0 = 1.
double weight_eval(const WeightParams& w, double x);

/// |sin t|^alpha |cos t|^mu with 0^0 = 1.
double trig_weight_eval(const TrigWeightParams& tw, double t);

/// l = alpha/(alpha+mu), l_max = max(alpha,mu)/(alpha+mu); both 0 at the origin.
LRatios l_ratios(double alpha, double mu);

/// The constant C(alpha, mu, p, n) of the weighted Bari inequality.
double c_constant(double alpha, double mu, double p, int n);

/// The constant B(alpha, beta, mu, p, n) of the different-metrics inequality,
/// evaluated from its closed product form.
double b_constant(double alpha, double beta, double mu, double p, int n);

/// Limit of c_constant as n -> infinity.
double c_limit(double alpha, double mu, double p);

/// Limit of b_constant as n -> infinity.
double b_limit(double alpha, double beta, double mu, double p);

struct ConstantLimits {
  double c_limit;
  double b_limit;
};

/// Both limits at once; beta is needed only for the B limit.
ConstantLimits constant_limits(double alpha, double beta, double mu, double p);

/// Integral of u^a_exp (1-u)^b_exp over [lo, hi] in [0, 1] for exponents > -1,
/// through the incomplete beta continued fraction.
double beta_integral(double a_exp, double b_exp, double lo, double hi);

/// Integral of x^alpha (1-x)^mu over [a, b] subset of [0, 1]; alpha, mu >= 0.
double incomplete_weight_integral(double alpha, double mu, double a, double b);

}  // namespace nikolskii
