#include "nikolskii/weight.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nikolskii/errors.hpp"

namespace nikolskii {
namespace {

constexpr double kPi = std::numbers::pi;

// base^exponent for base >= 0 with 0^0 = 1 and 0^(negative) = +inf.
double power_factor(double base, double exponent) {
  if (exponent == 0.0) return 1.0;
  if (base == 0.0) return exponent > 0.0 ? 0.0 : kInfinity;
  return std::pow(base, exponent);
}

void require_constant_args(double alpha, double mu, double p, int n) {
  if (!(alpha >= 0.0) || !(mu >= 0.0))
    throw DomainError("c_constant: alpha and mu must be >= 0");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("c_constant: p must lie in [1, inf)");
  if (n < 1) throw DomainError("c_constant: n must be a positive integer");
}

void require_b_args(double alpha, double beta, double mu, double p, int n) {
  if (!(alpha >= beta) || !(beta >= -0.5))
    throw DomainError("b_constant: requires alpha >= beta >= -1/2");
  if (!(mu >= 0.0)) throw DomainError("b_constant: mu must be >= 0");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("b_constant: p must lie in [1, inf)");
  if (n < 1) throw DomainError("b_constant: n must be a positive integer");
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw ConvergenceError("incomplete beta continued fraction did not converge", h, h);
}

// Integral of u^(a-1) (1-u)^(b-1) over [0, x]; accurate for x below the
// continued-fraction switch point (a+1)/(a+b+2).
double lower_tail(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  return std::pow(x, a) * std::pow(1.0 - x, b) * beta_continued_fraction(a, b, x) / a;
}

// Integral over [x, 1], by reflection.
double upper_tail(double a, double b, double x) { return lower_tail(b, a, 1.0 - x); }

}  // namespace

double weight_eval(const WeightParams& w, double x) {
  if (!w.valid()) throw DomainError("weight_eval: exponents must exceed -1");
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("weight_eval: x outside [-1, 1]");
  const double f1 = power_factor(1.0 - x, w.alpha);
  const double f2 = power_factor(1.0 + x, w.beta);
  const double f3 = power_factor(std::abs(x), w.gamma);
  return f1 * f2 * f3;
}

double trig_weight_eval(const TrigWeightParams& tw, double t) {
  if (!tw.valid()) throw DomainError("trig_weight_eval: exponents must be >= 0");
  return power_factor(std::abs(std::sin(t)), tw.alpha) * power_factor(std::abs(std::cos(t)), tw.mu);
}

LRatios l_ratios(double alpha, double mu) {
  if (!(alpha >= 0.0) || !(mu >= 0.0)) throw DomainError("l_ratios: alpha and mu must be >= 0");
  if (alpha + mu == 0.0) return {0.0, 0.0};
  return {alpha / (alpha + mu), std::max(alpha, mu) / (alpha + mu)};
}

double c_constant(double alpha, double mu, double p, int n) {
  require_constant_args(alpha, mu, p, n);
  const double lo = std::min(alpha, mu);
  const double hi = std::max(alpha, mu);
  const double shrink = 1.0 - 1.0 / (kPi * n);
  return std::pow(shrink, -lo / p) * std::pow(2.0, 1.0 + 1.0 / p) * std::pow(hi + 1.0, 1.0 / p) *
         std::pow(kPi, hi / p);
}

double b_constant(double alpha, double beta, double mu, double p, int n) {
  require_b_args(alpha, beta, mu, p, n);
  const double shrink = 1.0 - 1.0 / (kPi * n);
  return std::pow(2.0, 2.0 * p + 1.0 + alpha - beta) *
         std::pow(shrink, -std::min(2.0 * alpha + 1.0, mu)) *
         std::max(2.0 * (alpha + 1.0), mu + 1.0) * std::pow(kPi, std::max(2.0 * alpha + 1.0, mu));
}

double c_limit(double alpha, double mu, double p) {
  require_constant_args(alpha, mu, p, 1);
  const double hi = std::max(alpha, mu);
  return std::pow(2.0, 1.0 + 1.0 / p) * std::pow(hi + 1.0, 1.0 / p) * std::pow(kPi, hi / p);
}

double b_limit(double alpha, double beta, double mu, double p) {
  require_b_args(alpha, beta, mu, p, 1);
  return std::pow(2.0, 2.0 * p + 1.0 + alpha - beta) * std::max(2.0 * (alpha + 1.0), mu + 1.0) *
         std::pow(kPi, std::max(2.0 * alpha + 1.0, mu));
}

ConstantLimits constant_limits(double alpha, double beta, double mu, double p) {
  return {c_limit(alpha, mu, p), b_limit(alpha, beta, mu, p)};
}

double beta_integral(double a_exp, double b_exp, double lo, double hi) {
  if (!(a_exp > -1.0) || !(b_exp > -1.0))
    throw DomainError("beta_integral: exponents must exceed -1");
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0))
    throw DomainError("beta_integral: bounds must satisfy 0 <= lo <= hi <= 1");
  if (lo == hi) return 0.0;
  const double a = a_exp + 1.0;
  const double b = b_exp + 1.0;
  const double switch_point = (a + 1.0) / (a + b + 2.0);
  if (hi <= switch_point) return lower_tail(a, b, hi) - lower_tail(a, b, lo);
  if (lo >= switch_point) return upper_tail(a, b, lo) - upper_tail(a, b, hi);
  return (lower_tail(a, b, switch_point) - lower_tail(a, b, lo)) +
         (upper_tail(a, b, switch_point) - upper_tail(a, b, hi));
}

double incomplete_weight_integral(double alpha, double mu, double a, double b) {
  if (!(alpha >= 0.0) || !(mu >= 0.0))
    throw DomainError("incomplete_weight_integral: exponents must be >= 0");
  return beta_integral(alpha, mu, a, b);
}

}  // namespace nikolskii
