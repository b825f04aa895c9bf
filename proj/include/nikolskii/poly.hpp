#pragma once

#include <cstdint>
#include <vector>

#include "nikolskii/quadrature.hpp"
#include "nikolskii/weight.hpp"

namespace nikolskii {

/// Algebraic polynomial of degree <= n stored as Chebyshev coefficients c_0..c_n.
struct AlgebraicPoly {
  std::vector<double> cheb;

  AlgebraicPoly() : cheb{0.0} {}
  explicit AlgebraicPoly(std::vector<double> coeffs);

  int degree_bound() const { return static_cast<int>(cheb.size()) - 1; }
  /// Index of the highest nonzero coefficient, -1 for the zero polynomial.
  int exact_degree() const;
  AlgebraicPoly scaled(double c) const;
};

/// a0 + sum_k (a_k cos kt + b_k sin kt), k = 1..n.
struct TrigPoly {
  double a0 = 0.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;

  TrigPoly() = default;
  TrigPoly(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  int degree_bound() const { return static_cast<int>(cos_coeffs.size()); }
  int exact_degree() const;
  TrigPoly scaled(double c) const;
};

/// Clenshaw evaluation; x must lie in [-1, 1].
double eval_algebraic(const AlgebraicPoly& p, double x);
double eval_trig(const TrigPoly& t, double theta);

/// T(t) = P(cos t): Chebyshev coefficients become cosine coefficients.
TrigPoly compose_with_cosine(const AlgebraicPoly& p);

/// Exact derivative: cos kt -> -k sin kt, sin kt -> k cos kt.
TrigPoly trig_derivative(const TrigPoly& t);

/// Max of |P| on [-1, 1] / |T| on [-pi, pi]: dense sampling (max(257, 32n+1)
/// points, Chebyshev-spaced for P) then Brent refinement of each local maximum.
double uniform_norm(const AlgebraicPoly& p);
double uniform_norm(const TrigPoly& t);

/// Points in the open domain where the polynomial changes sign.
std::vector<double> sign_changes(const AlgebraicPoly& p);
std::vector<double> sign_changes(const TrigPoly& t);

/// Weighted L_p norm; p = kInfinity gives the uniform norm.
double lp_norm(const AlgebraicPoly& p, double exponent, const WeightParams& w,
               const Accuracy& acc = {});
double lp_norm(const TrigPoly& t, double exponent, const TrigWeightParams& tw,
               const Accuracy& acc = {});

/// Standard normal coefficients from NormalStream(seed).
AlgebraicPoly random_algebraic_poly(int n, std::uint64_t seed);
/// Draw order: a0, a_1..a_n, b_1..b_n.
TrigPoly random_trig_poly(int n, std::uint64_t seed);

}  // namespace nikolskii
