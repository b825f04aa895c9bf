#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nikolskii/poly.hpp"
#include "nikolskii/weight.hpp"

namespace nikolskii {

using ParamList = std::vector<std::pair<std::string, double>>;

/// One verified instance of an inequality lhs <= rhs.
struct InequalityRecord {
  std::string statement;
  ParamList params;
  std::string subject;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs, 0 when both vanish
  bool pass = false;
};

/// lhs <= rhs * (1 + kRatioTolerance) + kAbsoluteSlack.
inline constexpr double kRatioTolerance = 1e-8;
inline constexpr double kAbsoluteSlack = 1e-12;

bool within_bound(double lhs, double rhs, double rel_tol = kRatioTolerance);

/// max|T| <= C(alpha,mu,p,n) n^((max(alpha,mu)+1)/p) (int |T|^p |sin|^alpha |cos|^mu)^(1/p).
InequalityRecord verify_bari(const TrigPoly& t, const TrigWeightParams& tw, double p, int n,
                             const Accuracy& acc = {}, double rel_tol = kRatioTolerance);

/// ||P||_q <= B^(1/p-1/q) n^(max(2(alpha+1), mu+1)(1/p-1/q)) ||P||_p under
/// the weight (1-x)^alpha (1+x)^beta |x|^mu.
InequalityRecord verify_nikolskii(const AlgebraicPoly& p, const NikolskiiParams& params,
                                  const Accuracy& acc = {}, double rel_tol = kRatioTolerance);

/// max(2(alpha+1), mu+1) (1/p - 1/q).
double theory_exponent(const NikolskiiParams& params);

/// B^(1/p-1/q) n^theory_exponent, the factor in front of ||P||_p.
double theorem_factor(const NikolskiiParams& params);

struct ConstantGrid {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> mus;
  std::vector<double> ps;
  std::vector<int> ns;
};

/// Checks, at every grid point whose hypotheses apply: C(n) <= C(1); the C limit;
/// the C(.,.,p,1) bounds 8 pi^2/(pi-1) and 8 pi; B(n) <= B(1); the B limit; the
/// B(.,.,.,p,1) bound; and B = {2^(1+(alpha-beta)/p) C(2 alpha+1, mu, p, n)}^p.
/// C checks use the grid alphas that are >= 0.
std::vector<InequalityRecord> verify_constant_properties(const ConstantGrid& grid);

struct BariSuite {
  std::vector<int> degrees{1, 2, 4, 8, 16, 32, 64};
  std::vector<double> alphas{0.0, 0.5, 1.0, 2.5};
  std::vector<double> mus{0.0, 0.5, 1.0, 2.5};
  std::vector<double> ps{1.0, 2.0, 3.0};
  long trials = 10000;
  std::uint64_t seed = 1;
  double rel_tol = kRatioTolerance;
};

struct NikolskiiSuite {
  std::vector<int> degrees{1, 2, 4, 8, 16, 32, 64};
  std::vector<std::pair<double, double>> alpha_beta{{-0.5, -0.5}, {0.0, 0.0}, {1.0, 0.0}, {2.0, 1.0}};
  std::vector<double> mus{0.0, 1.0};
  std::vector<std::pair<double, double>> pq{{1.0, 2.0}, {1.0, kInfinity}, {2.0, 4.0}, {2.0, kInfinity}};
  long trials = 10000;
  std::uint64_t seed = 1;
  double rel_tol = kRatioTolerance;
};

/// Trial i uses combination i mod (combination count) and seed derive_seed(seed, i).
std::vector<InequalityRecord> run_bari_suite(const BariSuite& suite);
std::vector<InequalityRecord> run_nikolskii_suite(const NikolskiiSuite& suite);

/// ||P||_q / ||P||_p, 0 for the zero polynomial.
double norm_ratio(const AlgebraicPoly& p, const NikolskiiParams& params, const Accuracy& acc = {});

/// Structured starting points of degree n: T_n, ((1+x)/2)^n, and the cosine
/// spike sum_k cos kt, all in Chebyshev coefficients.
std::vector<AlgebraicPoly> structured_starts(int n);

struct ExtremalResult {
  AlgebraicPoly best;  // unit Euclidean coefficient norm
  double best_ratio = 0.0;
  std::vector<double> start_ratios;  // structured starts first, then random
  long evaluations = 0;
};

/// Nelder-Mead maximisation of norm_ratio from the structured starts and
/// `restarts` seeded random starts, each with `budget` objective evaluations.
ExtremalResult extremal_ratio_search(const NikolskiiParams& params, int restarts, long budget,
                                     std::uint64_t seed);

struct SharpnessFit {
  NikolskiiParams params;
  std::vector<int> degrees;
  std::vector<double> best_ratios;
  double fitted_exponent = 0.0;
  double theory_exponent = 0.0;
  double r_squared = 0.0;
};

/// Least-squares slope of log(best ratio) against log(n).
SharpnessFit sharpness_fit(const std::vector<std::pair<int, double>>& series,
                           const NikolskiiParams& params);

}  // namespace nikolskii
