#include "nikolskii/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "nikolskii/errors.hpp"
#include "nikolskii/lemmas.hpp"
#include "nikolskii/parallel.hpp"
#include "nikolskii/random.hpp"

namespace nikolskii {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIdentityTolerance = 1e-12;
constexpr double kInequalitySlack = 1e-12;
constexpr double kLimitTolerance = 1e-4;
constexpr int kLimitDegree = 1000000;

InequalityRecord make_record(std::string statement, ParamList params, std::string subject,
                             double lhs, double rhs, bool pass) {
  InequalityRecord r;
  r.statement = std::move(statement);
  r.params = std::move(params);
  r.subject = std::move(subject);
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = rhs != 0.0 ? lhs / rhs : (lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  r.pass = pass;
  return r;
}

double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

std::string trial_subject(long trial, std::uint64_t seed) {
  std::ostringstream s;
  s << "trial=" << trial << " seed=" << seed;
  return s.str();
}

// Chebyshev coefficients of x * P.
std::vector<double> times_x(const std::vector<double>& c) {
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k == 0) {
      out[1] += c[0];
    } else {
      out[k + 1] += 0.5 * c[k];
      out[k - 1] += 0.5 * c[k];
    }
  }
  return out;
}

struct SimplexResult {
  std::vector<double> x;
  double value;
  long evaluations;
};

// Nelder-Mead minimisation with the standard coefficients (1, 2, 1/2, 1/2).
template <class F>
SimplexResult nelder_mead(F&& f, const std::vector<double>& start, double step, long budget) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(dim + 1);
  long evals = 0;
  for (std::size_t i = 0; i <= dim; ++i) {
    values[i] = f(simplex[i]);
    ++evals;
  }
  std::vector<std::size_t> order(dim + 1);
  auto point = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                   double t) {
    std::vector<double> p(dim);
    for (std::size_t k = 0; k < dim; ++k) p[k] = centroid[k] + t * (worst[k] - centroid[k]);
    return p;
  };
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - (dim > 0 ? 1 : 0)];
    if (std::abs(values[worst] - values[best]) <= 1e-13 * std::abs(values[best])) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k] / static_cast<double>(dim);
    }
    const auto reflected = point(centroid, simplex[worst], -1.0);
    const double fr = f(reflected);
    ++evals;
    if (fr < values[best]) {
      const auto expanded = point(centroid, simplex[worst], -2.0);
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const auto contracted = point(centroid, outside ? reflected : simplex[worst], 0.5);
    const double fc = f(contracted);
    ++evals;
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= dim && evals < budget; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < dim; ++k)
        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      values[i] = f(simplex[i]);
      ++evals;
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  return {simplex[static_cast<std::size_t>(it - values.begin())], *it, evals};
}

std::vector<double> unit(std::vector<double> c) {
  double norm = 0.0;
  for (double v : c) norm += v * v;
  norm = std::sqrt(norm);
  if (norm > 0.0)
    for (double& v : c) v /= norm;
  return c;
}

}  // namespace

bool within_bound(double lhs, double rhs, double rel_tol) {
  return lhs <= rhs * (1.0 + rel_tol) + kAbsoluteSlack;
}

InequalityRecord verify_bari(const TrigPoly& t, const TrigWeightParams& tw, double p, int n,
                             const Accuracy& acc, double rel_tol) {
  if (!tw.valid()) throw PreconditionError("verify_bari: alpha and mu must be >= 0");
  if (!(p >= 1.0) || !std::isfinite(p)) throw PreconditionError("verify_bari: p must lie in [1, inf)");
  if (n < 1 || n < t.degree_bound())
    throw PreconditionError("verify_bari: n must be >= 1 and >= the degree bound of T");
  ParamList params{{"alpha", tw.alpha}, {"mu", tw.mu}, {"p", p}, {"n", static_cast<double>(n)},
                   {"exact_degree", static_cast<double>(t.exact_degree())}};
  const double lhs = uniform_norm(t);
  if (lhs == 0.0) return make_record(statement::kBariLemma, std::move(params), "", 0.0, 0.0, true);
  const double hi = std::max(tw.alpha, tw.mu);
  const double rhs = c_constant(tw.alpha, tw.mu, p, n) * std::pow(static_cast<double>(n), (hi + 1.0) / p) *
                     lp_norm(t, p, tw, acc);
  return make_record(statement::kBariLemma, std::move(params), "", lhs, rhs,
                     within_bound(lhs, rhs, rel_tol));
}

double theory_exponent(const NikolskiiParams& params) {
  return std::max(2.0 * (params.alpha + 1.0), params.mu + 1.0) *
         (1.0 / params.p - reciprocal_exponent(params.q));
}

double theorem_factor(const NikolskiiParams& params) {
  const double gap = 1.0 / params.p - reciprocal_exponent(params.q);
  return std::pow(b_constant(params.alpha, params.beta, params.mu, params.p, params.n), gap) *
         std::pow(static_cast<double>(params.n), theory_exponent(params));
}

InequalityRecord verify_nikolskii(const AlgebraicPoly& poly, const NikolskiiParams& params,
                                  const Accuracy& acc, double rel_tol) {
  if (!params.valid())
    throw PreconditionError(
        "verify_nikolskii: requires alpha >= beta >= -1/2, mu >= 0, 1 <= p < q <= inf, n >= 1");
  if (poly.degree_bound() > params.n)
    throw PreconditionError("verify_nikolskii: polynomial degree exceeds n");
  ParamList list{{"alpha", params.alpha}, {"beta", params.beta}, {"mu", params.mu},
                 {"p", params.p},         {"q", params.q},       {"n", static_cast<double>(params.n)},
                 {"exact_degree", static_cast<double>(poly.exact_degree())}};
  const auto w = params.weight();
  const double lhs = lp_norm(poly, params.q, w, acc);
  if (lhs == 0.0)
    return make_record(statement::kNikolskiiTheorem, std::move(list), "", 0.0, 0.0, true);
  const double rhs = theorem_factor(params) * lp_norm(poly, params.p, w, acc);
  return make_record(statement::kNikolskiiTheorem, std::move(list), "", lhs, rhs,
                     within_bound(lhs, rhs, rel_tol));
}

std::vector<InequalityRecord> verify_constant_properties(const ConstantGrid& grid) {
  std::vector<InequalityRecord> out;
  const std::string id = statement::kConstantProperties;
  const double bound_pi2 = 8.0 * kPi * kPi / (kPi - 1.0);
  auto le = [](double lhs, double rhs) { return lhs <= rhs * (1.0 + kInequalitySlack); };

  for (double alpha : grid.alphas) {
    if (alpha < 0.0) continue;
    for (double p : grid.ps) {
      if (alpha <= p) {
        const double c1 = c_constant(alpha, 0.0, p, 1);
        out.push_back(make_record(id, {{"alpha", alpha}, {"mu", 0.0}, {"p", p}}, "C(alpha,0,p,1) <= 8pi",
                                  c1, 8.0 * kPi, le(c1, 8.0 * kPi)));
      }
      for (double mu : grid.mus) {
        const ParamList base{{"alpha", alpha}, {"mu", mu}, {"p", p}};
        const double c1 = c_constant(alpha, mu, p, 1);
        for (int n : grid.ns) {
          ParamList params = base;
          params.emplace_back("n", n);
          const double cn = c_constant(alpha, mu, p, n);
          out.push_back(make_record(id, params, "C(n) <= C(1)", cn, c1, le(cn, c1)));
        }
        const double err = relative_error(c_constant(alpha, mu, p, kLimitDegree), c_limit(alpha, mu, p));
        out.push_back(make_record(id, base, "C limit", err, kLimitTolerance, err <= kLimitTolerance));
        if (std::max(alpha, mu) <= p)
          out.push_back(make_record(id, base, "C(1) <= 8pi^2/(pi-1)", c1, bound_pi2, le(c1, bound_pi2)));
      }
    }
  }

  for (double alpha : grid.alphas) {
    for (double beta : grid.betas) {
      if (!(beta <= alpha) || beta < -0.5 || alpha < -0.5) continue;
      for (double mu : grid.mus) {
        for (double p : grid.ps) {
          const ParamList base{{"alpha", alpha}, {"beta", beta}, {"mu", mu}, {"p", p}};
          const double b1 = b_constant(alpha, beta, mu, p, 1);
          for (int n : grid.ns) {
            ParamList params = base;
            params.emplace_back("n", n);
            const double bn = b_constant(alpha, beta, mu, p, n);
            const double via_c =
                std::pow(std::pow(2.0, 1.0 + (alpha - beta) / p) * c_constant(2.0 * alpha + 1.0, mu, p, n), p);
            const double err = relative_error(via_c, bn);
            out.push_back(make_record(id, params, "B-C identity", err, kIdentityTolerance,
                                      err <= kIdentityTolerance));
            out.push_back(make_record(id, params, "B(n) <= B(1)", bn, b1, le(bn, b1)));
          }
          const double err =
              relative_error(b_constant(alpha, beta, mu, p, kLimitDegree), b_limit(alpha, beta, mu, p));
          out.push_back(make_record(id, base, "B limit", err, kLimitTolerance, err <= kLimitTolerance));
          if (std::max(2.0 * alpha + 1.0, mu) <= p) {
            const double bound = std::pow(2.0, p + alpha - beta) * std::pow(bound_pi2, p);
            out.push_back(make_record(id, base, "B(1) <= 2^(p+alpha-beta)(8pi^2/(pi-1))^p", b1, bound,
                                      le(b1, bound)));
          }
        }
      }
    }
  }
  return out;
}

std::vector<InequalityRecord> run_bari_suite(const BariSuite& suite) {
  struct Combo {
    int n;
    double alpha, mu, p;
  };
  std::vector<Combo> combos;
  for (int n : suite.degrees)
    for (double alpha : suite.alphas)
      for (double mu : suite.mus)
        for (double p : suite.ps) combos.push_back({n, alpha, mu, p});
  if (combos.empty() || suite.trials <= 0) return {};
  std::vector<InequalityRecord> out(static_cast<std::size_t>(suite.trials));
  parallel_for(out.size(), [&](std::size_t i) {
    const Combo& c = combos[i % combos.size()];
    const std::uint64_t seed = derive_seed(suite.seed, i);
    const TrigPoly t = random_trig_poly(c.n, seed);
    out[i] = verify_bari(t, {c.alpha, c.mu}, c.p, c.n, {}, suite.rel_tol);
    out[i].subject = trial_subject(static_cast<long>(i), seed);
  });
  return out;
}

std::vector<InequalityRecord> run_nikolskii_suite(const NikolskiiSuite& suite) {
  std::vector<NikolskiiParams> combos;
  for (int n : suite.degrees)
    for (const auto& [alpha, beta] : suite.alpha_beta)
      for (double mu : suite.mus)
        for (const auto& [p, q] : suite.pq) combos.push_back({alpha, beta, mu, p, q, n});
  if (combos.empty() || suite.trials <= 0) return {};
  std::vector<InequalityRecord> out(static_cast<std::size_t>(suite.trials));
  parallel_for(out.size(), [&](std::size_t i) {
    const NikolskiiParams& params = combos[i % combos.size()];
    const std::uint64_t seed = derive_seed(suite.seed, i);
    const AlgebraicPoly poly = random_algebraic_poly(params.n, seed);
    out[i] = verify_nikolskii(poly, params, {}, suite.rel_tol);
    out[i].subject = trial_subject(static_cast<long>(i), seed);
  });
  return out;
}

double norm_ratio(const AlgebraicPoly& p, const NikolskiiParams& params, const Accuracy& acc) {
  const auto w = params.weight();
  const double denom = lp_norm(p, params.p, w, acc);
  if (denom == 0.0) return 0.0;
  return lp_norm(p, params.q, w, acc) / denom;
}

std::vector<AlgebraicPoly> structured_starts(int n) {
  std::vector<AlgebraicPoly> starts;
  std::vector<double> cheb(n + 1, 0.0);
  cheb[n] = 1.0;
  starts.emplace_back(cheb);

  // ((1 + x)/2)^n built by repeated multiplication.
  std::vector<double> peak{1.0};
  for (int k = 0; k < n; ++k) {
    auto shifted = times_x(peak);
    for (std::size_t i = 0; i < peak.size(); ++i) shifted[i] += peak[i];
    for (double& v : shifted) v *= 0.5;
    peak = std::move(shifted);
  }
  starts.emplace_back(peak);

  std::vector<double> spike(n + 1, 1.0);
  spike[0] = 0.5;
  starts.emplace_back(spike);
  return starts;
}

ExtremalResult extremal_ratio_search(const NikolskiiParams& params, int restarts, long budget,
                                     std::uint64_t seed) {
  if (!params.valid()) throw PreconditionError("extremal_ratio_search: inadmissible parameters");
  if (restarts < 1) throw PreconditionError("extremal_ratio_search: restarts must be >= 1");
  std::vector<std::vector<double>> starts;
  for (const auto& s : structured_starts(params.n)) starts.push_back(unit(s.cheb));
  for (int r = 0; r < restarts; ++r)
    starts.push_back(unit(random_algebraic_poly(params.n, derive_seed(seed, r)).cheb));

  auto objective = [&](const std::vector<double>& c) {
    try {
      return -norm_ratio(AlgebraicPoly(unit(c)), params);
    } catch (const ConvergenceError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  ExtremalResult result;
  result.best_ratio = -1.0;
  for (const auto& start : starts) {
    result.start_ratios.push_back(-objective(start));
    const auto found = nelder_mead(objective, start, 0.1, std::max(budget, 1L));
    result.evaluations += found.evaluations + 1;
    const double ratio = -found.value;
    if (ratio > result.best_ratio) {
      result.best_ratio = ratio;
      result.best = AlgebraicPoly(unit(found.x));
    }
  }
  return result;
}

SharpnessFit sharpness_fit(const std::vector<std::pair<int, double>>& series,
                           const NikolskiiParams& params) {
  if (series.size() < 3) throw PreconditionError("sharpness_fit: need at least three degrees");
  SharpnessFit fit;
  fit.params = params;
  fit.theory_exponent = theory_exponent(params);
  std::vector<double> xs, ys;
  for (const auto& [n, ratio] : series) {
    if (!(ratio > 0.0)) throw PreconditionError("sharpness_fit: ratios must be positive");
    if (n < 1) throw PreconditionError("sharpness_fit: degrees must be positive");
    if (!fit.degrees.empty() && n <= fit.degrees.back())
      throw PreconditionError("sharpness_fit: degrees must be strictly increasing");
    fit.degrees.push_back(n);
    fit.best_ratios.push_back(ratio);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(ratio));
  }
  const double count = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / count;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.fitted_exponent = sxy / sxx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace nikolskii
