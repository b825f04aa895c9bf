#include "nikolskii/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include "nikolskii/errors.hpp"

namespace nikolskii {
namespace {

constexpr double kPi = std::numbers::pi;

// Three-term recurrence of the monic Jacobi polynomials for (1-s)^a (1+s)^b.
double jacobi_diag(double a, double b, int k) {
  if (k == 0) return (b - a) / (a + b + 2.0);
  const double s = 2.0 * k + a + b;
  return (b * b - a * a) / (s * (s + 2.0));
}

double jacobi_offdiag_sq(double a, double b, int k) {
  if (k == 1) return 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
  const double s = 2.0 * k + a + b;
  return 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
}

// Total mass of (1-s)^a (1+s)^b on [-1, 1].
double jacobi_mass(double a, double b) {
  return std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) /
         std::tgamma(a + b + 2.0);
}

bool is_smooth_exponent(double e) { return e >= 0.0 && e == std::floor(e); }

// One factor of a product weight: |x - z|^e (power) or |sin(x - z)|^e (sine),
// where z is the zero of the factor nearest to x.
struct Factor {
  std::vector<double> zeros;
  double exponent = 0.0;
  bool sine = false;

  double nearest_zero(double x) const {
    double best = zeros.front();
    for (double z : zeros)
      if (std::abs(x - z) < std::abs(x - best)) best = z;
    return best;
  }

  double shape(double distance) const { return sine ? std::abs(std::sin(distance)) : distance; }

  double value(double distance) const {
    if (exponent == 0.0) return 1.0;
    const double s = shape(distance);
    if (s == 0.0) return exponent > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::pow(s, exponent);
  }

  // value / distance^e, the part left after the singular power is removed.
  double reduced(double distance) const {
    if (!sine || exponent == 0.0) return 1.0;
    return std::pow(std::sin(distance) / distance, exponent);
  }
};

struct WeightModel {
  std::vector<Factor> factors;
  double lo = -1.0;
  double hi = 1.0;

  std::vector<double> all_zeros() const {
    std::vector<double> z;
    for (const auto& f : factors) z.insert(z.end(), f.zeros.begin(), f.zeros.end());
    return z;
  }

  std::vector<double> singular_zeros() const {
    std::vector<double> z;
    for (const auto& f : factors)
      if (!is_smooth_exponent(f.exponent)) z.insert(z.end(), f.zeros.begin(), f.zeros.end());
    return z;
  }

  double exponent_at(double z) const {
    double e = 0.0;
    for (const auto& f : factors)
      if (std::find(f.zeros.begin(), f.zeros.end(), z) != f.zeros.end()) e += f.exponent;
    return e;
  }
};

WeightModel algebraic_model(const WeightParams& w) {
  WeightModel m;
  m.factors = {{{1.0}, w.alpha, false}, {{-1.0}, w.beta, false}, {{0.0}, w.gamma, false}};
  m.lo = -1.0;
  m.hi = 1.0;
  return m;
}

WeightModel trig_model(const TrigWeightParams& tw, double lo, double hi) {
  WeightModel m;
  m.factors = {{{-kPi, 0.0, kPi}, tw.alpha, true}, {{-kPi / 2.0, kPi / 2.0}, tw.mu, true}};
  m.lo = lo;
  m.hi = hi;
  return m;
}

struct Panel {
  double a;
  double b;
};

// Splits [a, b] geometrically so that every piece is at least its own length
// away from each singular zero lying outside it.
void grade_panel(Panel p, const std::vector<double>& singular, std::vector<Panel>& out) {
  while (true) {
    double dist = std::numeric_limits<double>::infinity();
    bool left = true;
    for (double z : singular) {
      if (z < p.a && p.a - z < dist) {
        dist = p.a - z;
        left = true;
      } else if (z > p.b && z - p.b < dist) {
        dist = z - p.b;
        left = false;
      }
    }
    if (dist >= p.b - p.a) {
      out.push_back(p);
      return;
    }
    if (left) {
      out.push_back({p.a, p.a + dist});
      p.a += dist;
    } else {
      out.push_back({p.b - dist, p.b});
      p.b -= dist;
    }
  }
}

std::vector<Panel> build_panels(const WeightModel& model, const std::vector<double>& extra) {
  const double span = model.hi - model.lo;
  const double merge_tol = 1e-13 * span;
  struct Cut {
    double x;
    bool fixed;
  };
  std::vector<Cut> cuts{{model.lo, true}, {model.hi, true}};
  for (double z : model.all_zeros())
    if (z > model.lo && z < model.hi) cuts.push_back({z, true});
  for (double x : extra)
    if (std::isfinite(x) && x > model.lo && x < model.hi) cuts.push_back({x, false});
  std::sort(cuts.begin(), cuts.end(), [](const Cut& l, const Cut& r) { return l.x < r.x; });

  std::vector<Cut> merged;
  for (const auto& c : cuts) {
    if (!merged.empty() && c.x - merged.back().x <= merge_tol) {
      if (c.fixed && !merged.back().fixed) merged.back() = c;
      continue;
    }
    merged.push_back(c);
  }
  // The domain end may have been replaced by a nearby cut; restore it.
  merged.front().x = model.lo;
  merged.back().x = model.hi;

  const auto singular = model.singular_zeros();
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i)
    grade_panel({merged[i].x, merged[i + 1].x}, singular, panels);
  return panels;
}

// Gauss-Jacobi sum on one panel with the endpoint powers absorbed by the rule.
double panel_sum(const Integrand& f, const WeightModel& model, const Panel& p, double left_exp,
                 double right_exp, int m) {
  const auto rule = cached_gauss_jacobi_rule(right_exp, left_exp, m);
  const double half = 0.5 * (p.b - p.a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule->size(); ++i) {
    const double s = rule->nodes[i];
    const double dl = half * (1.0 + s);
    const double dr = half * (1.0 - s);
    const double x = dl <= dr ? p.a + dl : p.b - dr;
    double g = f.fn(x);
    if (g == 0.0) continue;
    for (const auto& factor : model.factors) {
      if (factor.exponent == 0.0) continue;
      const double z = factor.nearest_zero(x);
      if (z == p.a && left_exp != 0.0) {
        g *= factor.reduced(dl);
      } else if (z == p.b && right_exp != 0.0) {
        g *= factor.reduced(dr);
      } else {
        const double d = std::abs(p.a - z) <= std::abs(p.b - z) ? std::abs((p.a - z) + dl)
                                                                 : std::abs((p.b - z) - dr);
        g *= factor.value(d);
      }
    }
    sum += rule->weights[i] * g;
  }
  return sum * std::pow(half, 1.0 + left_exp + right_exp);
}

IntegralResult integrate_model(const Integrand& f, const WeightModel& model, const Accuracy& acc) {
  if (!(acc.rel_tol > 0.0) || !(acc.abs_tol > 0.0) || acc.max_points < 2)
    throw DomainError("Accuracy: tolerances must be positive and max_points >= 2");
  IntegralResult result;
  if (model.hi <= model.lo) return result;
  for (const Panel& p : build_panels(model, f.breakpoints)) {
    const double left_exp = model.exponent_at(p.a);
    const double right_exp = model.exponent_at(p.b);
    int m = std::min(8, acc.max_points / 2);
    double previous = panel_sum(f, model, p, left_exp, right_exp, m);
    result.points += m;
    while (true) {
      if (2 * m > acc.max_points) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "quadrature did not converge on panel [" << p.a << ", " << p.b << "] within "
            << acc.max_points << " points";
        throw ConvergenceError(msg.str(), previous, previous);
      }
      m *= 2;
      const double current = panel_sum(f, model, p, left_exp, right_exp, m);
      result.points += m;
      const double diff = std::abs(current - previous);
      if (std::isfinite(current) && diff <= std::max(acc.rel_tol * std::abs(current), acc.abs_tol)) {
        result.value += current;
        result.error += diff;
        break;
      }
      if (2 * m > acc.max_points) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "quadrature did not converge on panel [" << p.a << ", " << p.b << "] within "
            << acc.max_points << " points (last iterates " << previous << ", " << current << ")";
        throw ConvergenceError(msg.str(), previous, current);
      }
      previous = current;
    }
  }
  return result;
}

// Integral of |x - z|^e over a cell whose distances to z are d1 < d2.
double power_cell_integral(double d1, double d2, double e) {
  const double k = e + 1.0;
  if (d1 == 0.0) return std::pow(d2, k) / k;
  return std::pow(d1, k) * std::expm1(k * std::log1p((d2 - d1) / d1)) / k;
}

// Position of the centroid of |x - z|^e within a cell, as a fraction of the
// way from the near edge (distance d1) to the far edge (distance d2).
double centroid_fraction(double d1, double d2, double e) {
  if (d1 == 0.0) return (e + 1.0) / (e + 2.0);
  const double w = d2 - d1;
  const double log_ratio = std::log1p(w / d1);
  const double first = std::expm1((e + 1.0) * log_ratio) / (e + 1.0);
  const double second = std::expm1((e + 2.0) * log_ratio) / (e + 2.0);
  return d1 * (second - first) / first / w;
}

double oracle_model(const std::function<double(double)>& f, const WeightModel& model, long panels) {
  if (panels < 1) throw DomainError("oracle_integrate: panels must be positive");
  if (model.hi <= model.lo) return 0.0;
  constexpr double kRatio = 0.7;
  constexpr int kLevels = 80;
  const double h = (model.hi - model.lo) / static_cast<double>(panels);

  std::vector<double> cuts{model.lo, model.hi};
  std::vector<double> singular;
  for (const auto& factor : model.factors) {
    if (factor.exponent == 0.0) continue;
    for (double z : factor.zeros) {
      if (z > model.lo && z < model.hi) cuts.push_back(z);
      if (z >= model.lo && z <= model.hi) singular.push_back(z);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto is_singular = [&](double z) {
    return std::find(singular.begin(), singular.end(), z) != singular.end();
  };

  double total = 0.0;
  // Cell at offsets [o1, o2] from anchor, in direction dir.
  auto cell = [&](double anchor, double dir, double o1, double o2) {
    const double oc = 0.5 * (o1 + o2);
    const double x = anchor + dir * oc;
    auto distance = [&](double z, double off) {
      return z == anchor ? off : std::abs(anchor + dir * off - z);
    };
    // Nearest singular point among the weight's factors.
    const Factor* nearest = nullptr;
    double nearest_z = 0.0;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (const auto& factor : model.factors) {
      if (factor.exponent == 0.0) continue;
      const double z = factor.nearest_zero(x);
      const double d = distance(z, oc);
      if (d < nearest_d) {
        nearest_d = d;
        nearest = &factor;
        nearest_z = z;
      }
    }
    if (nearest == nullptr) {
      total += f(x) * (o2 - o1);
      return;
    }
    // Sample the smooth part at the centroid of |x - z|^e over the cell.
    double d1 = distance(nearest_z, o1);
    double d2 = distance(nearest_z, o2);
    double near_off = o1, far_off = o2;
    if (d1 > d2) {
      std::swap(d1, d2);
      std::swap(near_off, far_off);
    }
    const double e = nearest->exponent;
    const double mass = power_cell_integral(d1, d2, e);
    const double frac = centroid_fraction(d1, d2, e);
    const double xc_off = near_off + (far_off - near_off) * frac;
    const double xc = anchor + dir * xc_off;
    double gc = f(xc);
    for (const auto& factor : model.factors) {
      if (factor.exponent == 0.0) continue;
      if (&factor == nearest) {
        gc *= factor.reduced(distance(nearest_z, xc_off));
      } else {
        gc *= factor.value(distance(factor.nearest_zero(xc), xc_off));
      }
    }
    total += gc * mass;
  };
  auto uniform_piece = [&](double anchor, double dir, double o1, double o2) {
    const long count = std::max(1L, static_cast<long>(std::ceil((o2 - o1) / h)));
    const double step = (o2 - o1) / static_cast<double>(count);
    for (long i = 0; i < count; ++i) {
      const double a = o1 + step * static_cast<double>(i);
      const double b = i + 1 == count ? o2 : o1 + step * static_cast<double>(i + 1);
      cell(anchor, dir, a, b);
    }
  };
  auto graded = [&](double anchor, double dir, double depth) {
    double outer = depth;
    for (int k = 0; k < kLevels; ++k) {
      const double inner = outer * kRatio;
      uniform_piece(anchor, dir, inner, outer);
      outer = inner;
    }
    cell(anchor, dir, 0.0, outer);
  };

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double left = cuts[i];
    const double right = cuts[i + 1];
    const double len = right - left;
    const bool grade_left = is_singular(left);
    const bool grade_right = is_singular(right);
    const double depth = 0.25 * len;
    double start = 0.0;
    double stop = len;
    if (grade_left) {
      graded(left, 1.0, depth);
      start = depth;
    }
    if (grade_right) {
      graded(right, -1.0, depth);
      stop = len - depth;
    }
    uniform_piece(left, 1.0, start, stop);
  }
  return total;
}

void require_trig_range(const TrigWeightParams& tw, double lo, double hi) {
  if (!tw.valid()) throw DomainError("trig weight exponents must be >= 0");
  if (!(lo >= -kPi && lo <= hi && hi <= kPi))
    throw DomainError("trig integration range must satisfy -pi <= lo <= hi <= pi");
}

}  // namespace

double QuadratureRule::apply(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

QuadratureRule gauss_jacobi_rule(double a_exp, double b_exp, int m) {
  if (!(a_exp > -1.0) || !(b_exp > -1.0))
    throw DomainError("gauss_jacobi_rule: exponents must exceed -1");
  if (m < 1) throw DomainError("gauss_jacobi_rule: m must be positive");

  std::vector<double> diag(m);
  std::vector<double> root_beta(m + 1, 0.0);  // root_beta[k] couples rows k-1 and k
  for (int k = 0; k < m; ++k) diag[k] = jacobi_diag(a_exp, b_exp, k);
  for (int k = 1; k <= m; ++k) root_beta[k] = std::sqrt(jacobi_offdiag_sq(a_exp, b_exp, k));

  std::vector<double> nodes(m);
  if (m == 1) {
    nodes[0] = diag[0];
  } else {
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), m);
    Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(root_beta.data() + 1, m - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw ConvergenceError("gauss_jacobi_rule: tridiagonal eigensolver failed", 0.0, 0.0);
    for (int i = 0; i < m; ++i) nodes[i] = solver.eigenvalues()[i];
  }

  // Orthonormal recurrence at x: returns sum of p_k^2 for k < m, plus p_m and p_m'.
  struct Eval {
    double sum_sq;
    double pm;
    double dpm;
  };
  auto recurrence = [&](double x) {
    double p_prev = 0.0, p = 1.0, dp_prev = 0.0, dp = 0.0;
    double sum_sq = 1.0;
    for (int k = 0; k < m; ++k) {
      const double p_next = ((x - diag[k]) * p - root_beta[k] * p_prev) / root_beta[k + 1];
      const double dp_next = ((x - diag[k]) * dp + p - root_beta[k] * dp_prev) / root_beta[k + 1];
      p_prev = p;
      p = p_next;
      dp_prev = dp;
      dp = dp_next;
      if (k + 1 < m) sum_sq += p * p;
    }
    return Eval{sum_sq, p, dp};
  };

  const double mass = jacobi_mass(a_exp, b_exp);
  QuadratureRule rule;
  rule.a_exp = a_exp;
  rule.b_exp = b_exp;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = nodes[i];
    // One Newton step polishes the eigenvalue; rejected if it leaves the gap.
    const Eval ev = recurrence(x);
    if (ev.dpm != 0.0) {
      const double step = ev.pm / ev.dpm;
      const double lo = i > 0 ? nodes[i - 1] : -1.0;
      const double hi = i + 1 < m ? nodes[i + 1] : 1.0;
      if (std::abs(step) < 1e-6 && x - step > lo && x - step < hi) x -= step;
    }
    rule.nodes[i] = x;
    rule.weights[i] = mass / recurrence(x).sum_sq;
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(double a_exp, double b_exp, int m) {
  using Key = std::tuple<double, double, int>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;
  const Key key{a_exp, b_exp, m};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi_rule(a_exp, b_exp, m));
  std::unique_lock lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

IntegralResult integrate_weighted_algebraic(const Integrand& f, const WeightParams& w,
                                            const Accuracy& acc) {
  if (!w.valid()) throw DomainError("weight exponents must exceed -1");
  return integrate_model(f, algebraic_model(w), acc);
}

IntegralResult integrate_weighted_trig(const Integrand& f, const TrigWeightParams& tw,
                                       const Accuracy& acc) {
  return integrate_weighted_trig(f, tw, -kPi, kPi, acc);
}

IntegralResult integrate_weighted_trig(const Integrand& f, const TrigWeightParams& tw, double lo,
                                       double hi, const Accuracy& acc) {
  require_trig_range(tw, lo, hi);
  return integrate_model(f, trig_model(tw, lo, hi), acc);
}

double oracle_integrate(const std::function<double(double)>& f, const WeightParams& w,
                        long panels) {
  if (!w.valid()) throw DomainError("weight exponents must exceed -1");
  return oracle_model(f, algebraic_model(w), panels);
}

double oracle_integrate(const std::function<double(double)>& f, const TrigWeightParams& tw,
                        long panels) {
  return oracle_integrate(f, tw, -kPi, kPi, panels);
}

double oracle_integrate(const std::function<double(double)>& f, const TrigWeightParams& tw,
                        double lo, double hi, long panels) {
  require_trig_range(tw, lo, hi);
  return oracle_model(f, trig_model(tw, lo, hi), panels);
}

}  // namespace nikolskii
