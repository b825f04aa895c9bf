#include "nikolskii/poly.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "nikolskii/errors.hpp"
#include "nikolskii/random.hpp"

namespace nikolskii {
namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(const std::vector<double>& v, const char* what) {
  for (double c : v)
    if (!std::isfinite(c)) throw DomainError(std::string(what) + ": coefficients must be finite");
}

int sample_count(int n) { return std::max(257, 32 * std::max(n, 0) + 1); }

// Cosine-series Clenshaw; x = cos t. Returns sum_{k>=0} c_k T_k(x).
double clenshaw_cos(const double* c, std::size_t count, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = count; k-- > 1;) {
    const double b0 = c[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + x * b1 - b2;
}

// Brent search for the max of |f| on [lo, hi].
template <class F>
double refine_max(F&& f, double lo, double hi) {
  constexpr int kBits = std::numeric_limits<double>::digits / 2;
  std::uintmax_t iterations = 200;
  const auto r = boost::math::tools::brent_find_minima(
      [&](double t) { return -std::abs(f(t)); }, lo, hi, kBits, iterations);
  return -r.second;
}

// Max of |f| over samples g[0..N) with Brent refinement of each local max.
// Sample i sits at abscissa(i); cyclic selects periodic neighbours.
template <class F, class A>
double sampled_max(F&& f, A&& abscissa, int count, bool cyclic) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = std::abs(f(abscissa(i)));
  double best = *std::max_element(g.begin(), g.end());
  if (best == 0.0) return 0.0;
  // With n*h <= pi/16 Bernstein's bound |f''| <= n^2 max|f| keeps the sample next
  // to the true maximum within (n h)^2/8 < 0.5% of it, so lower peaks are skipped.
  const double floor_value = 0.99 * best;
  for (int i = 0; i < count; ++i) {
    if (g[i] < floor_value) continue;
    int left = i - 1;
    int right = i + 1;
    if (cyclic) {
      left = (left + count) % count;
      right %= count;
    }
    const bool has_left = left >= 0;
    const bool has_right = right < count;
    const double gl = has_left ? g[left] : -1.0;
    const double gr = has_right ? g[right] : -1.0;
    if (g[i] < gl || g[i] < gr) continue;
    if (g[i] == gl && g[i] == gr) continue;  // flat
    // Bracket in abscissa space; the cyclic wrap uses the unwrapped neighbour.
    const double x = abscissa(i);
    double lo = has_left ? abscissa(left) : x;
    double hi = has_right ? abscissa(right) : x;
    if (cyclic && i == 0) lo = x - (abscissa(1) - abscissa(0));
    if (cyclic && i == count - 1) hi = x + (abscissa(1) - abscissa(0));
    if (lo > hi) std::swap(lo, hi);
    if (hi > lo) best = std::max(best, refine_max(f, lo, hi));
  }
  return best;
}

template <class F>
double bracketed_root(F&& f, double lo, double hi, double flo, double fhi) {
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
  std::uintmax_t iterations = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iterations);
  return 0.5 * (r.first + r.second);
}

bool is_even_integer(double p) { return p == std::floor(p) && std::fmod(p, 2.0) == 0.0; }

double abs_power(double v, double p) {
  const double a = std::abs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 4.0) return (a * a) * (a * a);
  return std::pow(a, p);
}

void require_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: exponent must be >= 1 or infinity");
}

}  // namespace

AlgebraicPoly::AlgebraicPoly(std::vector<double> coeffs) : cheb(std::move(coeffs)) {
  if (cheb.empty()) cheb.push_back(0.0);
  require_finite(cheb, "AlgebraicPoly");
}

int AlgebraicPoly::exact_degree() const {
  for (int k = degree_bound(); k >= 0; --k)
    if (cheb[k] != 0.0) return k;
  return -1;
}

AlgebraicPoly AlgebraicPoly::scaled(double c) const {
  AlgebraicPoly out = *this;
  for (double& v : out.cheb) v *= c;
  return out;
}

TrigPoly::TrigPoly(double a0_, std::vector<double> cos_, std::vector<double> sin_)
    : a0(a0_), cos_coeffs(std::move(cos_)), sin_coeffs(std::move(sin_)) {
  if (cos_coeffs.size() != sin_coeffs.size())
    throw DomainError("TrigPoly: cosine and sine coefficient counts differ");
  if (!std::isfinite(a0)) throw DomainError("TrigPoly: coefficients must be finite");
  require_finite(cos_coeffs, "TrigPoly");
  require_finite(sin_coeffs, "TrigPoly");
}

int TrigPoly::exact_degree() const {
  for (int k = degree_bound(); k >= 1; --k)
    if (cos_coeffs[k - 1] != 0.0 || sin_coeffs[k - 1] != 0.0) return k;
  return a0 != 0.0 ? 0 : -1;
}

TrigPoly TrigPoly::scaled(double c) const {
  TrigPoly out = *this;
  out.a0 *= c;
  for (double& v : out.cos_coeffs) v *= c;
  for (double& v : out.sin_coeffs) v *= c;
  return out;
}

double eval_algebraic(const AlgebraicPoly& p, double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("eval_algebraic: x outside [-1, 1]");
  return clenshaw_cos(p.cheb.data(), p.cheb.size(), x);
}

double eval_trig(const TrigPoly& t, double theta) {
  const std::size_t n = t.cos_coeffs.size();
  if (n == 0) return t.a0;
  const double x = std::cos(theta);
  const double two_x = 2.0 * x;
  // cos part: Clenshaw for sum a_k T_k(x); sin part: sum b_k U_{k-1}(x) sin t.
  // One loop so the two dependency chains overlap.
  double b1 = 0.0, b2 = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double b0 = t.cos_coeffs[k] + two_x * b1 - b2;
    const double s0 = t.sin_coeffs[k] + two_x * s1 - s2;
    b2 = b1;
    b1 = b0;
    s2 = s1;
    s1 = s0;
  }
  return t.a0 + x * b1 - b2 + s1 * std::sin(theta);
}

TrigPoly compose_with_cosine(const AlgebraicPoly& p) {
  const std::size_t n = p.cheb.size() - 1;
  return TrigPoly(p.cheb[0], std::vector<double>(p.cheb.begin() + 1, p.cheb.end()),
                  std::vector<double>(n, 0.0));
}

TrigPoly trig_derivative(const TrigPoly& t) {
  const std::size_t n = t.cos_coeffs.size();
  std::vector<double> c(n), s(n);
  for (std::size_t k = 1; k <= n; ++k) {
    c[k - 1] = static_cast<double>(k) * t.sin_coeffs[k - 1];
    s[k - 1] = -static_cast<double>(k) * t.cos_coeffs[k - 1];
  }
  return TrigPoly(0.0, std::move(c), std::move(s));
}

double uniform_norm(const AlgebraicPoly& p) {
  const int count = sample_count(p.degree_bound());
  const double step = kPi / (count - 1);
  // Sample |P(cos theta)| on a uniform theta grid, i.e. Chebyshev points in x.
  auto f = [&](double theta) {
    return clenshaw_cos(p.cheb.data(), p.cheb.size(), std::cos(theta));
  };
  return sampled_max(f, [&](int i) { return i == count - 1 ? kPi : step * i; }, count, false);
}

double uniform_norm(const TrigPoly& t) {
  const int count = sample_count(t.degree_bound());
  const double step = 2.0 * kPi / count;
  auto f = [&](double theta) { return eval_trig(t, theta); };
  return sampled_max(f, [&](int i) { return -kPi + step * i; }, count, true);
}

namespace {

// Sign changes of f from samples fs at ascending xs. Besides bracketed changes,
// every sampled local minimum of |f| is checked for a pair of roots hidden
// between neighbouring samples.
template <class F>
std::vector<double> collect_sign_changes(F&& f, const std::vector<double>& xs, const std::vector<double>& fs) {
  const int count = static_cast<int>(xs.size());
  std::vector<double> roots;
  auto sign_of = [](double v) { return v < 0.0 ? -1.0 : 1.0; };
  for (int i = 0; i + 1 < count; ++i) {
    if (fs[i] == 0.0) {
      if (i > 0) roots.push_back(xs[i]);
    } else if (fs[i + 1] != 0.0 && (fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
      roots.push_back(bracketed_root(f, xs[i], xs[i + 1], fs[i], fs[i + 1]));
    }
  }
  for (int i = 0; i < count; ++i) {
    const int l = std::max(i - 1, 0);
    const int r = std::min(i + 1, count - 1);
    if (fs[i] == 0.0 || fs[l] == 0.0 || fs[r] == 0.0) continue;
    const double s = sign_of(fs[i]);
    if (sign_of(fs[l]) != s || sign_of(fs[r]) != s) continue;
    if (std::abs(fs[i]) > std::abs(fs[l]) || std::abs(fs[i]) > std::abs(fs[r])) continue;
    std::uintmax_t iterations = 200;
    const auto m = boost::math::tools::brent_find_minima([&](double x) { return s * f(x); }, xs[l], xs[r],
                                                         std::numeric_limits<double>::digits / 2, iterations);
    const double xm = m.first;
    const double fm = f(xm);
    if (fm == 0.0 || sign_of(fm) == s) continue;
    roots.push_back(bracketed_root(f, xs[l], xm, fs[l], fm));
    roots.push_back(bracketed_root(f, xm, xs[r], fm, fs[r]));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace

std::vector<double> sign_changes(const AlgebraicPoly& p) {
  if (p.exact_degree() <= 0) return {};
  const int count = sample_count(p.degree_bound());
  auto f = [&](double x) { return clenshaw_cos(p.cheb.data(), p.cheb.size(), x); };
  std::vector<double> xs(count), fs(count);
  for (int i = 0; i < count; ++i) {
    xs[i] = i == 0 ? -1.0 : (i == count - 1 ? 1.0 : -std::cos(kPi * i / (count - 1)));
    fs[i] = f(xs[i]);
  }
  return collect_sign_changes(f, xs, fs);
}

std::vector<double> sign_changes(const TrigPoly& t) {
  if (t.exact_degree() <= 0) return {};
  const int count = sample_count(t.degree_bound());
  const double step = 2.0 * kPi / count;
  auto f = [&](double theta) { return eval_trig(t, theta); };
  std::vector<double> ts(count + 1), fs(count + 1);
  for (int i = 0; i <= count; ++i) {
    ts[i] = i == count ? kPi : -kPi + step * i;
    fs[i] = f(ts[i]);
  }
  return collect_sign_changes(f, ts, fs);
}

double lp_norm(const AlgebraicPoly& p, double exponent, const WeightParams& w,
               const Accuracy& acc) {
  require_exponent(exponent);
  if (exponent == kInfinity) return uniform_norm(p);
  Integrand integrand;
  integrand.fn = [&](double x) {
    return abs_power(clenshaw_cos(p.cheb.data(), p.cheb.size(), x), exponent);
  };
  if (!is_even_integer(exponent)) integrand.breakpoints = sign_changes(p);
  const double integral = integrate_weighted_algebraic(integrand, w, acc).value;
  return std::pow(integral, 1.0 / exponent);
}

double lp_norm(const TrigPoly& t, double exponent, const TrigWeightParams& tw,
               const Accuracy& acc) {
  require_exponent(exponent);
  if (exponent == kInfinity) return uniform_norm(t);
  Integrand integrand;
  integrand.fn = [&](double theta) { return abs_power(eval_trig(t, theta), exponent); };
  if (!is_even_integer(exponent)) integrand.breakpoints = sign_changes(t);
  const double integral = integrate_weighted_trig(integrand, tw, acc).value;
  return std::pow(integral, 1.0 / exponent);
}

AlgebraicPoly random_algebraic_poly(int n, std::uint64_t seed) {
  if (n < 0) throw DomainError("random_algebraic_poly: n must be >= 0");
  NormalStream stream(seed);
  std::vector<double> c(n + 1);
  for (double& v : c) v = stream.next();
  return AlgebraicPoly(std::move(c));
}

TrigPoly random_trig_poly(int n, std::uint64_t seed) {
  if (n < 0) throw DomainError("random_trig_poly: n must be >= 0");
  NormalStream stream(seed);
  const double a0 = stream.next();
  std::vector<double> c(n), s(n);
  for (double& v : c) v = stream.next();
  for (double& v : s) v = stream.next();
  return TrigPoly(a0, std::move(c), std::move(s));
}

}  // namespace nikolskii
