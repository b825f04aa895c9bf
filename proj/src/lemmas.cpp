#include "nikolskii/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>

#include "nikolskii/errors.hpp"
#include "nikolskii/quadrature.hpp"
#include "nikolskii/weight.hpp"

namespace nikolskii {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

bool inside(const Segment& s, double domain_end) {
  return s.a >= 0.0 && s.a <= s.b && s.b <= domain_end && s.l >= 0.0;
}

double domain_end_of(const std::string& id) { return id == statement::kTrigSegmentBound ? kHalfPi : 1.0; }

double length_cap(const std::string& id, double alpha, double mu) {
  if (id == statement::kSegmentLemma) return l_ratios(alpha, mu).l;
  if (id == statement::kSegmentMirror) return l_ratios(mu, alpha).l;
  if (id == statement::kSegmentLowerBound) return l_ratios(alpha, mu).l_max;
  if (id == statement::kTrigSegmentBound) {
    if (alpha == 0.0 && mu == 0.0) return kHalfPi;
    return kHalfPi * l_ratios(alpha, mu).l_max;
  }
  throw PreconditionError("unknown segment statement '" + id + "'");
}

LemmaReport finish(LemmaReport r) {
  r.margin = r.rhs - r.lhs;
  const double scale = std::max({std::abs(r.lhs), std::abs(r.rhs), 1.0});
  r.pass = r.margin >= -kLemmaTolerance * scale;
  return r;
}

void require_admissible(const std::string& id, double alpha, double mu, const Segment& seg) {
  if (!segment_admissible(id, alpha, mu, seg))
    throw PreconditionError(id + ": parameters or segment outside the statement's hypotheses");
}

}  // namespace

Segment Segment::from_start(double a, double l, double domain_end) {
  double b = a + l;
  // a = end - l can round so that a + l overshoots by an ulp or two.
  if (b > domain_end && b - domain_end <= 4.0 * std::numeric_limits<double>::epsilon() * domain_end)
    b = domain_end;
  return {a, b, l};
}

bool segment_admissible(const std::string& id, double alpha, double mu, const Segment& seg) {
  if (!(alpha >= 0.0) || !(mu >= 0.0)) return false;
  if (!inside(seg, domain_end_of(id))) return false;
  if (id == statement::kSegmentLemma) return alpha >= mu && seg.l <= length_cap(id, alpha, mu);
  if (id == statement::kSegmentMirror) return mu >= alpha && seg.l <= length_cap(id, alpha, mu);
  if (id == statement::kSegmentLowerBound) return seg.l <= length_cap(id, alpha, mu) && seg.l < 1.0;
  if (id == statement::kTrigSegmentBound) {
    if (alpha == 0.0 && mu == 0.0) return true;
    return seg.l <= length_cap(id, alpha, mu) && seg.l < kHalfPi;
  }
  return false;
}

LemmaReport check_segment_lemma(double alpha, double mu, const Segment& seg, bool mirrored) {
  const std::string id = mirrored ? statement::kSegmentMirror : statement::kSegmentLemma;
  require_admissible(id, alpha, mu, seg);
  LemmaReport r;
  r.statement = id;
  r.alpha = alpha;
  r.mu = mu;
  r.segment = seg;
  r.lhs = mirrored ? incomplete_weight_integral(alpha, mu, 1.0 - seg.l, 1.0)
                   : incomplete_weight_integral(alpha, mu, 0.0, seg.l);
  r.rhs = incomplete_weight_integral(alpha, mu, seg.a, seg.b);
  return finish(r);
}

LemmaReport check_segment_lower_bound(double alpha, double mu, const Segment& seg) {
  require_admissible(statement::kSegmentLowerBound, alpha, mu, seg);
  const double lo = std::min(alpha, mu);
  const double hi = std::max(alpha, mu);
  LemmaReport r;
  r.statement = statement::kSegmentLowerBound;
  r.alpha = alpha;
  r.mu = mu;
  r.segment = seg;
  r.lhs = (lo == 0.0 ? 1.0 : std::pow(1.0 - seg.l, lo)) * std::pow(seg.l, hi + 1.0) / (hi + 1.0);
  r.rhs = incomplete_weight_integral(alpha, mu, seg.a, seg.b);
  return finish(r);
}

LemmaReport check_trig_segment_bound(double alpha, double mu, const Segment& seg) {
  require_admissible(statement::kTrigSegmentBound, alpha, mu, seg);
  const double lo = std::min(alpha, mu);
  const double hi = std::max(alpha, mu);
  const double shrink = 1.0 - seg.l / kHalfPi;
  LemmaReport r;
  r.statement = statement::kTrigSegmentBound;
  r.alpha = alpha;
  r.mu = mu;
  r.segment = seg;
  r.convention_case = alpha == 0.0 && mu == 0.0;
  r.lhs = (lo == 0.0 ? 1.0 : std::pow(shrink, lo)) * std::pow(1.0 / kHalfPi, hi) *
          std::pow(seg.l, hi + 1.0) / (hi + 1.0);
  const Integrand one{[](double) { return 1.0; }, {}};
  r.rhs = integrate_weighted_trig(one, TrigWeightParams{alpha, mu}, seg.a, seg.b).value;
  return finish(r);
}

SweepResult sweep_segments(const std::string& id, const std::vector<ExponentPair>& grid,
                           int segments_per_combo) {
  if (segments_per_combo < 1) throw PreconditionError("sweep_segments: need at least one segment");
  const double domain = domain_end_of(id);
  (void)length_cap(id, 0.0, 0.0);  // validates the id

  const int lengths = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(segments_per_combo))));
  const int lefts = (segments_per_combo + lengths - 1) / lengths;

  SweepResult out;
  for (const auto& [alpha, mu] : grid) {
    if (!(alpha >= 0.0) || !(mu >= 0.0))
      throw PreconditionError("sweep_segments: exponents must be >= 0");
    const double cap = length_cap(id, alpha, mu);
    int produced = 0;
    std::set<std::pair<double, double>> seen;  // a zero cap or zero room repeats candidates
    // Longest lengths first so truncation never drops the boundary length.
    for (int j = lengths; j >= 1 && produced < segments_per_combo; --j) {
      const double l = j == lengths ? cap : cap * j / lengths;
      const double room = std::max(domain - l, 0.0);
      for (int i = 0; i < lefts && produced < segments_per_combo; ++i) {
        const double a = lefts == 1 ? 0.0 : (i == lefts - 1 ? room : room * i / (lefts - 1));
        if (!seen.emplace(a, l).second) continue;
        ++produced;
        const Segment seg = Segment::from_start(a, l, domain);
        if (!segment_admissible(id, alpha, mu, seg)) {
          out.skipped.push_back({alpha, mu, seg});
          continue;
        }
        if (id == statement::kSegmentLemma) {
          out.reports.push_back(check_segment_lemma(alpha, mu, seg, false));
        } else if (id == statement::kSegmentMirror) {
          out.reports.push_back(check_segment_lemma(alpha, mu, seg, true));
        } else if (id == statement::kSegmentLowerBound) {
          out.reports.push_back(check_segment_lower_bound(alpha, mu, seg));
        } else {
          out.reports.push_back(check_trig_segment_bound(alpha, mu, seg));
        }
      }
    }
  }
  auto key = [](double alpha, double mu, const Segment& s) {
    return std::make_tuple(alpha, mu, s.a, s.l);
  };
  std::stable_sort(out.reports.begin(), out.reports.end(), [&](const auto& x, const auto& y) {
    return key(x.alpha, x.mu, x.segment) < key(y.alpha, y.mu, y.segment);
  });
  std::stable_sort(out.skipped.begin(), out.skipped.end(), [&](const auto& x, const auto& y) {
    return key(x.alpha, x.mu, x.segment) < key(y.alpha, y.mu, y.segment);
  });
  return out;
}

}  // namespace nikolskii
