#pragma once

#include <string>
#include <vector>

namespace nikolskii {

/// Stable identifiers of the verified statements.
namespace statement {
inline constexpr const char* kSegmentLemma = "segment-lemma";
inline constexpr const char* kSegmentMirror = "segment-mirror-corollary";
inline constexpr const char* kSegmentLowerBound = "segment-lower-bound";
inline constexpr const char* kTrigSegmentBound = "trig-segment-bound";
inline constexpr const char* kBariLemma = "bari-lemma";
inline constexpr const char* kNikolskiiTheorem = "nikolskii-theorem";
inline constexpr const char* kConstantProperties = "constant-properties";
inline constexpr const char* kConstantTable = "constant-table";
inline constexpr const char* kExtremalSearch = "extremal-search";
inline constexpr const char* kSharpnessFit = "sharpness-fit";
}  // namespace statement

/// Closed subinterval [a, b] with length l. The length is carried as given
/// so that boundary lengths survive the round trip through a + l.
struct Segment {
  double a = 0.0;
  double b = 0.0;
  double l = 0.0;

  static Segment from_start(double a, double l, double domain_end);
  static Segment from_ends(double a, double b) { return {a, b, b - a}; }
};

struct LemmaReport {
  std::string statement;
  double alpha = 0.0;
  double mu = 0.0;
  Segment segment;
  double lhs = 0.0;     // the side that must not exceed rhs
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs; >= -tolerance means pass
  bool pass = false;
  bool convention_case = false;  // alpha = mu = 0 trig case accepted by convention
};

/// Violation tolerance of the lemma checks: margin >= -kLemmaTolerance * max(|lhs|, |rhs|, 1).
inline constexpr double kLemmaTolerance = 1e-9;

/// Segment lemma (mirrored = false): for alpha >= mu >= 0 and l <= l_{alpha,mu},
/// int_0^l x^alpha (1-x)^mu <= int_seg. Mirror corollary (mirrored = true): for
/// mu >= alpha >= 0 and l <= l_{mu,alpha}, int_{1-l}^1 <= int_seg.
LemmaReport check_segment_lemma(double alpha, double mu, const Segment& seg, bool mirrored);

/// int_seg x^alpha (1-x)^mu >= (1-l)^min l^(max+1) / (max+1) for l <= l^max, l < 1.
LemmaReport check_segment_lower_bound(double alpha, double mu, const Segment& seg);

/// int_seg |sin t|^alpha |cos t|^mu >= (1 - 2l/pi)^min (2/pi)^max l^(max+1)/(max+1)
/// for seg in [0, pi/2], l <= (pi/2) l^max, l < pi/2. alpha = mu = 0 is accepted
/// for any l and flagged as a convention case.
LemmaReport check_trig_segment_bound(double alpha, double mu, const Segment& seg);

/// True when (alpha, mu, seg) satisfies the hypotheses of the statement.
bool segment_admissible(const std::string& statement_id, double alpha, double mu,
                        const Segment& seg);

struct ExponentPair {
  double alpha;
  double mu;
};

struct SkippedCandidate {
  double alpha;
  double mu;
  Segment segment;
};

struct SweepResult {
  std::vector<LemmaReport> reports;
  std::vector<SkippedCandidate> skipped;
};

/// Enumerates segments_per_combo candidates per (alpha, mu): lengths on a
/// uniform grid up to the statement's length cap (cap included), left
/// endpoints on a uniform grid of the room left in the domain. Repeated
/// (a, l) pairs are dropped. Inadmissible
/// candidates are skipped and returned separately. Sorted by (alpha, mu, a, l).
SweepResult sweep_segments(const std::string& statement_id, const std::vector<ExponentPair>& grid,
                           int segments_per_combo);

}  // namespace nikolskii
