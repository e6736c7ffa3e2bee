#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcdyn/error.hpp"

namespace qcdyn {

/// Exact rational with canonical form: gcd-reduced, positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const;
};

Rational parse_rational(const std::string& text);

/// One interval with rational endpoints; degenerate [a,a] requires both ends
/// closed.  lo <= hi always.
struct RatInterval {
  Rational lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(const Rational& x) const;
  bool empty() const;
  friend bool operator==(const RatInterval& a, const RatInterval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed &&
           a.hi_closed == b.hi_closed;
  }
};

RatInterval open_interval(Rational lo, Rational hi);
RatInterval closed_point(Rational x);

/// A finite union of disjoint rational intervals, sorted and maximally
/// merged.  Normalization happens on construction.
struct RatIntervalSet {
  std::vector<RatInterval> parts;

  RatIntervalSet() = default;
  explicit RatIntervalSet(std::vector<RatInterval> raw);

  bool empty() const { return parts.empty(); }
  bool contains(const Rational& x) const;
  bool intersects(const RatIntervalSet& other) const;
  RatIntervalSet unite(const RatIntervalSet& other) const;
  RatIntervalSet intersect(const RatIntervalSet& other) const;
  friend bool operator==(const RatIntervalSet& a, const RatIntervalSet& b) {
    return a.parts == b.parts;
  }
};

/// Piecewise-affine self-map of [0,1].  breakpoints are 0 = b_0 < ... < b_m = 1;
/// piece i is the affine slope*x + intercept on the open interval
/// (b_i, b_{i+1}); values[i] is the explicit value at b_i.  The range must
/// stay inside [0,1].
struct PWLMap {
  std::vector<Rational> breakpoints;
  std::vector<std::pair<Rational, Rational>> pieces;  // (slope, intercept)
  std::vector<Rational> values;

  int piece_count() const { return static_cast<int>(pieces.size()); }
  Rational eval(const Rational& x) const;

  friend bool operator==(const PWLMap& a, const PWLMap& b) {
    return a.breakpoints == b.breakpoints && a.pieces == b.pieces &&
           a.values == b.values;
  }
};

/// Validates and normalizes (drops breakpoints that separate identical
/// pieces and match the affine value there).
PWLMap build_pwl(std::vector<Rational> breakpoints,
                 std::vector<std::pair<Rational, Rational>> pieces,
                 std::vector<Rational> values);

/// Apply f first, then g.  Breakpoints of the result refine f's breakpoints
/// with the pullbacks of g's breakpoints through f's pieces.
PWLMap compose(const PWLMap& f, const PWLMap& g);

PWLMap pwl_identity();
/// 0 on [0,1/2], 1 on (1/2,1].
PWLMap pwl_example31();
/// 2x on [0,1/2), 2x-1 on [1/2,1), value 0 at 1.
PWLMap pwl_doubling();

/// Continuity and quasi-continuity at breakpoints.  Away from breakpoints a
/// piecewise-affine map is continuous.  At an interior breakpoint c it is
/// quasi-continuous iff f(c) equals a one-sided limit; at 0 and 1 only the
/// existing side counts.
struct PwlQcAnalysis {
  std::vector<Rational> discontinuities;  // continuity fails exactly here
  std::vector<Rational> non_qc_points;
  bool qc_everywhere = false;
};

PwlQcAnalysis qc_points_pwl(const PWLMap& f);

struct PwlQcSystemResult {
  enum class Status { yes, no, unknown } status = Status::unknown;
  int preperiod = 0;  // meaningful when status == yes
  int period = 1;
  int iterates_checked = 0;
  std::optional<Rational> witness;  // non-qc breakpoint when status == no
};

/// Composes iterates up to max_iterates; exact "yes" when the iterate maps
/// repeat, "no" with a witness breakpoint on a failing iterate.
PwlQcSystemResult is_qc_system_pwl(const PWLMap& f, int max_iterates);

/// Exact image of a rational interval set, with breakpoint values carried as
/// degenerate closed intervals.
RatIntervalSet image_set(const PWLMap& f, const RatIntervalSet& u);

struct HitReport {
  std::vector<int> hits;     // n <= horizon with f^n(U) ∩ V nonempty
  bool exhaustive = false;   // image-set trajectory repeated within horizon,
                             // so the hit list is exact for all n
  int stabilized_at = -1;
};

HitReport hitting_check(const PWLMap& f, const RatIntervalSet& u,
                        const RatIntervalSet& v, int horizon);

/// Semi-decision of TT+ on the mesh pi-base {(i/mesh,(i+1)/mesh)}: for every
/// ordered pair a witness n <= horizon with f^n(P_i) ∩ P_j nonempty, or
/// unknown with the first failing pair.  Evidence only, never the property.
struct MeshCertificate {
  int mesh = 0;
  int horizon = 0;
  bool complete = false;
  std::vector<int> witness;  // mesh*mesh entries, -1 when missing
  std::pair<int, int> failing_pair{-1, -1};
};

MeshCertificate certify_ttplus_on_mesh(const PWLMap& f, int mesh, int horizon);

}  // namespace qcdyn
