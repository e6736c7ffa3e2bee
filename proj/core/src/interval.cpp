#include "qcdyn/interval.hpp"

#include <algorithm>
#include <numeric>

namespace qcdyn {

namespace {

long long checked(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw error(errc::overflow, what);
  return static_cast<long long>(v);
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw error(errc::division_by_zero, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

Rational operator+(const Rational& a, const Rational& b) {
  const __int128 n = static_cast<__int128>(a.num) * b.den +
                     static_cast<__int128>(b.num) * a.den;
  const __int128 d = static_cast<__int128>(a.den) * b.den;
  const __int128 g = [&] {
    __int128 x = n < 0 ? -n : n, y = d;
    while (y) {
      const __int128 t = x % y;
      x = y;
      y = t;
    }
    return x == 0 ? static_cast<__int128>(1) : x;
  }();
  return Rational(checked(n / g, "rational add"), checked(d / g, "rational add"));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational Rational::operator-() const {
  Rational r;
  r.num = -num;
  r.den = den;
  return r;
}

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-reduce before multiplying.
  const long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
  const long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
  const __int128 n = static_cast<__int128>(a.num / g1) * (b.num / g2);
  const __int128 d = static_cast<__int128>(a.den / g2) * (b.den / g1);
  return Rational(checked(n, "rational mul"), checked(d, "rational mul"));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw error(errc::division_by_zero, "rational divide");
  return a * Rational(b.den, b.num);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)),
                    std::stoll(text.substr(slash + 1)));
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    throw error(errc::parse_error, "bad rational '" + text + "'");
  }
}

bool RatInterval::contains(const Rational& x) const {
  if (x < lo || hi < x) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

bool RatInterval::empty() const {
  if (hi < lo) return true;
  if (lo == hi) return !(lo_closed && hi_closed);
  return false;
}

RatInterval open_interval(Rational lo, Rational hi) {
  return RatInterval{std::move(lo), std::move(hi), false, false};
}

RatInterval closed_point(Rational x) { return RatInterval{x, x, true, true}; }

RatIntervalSet::RatIntervalSet(std::vector<RatInterval> raw) {
  raw.erase(std::remove_if(raw.begin(), raw.end(),
                           [](const RatInterval& i) { return i.empty(); }),
            raw.end());
  std::sort(raw.begin(), raw.end(), [](const RatInterval& a, const RatInterval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  for (const RatInterval& cur : raw) {
    if (!parts.empty()) {
      RatInterval& last = parts.back();
      const bool overlaps = cur.lo < last.hi ||
                            (cur.lo == last.hi && (last.hi_closed || cur.lo_closed));
      if (overlaps) {
        if (last.hi < cur.hi) {
          last.hi = cur.hi;
          last.hi_closed = cur.hi_closed;
        } else if (last.hi == cur.hi) {
          last.hi_closed = last.hi_closed || cur.hi_closed;
        }
        continue;
      }
    }
    parts.push_back(cur);
  }
}

bool RatIntervalSet::contains(const Rational& x) const {
  for (const RatInterval& i : parts)
    if (i.contains(x)) return true;
  return false;
}

namespace {

RatInterval meet(const RatInterval& a, const RatInterval& b) {
  RatInterval r;
  if (a.lo < b.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else if (b.lo < a.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

}  // namespace

bool RatIntervalSet::intersects(const RatIntervalSet& other) const {
  for (const RatInterval& a : parts)
    for (const RatInterval& b : other.parts)
      if (!meet(a, b).empty()) return true;
  return false;
}

RatIntervalSet RatIntervalSet::unite(const RatIntervalSet& other) const {
  std::vector<RatInterval> all = parts;
  all.insert(all.end(), other.parts.begin(), other.parts.end());
  return RatIntervalSet(std::move(all));
}

RatIntervalSet RatIntervalSet::intersect(const RatIntervalSet& other) const {
  std::vector<RatInterval> out;
  for (const RatInterval& a : parts)
    for (const RatInterval& b : other.parts) {
      const RatInterval m = meet(a, b);
      if (!m.empty()) out.push_back(m);
    }
  return RatIntervalSet(std::move(out));
}

Rational PWLMap::eval(const Rational& x) const {
  if (x < Rational(0) || Rational(1) < x)
    throw error(errc::out_of_domain, "eval at " + x.str());
  const int m = piece_count();
  for (int i = 0; i <= m; ++i)
    if (breakpoints[i] == x) return values[i];
  for (int i = 0; i < m; ++i)
    if (breakpoints[i] < x && x < breakpoints[i + 1])
      return pieces[i].first * x + pieces[i].second;
  throw error(errc::out_of_domain, "eval at " + x.str());
}

PWLMap build_pwl(std::vector<Rational> breakpoints,
                 std::vector<std::pair<Rational, Rational>> pieces,
                 std::vector<Rational> values) {
  const int m = static_cast<int>(pieces.size());
  if (m < 1 || static_cast<int>(breakpoints.size()) != m + 1 ||
      static_cast<int>(values.size()) != m + 1)
    throw error(errc::out_of_domain, "piecewise map sizes disagree");
  if (breakpoints.front() != Rational(0) || breakpoints.back() != Rational(1))
    throw error(errc::out_of_domain, "breakpoints must span [0,1]");
  for (int i = 0; i < m; ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw error(errc::out_of_domain, "breakpoints must be strictly ascending");
  for (int i = 0; i <= m; ++i)
    if (values[i] < Rational(0) || Rational(1) < values[i])
      throw error(errc::out_of_domain, "breakpoint value outside [0,1]");
  for (int i = 0; i < m; ++i) {
    const Rational a = pieces[i].first * breakpoints[i] + pieces[i].second;
    const Rational b = pieces[i].first * breakpoints[i + 1] + pieces[i].second;
    const Rational lo = a < b ? a : b, hi = a < b ? b : a;
    if (lo < Rational(0) || Rational(1) < hi)
      throw error(errc::out_of_domain, "piece range leaves [0,1]");
  }

  // Drop breakpoints separating identical pieces when the explicit value
  // matches the shared affine.
  PWLMap f{std::move(breakpoints), std::move(pieces), std::move(values)};
  for (int i = f.piece_count() - 1; i >= 1; --i) {
    if (f.pieces[i] == f.pieces[i - 1] &&
        f.values[i] == f.pieces[i].first * f.breakpoints[i] + f.pieces[i].second) {
      f.breakpoints.erase(f.breakpoints.begin() + i);
      f.values.erase(f.values.begin() + i);
      f.pieces.erase(f.pieces.begin() + i);
    }
  }
  return f;
}

PWLMap compose(const PWLMap& f, const PWLMap& g) {
  std::vector<Rational> bps = f.breakpoints;
  for (int i = 0; i < f.piece_count(); ++i) {
    const auto& [s, t] = f.pieces[i];
    if (s == Rational(0)) continue;
    for (const Rational& c : g.breakpoints) {
      const Rational x = (c - t) / s;
      if (f.breakpoints[i] < x && x < f.breakpoints[i + 1]) bps.push_back(x);
    }
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  const int m = static_cast<int>(bps.size()) - 1;
  std::vector<std::pair<Rational, Rational>> pieces(m);
  std::vector<Rational> values(m + 1);
  for (int i = 0; i <= m; ++i) values[i] = g.eval(f.eval(bps[i]));
  for (int i = 0; i < m; ++i) {
    // The refined piece sits inside one piece of f, and its f-image contains
    // no g-breakpoint in its interior.
    const Rational mid = (bps[i] + bps[i + 1]) / Rational(2);
    int fi = 0;
    while (!(f.breakpoints[fi] < mid && mid < f.breakpoints[fi + 1])) ++fi;
    const auto& [s, t] = f.pieces[fi];
    if (s == Rational(0)) {
      pieces[i] = {Rational(0), g.eval(t)};
      continue;
    }
    const Rational y = s * mid + t;
    int gi = 0;
    while (!(g.breakpoints[gi] < y && y < g.breakpoints[gi + 1])) ++gi;
    const auto& [sg, tg] = g.pieces[gi];
    pieces[i] = {sg * s, sg * t + tg};
  }
  return build_pwl(std::move(bps), std::move(pieces), std::move(values));
}

PWLMap pwl_identity() {
  return build_pwl({Rational(0), Rational(1)}, {{Rational(1), Rational(0)}},
                   {Rational(0), Rational(1)});
}

PWLMap pwl_example31() {
  const Rational half(1, 2);
  return build_pwl({Rational(0), half, Rational(1)},
                   {{Rational(0), Rational(0)}, {Rational(0), Rational(1)}},
                   {Rational(0), Rational(0), Rational(1)});
}

PWLMap pwl_doubling() {
  const Rational half(1, 2);
  return build_pwl({Rational(0), half, Rational(1)},
                   {{Rational(2), Rational(0)}, {Rational(2), Rational(-1)}},
                   {Rational(0), Rational(0), Rational(0)});
}

PwlQcAnalysis qc_points_pwl(const PWLMap& f) {
  PwlQcAnalysis out;
  const int m = f.piece_count();
  for (int i = 0; i <= m; ++i) {
    const Rational v = f.values[i];
    const bool has_left = i > 0, has_right = i < m;
    Rational left, right;
    if (has_left) left = f.pieces[i - 1].first * f.breakpoints[i] + f.pieces[i - 1].second;
    if (has_right) right = f.pieces[i].first * f.breakpoints[i] + f.pieces[i].second;

    const bool cont = (!has_left || left == v) && (!has_right || right == v);
    const bool qc = (has_left && left == v) || (has_right && right == v);
    if (!cont) out.discontinuities.push_back(f.breakpoints[i]);
    if (!qc) out.non_qc_points.push_back(f.breakpoints[i]);
  }
  out.qc_everywhere = out.non_qc_points.empty();
  return out;
}

PwlQcSystemResult is_qc_system_pwl(const PWLMap& f, int max_iterates) {
  if (max_iterates < 1) throw error(errc::out_of_domain, "max_iterates must be >= 1");
  PwlQcSystemResult r;
  std::vector<PWLMap> seen;
  PWLMap cur = pwl_identity();
  for (int k = 0;; ++k) {
    for (int j = 0; j < static_cast<int>(seen.size()); ++j) {
      if (seen[j] == cur) {
        r.status = PwlQcSystemResult::Status::yes;
        r.preperiod = j;
        r.period = k - j;
        r.iterates_checked = k;
        return r;
      }
    }
    if (k > max_iterates) {
      r.status = PwlQcSystemResult::Status::unknown;
      r.iterates_checked = k - 1;
      return r;
    }
    if (k > 0) {
      const PwlQcAnalysis a = qc_points_pwl(cur);
      if (!a.qc_everywhere) {
        r.status = PwlQcSystemResult::Status::no;
        r.iterates_checked = k;
        r.witness = a.non_qc_points.front();
        return r;
      }
    }
    seen.push_back(cur);
    cur = compose(cur, f);
  }
}

RatIntervalSet image_set(const PWLMap& f, const RatIntervalSet& u) {
  std::vector<RatInterval> out;
  const int m = f.piece_count();
  for (const RatInterval& part : u.parts) {
    for (int i = 0; i < m; ++i) {
      const RatInterval piece_dom = open_interval(f.breakpoints[i], f.breakpoints[i + 1]);
      const RatInterval j = meet(part, piece_dom);
      if (j.empty()) continue;
      const auto& [s, t] = f.pieces[i];
      if (s == Rational(0)) {
        out.push_back(closed_point(t));
      } else if (Rational(0) < s) {
        out.push_back(RatInterval{s * j.lo + t, s * j.hi + t, j.lo_closed, j.hi_closed});
      } else {
        out.push_back(RatInterval{s * j.hi + t, s * j.lo + t, j.hi_closed, j.lo_closed});
      }
    }
    for (int i = 0; i <= m; ++i)
      if (part.contains(f.breakpoints[i])) out.push_back(closed_point(f.values[i]));
  }
  return RatIntervalSet(std::move(out));
}

HitReport hitting_check(const PWLMap& f, const RatIntervalSet& u,
                        const RatIntervalSet& v, int horizon) {
  if (u.empty() || v.empty()) throw error(errc::empty_argument, "hitting_check");
  HitReport r;
  std::vector<RatIntervalSet> states;
  RatIntervalSet s = u;
  for (int n = 0; n <= horizon; ++n) {
    if (!r.exhaustive) {
      for (int j = 0; j < static_cast<int>(states.size()); ++j)
        if (states[j] == s) {
          r.exhaustive = true;
          r.stabilized_at = n;
          break;
        }
      states.push_back(s);
    }
    if (s.intersects(v)) r.hits.push_back(n);
    if (r.exhaustive && n >= r.stabilized_at &&
        r.hits.size() >= static_cast<std::size_t>(horizon)) {
      break;
    }
    if (n < horizon) s = image_set(f, s);
  }
  return r;
}

MeshCertificate certify_ttplus_on_mesh(const PWLMap& f, int mesh, int horizon) {
  if (mesh < 2) throw error(errc::out_of_domain, "mesh must be >= 2");
  MeshCertificate cert;
  cert.mesh = mesh;
  cert.horizon = horizon;
  cert.witness.assign(static_cast<std::size_t>(mesh) * mesh, -1);
  cert.complete = true;

  std::vector<RatIntervalSet> cells(mesh);
  for (int j = 0; j < mesh; ++j)
    cells[j] = RatIntervalSet({open_interval(Rational(j, mesh), Rational(j + 1, mesh))});

  for (int i = 0; i < mesh; ++i) {
    RatIntervalSet s = cells[i];
    int remaining = mesh;
    for (int n = 0; n <= horizon && remaining > 0; ++n) {
      for (int j = 0; j < mesh; ++j) {
        int& w = cert.witness[static_cast<std::size_t>(i) * mesh + j];
        if (w < 0 && s.intersects(cells[j])) {
          w = n;
          --remaining;
        }
      }
      if (n < horizon) s = image_set(f, s);
    }
  }
  for (int i = 0; i < mesh && cert.complete; ++i)
    for (int j = 0; j < mesh; ++j)
      if (cert.witness[static_cast<std::size_t>(i) * mesh + j] < 0) {
        cert.complete = false;
        cert.failing_pair = {i, j};
        break;
      }
  return cert;
}

}  // namespace qcdyn
