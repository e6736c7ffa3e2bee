#include "qcdyn/topology.hpp"

#include <algorithm>
#include <numeric>

namespace qcdyn {

const char* errc_name(errc c) {
  switch (c) {
    case errc::reflexivity_violation: return "REFLEXIVITY_VIOLATION";
    case errc::transitivity_violation: return "TRANSITIVITY_VIOLATION";
    case errc::cap_exceeded: return "CAP_EXCEEDED";
    case errc::empty_argument: return "EMPTY_ARGUMENT";
    case errc::out_of_domain: return "OUT_OF_DOMAIN";
    case errc::division_by_zero: return "DIVISION_BY_ZERO";
    case errc::overflow: return "OVERFLOW";
    case errc::parse_error: return "PARSE_ERROR";
    case errc::resource_exceeded: return "RESOURCE_EXCEEDED";
    case errc::unknown_suite: return "UNKNOWN_SUITE";
  }
  return "UNKNOWN";
}

std::string mask_to_string(mask_t m, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (!has_point(m, i)) continue;
    if (!first) out += ' ';
    out += std::to_string(i);
    first = false;
  }
  out += '}';
  return out;
}

mask_t FiniteSpace::interior(mask_t s) const {
  mask_t out = 0;
  for (int x = 0; x < n; ++x)
    if (subset_of(min_nbhd[x], s)) out |= point_bit(x);
  return out;
}

mask_t FiniteSpace::isolated_points() const {
  mask_t out = 0;
  for (int x = 0; x < n; ++x)
    if (min_nbhd[x] == point_bit(x)) out |= point_bit(x);
  return out;
}

bool FiniteSpace::is_discrete() const {
  return isolated_points() == full();
}

std::vector<mask_t> FiniteSpace::open_family() const {
  std::vector<mask_t> out;
  const mask_t f = full();
  for (mask_t s = 0;; ++s) {
    if (is_open(s)) out.push_back(s);
    if (s == f) break;
  }
  return out;
}

std::vector<mask_t> FiniteSpace::pi_base() const {
  std::vector<mask_t> base(min_nbhd);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  return base;
}

FiniteSpace build_space(std::vector<mask_t> min_nbhd) {
  const int n = static_cast<int>(min_nbhd.size());
  if (n < 1 || n > kMaxPoints)
    throw error(errc::out_of_domain, "ground set size must be in [1, " +
                                         std::to_string(kMaxPoints) + "]");
  const mask_t f = full_mask(n);
  for (int x = 0; x < n; ++x) {
    if (min_nbhd[x] & ~f)
      throw error(errc::out_of_domain,
                  "min_nbhd[" + std::to_string(x) + "] has points >= n");
    if (!has_point(min_nbhd[x], x))
      throw error(errc::reflexivity_violation,
                  "point " + std::to_string(x) + " not in its own neighbourhood");
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (has_point(min_nbhd[x], y) && !subset_of(min_nbhd[y], min_nbhd[x]))
        throw error(errc::transitivity_violation,
                    "min_nbhd[" + std::to_string(y) + "] not nested in min_nbhd[" +
                        std::to_string(x) + "]");
  return FiniteSpace{n, std::move(min_nbhd)};
}

FiniteSpace discrete_space(int n) {
  std::vector<mask_t> nb(n);
  for (int x = 0; x < n; ++x) nb[x] = point_bit(x);
  return build_space(std::move(nb));
}

FiniteSpace indiscrete_space(int n) {
  std::vector<mask_t> nb(n, full_mask(n));
  return build_space(std::move(nb));
}

FiniteSpace sierpinski_space() {
  return build_space({point_bit(0), point_bit(0) | point_bit(1)});
}

SpaceProfile space_profile(const FiniteSpace& sp) {
  SpaceProfile p;
  p.isolated = sp.isolated_points();
  p.perfect = (p.isolated == 0);

  // Pairwise separation.  T0: some open contains exactly one of x, y.
  // T1: each of x, y has an open missing the other.  T2: disjoint opens.
  p.t0 = p.t1 = p.t2 = true;
  for (int x = 0; x < sp.n; ++x) {
    for (int y = x + 1; y < sp.n; ++y) {
      const mask_t mx = sp.min_nbhd[x], my = sp.min_nbhd[y];
      if (has_point(mx, y) && has_point(my, x)) p.t0 = false;
      if (has_point(mx, y) || has_point(my, x)) p.t1 = false;
      if (mx & my) p.t2 = false;
    }
  }

  // Finite fragmentability: every nonempty subset has a relatively open
  // singleton.
  p.fragmentable = true;
  const mask_t f = sp.full();
  for (mask_t a = 1; a <= f && p.fragmentable; ++a) {
    bool found = false;
    for (int x = 0; x < sp.n && !found; ++x)
      if (has_point(a, x) && (sp.min_nbhd[x] & a) == point_bit(x)) found = true;
    if (!found) p.fragmentable = false;
    if (a == f) break;
  }

  p.baire = sp.n >= 1;
  p.second_category = sp.n >= 1;
  return p;
}

bool baire_brute_check(const FiniteSpace& sp) {
  const mask_t f = sp.full();
  for (mask_t s = 0;; ++s) {
    CategoryFlags c = category_predicates(sp, s);
    if (c.residual && !c.dense) return false;
    if (s == f) break;
  }
  return true;
}

CategoryFlags category_predicates(const FiniteSpace& sp, mask_t s) {
  CategoryFlags c;
  c.dense = sp.is_dense(s);
  c.nowhere_dense = sp.interior(sp.closure(s)) == 0;
  c.residual = sp.interior(sp.closure(sp.full() & ~s)) == 0;
  c.contains_dense_open = sp.is_dense(sp.interior(s));
  return c;
}

namespace {

// Row-by-row search over minimal-neighbourhood arrays.  When row y is
// placed, every nesting constraint against rows 0..y-1 is checked, so a
// complete assignment is always a valid preorder.
void enumerate_rows(int n, int y, std::vector<mask_t>& rows,
                    const std::function<void(const FiniteSpace&)>& yield,
                    bool dedup) {
  if (y == n) {
    FiniteSpace sp{n, rows};
    if (dedup && canonical_form(sp) != rows) return;
    yield(sp);
    return;
  }
  mask_t upper = full_mask(n);
  for (int x = 0; x < y; ++x)
    if (has_point(rows[x], y)) upper &= rows[x];
  if (!has_point(upper, y)) return;

  // Submasks of upper in ascending order.
  for (mask_t v = 0;; v = (v - upper) & upper) {
    if (has_point(v, y)) {
      bool ok = true;
      for (int x = 0; x < y && ok; ++x)
        if (has_point(v, x) && !subset_of(rows[x], v)) ok = false;
      if (ok) {
        rows[y] = v;
        enumerate_rows(n, y + 1, rows, yield, dedup);
      }
    }
    if (v == upper) break;
  }
}

}  // namespace

void enumerate_spaces(int n, const std::function<void(const FiniteSpace&)>& yield,
                      const EnumerateOptions& opts) {
  if (n < 1) throw error(errc::out_of_domain, "n must be >= 1");
  if (n > opts.cap || opts.cap > kMaxPoints)
    throw error(errc::cap_exceeded, "n=" + std::to_string(n) + " exceeds cap " +
                                        std::to_string(opts.cap));
  std::vector<mask_t> rows(n, 0);
  enumerate_rows(n, 0, rows, yield, opts.dedup);
}

std::vector<FiniteSpace> all_spaces(int n, const EnumerateOptions& opts) {
  std::vector<FiniteSpace> out;
  enumerate_spaces(n, [&](const FiniteSpace& sp) { out.push_back(sp); }, opts);
  return out;
}

std::uint64_t count_spaces(int n, const EnumerateOptions& opts) {
  std::uint64_t c = 0;
  enumerate_spaces(n, [&](const FiniteSpace&) { ++c; }, opts);
  return c;
}

std::vector<mask_t> canonical_form(const FiniteSpace& sp) {
  const int n = sp.n;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<mask_t> best = sp.min_nbhd;
  std::vector<mask_t> cand(n);
  do {
    for (int x = 0; x < n; ++x) {
      mask_t m = 0;
      for (int i = 0; i < n; ++i)
        if (has_point(sp.min_nbhd[x], i)) m |= point_bit(perm[i]);
      cand[perm[x]] = m;
    }
    if (cand < best) best = cand;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace qcdyn
