#include "qcdyn/dynamics.hpp"

#include <algorithm>

namespace qcdyn {

System make_system(FiniteSpace sp, SelfMap f) {
  if (sp.n != f.n())
    throw error(errc::out_of_domain, "space and map sizes disagree");
  return System{std::move(sp), std::move(f)};
}

OrbitSummary forward_orbit(const System& sys, int x) {
  const int n = sys.space.n;
  if (x < 0 || x >= n) throw error(errc::out_of_domain, "point out of range");
  OrbitSummary o;
  o.start = x;
  std::vector<int> first_seen(n, -1);
  int cur = x;
  while (first_seen[cur] < 0) {
    first_seen[cur] = static_cast<int>(o.path.size());
    o.path.push_back(cur);
    o.orbit_mask |= point_bit(cur);
    cur = sys.map.image[cur];
  }
  o.preperiod = first_seen[cur];
  o.period = static_cast<int>(o.path.size()) - o.preperiod;
  for (int i = o.preperiod; i < static_cast<int>(o.path.size()); ++i)
    o.cycle_mask |= point_bit(o.path[i]);
  return o;
}

mask_t omega_limit(const System& sys, int x) {
  return sys.space.closure(forward_orbit(sys, x).cycle_mask);
}

bool HittingSet::contains(long long k) const {
  if (k < 0) return false;
  if (k < offset)
    return std::binary_search(transient.begin(), transient.end(), k);
  return residues[static_cast<std::size_t>((k - offset) % period)] != 0;
}

bool HittingSet::empty() const {
  if (!transient.empty()) return false;
  for (char r : residues)
    if (r) return false;
  return true;
}

bool HittingSet::infinite() const {
  for (char r : residues)
    if (r) return true;
  return false;
}

HittingSet hitting_set(const System& sys, mask_t a, mask_t b) {
  if (a == 0 || b == 0) throw error(errc::empty_argument, "hitting_set");
  const int n = sys.space.n;
  std::vector<int> first_seen(std::size_t{1} << n, -1);
  std::vector<mask_t> states;
  mask_t s = a;
  while (first_seen[s] < 0) {
    first_seen[s] = static_cast<int>(states.size());
    states.push_back(s);
    s = image_of(sys.map, s);
  }
  const int t = first_seen[s];
  const int p = static_cast<int>(states.size()) - t;

  HittingSet h;
  h.offset = t;
  h.period = p;
  h.residues.assign(p, 0);
  for (int k = 0; k < t; ++k)
    if (states[k] & b) h.transient.push_back(k);
  for (int r = 0; r < p; ++r)
    if (states[t + r] & b) h.residues[r] = 1;
  return h;
}

bool two_sided_hitting_nonempty(const System& sys, mask_t a, mask_t b) {
  if (a == 0 || b == 0) throw error(errc::empty_argument, "two_sided_hitting");
  return !hitting_set(sys, a, b).empty() || !hitting_set(sys, b, a).empty();
}

bool decide_tt(const System& sys) {
  const FiniteSpace& sp = sys.space;
  const int n = sp.n;
  static thread_local std::vector<mask_t> img;
  img.assign(std::size_t{1} << n, 0);
  const mask_t full = sp.full();
  for (mask_t s = 1; s <= full; ++s) {
    img[s] = img[s & (s - 1)] | point_bit(sys.map.image[__builtin_ctz(s)]);
    if (s == full) break;
  }
  const std::vector<mask_t> base = sp.pi_base();
  static thread_local std::vector<mask_t> reach;
  reach.assign(base.size(), 0);
  for (std::size_t i = 0; i < base.size(); ++i) {
    mask_t t = base[i];
    while ((t | img[t]) != t) t |= img[t];
    reach[i] = t;
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j)
      if ((reach[i] & base[j]) == 0 && (reach[j] & base[i]) == 0) return false;
  return true;
}

mask_t sourceless_points(const System& sys) {
  mask_t has_pre = 0;
  for (int x = 0; x < sys.space.n; ++x) has_pre |= point_bit(sys.map.image[x]);
  return sys.space.full() & ~has_pre;
}

std::vector<mask_t> cycles_of(const SelfMap& f) {
  const int n = f.n();
  std::vector<mask_t> cycles;
  mask_t on_some_cycle = 0;
  for (int x = 0; x < n; ++x) {
    // Advance n steps to land on the eventual cycle of x.
    int y = x;
    for (int i = 0; i < n; ++i) y = f.image[y];
    if (has_point(on_some_cycle, y)) continue;
    mask_t c = 0;
    int z = y;
    do {
      c |= point_bit(z);
      z = f.image[z];
    } while (z != y);
    on_some_cycle |= c;
    cycles.push_back(c);
  }
  return cycles;
}

namespace {

// Sweep scratch: image table over all subsets plus union-of-forward-images
// and eventual-image-cycle-union per base element.
struct DynTables {
  int n;
  mask_t full;
  std::vector<mask_t> img;  // image of every subset

  explicit DynTables(const System& sys) : n(sys.space.n), full(sys.space.full()) {
    img.resize(std::size_t{1} << n);
    img[0] = 0;
    for (mask_t s = 1; s <= full; ++s) {
      const mask_t low = s & (s - 1);
      img[s] = img[low] | point_bit(sys.map.image[__builtin_ctz(s)]);
      if (s == full) break;
    }
  }

  mask_t reach(mask_t s) const {  // s ∪ f(s) ∪ f^2(s) ∪ ...
    mask_t t = s;
    for (;;) {
      const mask_t next = t | img[t];
      if (next == t) return t;
      t = next;
    }
  }

  // Union of the states on the eventual cycle of the subset trajectory of s.
  mask_t eventual_cycle_union(mask_t s) const {
    mask_t slow = s, fast = s;
    do {
      slow = img[slow];
      fast = img[img[fast]];
    } while (slow != fast);
    mask_t u = 0;
    mask_t z = slow;
    do {
      u |= z;
      z = img[z];
    } while (z != slow);
    return u;
  }
};

std::string pair_note(const FiniteSpace& sp, mask_t u, mask_t v) {
  return "U=" + mask_to_string(u, sp.n) + " V=" + mask_to_string(v, sp.n);
}

}  // namespace

PropertyVector property_vector(const System& sys, const PropertyOptions& opts) {
  const FiniteSpace& sp = sys.space;
  const SelfMap& f = sys.map;
  const int n = sp.n;
  const mask_t full = sp.full();
  const DynTables tab(sys);

  PropertyVector pv;
  auto note = [&](const char* key, std::string msg) {
    if (opts.record_witnesses) pv.witnesses[key] = std::move(msg);
  };

  const std::vector<mask_t> base =
      opts.full_open_quantifiers ? [&] {
        std::vector<mask_t> opens = sp.open_family();
        opens.erase(std::remove(opens.begin(), opens.end(), mask_t{0}), opens.end());
        return opens;
      }()
                                 : sp.pi_base();

  // TT family.  N+(U,V) nonempty iff V meets the forward-image union of U;
  // infinite iff V meets the eventual image cycle.
  std::vector<mask_t> reach(base.size()), tailu(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    reach[i] = tab.reach(base[i]);
    tailu[i] = tab.eventual_cycle_union(base[i]);
  }
  pv.tt = pv.tt_plus = pv.tt_plus_plus = true;
  for (std::size_t i = 0; i < base.size() && pv.tt; ++i) {
    for (std::size_t j = 0; j < base.size(); ++j) {
      const bool fwd = (reach[i] & base[j]) != 0;
      const bool bwd = (reach[j] & base[i]) != 0;
      if (pv.tt_plus_plus && (tailu[i] & base[j]) == 0) {
        pv.tt_plus_plus = false;
        note("TT++", "finite N+ at " + pair_note(sp, base[i], base[j]));
      }
      if (pv.tt_plus && !fwd) {
        pv.tt_plus = false;
        note("TT+", "empty N+ at " + pair_note(sp, base[i], base[j]));
      }
      if (!fwd && !bwd) {
        pv.tt = false;
        note("TT", "empty N at " + pair_note(sp, base[i], base[j]));
        break;
      }
    }
  }

  // IN.  Closed +invariant sets are unions of per-point hulls H(x); X
  // decomposes iff two of the "everything avoiding u" unions cover X.
  std::vector<mask_t> hull(n);
  for (int x = 0; x < n; ++x) {
    mask_t t = point_bit(x);
    for (;;) {
      const mask_t next = sp.closure(t | tab.img[t]);
      if (next == t) break;
      t = next;
    }
    hull[x] = t;
  }
  std::vector<mask_t> avoid(n, 0);  // avoid[u] = union of hulls not containing u
  for (int u = 0; u < n; ++u)
    for (int x = 0; x < n; ++x)
      if (!has_point(hull[x], u)) avoid[u] |= hull[x];
  pv.indecomposable = true;
  for (int u = 0; u < n && pv.indecomposable; ++u)
    for (int v = 0; v < n; ++v)
      if ((avoid[u] | avoid[v]) == full) {
        pv.indecomposable = false;
        note("IN", "X = A ∪ B with A = " + mask_to_string(avoid[u], n) +
                       ", B = " + mask_to_string(avoid[v], n));
        break;
      }

  // DO family.
  std::vector<mask_t> orbit(n), cyc(n);
  for (int x = 0; x < n; ++x) {
    orbit[x] = tab.reach(point_bit(x));
    int y = x;
    for (int i = 0; i < n; ++i) y = f.image[y];
    mask_t c = 0;
    int z = y;
    do {
      c |= point_bit(z);
      z = f.image[z];
    } while (z != y);
    cyc[x] = c;
  }
  pv.trans_points = 0;
  for (int x = 0; x < n; ++x)
    if (sp.is_dense(orbit[x])) pv.trans_points |= point_bit(x);
  pv.dense_forward_orbit = pv.trans_points != 0;
  if (pv.dense_forward_orbit)
    note("DO+", "transitive point " + std::to_string(__builtin_ctz(pv.trans_points)));

  pv.omega_full = false;
  for (int x = 0; x < n && !pv.omega_full; ++x)
    if (sp.closure(cyc[x]) == full) {
      pv.omega_full = true;
      note("DO++", "omega limit of " + std::to_string(x) + " is X");
    }

  // DO: a bi-infinite orbit sequence in a finite system lives on a single
  // cycle, so either some cycle has dense closure or some point with empty
  // preimage has a dense forward orbit.
  pv.dense_orbit_seq = false;
  for (mask_t c : cycles_of(f))
    if (sp.is_dense(c)) {
      pv.dense_orbit_seq = true;
      note("DO", "dense cycle " + mask_to_string(c, n));
      break;
    }
  if (!pv.dense_orbit_seq) {
    mask_t src = sourceless_points(sys);
    while (src) {
      const int x = __builtin_ctz(src);
      src &= src - 1;
      if (sp.is_dense(orbit[x])) {
        pv.dense_orbit_seq = true;
        note("DO", "dense forward sequence from sourceless point " + std::to_string(x));
        break;
      }
    }
  }
  return pv;
}

const char* property_name(int i) {
  static const char* names[] = {"IN", "TT", "TT+", "TT++", "DO", "DO+", "DO++"};
  return names[i];
}

bool property_flag(const PropertyVector& pv, int i) {
  switch (i) {
    case 0: return pv.indecomposable;
    case 1: return pv.tt;
    case 2: return pv.tt_plus;
    case 3: return pv.tt_plus_plus;
    case 4: return pv.dense_orbit_seq;
    case 5: return pv.dense_forward_orbit;
    case 6: return pv.omega_full;
  }
  return false;
}

}  // namespace qcdyn
