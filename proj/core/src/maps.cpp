#include "qcdyn/maps.hpp"

#include <algorithm>

namespace qcdyn {

SelfMap identity_map(int n) {
  SelfMap f;
  f.image.resize(n);
  for (int x = 0; x < n; ++x) f.image[x] = static_cast<std::uint8_t>(x);
  return f;
}

SelfMap constant_map(int n, int target) {
  SelfMap f;
  f.image.assign(n, static_cast<std::uint8_t>(target));
  return f;
}

mask_t image_of(const SelfMap& f, mask_t s) {
  mask_t out = 0;
  while (s) {
    const int x = __builtin_ctz(s);
    s &= s - 1;
    out |= point_bit(f.image[x]);
  }
  return out;
}

mask_t preimage_of(const SelfMap& f, mask_t s) {
  mask_t out = 0;
  for (int x = 0; x < f.n(); ++x)
    if (has_point(s, f.image[x])) out |= point_bit(x);
  return out;
}

void for_each_map(int n, const std::function<void(const SelfMap&)>& yield) {
  SelfMap f;
  f.image.assign(n, 0);
  for (;;) {
    yield(f);
    int i = n - 1;
    while (i >= 0 && f.image[i] == n - 1) f.image[i--] = 0;
    if (i < 0) return;
    ++f.image[i];
  }
}

SelfMap map_from_index(int n, std::uint64_t index) {
  SelfMap f;
  f.image.assign(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    f.image[i] = static_cast<std::uint8_t>(index % n);
    index /= n;
  }
  return f;
}

std::uint64_t map_space_size(int n) {
  std::uint64_t s = 1;
  for (int i = 0; i < n; ++i) s *= static_cast<std::uint64_t>(n);
  return s;
}

mask_t continuity_points(const FiniteSpace& sp, const SelfMap& f) {
  mask_t out = 0;
  for (int x = 0; x < sp.n; ++x)
    if (subset_of(image_of(f, sp.min_nbhd[x]), sp.min_nbhd[f.image[x]]))
      out |= point_bit(x);
  return out;
}

namespace {

mask_t image_between(const std::vector<std::uint8_t>& f, mask_t s) {
  mask_t out = 0;
  while (s) {
    const int x = __builtin_ctz(s);
    s &= s - 1;
    out |= point_bit(f[x]);
  }
  return out;
}

mask_t preimage_between(const std::vector<std::uint8_t>& f, mask_t s) {
  mask_t out = 0;
  for (int x = 0; x < static_cast<int>(f.size()); ++x)
    if (has_point(s, f[x])) out |= point_bit(x);
  return out;
}

}  // namespace

bool is_quasicontinuous_between(const FiniteSpace& X, const FiniteSpace& Y,
                                const std::vector<std::uint8_t>& f, QcMethod method) {
  const std::vector<mask_t> opens_x = X.open_family();
  const std::vector<mask_t> opens_y = Y.open_family();

  switch (method) {
    case QcMethod::pointwise: {
      for (int x = 0; x < X.n; ++x) {
        for (mask_t w : opens_y) {
          if (!has_point(w, f[x])) continue;
          for (mask_t u : opens_x) {
            if (!has_point(u, x)) continue;
            bool found = false;
            for (mask_t v : opens_x) {
              if (v == 0 || !subset_of(v, u)) continue;
              if (subset_of(image_between(f, v), w)) {
                found = true;
                break;
              }
            }
            if (!found) return false;
          }
        }
      }
      return true;
    }
    case QcMethod::hitting: {
      for (mask_t u : opens_x) {
        if (u == 0) continue;
        for (mask_t v : opens_y) {
          if (v == 0) continue;
          const mask_t meet = u & preimage_between(f, v);
          if (meet != 0 && X.interior(meet) == 0) return false;
        }
      }
      return true;
    }
    case QcMethod::preimage: {
      for (mask_t v : opens_y) {
        const mask_t pre = preimage_between(f, v);
        if (!subset_of(pre, X.closure(X.interior(pre)))) return false;
      }
      return true;
    }
  }
  return false;
}

bool is_quasicontinuous(const FiniteSpace& sp, const SelfMap& f, QcMethod method) {
  return is_quasicontinuous_between(sp, sp, f.image, method);
}

bool is_quasicontinuous_fast(const FiniteSpace& sp, const SelfMap& f) {
  // Minimal neighbourhoods suffice on both sides: any open around x
  // contains min_nbhd[x], and a witness V for the minimal pair works for
  // every larger pair.
  for (int x = 0; x < sp.n; ++x) {
    const mask_t u = sp.min_nbhd[x];
    const mask_t w = sp.min_nbhd[f.image[x]];
    bool found = false;
    mask_t rest = u;
    while (rest && !found) {
      const int v = __builtin_ctz(rest);
      rest &= rest - 1;
      if (subset_of(image_of(f, sp.min_nbhd[v]), w)) found = true;
    }
    if (!found) return false;
  }
  return true;
}

bool is_feebly_open(const FiniteSpace& sp, const SelfMap& f) {
  // Interiors are monotone, so the pi-base elements decide it.
  for (mask_t p : sp.pi_base())
    if (sp.interior(image_of(f, p)) == 0) return false;
  return true;
}

bool is_delta_open(const FiniteSpace& sp, const SelfMap& f) {
  const mask_t full = sp.full();
  for (mask_t s = 0;; ++s) {
    if (sp.interior(sp.closure(s)) == 0) {
      const mask_t pre = preimage_of(f, s);
      if (sp.interior(sp.closure(pre)) != 0) return false;
    }
    if (s == full) break;
  }
  return true;
}

IterateCycle iterate_cycle(const SelfMap& f) {
  IterateCycle out;
  SelfMap cur = identity_map(f.n());
  for (;;) {
    for (int i = 0; i < static_cast<int>(out.iterates.size()); ++i) {
      if (out.iterates[i].image == cur.image) {
        out.preperiod = i;
        out.period = static_cast<int>(out.iterates.size()) - i;
        return out;
      }
    }
    out.iterates.push_back(cur);
    SelfMap next;
    next.image.resize(f.n());
    for (int x = 0; x < f.n(); ++x) next.image[x] = f.image[cur.image[x]];
    cur = std::move(next);
  }
}

QcSystemResult is_qc_system(const FiniteSpace& sp, const SelfMap& f) {
  const IterateCycle ic = iterate_cycle(f);
  QcSystemResult r;
  r.preperiod = ic.preperiod;
  r.period = ic.period;
  r.qc_system = true;
  for (const SelfMap& g : ic.iterates) {
    if (!is_quasicontinuous_fast(sp, g)) {
      r.qc_system = false;
      break;
    }
  }
  return r;
}

std::pair<mask_t, mask_t> c_infinity_sets(const FiniteSpace& sp, const SelfMap& f) {
  const IterateCycle ic = iterate_cycle(f);
  mask_t c_inf = sp.full();
  for (const SelfMap& g : ic.iterates) c_inf &= continuity_points(sp, g);

  // Greatest fixpoint of T = C(f) ∩ f^-1(T): points whose whole forward
  // orbit stays in C(f).
  const mask_t c = continuity_points(sp, f);
  mask_t t = c;
  for (;;) {
    const mask_t next = c & preimage_of(f, t);
    if (next == t) break;
    t = next;
  }
  return {c_inf, t};
}

MapProfile map_profile(const FiniteSpace& sp, const SelfMap& f) {
  MapProfile p;
  p.cont_points = continuity_points(sp, f);
  p.continuous = (p.cont_points == sp.full());
  p.quasicontinuous = is_quasicontinuous_fast(sp, f);
  p.feebly_open = is_feebly_open(sp, f);
  p.delta_open = is_delta_open(sp, f);
  const QcSystemResult q = is_qc_system(sp, f);
  p.qc_system = q.qc_system;
  p.iterate_preperiod = q.preperiod;
  p.iterate_period = q.period;
  std::tie(p.c_inf, p.c_inf_orbit) = c_infinity_sets(sp, f);
  return p;
}

}  // namespace qcdyn
