#pragma once

// Independent oracles used by the tests.  Everything here recomputes results
// from definitions, staying off the library's decision paths.

#include <algorithm>
#include <vector>

#include "qcdyn/dynamics.hpp"
#include "qcdyn/topology.hpp"

namespace oracles {

using qcdyn::FiniteSpace;
using qcdyn::mask_t;
using qcdyn::SelfMap;
using qcdyn::System;

// Largest open subset of s, from the open family alone.
inline mask_t interior_oracle(const FiniteSpace& sp, mask_t s) {
  mask_t out = 0;
  for (mask_t o : sp.open_family())
    if (qcdyn::subset_of(o, s)) out |= o;
  return out;
}

// Smallest closed superset of s: complement of the union of opens disjoint
// from s.
inline mask_t closure_oracle(const FiniteSpace& sp, mask_t s) {
  mask_t avoid = 0;
  for (mask_t o : sp.open_family())
    if ((o & s) == 0) avoid |= o;
  return sp.full() & ~avoid;
}

// Counts set families over {0..n-1} containing the empty set and the whole
// set and closed under union and intersection.  Each such family is a
// topology, so the count must match the preorder enumeration.
inline std::uint64_t topology_family_count(int n) {
  const int subsets = 1 << n;
  const mask_t full = qcdyn::full_mask(n);
  // A family is a bitset over the 2^n subsets.
  std::uint64_t count = 0;
  const std::uint64_t families = std::uint64_t{1} << subsets;
  for (std::uint64_t fam = 0; fam < families; ++fam) {
    if (!(fam & 1)) continue;                       // wants the empty set
    if (!((fam >> full) & 1)) continue;             // wants the whole set
    bool ok = true;
    for (int a = 0; a < subsets && ok; ++a) {
      if (!((fam >> a) & 1)) continue;
      for (int b = a + 1; b < subsets && ok; ++b) {
        if (!((fam >> b) & 1)) continue;
        if (!((fam >> (a | b)) & 1) || !((fam >> (a & b)) & 1)) ok = false;
      }
    }
    if (ok) ++count;
  }
  return count;
}

// Direct simulation of N+(A,B) membership at one step count.
inline bool simulate_hit(const System& sys, mask_t a, mask_t b, long long step) {
  mask_t s = a;
  for (long long i = 0; i < step; ++i) s = qcdyn::image_of(sys.map, s);
  return (s & b) != 0;
}

// Exhaustive decision of IN over all subsets: is the space a union of two
// proper closed +invariant sets?
inline bool indecomposable_oracle(const System& sys) {
  const FiniteSpace& sp = sys.space;
  const mask_t full = sp.full();
  std::vector<mask_t> closed_inv;
  for (mask_t s = 0; s < full; ++s)  // proper subsets only
    if (sp.is_closed(s) && qcdyn::subset_of(qcdyn::image_of(sys.map, s), s))
      closed_inv.push_back(s);
  for (mask_t a : closed_inv)
    for (mask_t b : closed_inv)
      if ((a | b) == full) return false;
  return true;
}

// Orbit-sequence search for DO, straight from the definition.  Bi-infinite
// sequences: search the backward state graph (point, elements-so-far); an
// infinite backward continuation exists exactly when some state repeats, and
// the element set of the sequence is the stable set on that loop.  Forward
// sequences need a start with empty preimage.
inline bool dense_orbit_sequence_oracle(const System& sys) {
  const FiniteSpace& sp = sys.space;
  const int n = sp.n;
  const mask_t full = sp.full();

  for (int x0 = 0; x0 < n; ++x0) {
    const mask_t forward = qcdyn::forward_orbit(sys, x0).orbit_mask;
    // States are (point, accumulated elements).  Edges go to preimages.
    const int states = n << n;
    std::vector<char> reachable(states, 0);
    std::vector<int> stack;
    const auto id = [&](int y, mask_t s) { return (y << n) | static_cast<int>(s); };
    const int start = id(x0, qcdyn::point_bit(x0));
    reachable[start] = 1;
    stack.push_back(start);
    std::vector<int> reached;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      reached.push_back(cur);
      const int y = cur >> n;
      const mask_t s = static_cast<mask_t>(cur & static_cast<int>(full));
      for (int z = 0; z < n; ++z) {
        if (sys.map.image[z] != y) continue;
        const int next = id(z, s | qcdyn::point_bit(z));
        if (!reachable[next]) {
          reachable[next] = 1;
          stack.push_back(next);
        }
      }
    }
    // A state on a directed cycle yields an infinite backward chain whose
    // element set is the state's accumulated set.
    for (int st : reached) {
      // Walk preimage edges without growing the element set; if st can reach
      // itself this way or through same-set states, it lies on a cycle.
      std::vector<char> seen(states, 0);
      std::vector<int> stk;
      const int y0 = st >> n;
      const mask_t s0 = static_cast<mask_t>(st & static_cast<int>(full));
      for (int z = 0; z < n; ++z)
        if (sys.map.image[z] == y0 && (s0 | qcdyn::point_bit(z)) == s0) {
          const int nx = id(z, s0);
          if (!seen[nx]) {
            seen[nx] = 1;
            stk.push_back(nx);
          }
        }
      bool on_cycle = false;
      while (!stk.empty() && !on_cycle) {
        const int cur = stk.back();
        stk.pop_back();
        if (cur == st) {
          on_cycle = true;
          break;
        }
        const int y = cur >> n;
        for (int z = 0; z < n; ++z)
          if (sys.map.image[z] == y && (s0 | qcdyn::point_bit(z)) == s0) {
            const int nx = id(z, s0);
            if (!seen[nx]) {
              seen[nx] = 1;
              stk.push_back(nx);
            }
          }
      }
      if (on_cycle && sp.is_dense(s0 | forward)) return true;
    }
  }

  // Forward orbit sequences from sourceless starts.
  for (int x = 0; x < n; ++x) {
    bool has_pre = false;
    for (int z = 0; z < n; ++z)
      if (sys.map.image[z] == x) has_pre = true;
    if (!has_pre && sp.is_dense(qcdyn::forward_orbit(sys, x).orbit_mask)) return true;
  }
  return false;
}

}  // namespace oracles
