#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcdyn/maps.hpp"
#include "qcdyn/topology.hpp"

namespace qcdyn {

/// A phase space together with a self-map.
struct System {
  FiniteSpace space;
  SelfMap map;
};

System make_system(FiniteSpace sp, SelfMap f);

struct OrbitSummary {
  int start = 0;
  std::vector<int> path;  // x, f(x), ..., up to and including the cycle once
  int preperiod = 0;
  int period = 1;
  mask_t orbit_mask = 0;
  mask_t cycle_mask = 0;
};

OrbitSummary forward_orbit(const System& sys, int x);

/// Closure of the eventual cycle of x; the tail sets stabilize there.
mask_t omega_limit(const System& sys, int x);

/// N+(A,B) in exact semilinear form: a finite transient part below `offset`
/// plus residues modulo `period` from `offset` on.  The subset trajectory
/// f^k(A) repeats after at most 2^n states, which makes this representation
/// exact for every k.
struct HittingSet {
  std::vector<long long> transient;  // hits at steps < offset, ascending
  long long offset = 0;
  long long period = 1;
  std::vector<char> residues;  // size = period, residues[r] != 0 iff hit

  bool contains(long long k) const;
  bool empty() const;
  bool infinite() const;
};

HittingSet hitting_set(const System& sys, mask_t a, mask_t b);

/// N(A,B) nonempty, decided through N+(A,B) ∪ N+(B,A).
bool two_sided_hitting_nonempty(const System& sys, mask_t a, mask_t b);

/// The seven transitivity and density properties plus the transitive-point
/// set.  Flag names follow the usual labels: indecomposable = IN,
/// tt/tt_plus/tt_plus_plus = TT/TT+/TT++, dense_orbit_seq = DO,
/// dense_forward_orbit = DO+, omega_full = DO++.
struct PropertyVector {
  bool indecomposable = false;
  bool tt = false;
  bool tt_plus = false;
  bool tt_plus_plus = false;
  bool dense_orbit_seq = false;
  bool dense_forward_orbit = false;
  bool omega_full = false;
  mask_t trans_points = 0;
  std::map<std::string, std::string> witnesses;
};

struct PropertyOptions {
  // When set, the TT family quantifies over every nonempty open pair
  // instead of the canonical pi-base.  Reference mode for cross-checks.
  bool full_open_quantifiers = false;
  bool record_witnesses = true;
};

PropertyVector property_vector(const System& sys, const PropertyOptions& opts = {});

/// TT alone, cheaper than the full vector.  Used by large sweeps.
bool decide_tt(const System& sys);

/// Points with empty preimage.
mask_t sourceless_points(const System& sys);

/// Cycle point sets of the map, one mask per cycle.
std::vector<mask_t> cycles_of(const SelfMap& f);

const char* property_name(int i);          // 0..6 -> IN TT TT+ TT++ DO DO+ DO++
bool property_flag(const PropertyVector&, int i);

}  // namespace qcdyn
