#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qcdyn/error.hpp"

namespace qcdyn {

// Subsets of the ground set {0..n-1} are bitmasks, point i = bit i.
using mask_t = std::uint32_t;

inline constexpr int kMaxPoints = 20;

inline mask_t point_bit(int i) { return mask_t{1} << i; }
inline bool has_point(mask_t m, int i) { return (m >> i) & 1u; }
inline int popcount(mask_t m) { return __builtin_popcount(m); }
inline bool subset_of(mask_t a, mask_t b) { return (a & ~b) == 0; }
inline mask_t full_mask(int n) {
  return n == 0 ? 0 : mask_t(~mask_t{0}) >> (32 - n);
}

std::string mask_to_string(mask_t m, int n);

/// A finite topology on points 0..n-1 in minimal-neighbourhood form:
/// min_nbhd[x] is the smallest open set containing x.  Valid data has
/// x in min_nbhd[x], and y in min_nbhd[x] implies min_nbhd[y] subset of
/// min_nbhd[x].  The open sets are exactly the unions of minimal
/// neighbourhoods; every finite topology arises this way.
///
/// Values are immutable after construction and safe to share across threads.
struct FiniteSpace {
  int n = 0;
  std::vector<mask_t> min_nbhd;

  mask_t full() const { return full_mask(n); }

  // interior(S) = {x : min_nbhd[x] subset of S}; closure by complementation.
  mask_t interior(mask_t s) const;
  mask_t closure(mask_t s) const { return full() & ~interior(full() & ~s); }
  mask_t isolated_points() const;

  bool is_open(mask_t s) const { return interior(s) == s; }
  bool is_closed(mask_t s) const { return is_open(full() & ~s); }
  bool is_dense(mask_t s) const { return closure(s) == full(); }
  bool is_discrete() const;

  /// Every open set, ascending as masks.  Size is at most 2^n.
  std::vector<mask_t> open_family() const;

  /// The distinct minimal neighbourhoods.  Every nonempty open set contains
  /// one of them, so they form the canonical pi-base.
  std::vector<mask_t> pi_base() const;
};

/// Validates and wraps a minimal-neighbourhood array.
/// Throws errc::reflexivity_violation or errc::transitivity_violation.
FiniteSpace build_space(std::vector<mask_t> min_nbhd);

FiniteSpace discrete_space(int n);
FiniteSpace indiscrete_space(int n);
/// Two points, open sets {}, {0}, {0,1}.
FiniteSpace sierpinski_space();

struct SpaceProfile {
  bool t0 = false;
  bool t1 = false;
  bool t2 = false;
  bool perfect = false;
  bool fragmentable = false;
  // Nonempty finite spaces are Baire and of the second category; see
  // baire_brute_check for the subset-level verification.
  bool baire = true;
  bool second_category = true;
  mask_t isolated = 0;
};

SpaceProfile space_profile(const FiniteSpace& sp);

/// Checks over all subsets that residual implies dense.
bool baire_brute_check(const FiniteSpace& sp);

struct CategoryFlags {
  bool dense = false;
  bool nowhere_dense = false;
  bool residual = false;             // complement is nowhere dense
  bool contains_dense_open = false;  // interior is dense
};

CategoryFlags category_predicates(const FiniteSpace& sp, mask_t s);

struct EnumerateOptions {
  int cap = 6;
  bool dedup = false;  // emit only canonical representatives under relabelling
};

/// Yields every topology on n labelled points exactly once, in lexicographic
/// order of the minimal-neighbourhood rows.  Throws errc::cap_exceeded when
/// n exceeds opts.cap.
void enumerate_spaces(int n, const std::function<void(const FiniteSpace&)>& yield,
                      const EnumerateOptions& opts = {});

std::vector<FiniteSpace> all_spaces(int n, const EnumerateOptions& opts = {});
std::uint64_t count_spaces(int n, const EnumerateOptions& opts = {});

/// Lexicographically least relabelling of the minimal-neighbourhood rows.
std::vector<mask_t> canonical_form(const FiniteSpace& sp);

}  // namespace qcdyn
