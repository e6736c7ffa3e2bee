#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qcdyn/topology.hpp"

namespace qcdyn {

/// A total self-map on points 0..n-1, image[x] = f(x).
struct SelfMap {
  std::vector<std::uint8_t> image;

  int n() const { return static_cast<int>(image.size()); }
  int operator()(int x) const { return image[x]; }
};

SelfMap identity_map(int n);
SelfMap constant_map(int n, int target);

mask_t image_of(const SelfMap& f, mask_t s);
mask_t preimage_of(const SelfMap& f, mask_t s);

/// Iterates all n^n self-maps in lexicographic order of the image array.
void for_each_map(int n, const std::function<void(const SelfMap&)>& yield);
SelfMap map_from_index(int n, std::uint64_t index);
std::uint64_t map_space_size(int n);

/// C(f): continuity points.  On a finite space f is continuous at x exactly
/// when the minimal neighbourhood of x maps into the minimal neighbourhood
/// of f(x).
mask_t continuity_points(const FiniteSpace& sp, const SelfMap& f);

enum class QcMethod {
  pointwise,  // open V inside every U around x with f(V) inside every W around f(x)
  hitting,    // U, f^-1(V) disjoint, or some nonempty open inside U ∩ f^-1(V)
  preimage,   // f^-1(V) inside closure(interior(f^-1(V)))
};

/// Literal evaluation of the selected characterization, quantifying over the
/// whole open family.  The three methods agree on every system.
bool is_quasicontinuous(const FiniteSpace& sp, const SelfMap& f, QcMethod method);

/// Equivalent fast decision quantifying over minimal neighbourhoods only.
bool is_quasicontinuous_fast(const FiniteSpace& sp, const SelfMap& f);

/// Two-space variant, f maps points of X to points of Y.
bool is_quasicontinuous_between(const FiniteSpace& X, const FiniteSpace& Y,
                                const std::vector<std::uint8_t>& f, QcMethod method);

/// Nonempty opens have images with nonempty interior.
bool is_feebly_open(const FiniteSpace& sp, const SelfMap& f);

/// Preimages of nowhere dense sets are nowhere dense.  Quantifies over all
/// 2^n subsets filtered to the nowhere dense ones.
bool is_delta_open(const FiniteSpace& sp, const SelfMap& f);

/// The iterate sequence f^0, f^1, ... is eventually periodic as maps:
/// f^(preperiod+period) = f^preperiod.  iterates holds the distinct maps
/// f^0 .. f^(preperiod+period-1).
struct IterateCycle {
  int preperiod = 0;
  int period = 1;
  std::vector<SelfMap> iterates;
};

IterateCycle iterate_cycle(const SelfMap& f);

struct QcSystemResult {
  bool qc_system = false;
  int preperiod = 0;
  int period = 1;
};

/// Decides "every iterate is quasi-continuous" exactly, via the iterate
/// cycle: only the finitely many distinct iterates need checking.
QcSystemResult is_qc_system(const FiniteSpace& sp, const SelfMap& f);

/// c_inf = points where every iterate is continuous;
/// c_inf_orbit = points whose entire forward orbit lies in C(f).
/// Always c_inf_orbit subset of c_inf.
std::pair<mask_t, mask_t> c_infinity_sets(const FiniteSpace& sp, const SelfMap& f);

struct MapProfile {
  bool continuous = false;
  bool quasicontinuous = false;
  bool feebly_open = false;
  bool delta_open = false;
  bool qc_system = false;
  mask_t cont_points = 0;
  mask_t c_inf = 0;
  mask_t c_inf_orbit = 0;
  int iterate_preperiod = 0;
  int iterate_period = 1;
};

MapProfile map_profile(const FiniteSpace& sp, const SelfMap& f);

}  // namespace qcdyn
