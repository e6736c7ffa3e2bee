#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "qcdyn/maps.hpp"

using namespace qcdyn;

namespace {

const QcMethod kMethods[] = {QcMethod::pointwise, QcMethod::hitting, QcMethod::preimage};

bool qc_all_methods(const FiniteSpace& sp, const SelfMap& f) {
  const bool a = is_quasicontinuous(sp, f, QcMethod::pointwise);
  for (QcMethod m : kMethods) REQUIRE(is_quasicontinuous(sp, f, m) == a);
  REQUIRE(is_quasicontinuous_fast(sp, f) == a);
  return a;
}

}  // namespace

TEST_CASE("continuity points") {
  const FiniteSpace sier = sierpinski_space();
  CHECK(continuity_points(sier, constant_map(2, 0)) == sier.full());
  CHECK(continuity_points(sier, constant_map(2, 1)) == sier.full());
  CHECK(continuity_points(sier, identity_map(2)) == sier.full());

  const SelfMap swap{{1, 0}};
  CHECK(continuity_points(sier, swap) == point_bit(0));
}

TEST_CASE("quasi-continuity on the named examples, all three characterizations") {
  const FiniteSpace sier = sierpinski_space();
  CHECK(qc_all_methods(sier, constant_map(2, 0)));
  CHECK(qc_all_methods(sier, constant_map(2, 1)));
  CHECK_FALSE(qc_all_methods(sier, SelfMap{{1, 0}}));

  const FiniteSpace disc = discrete_space(3);
  for_each_map(3, [&](const SelfMap& f) { CHECK(qc_all_methods(disc, f)); });
}

TEST_CASE("two-space characterization, maps between different topologies") {
  const FiniteSpace sier = sierpinski_space();
  const FiniteSpace disc = discrete_space(2);
  const FiniteSpace ind = indiscrete_space(2);
  const std::vector<std::uint8_t> ident{0, 1};

  // Into an indiscrete target everything is quasi-continuous.
  for (QcMethod m : kMethods) {
    CHECK(is_quasicontinuous_between(sier, ind, ident, m));
    CHECK(is_quasicontinuous_between(disc, ind, {1, 1}, m));
  }
  // The identity from the Sierpinski space onto the discrete plane fails at
  // the non-isolated point.
  for (QcMethod m : kMethods)
    CHECK_FALSE(is_quasicontinuous_between(sier, disc, ident, m));
  // From a discrete source everything works.
  for (QcMethod m : kMethods)
    CHECK(is_quasicontinuous_between(disc, sier, ident, m));
}

TEST_CASE("feebly open and delta-open examples") {
  const FiniteSpace ind = indiscrete_space(2);
  CHECK(is_feebly_open(ind, identity_map(2)));
  CHECK(is_feebly_open(ind, SelfMap{{1, 0}}));
  CHECK_FALSE(is_feebly_open(ind, constant_map(2, 0)));
  CHECK_FALSE(is_feebly_open(ind, constant_map(2, 1)));

  const FiniteSpace disc3 = discrete_space(3);
  CHECK(is_delta_open(disc3, constant_map(3, 0)));  // only the empty set is nowhere dense
  CHECK(is_delta_open(disc3, identity_map(3)));
  CHECK(is_feebly_open(disc3, identity_map(3)));
}

TEST_CASE("quasi-continuous feebly open maps are delta-open, exhaustive to three points") {
  for (int n = 2; n <= 3; ++n)
    for (const FiniteSpace& sp : all_spaces(n))
      for_each_map(n, [&](const SelfMap& f) {
        if (is_quasicontinuous_fast(sp, f) && is_feebly_open(sp, f))
          CHECK(is_delta_open(sp, f));
      });
}

TEST_CASE("qc systems") {
  const FiniteSpace sier = sierpinski_space();
  CHECK(is_qc_system(sier, constant_map(2, 0)).qc_system);
  CHECK(is_qc_system(sier, identity_map(2)).qc_system);
  CHECK_FALSE(is_qc_system(sier, SelfMap{{1, 0}}).qc_system);

  // A 4-cycle on the discrete square: iterates return to the identity.
  const SelfMap cycle{{1, 2, 3, 0}};
  const QcSystemResult r = is_qc_system(discrete_space(4), cycle);
  CHECK(r.qc_system);
  CHECK(r.preperiod == 0);
  CHECK(r.period == 4);
}

TEST_CASE("iterate cycle recurrence") {
  for (std::uint64_t idx : {0ull, 137ull, 9999ull, 46655ull}) {
    const SelfMap f = map_from_index(6, idx % map_space_size(6));
    const IterateCycle ic = iterate_cycle(f);
    REQUIRE(ic.period >= 1);
    // f^(t+p) equals f^t.
    SelfMap cur = identity_map(6);
    std::vector<SelfMap> all;
    for (int k = 0; k < ic.preperiod + ic.period + ic.period; ++k) {
      all.push_back(cur);
      SelfMap next;
      next.image.resize(6);
      for (int x = 0; x < 6; ++x) next.image[x] = f.image[cur.image[x]];
      cur = next;
    }
    for (int k = ic.preperiod; k + ic.period < static_cast<int>(all.size()); ++k)
      CHECK(all[k].image == all[k + ic.period].image);
  }
}

TEST_CASE("c-infinity sets") {
  const FiniteSpace sier = sierpinski_space();
  auto [ci, cio] = c_infinity_sets(sier, identity_map(2));
  CHECK(ci == sier.full());
  CHECK(cio == sier.full());

  const SelfMap swap{{1, 0}};
  std::tie(ci, cio) = c_infinity_sets(sier, swap);
  CHECK(continuity_points(sier, swap) == point_bit(0));
  CHECK(cio == 0);  // the orbit of 0 leaves C(f)
  CHECK(subset_of(cio, ci));
}

TEST_CASE("orbit-continuity set always sits inside the iterate-continuity set") {
  for (int n = 2; n <= 3; ++n)
    for (const FiniteSpace& sp : all_spaces(n))
      for_each_map(n, [&](const SelfMap& f) {
        const auto [ci, cio] = c_infinity_sets(sp, f);
        CHECK(subset_of(cio, ci));
      });
}

TEST_CASE("residual continuity sets on fragmentable spaces, exhaustive to three points") {
  for (int n = 2; n <= 3; ++n)
    for (const FiniteSpace& sp : all_spaces(n)) {
      if (!space_profile(sp).fragmentable) continue;
      for_each_map(n, [&](const SelfMap& f) {
        const MapProfile p = map_profile(sp, f);
        if (p.qc_system) CHECK(category_predicates(sp, p.c_inf).residual);
        if (p.quasicontinuous && p.delta_open)
          CHECK(category_predicates(sp, p.c_inf_orbit).residual);
      });
    }
}

TEST_CASE("three characterizations and the fast path agree, exhaustive to three points") {
  for (int n = 2; n <= 3; ++n)
    for (const FiniteSpace& sp : all_spaces(n))
      for_each_map(n, [&](const SelfMap& f) { qc_all_methods(sp, f); });
}

TEST_CASE("characterizations agree on a seeded sample at five points") {
  std::mt19937_64 rng(5050);
  const std::vector<FiniteSpace> spaces = all_spaces(5);
  std::uniform_int_distribution<std::uint64_t> sd(0, spaces.size() - 1);
  std::uniform_int_distribution<std::uint64_t> md(0, map_space_size(5) - 1);
  for (int i = 0; i < 500; ++i) {
    const FiniteSpace& sp = spaces[sd(rng)];
    const SelfMap f = map_from_index(5, md(rng));
    qc_all_methods(sp, f);
  }
}

TEST_CASE("continuous maps are quasi-continuous, exhaustive to three points") {
  for (int n = 2; n <= 3; ++n)
    for (const FiniteSpace& sp : all_spaces(n))
      for_each_map(n, [&](const SelfMap& f) {
        const MapProfile p = map_profile(sp, f);
        if (p.continuous) CHECK(p.quasicontinuous);
      });
}

TEST_CASE("map profile of the Sierpinski swap") {
  const MapProfile p = map_profile(sierpinski_space(), SelfMap{{1, 0}});
  CHECK_FALSE(p.continuous);
  CHECK_FALSE(p.quasicontinuous);
  CHECK_FALSE(p.qc_system);
  CHECK(p.cont_points == point_bit(0));
  CHECK(p.c_inf == point_bit(0));  // the identity iterate is continuous everywhere
  CHECK(p.c_inf_orbit == 0);
  CHECK(p.iterate_preperiod == 0);
  CHECK(p.iterate_period == 2);
}

TEST_CASE("map enumeration") {
  int count = 0;
  for_each_map(2, [&](const SelfMap&) { ++count; });
  CHECK(count == 4);
  CHECK(map_space_size(3) == 27);
  CHECK(map_from_index(3, 0).image == std::vector<std::uint8_t>{0, 0, 0});
  CHECK(map_from_index(3, 26).image == std::vector<std::uint8_t>{2, 2, 2});
  CHECK(map_from_index(2, 1).image == std::vector<std::uint8_t>{0, 1});
}
