#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcdyn/io.hpp"

using namespace qcdyn;

TEST_CASE("space text round trip") {
  for (int n = 2; n <= 4; ++n)
    for (const FiniteSpace& sp : all_spaces(n)) {
      const FiniteSpace back = space_from_text(space_to_text(sp));
      CHECK(back.min_nbhd == sp.min_nbhd);
    }
}

TEST_CASE("system text round trip with comments and blank lines") {
  const std::string text = "# two points, 0 -> 1 -> 1\n2\n0\n\n1\n1 1   # image\n";
  const System sys = system_from_text(text);
  CHECK(sys.space.n == 2);
  CHECK(sys.space.is_discrete());
  CHECK(sys.map.image == std::vector<std::uint8_t>{1, 1});
  const System again = system_from_text(system_to_text(sys));
  CHECK(again.space.min_nbhd == sys.space.min_nbhd);
  CHECK(again.map.image == sys.map.image);
}

TEST_CASE("json mirrors") {
  const System sys{sierpinski_space(), SelfMap{{1, 0}}};
  const System back = system_from_json(system_to_json(sys));
  CHECK(back.space.min_nbhd == sys.space.min_nbhd);
  CHECK(back.map.image == sys.map.image);

  const FiniteSpace sp = space_from_json(R"({"n":2,"min_nbhd":[[0],[0,1]]})");
  CHECK(sp.min_nbhd == sierpinski_space().min_nbhd);
  const SelfMap f = map_from_json(R"({"image":[1,1]})");
  CHECK(f.image == std::vector<std::uint8_t>{1, 1});
}

TEST_CASE("auto detection") {
  CHECK(system_from_string("2\n0\n1\n1 1\n").space.is_discrete());
  CHECK(system_from_string(R"( {"space":{"n":2,"min_nbhd":[[0],[1]]},"map":{"image":[1,1]}})")
            .space.is_discrete());
  CHECK_THROWS_AS(system_from_string("   \n"), error);
}

TEST_CASE("parse errors carry line information") {
  try {
    space_from_text("2\n0\n7\n");
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::parse_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(system_from_text("2\n0\n1\n9 9\n"), error);
  CHECK_THROWS_AS(system_from_text("2\n0\n1\n"), error);  // missing map line
  CHECK_THROWS_AS(space_from_text("0\n"), error);
}

TEST_CASE("pwl text round trip") {
  for (const PWLMap& f : {pwl_example31(), pwl_doubling(), pwl_identity()}) {
    const PWLMap back = pwl_from_text(pwl_to_text(f));
    CHECK(back == f);
  }
  const std::string text = "2\n0 1/2 1\n0 0\n0 1\n0 0 1\n";
  CHECK(pwl_from_text(text) == pwl_example31());
  CHECK_THROWS_AS(pwl_from_text("1\n0 1\n1 0\n"), error);  // missing values line
}

TEST_CASE("property report is valid JSON with the seven flags") {
  const System sys{discrete_space(2), SelfMap{{1, 1}}};
  const std::string j = property_report_json(sys, space_profile(sys.space),
                                             map_profile(sys.space, sys.map),
                                             property_vector(sys));
  for (const char* key : {"\"IN\"", "\"TT\"", "\"TT+\"", "\"TT++\"", "\"DO\"", "\"DO+\"",
                          "\"DO++\"", "trans_points", "witnesses"})
    CHECK(j.find(key) != std::string::npos);
}
