#pragma once

#include <iosfwd>
#include <string>

#include "qcdyn/dynamics.hpp"
#include "qcdyn/interval.hpp"
#include "qcdyn/maps.hpp"
#include "qcdyn/topology.hpp"

namespace qcdyn {

// Text formats.  Space: line 1 holds n, then n lines list the members of
// min_nbhd[x].  Map: one line of n image entries.  System: space block then
// map block.  '#' starts a comment, blank lines are skipped.

std::string space_to_text(const FiniteSpace& sp);
std::string map_to_text(const SelfMap& f);
std::string system_to_text(const System& sys);

FiniteSpace space_from_text(const std::string& text);
SelfMap map_from_text(const std::string& text);
System system_from_text(const std::string& text);

// JSON mirrors: {"n":..,"min_nbhd":[[..],..]}, {"image":[..]},
// {"space":{..},"map":{..}}.
std::string space_to_json(const FiniteSpace& sp);
std::string map_to_json(const SelfMap& f);
std::string system_to_json(const System& sys);

FiniteSpace space_from_json(const std::string& text);
SelfMap map_from_json(const std::string& text);
System system_from_json(const std::string& text);

/// Auto-detects JSON ('{' first) versus text.
System system_from_string(const std::string& text);

// Piecewise map format: piece count m, then m+1 breakpoints p/q, then m
// lines "slope intercept", then m+1 breakpoint values.
std::string pwl_to_text(const PWLMap& f);
PWLMap pwl_from_text(const std::string& text);

std::string property_report_json(const System& sys, const SpaceProfile& prof,
                                 const MapProfile& mp, const PropertyVector& pv);

}  // namespace qcdyn
