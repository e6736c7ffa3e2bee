#include "qcdyn/io.hpp"

#include <sstream>

#include "json.hpp"

namespace qcdyn {

namespace {

// Lines with comments stripped, paired with 1-based source line numbers.
std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int num = 0;
  while (std::getline(in, line)) {
    ++num;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string tok;
    if (probe >> tok) out.emplace_back(num, line);
  }
  return out;
}

std::vector<long long> parse_ints(const std::pair<int, std::string>& line) {
  std::istringstream in(line.second);
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw error(errc::parse_error,
                  "line " + std::to_string(line.first) + ": bad integer '" + tok + "'");
    }
  }
  return out;
}

std::vector<std::string> parse_tokens(const std::pair<int, std::string>& line) {
  std::istringstream in(line.second);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

using Lines = std::vector<std::pair<int, std::string>>;

FiniteSpace space_from_lines(const Lines& lines, std::size_t& pos) {
  if (pos >= lines.size()) throw error(errc::parse_error, "missing ground-set size");
  const auto head = parse_ints(lines[pos]);
  if (head.size() != 1 || head[0] < 1 || head[0] > kMaxPoints)
    throw error(errc::parse_error,
                "line " + std::to_string(lines[pos].first) + ": expected ground-set size");
  const int n = static_cast<int>(head[0]);
  ++pos;
  std::vector<mask_t> nb(n, 0);
  for (int x = 0; x < n; ++x, ++pos) {
    if (pos >= lines.size())
      throw error(errc::parse_error, "missing neighbourhood line for point " + std::to_string(x));
    for (long long p : parse_ints(lines[pos])) {
      if (p < 0 || p >= n)
        throw error(errc::parse_error, "line " + std::to_string(lines[pos].first) +
                                           ": point " + std::to_string(p) + " out of range");
      nb[x] |= point_bit(static_cast<int>(p));
    }
  }
  return build_space(std::move(nb));
}

SelfMap map_from_lines(const Lines& lines, std::size_t& pos, int n) {
  if (pos >= lines.size()) throw error(errc::parse_error, "missing map line");
  const auto vals = parse_ints(lines[pos]);
  if (static_cast<int>(vals.size()) != n)
    throw error(errc::parse_error, "line " + std::to_string(lines[pos].first) +
                                       ": expected " + std::to_string(n) + " image entries");
  SelfMap f;
  for (long long v : vals) {
    if (v < 0 || v >= n)
      throw error(errc::parse_error, "line " + std::to_string(lines[pos].first) +
                                         ": image " + std::to_string(v) + " out of range");
    f.image.push_back(static_cast<std::uint8_t>(v));
  }
  ++pos;
  return f;
}

}  // namespace

std::string space_to_text(const FiniteSpace& sp) {
  std::ostringstream out;
  out << sp.n << '\n';
  for (int x = 0; x < sp.n; ++x) {
    bool first = true;
    for (int y = 0; y < sp.n; ++y)
      if (has_point(sp.min_nbhd[x], y)) {
        if (!first) out << ' ';
        out << y;
        first = false;
      }
    out << '\n';
  }
  return out.str();
}

std::string map_to_text(const SelfMap& f) {
  std::ostringstream out;
  for (int x = 0; x < f.n(); ++x) {
    if (x) out << ' ';
    out << static_cast<int>(f.image[x]);
  }
  out << '\n';
  return out.str();
}

std::string system_to_text(const System& sys) {
  return space_to_text(sys.space) + map_to_text(sys.map);
}

FiniteSpace space_from_text(const std::string& text) {
  const Lines lines = content_lines(text);
  std::size_t pos = 0;
  return space_from_lines(lines, pos);
}

SelfMap map_from_text(const std::string& text) {
  const Lines lines = content_lines(text);
  if (lines.empty()) throw error(errc::parse_error, "empty map");
  const auto vals = parse_ints(lines[0]);
  std::size_t pos = 0;
  return map_from_lines(lines, pos, static_cast<int>(vals.size()));
}

System system_from_text(const std::string& text) {
  const Lines lines = content_lines(text);
  std::size_t pos = 0;
  FiniteSpace sp = space_from_lines(lines, pos);
  SelfMap f = map_from_lines(lines, pos, sp.n);
  return make_system(std::move(sp), std::move(f));
}

namespace {

nlohmann::json space_json(const FiniteSpace& sp) {
  nlohmann::json nb = nlohmann::json::array();
  for (int x = 0; x < sp.n; ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (int y = 0; y < sp.n; ++y)
      if (has_point(sp.min_nbhd[x], y)) row.push_back(y);
    nb.push_back(row);
  }
  return {{"n", sp.n}, {"min_nbhd", nb}};
}

nlohmann::json map_json(const SelfMap& f) {
  nlohmann::json img = nlohmann::json::array();
  for (int x = 0; x < f.n(); ++x) img.push_back(static_cast<int>(f.image[x]));
  return {{"image", img}};
}

FiniteSpace space_from(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  if (n < 1 || n > kMaxPoints) throw error(errc::parse_error, "bad n in JSON space");
  std::vector<mask_t> nb(n, 0);
  const auto& rows = j.at("min_nbhd");
  if (static_cast<int>(rows.size()) != n)
    throw error(errc::parse_error, "min_nbhd row count mismatch");
  for (int x = 0; x < n; ++x)
    for (const auto& p : rows[x]) {
      const int v = p.get<int>();
      if (v < 0 || v >= n) throw error(errc::parse_error, "point out of range in JSON space");
      nb[x] |= point_bit(v);
    }
  return build_space(std::move(nb));
}

SelfMap map_from(const nlohmann::json& j, int n) {
  const auto& img = j.at("image");
  if (static_cast<int>(img.size()) != n)
    throw error(errc::parse_error, "image size mismatch");
  SelfMap f;
  for (const auto& p : img) {
    const int v = p.get<int>();
    if (v < 0 || v >= n) throw error(errc::parse_error, "image out of range");
    f.image.push_back(static_cast<std::uint8_t>(v));
  }
  return f;
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, e.what());
  }
}

nlohmann::json mask_json(mask_t m, int n) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < n; ++i)
    if (has_point(m, i)) out.push_back(i);
  return out;
}

}  // namespace

std::string space_to_json(const FiniteSpace& sp) { return space_json(sp).dump(); }
std::string map_to_json(const SelfMap& f) { return map_json(f).dump(); }

std::string system_to_json(const System& sys) {
  return nlohmann::json{{"space", space_json(sys.space)}, {"map", map_json(sys.map)}}.dump();
}

FiniteSpace space_from_json(const std::string& text) {
  return space_from(parse_json(text));
}

SelfMap map_from_json(const std::string& text) {
  const nlohmann::json j = parse_json(text);
  return map_from(j, static_cast<int>(j.at("image").size()));
}

System system_from_json(const std::string& text) {
  const nlohmann::json j = parse_json(text);
  FiniteSpace sp = space_from(j.at("space"));
  SelfMap f = map_from(j.at("map"), sp.n);
  return make_system(std::move(sp), std::move(f));
}

System system_from_string(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? system_from_json(text) : system_from_text(text);
  }
  throw error(errc::parse_error, "empty input");
}

std::string pwl_to_text(const PWLMap& f) {
  std::ostringstream out;
  const int m = f.piece_count();
  out << m << '\n';
  for (int i = 0; i <= m; ++i) out << f.breakpoints[i].str() << (i < m ? ' ' : '\n');
  for (int i = 0; i < m; ++i)
    out << f.pieces[i].first.str() << ' ' << f.pieces[i].second.str() << '\n';
  for (int i = 0; i <= m; ++i) out << f.values[i].str() << (i < m ? ' ' : '\n');
  return out.str();
}

PWLMap pwl_from_text(const std::string& text) {
  const Lines lines = content_lines(text);
  std::size_t pos = 0;
  auto need = [&](const char* what) -> const std::pair<int, std::string>& {
    if (pos >= lines.size()) throw error(errc::parse_error, std::string("missing ") + what);
    return lines[pos];
  };
  const auto head = parse_ints(need("piece count"));
  if (head.size() != 1 || head[0] < 1)
    throw error(errc::parse_error, "expected piece count");
  const int m = static_cast<int>(head[0]);
  ++pos;

  const auto bp_tokens = parse_tokens(need("breakpoints"));
  if (static_cast<int>(bp_tokens.size()) != m + 1)
    throw error(errc::parse_error, "expected " + std::to_string(m + 1) + " breakpoints");
  std::vector<Rational> bps;
  for (const auto& t : bp_tokens) bps.push_back(parse_rational(t));
  ++pos;

  std::vector<std::pair<Rational, Rational>> pieces;
  for (int i = 0; i < m; ++i, ++pos) {
    const auto toks = parse_tokens(need("piece line"));
    if (toks.size() != 2)
      throw error(errc::parse_error, "line " + std::to_string(lines[pos].first) +
                                         ": expected 'slope intercept'");
    pieces.emplace_back(parse_rational(toks[0]), parse_rational(toks[1]));
  }

  const auto val_tokens = parse_tokens(need("breakpoint values"));
  if (static_cast<int>(val_tokens.size()) != m + 1)
    throw error(errc::parse_error, "expected " + std::to_string(m + 1) + " breakpoint values");
  std::vector<Rational> values;
  for (const auto& t : val_tokens) values.push_back(parse_rational(t));

  return build_pwl(std::move(bps), std::move(pieces), std::move(values));
}

std::string property_report_json(const System& sys, const SpaceProfile& prof,
                                 const MapProfile& mp, const PropertyVector& pv) {
  const int n = sys.space.n;
  nlohmann::json flags;
  for (int i = 0; i < 7; ++i) flags[property_name(i)] = property_flag(pv, i);
  nlohmann::json witnesses = nlohmann::json::object();
  for (const auto& [k, v] : pv.witnesses) witnesses[k] = v;
  nlohmann::json j{
      {"system", nlohmann::json{{"space", space_json(sys.space)}, {"map", map_json(sys.map)}}},
      {"space_profile",
       {{"T0", prof.t0},
        {"T1", prof.t1},
        {"T2", prof.t2},
        {"perfect", prof.perfect},
        {"fragmentable", prof.fragmentable},
        {"baire", prof.baire},
        {"second_category", prof.second_category},
        {"isolated", mask_json(prof.isolated, n)}}},
      {"map_profile",
       {{"continuous", mp.continuous},
        {"quasicontinuous", mp.quasicontinuous},
        {"feebly_open", mp.feebly_open},
        {"delta_open", mp.delta_open},
        {"qc_system", mp.qc_system},
        {"continuity_points", mask_json(mp.cont_points, n)},
        {"c_inf", mask_json(mp.c_inf, n)},
        {"c_inf_orbit", mask_json(mp.c_inf_orbit, n)},
        {"iterate_preperiod", mp.iterate_preperiod},
        {"iterate_period", mp.iterate_period}}},
      {"properties",
       {{"flags", flags},
        {"trans_points", mask_json(pv.trans_points, n)},
        {"witnesses", witnesses}}}};
  return j.dump(2);
}

}  // namespace qcdyn
