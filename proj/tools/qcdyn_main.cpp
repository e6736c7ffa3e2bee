#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qcdyn/io.hpp"
#include "qcdyn/verifier.hpp"

using namespace qcdyn;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw error(errc::parse_error, "cannot write " + path);
  out << content;
}

const char* yn(bool b) { return b ? "yes" : "no"; }

int cmd_props(const std::string& input, const std::string& json_out) {
  const System sys = system_from_string(read_file(input));
  const SpaceProfile prof = space_profile(sys.space);
  const MapProfile mp = map_profile(sys.space, sys.map);
  const PropertyVector pv = property_vector(sys);
  const int n = sys.space.n;

  std::cout << "space: n=" << n << "  T0=" << yn(prof.t0) << " T1=" << yn(prof.t1)
            << " T2=" << yn(prof.t2) << " perfect=" << yn(prof.perfect)
            << " fragmentable=" << yn(prof.fragmentable) << "\n";
  std::cout << "Iso_X = " << mask_to_string(prof.isolated, n) << "\n";
  std::cout << "map: continuous=" << yn(mp.continuous)
            << " quasicontinuous=" << yn(mp.quasicontinuous)
            << " feebly_open=" << yn(mp.feebly_open) << " delta_open=" << yn(mp.delta_open)
            << " qc_system=" << yn(mp.qc_system) << "\n";
  std::cout << "iterates: preperiod=" << mp.iterate_preperiod
            << " period=" << mp.iterate_period << "\n";
  std::cout << "C(f)    = " << mask_to_string(mp.cont_points, n) << "\n";
  std::cout << "C_inf   = " << mask_to_string(mp.c_inf, n) << "\n";
  std::cout << "C_inf_f = " << mask_to_string(mp.c_inf_orbit, n) << "\n";
  for (int i = 0; i < 7; ++i)
    std::cout << property_name(i) << (property_flag(pv, i) ? " ✓" : " ✗")
              << (i < 6 ? "  " : "\n");
  std::cout << "Trans_f = " << mask_to_string(pv.trans_points, n) << "\n";
  for (const auto& [k, v] : pv.witnesses) std::cout << "  " << k << ": " << v << "\n";

  if (!json_out.empty()) write_file(json_out, property_report_json(sys, prof, mp, pv));
  return 0;
}

int cmd_enumerate(int n, int cap, bool dedup, bool count_only, const std::string& out_path) {
  EnumerateOptions opts;
  opts.cap = cap;
  opts.dedup = dedup;
  if (count_only) {
    std::cout << count_spaces(n, opts) << "\n";
    return 0;
  }
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw error(errc::parse_error, "cannot write " + out_path);
    out = &file;
  }
  std::uint64_t count = 0;
  enumerate_spaces(n, [&](const FiniteSpace& sp) {
    *out << space_to_text(sp) << "\n";
    ++count;
  }, opts);
  std::cerr << count << " spaces\n";
  return 0;
}

int cmd_verify(const std::string& suite, const Resources& res, const std::string& json_out) {
  std::vector<std::string> ids;
  if (suite == "all") {
    for (const TheoremSpec& s : builtin_suite()) ids.push_back(s.id);
  } else {
    std::string tok;
    std::istringstream in(suite);
    while (std::getline(in, tok, ','))
      if (!tok.empty()) ids.push_back(tok);
  }
  for (const std::string& id : ids) find_spec(id);  // validate before running

  std::vector<SpecResult> results = verify_suite(ids, res);
  bool all_pass = true;
  for (const SpecResult& r : results) {
    std::cout << r.id << ": " << (r.pass ? "pass" : "FAIL") << "  checked=" << r.checked
              << " hypothesis_hits=" << r.hypothesis_hits;
    if (r.vacuous_hypotheses) std::cout << "  hypotheses never satisfied: true";
    if (r.violation_count) std::cout << "  violations=" << r.violation_count;
    std::cout << "\n";
    for (const std::string& note : r.notes) std::cout << "    " << note << "\n";
    for (const Violation& v : r.violations) {
      std::cout << "    witness n=" << v.n << " detail: " << v.detail << "\n";
      std::istringstream sys_text(system_to_text(System{v.space, v.map}));
      std::string line;
      while (std::getline(sys_text, line)) std::cout << "      " << line << "\n";
    }
    all_pass = all_pass && r.pass;
  }
  if (!json_out.empty()) write_file(json_out, report_to_json(results, res));
  return all_pass ? 0 : 1;
}

int cmd_search(const std::string& props, int nmax, const std::string& emit) {
  const SearchOutcome out = search_counterexample(parse_literals(props), nmax);
  if (!out.found) {
    std::cout << "none up to n=" << out.n_max << "\n";
    return 1;
  }
  std::cout << "witness at n=" << out.witness.space.n << ":\n"
            << system_to_text(out.witness);
  for (int i = 0; i < 7; ++i)
    std::cout << property_name(i) << "=" << property_flag(out.vector, i)
              << (i < 6 ? " " : "\n");
  if (!emit.empty()) write_file(emit, system_to_text(out.witness));
  return 0;
}

PWLMap builtin_pwl(const std::string& name) {
  if (name == "example31") return pwl_example31();
  if (name == "doubling") return pwl_doubling();
  if (name == "identity") return pwl_identity();
  throw error(errc::parse_error, "unknown builtin map '" + name + "'");
}

int cmd_interval(const PWLMap& f, bool props, int iterates,
                 const std::vector<std::string>& hit, const std::vector<int>& certify) {
  if (props) {
    const PwlQcAnalysis a = qc_points_pwl(f);
    std::cout << "quasi-continuous: " << yn(a.qc_everywhere) << "\n";
    std::cout << "continuous: " << yn(a.discontinuities.empty()) << "\n";
    if (!a.discontinuities.empty()) {
      std::cout << "discontinuities:";
      for (const Rational& c : a.discontinuities) std::cout << ' ' << c.str();
      std::cout << "\n";
    }
    const PwlQcSystemResult qs = is_qc_system_pwl(f, 64);
    if (qs.status == PwlQcSystemResult::Status::yes)
      std::cout << "qc system: yes (f^" << qs.preperiod + qs.period << " = f^"
                << qs.preperiod << ")\n";
    else if (qs.status == PwlQcSystemResult::Status::no)
      std::cout << "qc system: no (iterate " << qs.iterates_checked
                << " fails at x=" << qs.witness->str() << ")\n";
    else
      std::cout << "qc system: unknown at horizon " << qs.iterates_checked << "\n";
  }
  if (iterates > 0) {
    PWLMap g = f;
    for (int k = 1; k <= iterates; ++k) {
      std::cout << "# f^" << k << "\n" << pwl_to_text(g);
      g = compose(g, f);
    }
  }
  if (!hit.empty()) {
    if (hit.size() != 5) throw error(errc::parse_error, "--hit wants a b c d horizon");
    const RatIntervalSet u({open_interval(parse_rational(hit[0]), parse_rational(hit[1]))});
    const RatIntervalSet v({open_interval(parse_rational(hit[2]), parse_rational(hit[3]))});
    const int horizon = std::stoi(hit[4]);
    const HitReport r = hitting_check(f, u, v, horizon);
    std::cout << "n\thit\n";
    for (int n = 0; n <= horizon; ++n) {
      const bool h = std::find(r.hits.begin(), r.hits.end(), n) != r.hits.end();
      std::cout << n << '\t' << (h ? 1 : 0) << "\n";
    }
    std::cout << "# hits: " << r.hits.size()
              << (r.exhaustive ? " (trajectory cycled, list exact for all n)" : "") << "\n";
  }
  if (!certify.empty()) {
    if (certify.size() != 2) throw error(errc::parse_error, "--certify wants mesh horizon");
    const MeshCertificate c = certify_ttplus_on_mesh(f, certify[0], certify[1]);
    std::cout << "# TT+ evidence on the " << c.mesh << "-cell mesh, horizon " << c.horizon
              << " (semi-decision, not the property)\n";
    for (int i = 0; i < c.mesh; ++i) {
      for (int j = 0; j < c.mesh; ++j)
        std::cout << c.witness[static_cast<std::size_t>(i) * c.mesh + j]
                  << (j + 1 < c.mesh ? '\t' : '\n');
    }
    int done = 0;
    for (int w : c.witness) done += (w >= 0);
    std::cout << "# certificate " << done << "/" << c.mesh * c.mesh
              << (c.complete ? " complete" : " UNKNOWN") << "\n";
    if (!c.complete)
      std::cout << "# first failing pair: (" << c.failing_pair.first << ","
                << c.failing_pair.second << ")\n";
    return c.complete ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-topology and interval-map transitivity toolkit"};
  app.require_subcommand(1);

  // props
  auto* props = app.add_subcommand("props", "classify one system file");
  std::string props_input, props_json;
  props->add_option("--input,-i", props_input, "system file (text or JSON)")->required();
  props->add_option("--json", props_json, "also write a JSON report");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "stream all topologies of a size");
  int enum_n = 3, enum_cap = 6;
  bool enum_dedup = false, enum_count = false;
  std::string enum_out;
  enumerate->add_option("--n,-n", enum_n, "ground-set size")->required();
  enumerate->add_option("--cap", enum_cap, "enumeration size cap");
  enumerate->add_flag("--dedup", enum_dedup, "canonical representatives only");
  enumerate->add_flag("--count-only", enum_count, "print the count");
  enumerate->add_option("--output,-o", enum_out, "write to file instead of stdout");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the theorem suite");
  std::string suite = "all", verify_json;
  Resources res;
  verify_cmd->add_option("--suite", suite, "all or comma-separated ids");
  verify_cmd->add_option("--nmax", res.nmax, "exhaustive sweep size bound");
  verify_cmd->add_option("--discrete-nmax", res.discrete_nmax, "discrete sweep size bound");
  verify_cmd->add_option("--sample-count", res.sample_count, "random sample size");
  verify_cmd->add_option("--seed", res.seed, "sample seed");
  verify_cmd->add_option("--threads", res.threads, "worker threads (0 = auto)");
  verify_cmd->add_option("--json", verify_json, "write the JSON report here");

  // search
  auto* search = app.add_subcommand("search", "first system satisfying property literals");
  std::string search_props, search_emit;
  int search_nmax = 4;
  search->add_option("--props", search_props, "e.g. \"TT & !TT+\"")->required();
  search->add_option("--nmax", search_nmax, "size bound");
  search->add_option("--emit", search_emit, "write the witness system here");

  // interval
  auto* interval = app.add_subcommand("interval", "piecewise-affine interval dynamics");
  std::string int_builtin, int_file;
  bool int_props = false;
  int int_iterates = 0;
  std::vector<std::string> int_hit;
  std::vector<int> int_certify;
  interval->add_option("--builtin", int_builtin, "example31 | doubling | identity");
  interval->add_option("--file", int_file, "piecewise map file");
  interval->add_flag("--props", int_props, "continuity / quasi-continuity analysis");
  interval->add_option("--iterates", int_iterates, "print the first k iterates");
  interval->add_option("--hit", int_hit, "a b c d horizon: hitting table for U=(a,b), V=(c,d)")
      ->expected(5);
  interval->add_option("--certify", int_certify, "mesh horizon: TT+ mesh evidence")->expected(2);

  try {
    app.parse(argc, argv);
    if (*props) return cmd_props(props_input, props_json);
    if (*enumerate) return cmd_enumerate(enum_n, enum_cap, enum_dedup, enum_count, enum_out);
    if (*verify_cmd) return cmd_verify(suite, res, verify_json);
    if (*search) return cmd_search(search_props, search_nmax, search_emit);
    if (*interval) {
      if (int_builtin.empty() == int_file.empty())
        throw error(errc::parse_error, "give exactly one of --builtin / --file");
      const PWLMap f = int_builtin.empty() ? pwl_from_text(read_file(int_file))
                                           : builtin_pwl(int_builtin);
      return cmd_interval(f, int_props, int_iterates, int_hit, int_certify);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
