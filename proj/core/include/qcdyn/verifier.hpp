#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcdyn/dynamics.hpp"

namespace qcdyn {

/// Where a theorem gets checked.  Zero disables a scope; sizes count points.
struct ScopePlan {
  int exhaustive_n = 0;  // every topology of each size 2..exhaustive_n, every map
  int discrete_n = 0;    // discrete spaces only, sizes 2..discrete_n
  int vacuity_n = 0;     // hypothesis satisfiability sweep, sizes 2..vacuity_n
  bool sample5 = false;  // random systems at five points
  bool interval_evidence = false;  // doubling-map mesh certificate
  bool fixture = false;            // cycle-with-tail systems
};

/// One verifiable statement: named hypothesis predicates, one conclusion
/// predicate, and the scopes it runs under.  The hypothesis/conclusion split
/// mirrors the source statements; nothing is folded into the conclusion.
struct TheoremSpec {
  std::string id;
  std::string statement;
  std::vector<std::string> hypotheses;
  std::string conclusion;
  ScopePlan scope;
  std::string note;
};

/// The complete builtin list; every verified result appears exactly once.
const std::vector<TheoremSpec>& builtin_suite();
const TheoremSpec& find_spec(const std::string& id);  // throws UNKNOWN_SUITE

struct Resources {
  int nmax = 0;          // overrides exhaustive_n when > 0
  int discrete_nmax = 0; // overrides discrete_n when > 0
  int vacuity_nmax = 0;
  int sample_n = 5;
  long long sample_count = 100000;
  std::uint64_t seed = 20260808;
  int window = 50;
  int mesh = 16;
  int horizon = 32;
  int threads = 0;  // 0 = QCDYN_THREADS env or hardware concurrency
  int space_cap = 6;

  // Unit-test hooks: explicit size lists (empty vector skips the scope).
  std::optional<std::vector<int>> exhaustive_sizes;
  std::optional<std::vector<int>> discrete_sizes;
  bool run_sample = true;
  bool run_vacuity = true;
  bool run_interval = true;
  bool run_fixture = true;
};

struct Violation {
  int n = 0;
  std::uint64_t space_index = 0;
  std::uint64_t map_index = 0;
  FiniteSpace space;
  SelfMap map;
  std::string detail;
};

struct SpecResult {
  std::string id;
  long long checked = 0;          // systems examined
  long long hypothesis_hits = 0;  // systems satisfying every hypothesis
  bool vacuous_hypotheses = false;
  long long violation_count = 0;
  std::vector<Violation> violations;  // first few, enumeration order
  std::vector<std::string> notes;
  bool pass = false;
};

/// Deterministic for fixed resources; pass means zero violations.  Specs
/// whose hypotheses were never satisfied in scope say so via
/// vacuous_hypotheses instead of passing silently.
SpecResult verify(const TheoremSpec& spec, const Resources& res = {});

std::vector<SpecResult> verify_suite(const std::vector<std::string>& ids,
                                     const Resources& res = {});

std::string report_to_json(const std::vector<SpecResult>& results, const Resources& res);
std::string violation_to_json(const Violation& v);

// ---- counterexample search ----

struct Literal {
  std::string name;  // IN TT TT+ TT++ DO DO+ DO++ T0 T1 T2 perfect fragmentable
                     // continuous quasicontinuous feebly_open delta_open
                     // qc_system has_isolated
  bool positive = true;
};

/// Accepts "TT & !TT+" or "TT,!TT+".
std::vector<Literal> parse_literals(const std::string& text);

struct SearchOutcome {
  bool found = false;
  int n_max = 0;
  System witness;
  SpaceProfile profile;
  MapProfile map_profile;
  PropertyVector vector;
};

/// First witness in enumeration order (spaces lexicographic, maps
/// lexicographic), or a certified none up to n_max.
SearchOutcome search_counterexample(const std::vector<Literal>& literals, int n_max,
                                    int space_cap = 6);

// ---- countable cycle-with-tail fixture ----

/// Discrete countable system: a k-cycle x_0..x_{k-1} fed by an infinite
/// backward tail y_0, y_1, ... with f(y_0) = x_0 and f(y_{j+1}) = y_j.
/// Every point is isolated; x_0 has exactly two preimages.
struct CycleTailSystem {
  int k = 1;

  // Points are (on_cycle, index); tail index j means y_j.
  // Closed-form N+ membership between singletons.
  bool hits_at(bool a_cycle, long long a, bool b_cycle, long long b, long long step) const;
  bool hitting_nonempty(bool a_cycle, long long a, bool b_cycle, long long b) const;
  bool hitting_infinite(bool a_cycle, long long a, bool b_cycle, long long b) const;
};

struct CycleTailReport {
  int k = 1;
  bool tt = false;
  bool tt_plus = true;
  bool dense_orbit_seq = false;       // DO
  bool dense_forward_orbit = true;    // DO+
  bool omega_full = true;             // DO++
  bool tt_plus_plus = true;           // TT++
  int preimage_count_x0 = 0;
  bool x0_periodic = false;
  int x0_period = 0;
  bool unique_double_preimage = false;
  bool iso_decomposition = false;  // Iso = Orb(x0) ∪ {preimages of y0}
  std::string tt_plus_witness;
  bool window_agrees = false;
  int window = 0;
  std::vector<std::string> notes;
};

/// Closed-form verdicts cross-checked against a truncated-window simulation.
CycleTailReport cycle_tail_checks(int k, int window = 50);

int default_thread_count();

}  // namespace qcdyn
