#include "qcdyn/verifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qcdyn/interval.hpp"
#include "qcdyn/io.hpp"

namespace qcdyn {

int default_thread_count() {
  if (const char* env = std::getenv("QCDYN_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

namespace {

constexpr int kMaxStoredViolations = 8;

// Lazily evaluated facts about one system.  Hypothesis predicates touch the
// cheap members first so large sweeps skip the full profiles.
class Ctx {
 public:
  Ctx(const System& sys, const SpaceProfile& prof) : sys_(sys), prof_(prof) {}

  const System& sys() const { return sys_; }
  const FiniteSpace& space() const { return sys_.space; }
  const SelfMap& map() const { return sys_.map; }
  const SpaceProfile& prof() const { return prof_; }

  bool tt() {
    if (pv_) return pv_->tt;
    if (!tt_) tt_ = decide_tt(sys_);
    return *tt_;
  }

  bool qc_system() {
    if (mp_) return mp_->qc_system;
    if (!qc_system_) qc_system_ = is_qc_system(sys_.space, sys_.map).qc_system;
    return *qc_system_;
  }

  const MapProfile& mp() {
    if (!mp_) mp_ = map_profile(sys_.space, sys_.map);
    return *mp_;
  }

  const PropertyVector& pv() {
    if (!pv_) {
      PropertyOptions o;
      o.record_witnesses = false;
      pv_ = property_vector(sys_, o);
    }
    return *pv_;
  }

  mask_t sourceless() {
    if (!sourceless_) sourceless_ = sourceless_points(sys_);
    return *sourceless_;
  }

  int indeg(int x) const { return popcount(preimage_of(sys_.map, point_bit(x))); }

  std::string detail;  // conclusion impls may leave a failure note here

 private:
  const System& sys_;
  const SpaceProfile& prof_;
  std::optional<bool> tt_;
  std::optional<bool> qc_system_;
  std::optional<MapProfile> mp_;
  std::optional<PropertyVector> pv_;
  std::optional<mask_t> sourceless_;
};

struct EvalFns {
  // Space-level prefilter; maps of rejected spaces count as checked with the
  // hypothesis unsatisfied.
  bool (*space_filter)(const FiniteSpace&, const SpaceProfile&) = nullptr;
  bool (*hypothesis)(Ctx&) = nullptr;
  bool (*conclusion)(Ctx&) = nullptr;
};

bool space_true(const FiniteSpace&, const SpaceProfile&) { return true; }
bool space_t2(const FiniteSpace&, const SpaceProfile& p) { return p.t2; }
bool space_t2_iso(const FiniteSpace&, const SpaceProfile& p) {
  return p.t2 && p.isolated != 0;
}
bool space_fragmentable(const FiniteSpace&, const SpaceProfile& p) {
  return p.fragmentable;
}
bool space_perfect_t2(const FiniteSpace&, const SpaceProfile& p) {
  return p.perfect && p.t2;
}
bool space_perfect_t1(const FiniteSpace&, const SpaceProfile& p) {
  return p.perfect && p.t1;
}

bool hyp_true(Ctx&) { return true; }
bool hyp_tt(Ctx& c) { return c.tt(); }
bool hyp_qc_system(Ctx& c) { return c.qc_system(); }
bool hyp_qc_system_tt(Ctx& c) { return c.qc_system() && c.tt(); }
bool hyp_qc_feebly(Ctx& c) { return c.mp().quasicontinuous && c.mp().feebly_open; }

bool hyp_iso_preimages_nonempty(Ctx& c) {
  if (!c.qc_system()) return false;
  return (c.prof().isolated & c.sourceless()) == 0;
}

// Diagram edges that hold for every system.
bool concl_diagram1(Ctx& c) {
  const PropertyVector& pv = c.pv();
  struct Edge {
    bool from, to;
    const char* name;
  } edges[] = {
      {pv.omega_full, pv.dense_forward_orbit, "DO++ => DO+"},
      {pv.dense_forward_orbit, pv.dense_orbit_seq, "DO+ => DO"},
      {pv.tt_plus_plus, pv.tt_plus, "TT++ => TT+"},
      {pv.tt_plus, pv.tt, "TT+ => TT"},
      {pv.omega_full, pv.tt_plus_plus, "DO++ => TT++"},
      {pv.dense_orbit_seq, pv.tt, "DO => TT"},
  };
  for (const Edge& e : edges)
    if (e.from && !e.to) {
      c.detail = e.name;
      return false;
    }
  return true;
}

bool concl_tt_iff_in(Ctx& c) {
  const PropertyVector& pv = c.pv();
  if (pv.tt == pv.indecomposable) return true;
  c.detail = std::string("TT=") + (pv.tt ? "1" : "0") +
             " IN=" + (pv.indecomposable ? "1" : "0");
  return false;
}

bool concl_delta_open(Ctx& c) { return c.mp().delta_open; }

bool concl_residual_sets(Ctx& c) {
  const CategoryFlags ci = category_predicates(c.space(), c.mp().c_inf);
  if (!ci.residual || !ci.contains_dense_open) {
    c.detail = "C_inf not residual";
    return false;
  }
  if (c.mp().delta_open) {
    const CategoryFlags co = category_predicates(c.space(), c.mp().c_inf_orbit);
    if (!co.residual || !co.contains_dense_open) {
      c.detail = "C_inf_orbit not residual under delta-openness";
      return false;
    }
  }
  return true;
}

bool concl_tt_chain(Ctx& c) {
  const PropertyVector& pv = c.pv();
  return (!pv.tt || pv.tt_plus) && (!pv.tt_plus || pv.tt_plus_plus);
}

bool concl_np_self_infinite(Ctx& c) {
  const System& sys = c.sys();
  for (mask_t p : sys.space.pi_base())
    if (!hitting_set(sys, p, p).infinite()) return false;
  return true;
}

// The three equivalent readings of "some omega limit is everything".
bool t42_interior_preimage_unions_dense(const System& sys) {
  const FiniteSpace& sp = sys.space;
  const std::size_t states_cap = std::size_t{1} << sp.n;
  for (mask_t p : sp.pi_base()) {
    std::vector<int> seen(states_cap, -1);
    std::vector<mask_t> states;
    mask_t a = p;
    while (seen[a] < 0) {
      seen[a] = static_cast<int>(states.size());
      states.push_back(a);
      a = preimage_of(sys.map, a);
    }
    // The tail unions shrink and stabilize once the preimage trajectory
    // cycles, so density of the stable union decides every k.
    mask_t d = 0;
    for (int r = seen[a]; r < static_cast<int>(states.size()); ++r)
      d |= sp.interior(states[r]);
    if (!sp.is_dense(d)) return false;
  }
  return true;
}

mask_t omega_full_points(const System& sys) {
  mask_t out = 0;
  for (int x = 0; x < sys.space.n; ++x)
    if (omega_limit(sys, x) == sys.space.full()) out |= point_bit(x);
  return out;
}

bool concl_t42(Ctx& c) {
  const bool c1 = c.pv().omega_full;
  const bool c2 = t42_interior_preimage_unions_dense(c.sys());
  const bool c3 = c.space().is_dense(c.space().interior(omega_full_points(c.sys())));
  if (c1 == c2 && c2 == c3) return true;
  c.detail = "DO++=" + std::to_string(c1) + " unions-dense=" + std::to_string(c2) +
             " omega-set-residual=" + std::to_string(c3);
  return false;
}

bool concl_t43(Ctx& c) {
  const PropertyVector& pv = c.pv();
  if (!pv.tt_plus) return true;
  return pv.dense_forward_orbit &&
         c.space().is_dense(c.space().interior(pv.trans_points));
}

bool concl_dop_iff_dopp(Ctx& c) {
  return c.pv().dense_forward_orbit == c.pv().omega_full;
}

bool concl_all_six_equivalent(Ctx& c) {
  const PropertyVector& pv = c.pv();
  const bool v = pv.tt;
  if (pv.tt_plus != v || pv.tt_plus_plus != v || pv.dense_orbit_seq != v ||
      pv.dense_forward_orbit != v || pv.omega_full != v)
    return false;
  const bool trans_g = c.space().is_dense(c.space().interior(pv.trans_points));
  const bool omega_g = c.space().is_dense(c.space().interior(omega_full_points(c.sys())));
  return trans_g == v && omega_g == v;
}

bool concl_at_most_one_sourceless_iso(Ctx& c) {
  return popcount(c.prof().isolated & c.sourceless()) <= 1;
}

bool concl_periodic_double_preimage(Ctx& c) {
  mask_t iso = c.prof().isolated;
  while (iso) {
    const int x = __builtin_ctz(iso);
    iso &= iso - 1;
    const mask_t pre = preimage_of(c.map(), point_bit(x));
    if (popcount(pre) < 2) continue;
    const OrbitSummary o = forward_orbit(c.sys(), x);
    if (o.preperiod != 0 || popcount(pre) != 2 || !c.space().is_open(pre) ||
        !subset_of(pre, c.prof().isolated)) {
      c.detail = "isolated point " + std::to_string(x);
      return false;
    }
  }
  return true;
}

bool concl_at_most_one_double_preimage_iso(Ctx& c) {
  int count = 0;
  mask_t iso = c.prof().isolated;
  while (iso) {
    const int x = __builtin_ctz(iso);
    iso &= iso - 1;
    if (popcount(preimage_of(c.map(), point_bit(x))) == 2) ++count;
  }
  return count <= 1;
}

bool concl_trans_in_iso(Ctx& c) {
  return subset_of(c.pv().trans_points, c.prof().isolated);
}

bool concl_imperfect_trichotomy(Ctx& c) {
  const PropertyVector& pv = c.pv();
  const mask_t iso = c.prof().isolated;
  const mask_t iso_sourceless = iso & c.sourceless();
  if (iso_sourceless) {
    // Case 1: DO+ with that point as the unique transitive point, and
    // nothing stronger than TT.
    const int x = __builtin_ctz(iso_sourceless);
    if (!(pv.dense_forward_orbit && pv.trans_points == point_bit(x) &&
          !pv.tt_plus && !pv.tt_plus_plus && !pv.omega_full)) {
      c.detail = "case 1 at isolated point " + std::to_string(x);
      return false;
    }
  }
  bool all_single = true;
  mask_t rest = iso;
  while (rest) {
    const int x = __builtin_ctz(rest);
    rest &= rest - 1;
    if (c.indeg(x) != 1) all_single = false;
  }
  if (all_single) {
    // Case 2: the four strong properties hold or fail together.
    const int cnt = int(pv.dense_forward_orbit) + int(pv.tt_plus) +
                    int(pv.tt_plus_plus) + int(pv.omega_full);
    if (cnt != 0 && cnt != 4) {
      c.detail = "case 2 split: DO+=" + std::to_string(pv.dense_forward_orbit) +
                 " TT+=" + std::to_string(pv.tt_plus) +
                 " TT++=" + std::to_string(pv.tt_plus_plus) +
                 " DO++=" + std::to_string(pv.omega_full);
      return false;
    }
  }
  return true;
}

bool concl_four_equivalent(Ctx& c) {
  const PropertyVector& pv = c.pv();
  const bool v = pv.dense_forward_orbit;
  if (pv.tt_plus == v && pv.omega_full == v && pv.tt_plus_plus == v) return true;
  c.detail = "DO+=" + std::to_string(pv.dense_forward_orbit) +
             " TT+=" + std::to_string(pv.tt_plus) +
             " DO++=" + std::to_string(pv.omega_full) +
             " TT++=" + std::to_string(pv.tt_plus_plus);
  return false;
}

bool concl_tt_iff_do(Ctx& c) {
  const PropertyVector& pv = c.pv();
  return pv.tt == pv.dense_orbit_seq;
}

const std::map<std::string, EvalFns>& eval_registry() {
  static const std::map<std::string, EvalFns> reg = {
      {"D1", {space_true, hyp_true, concl_diagram1}},
      {"T-IN", {space_true, hyp_true, concl_tt_iff_in}},
      {"P35", {space_perfect_t2, hyp_qc_system_tt, concl_np_self_infinite}},
      {"P39", {space_true, hyp_qc_feebly, concl_delta_open}},
      {"P37/P310", {space_fragmentable, hyp_qc_system, concl_residual_sets}},
      {"T41", {space_perfect_t2, hyp_qc_system, concl_tt_chain}},
      {"T42", {space_true, hyp_qc_system, concl_t42}},
      {"T43", {space_true, hyp_qc_system, concl_t43}},
      {"P44", {space_perfect_t1, hyp_qc_system, concl_dop_iff_dopp}},
      {"C45", {space_perfect_t2, hyp_qc_system, concl_all_six_equivalent}},
      {"L51", {space_true, hyp_tt, concl_at_most_one_sourceless_iso}},
      {"L53", {space_t2, hyp_qc_system_tt, concl_periodic_double_preimage}},
      {"L54", {space_t2, hyp_qc_system_tt, concl_at_most_one_double_preimage_iso}},
      {"P55", {space_t2_iso, hyp_qc_system_tt, concl_trans_in_iso}},
      {"T56", {space_t2_iso, hyp_qc_system_tt, concl_imperfect_trichotomy}},
      {"C57", {space_t2_iso, hyp_iso_preimages_nonempty, concl_four_equivalent}},
      {"C58", {space_t2_iso, hyp_qc_system, concl_tt_iff_do}},
  };
  return reg;
}

}  // namespace

const std::vector<TheoremSpec>& builtin_suite() {
  static const std::vector<TheoremSpec> suite = {
      {"D1",
       "one-way transitivity diagram: DO++ => DO+ => DO, TT++ => TT+ => TT, "
       "DO++ => TT++, DO => TT",
       {},
       "all six one-way edges",
       {4, 0, 0, true, false, false},
       ""},
      {"T-IN",
       "TT and indecomposability are equivalent",
       {},
       "TT <=> IN",
       {4, 0, 0, false, false, false},
       "stated without hypotheses; the IN => TT direction needs continuity "
       "and fails for some discontinuous maps (first witnesses at three points)"},
      {"P35",
       "self-hitting sets are infinite in transitive quasi-continuous systems "
       "on perfect Hausdorff spaces",
       {"qc_system", "perfect", "T2", "TT"},
       "N+(U,U) infinite for every nonempty open U",
       {0, 0, 5, false, true, false},
       "no finite space is perfect and Hausdorff; finite scope is a vacuity check"},
      {"P39",
       "quasi-continuous feebly open maps are delta-open",
       {"quasicontinuous", "feebly_open"},
       "delta_open",
       {4, 0, 0, false, false, false},
       ""},
      {"P37/P310",
       "both continuity-point intersections of a quasi-continuous system on a "
       "fragmentable space are residual",
       {"qc_system", "fragmentable"},
       "C_inf residual; with delta-openness C_inf_orbit residual; both contain "
       "dense open sets",
       {4, 0, 0, false, false, false},
       "the delta-open clause only applies to delta-open maps"},
      {"T41",
       "TT, TT+ and TT++ coincide for quasi-continuous systems on perfect "
       "Hausdorff spaces",
       {"qc_system", "perfect", "T2"},
       "TT => TT+ => TT++",
       {0, 0, 5, false, true, false},
       "finite scope is a vacuity check"},
      {"T42",
       "three readings of a full omega limit agree in quasi-continuous systems",
       {"qc_system"},
       "DO++ <=> dense interior-preimage unions <=> omega-full set contains a "
       "dense open set",
       {4, 0, 0, false, false, false},
       ""},
      {"T43",
       "TT+ forces a dense forward orbit in quasi-continuous systems",
       {"qc_system"},
       "TT+ => DO+, with Trans_f containing a dense open set",
       {4, 0, 0, false, false, false},
       ""},
      {"P44",
       "DO+ and DO++ agree on perfect T1 spaces",
       {"qc_system", "perfect", "T1"},
       "DO+ <=> DO++",
       {0, 0, 5, false, false, false},
       "no finite space is perfect and T1; finite scope is a vacuity check"},
      {"C45",
       "all six transitivity properties coincide on perfect Hausdorff Baire "
       "spaces with a countable pi-base",
       {"qc_system", "perfect", "T2"},
       "TT, TT+, TT++, DO, DO+, DO++ equivalent, each matching the dense-open "
       "witnesses",
       {0, 0, 5, false, true, false},
       "finite scope is a vacuity check"},
      {"L51",
       "a transitive system has at most one isolated point with empty preimage",
       {"TT"},
       "at most one sourceless isolated point",
       {5, 7, 0, false, false, false},
       ""},
      {"L53",
       "an isolated point with several preimages in a transitive "
       "quasi-continuous Hausdorff system is periodic with exactly two, and "
       "its preimage is open and isolated",
       {"qc_system", "T2", "TT"},
       "per isolated point: indegree >= 2 implies periodic with indegree 2",
       {0, 7, 0, false, false, false},
       ""},
      {"L54",
       "at most one isolated point has a two-point preimage",
       {"qc_system", "T2", "TT"},
       "at most one isolated point with indegree 2",
       {0, 7, 0, false, false, false},
       ""},
      {"P55",
       "transitive points are isolated when isolated points exist",
       {"qc_system", "T2", "has_isolated", "TT"},
       "Trans_f subset of Iso_X",
       {4, 7, 0, false, false, false},
       "carries the standing Hausdorff assumption of the isolated-point "
       "results; without it three-point counterexamples exist"},
      {"T56",
       "isolated-point trichotomy for transitive quasi-continuous systems",
       {"qc_system", "T2", "has_isolated", "TT"},
       "case 1: unique transitive point, nothing above TT; case 2: the four "
       "strong properties hold or fail together",
       {0, 7, 0, false, false, true},
       "case 3 has no finite model (indegree counting) and is exercised on "
       "the cycle-with-tail fixture; case 2 with no periodic isolated point "
       "also has no finite model and is reported as not exercised"},
      {"C57",
       "DO+, TT+, DO++ and TT++ are equivalent when isolated points exist and "
       "every isolated point has a preimage",
       {"qc_system", "T2", "has_isolated", "iso_preimages_nonempty"},
       "DO+ <=> TT+ <=> DO++ <=> TT++",
       {4, 7, 0, false, false, false},
       "the no-empty-preimage condition is required: with it dropped, the "
       "two-point system 0->1->1 has DO+ without TT+ (trichotomy case 1)"},
      {"C58",
       "TT and DO are equivalent when isolated points exist",
       {"qc_system", "T2", "has_isolated"},
       "TT <=> DO",
       {4, 7, 0, false, false, false},
       ""},
  };
  return suite;
}

const TheoremSpec& find_spec(const std::string& id) {
  for (const TheoremSpec& s : builtin_suite())
    if (s.id == id) return s;
  throw error(errc::unknown_suite, id);
}

namespace {

const std::vector<FiniteSpace>& spaces_of_size(int n, int cap) {
  static std::mutex mu;
  static std::map<int, std::vector<FiniteSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    EnumerateOptions opts;
    opts.cap = cap;
    it = cache.emplace(n, all_spaces(n, opts)).first;
  }
  return it->second;
}

struct SweepStats {
  long long checked = 0;
  long long hits = 0;
  long long violation_count = 0;
  std::vector<Violation> violations;

  void add_violation(int n, std::uint64_t si, std::uint64_t mi, const FiniteSpace& sp,
                     const SelfMap& f, std::string detail) {
    ++violation_count;
    if (violations.size() < kMaxStoredViolations)
      violations.push_back({n, si, mi, sp, f, std::move(detail)});
  }

  void merge(SweepStats&& o) {
    checked += o.checked;
    hits += o.hits;
    violation_count += o.violation_count;
    for (auto& v : o.violations)
      if (violations.size() < kMaxStoredViolations) violations.push_back(std::move(v));
  }
};

template <class Fn>
void run_sharded(std::uint64_t count, int threads, std::vector<SweepStats>& stats, Fn fn) {
  if (threads < 1) threads = 1;
  if (count < 64) threads = 1;
  const int shards = std::min<std::uint64_t>(threads, count ? count : 1);
  stats.assign(shards, SweepStats{});
  if (shards == 1) {
    fn(0, 0, count, stats[0]);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (count + shards - 1) / shards;
  for (int s = 0; s < shards; ++s) {
    const std::uint64_t b = chunk * s, e = std::min<std::uint64_t>(count, chunk * (s + 1));
    pool.emplace_back([&, s, b, e] { fn(s, b, e, stats[s]); });
  }
  for (auto& t : pool) t.join();
}

void sweep_systems_of_size(const EvalFns& fns, int n, int cap, int threads,
                           const char* tag, SweepStats& out) {
  const std::vector<FiniteSpace>& spaces = spaces_of_size(n, cap);
  const std::uint64_t maps = map_space_size(n);
  std::vector<SweepStats> stats;
  run_sharded(spaces.size(), threads, stats,
              [&](int, std::uint64_t b, std::uint64_t e, SweepStats& st) {
                for (std::uint64_t si = b; si < e; ++si) {
                  const FiniteSpace& sp = spaces[si];
                  const SpaceProfile prof = space_profile(sp);
                  if (fns.space_filter && !fns.space_filter(sp, prof)) {
                    st.checked += maps;
                    continue;
                  }
                  std::uint64_t mi = 0;
                  for_each_map(n, [&](const SelfMap& f) {
                    ++st.checked;
                    System sys{sp, f};
                    Ctx ctx(sys, prof);
                    if (fns.hypothesis(ctx)) {
                      ++st.hits;
                      if (!fns.conclusion(ctx))
                        st.add_violation(n, si, mi, sp, f,
                                         std::string(tag) +
                                             (ctx.detail.empty() ? "" : ": " + ctx.detail));
                    }
                    ++mi;
                  });
                }
              });
  for (auto& st : stats) out.merge(std::move(st));
}

void sweep_discrete_of_size(const EvalFns& fns, int n, int threads, const char* tag,
                            SweepStats& out) {
  const FiniteSpace sp = discrete_space(n);
  const SpaceProfile prof = space_profile(sp);
  const std::uint64_t maps = map_space_size(n);
  if (fns.space_filter && !fns.space_filter(sp, prof)) {
    out.checked += maps;
    return;
  }
  std::vector<SweepStats> stats;
  run_sharded(maps, threads, stats,
              [&](int, std::uint64_t b, std::uint64_t e, SweepStats& st) {
                SelfMap f = map_from_index(n, b);
                for (std::uint64_t mi = b; mi < e; ++mi) {
                  ++st.checked;
                  System sys{sp, f};
                  Ctx ctx(sys, prof);
                  if (fns.hypothesis(ctx)) {
                    ++st.hits;
                    if (!fns.conclusion(ctx))
                      st.add_violation(n, 0, mi, sp, f,
                                       std::string(tag) +
                                           (ctx.detail.empty() ? "" : ": " + ctx.detail));
                  }
                  // Odometer step.
                  for (int i = n - 1; i >= 0; --i) {
                    if (f.image[i] != n - 1) {
                      ++f.image[i];
                      break;
                    }
                    f.image[i] = 0;
                  }
                }
              });
  for (auto& st : stats) out.merge(std::move(st));
}

void run_fixture_checks(const Resources& res, SpecResult& r) {
  for (int k = 1; k <= 3; ++k) {
    const CycleTailReport rep = cycle_tail_checks(k, res.window);
    const bool ok = rep.tt && !rep.tt_plus && rep.dense_orbit_seq &&
                    !rep.dense_forward_orbit && !rep.omega_full && !rep.tt_plus_plus &&
                    rep.preimage_count_x0 == 2 && rep.x0_periodic && rep.x0_period == k &&
                    rep.unique_double_preimage && rep.iso_decomposition && rep.window_agrees;
    if (!ok) {
      ++r.violation_count;
      r.notes.push_back("cycle-with-tail fixture k=" + std::to_string(k) + " failed");
    } else {
      r.notes.push_back("fixture k=" + std::to_string(k) +
                        ": TT, DO hold; TT+, TT++, DO+, DO++ fail; |f^-1(x0)|=2; "
                        "window " + std::to_string(rep.window) + " agrees");
    }
  }
}

}  // namespace

SpecResult verify(const TheoremSpec& spec, const Resources& res) {
  const EvalFns& fns = eval_registry().at(spec.id);
  const int threads = res.threads > 0 ? res.threads : default_thread_count();
  SpecResult r;
  r.id = spec.id;

  SweepStats stats;

  // Exhaustive scope over every topology.
  std::vector<int> sizes;
  if (res.exhaustive_sizes) {
    sizes = *res.exhaustive_sizes;
  } else if (spec.scope.exhaustive_n > 0) {
    const int top = res.nmax > 0 ? res.nmax : spec.scope.exhaustive_n;
    for (int n = 2; n <= top; ++n) sizes.push_back(n);
  }
  for (int n : sizes) {
    if (n > res.space_cap)
      throw error(errc::resource_exceeded, "exhaustive sweep at n=" + std::to_string(n));
    sweep_systems_of_size(fns, n, res.space_cap, threads, spec.id.c_str(), stats);
  }

  // Vacuity scope: same sweep, expected zero hypothesis hits.
  if (spec.scope.vacuity_n > 0 && res.run_vacuity) {
    const int top = res.vacuity_nmax > 0 ? res.vacuity_nmax : spec.scope.vacuity_n;
    for (int n = 2; n <= top; ++n) {
      if (n > res.space_cap)
        throw error(errc::resource_exceeded, "vacuity sweep at n=" + std::to_string(n));
      sweep_systems_of_size(fns, n, res.space_cap, threads, spec.id.c_str(), stats);
    }
    r.vacuous_hypotheses = (stats.hits == 0);
    if (r.vacuous_hypotheses)
      r.notes.push_back("hypotheses never satisfied on finite spaces up to n=" +
                        std::to_string(top));
  }

  // Discrete scope.
  std::vector<int> dsizes;
  if (res.discrete_sizes) {
    dsizes = *res.discrete_sizes;
  } else if (spec.scope.discrete_n > 0) {
    const int top = res.discrete_nmax > 0 ? res.discrete_nmax : spec.scope.discrete_n;
    for (int n = 2; n <= top; ++n) dsizes.push_back(n);
  }
  for (int n : dsizes) sweep_discrete_of_size(fns, n, threads, spec.id.c_str(), stats);

  // Random sample at five points.
  if (spec.scope.sample5 && res.run_sample && res.sample_count > 0) {
    const int n = res.sample_n;
    if (n > res.space_cap)
      throw error(errc::resource_exceeded, "sample at n=" + std::to_string(n));
    const std::vector<FiniteSpace>& spaces = spaces_of_size(n, res.space_cap);
    std::mt19937_64 rng(res.seed);
    std::uniform_int_distribution<std::uint64_t> space_d(0, spaces.size() - 1);
    std::uniform_int_distribution<std::uint64_t> map_d(0, map_space_size(n) - 1);
    for (long long i = 0; i < res.sample_count; ++i) {
      const std::uint64_t si = space_d(rng), mi = map_d(rng);
      const FiniteSpace& sp = spaces[si];
      const SpaceProfile prof = space_profile(sp);
      ++stats.checked;
      if (fns.space_filter && !fns.space_filter(sp, prof)) continue;
      const SelfMap f = map_from_index(n, mi);
      System sys{sp, f};
      Ctx ctx(sys, prof);
      if (fns.hypothesis(ctx)) {
        ++stats.hits;
        if (!fns.conclusion(ctx))
          stats.add_violation(n, si, mi, sp, f,
                              spec.id + (ctx.detail.empty() ? "" : ": " + ctx.detail));
      }
    }
    r.notes.push_back("sampled " + std::to_string(res.sample_count) + " systems at n=" +
                      std::to_string(n) + ", seed " + std::to_string(res.seed));
  }

  // Interval-map evidence: the doubling map certifies pi-base hitting at a
  // finite mesh and horizon.  Labelled evidence, not the property itself.
  if (spec.scope.interval_evidence && res.run_interval) {
    const MeshCertificate cert = certify_ttplus_on_mesh(pwl_doubling(), res.mesh, res.horizon);
    if (cert.complete) {
      r.notes.push_back("interval evidence: doubling map mesh " + std::to_string(res.mesh) +
                        " horizon " + std::to_string(res.horizon) + " certificate " +
                        std::to_string(res.mesh * res.mesh) + "/" +
                        std::to_string(res.mesh * res.mesh) + " pairs");
    } else {
      ++stats.violation_count;
      r.notes.push_back("interval evidence incomplete at pair (" +
                        std::to_string(cert.failing_pair.first) + "," +
                        std::to_string(cert.failing_pair.second) + ")");
    }
  }

  if (spec.scope.fixture && res.run_fixture) run_fixture_checks(res, r);
  if (spec.id == "T56")
    r.notes.push_back("case 2 with no periodic isolated point has no finite model; "
                      "not exercised");

  r.checked = stats.checked;
  r.hypothesis_hits = stats.hits;
  r.violation_count += stats.violation_count;
  r.violations = std::move(stats.violations);
  r.pass = (r.violation_count == 0);
  return r;
}

std::vector<SpecResult> verify_suite(const std::vector<std::string>& ids,
                                     const Resources& res) {
  std::vector<SpecResult> out;
  for (const std::string& id : ids) out.push_back(verify(find_spec(id), res));
  return out;
}

namespace {

nlohmann::json violation_json(const Violation& v) {
  // Violations are recorded exactly when the hypotheses held and the
  // conclusion failed; the values are part of the record.
  return {{"n", v.n},
          {"space_index", v.space_index},
          {"map_index", v.map_index},
          {"system", nlohmann::json::parse(system_to_json(System{v.space, v.map}))},
          {"hypotheses_satisfied", true},
          {"conclusion", false},
          {"detail", v.detail}};
}

}  // namespace

std::string violation_to_json(const Violation& v) { return violation_json(v).dump(2); }

std::string report_to_json(const std::vector<SpecResult>& results, const Resources& res) {
  nlohmann::json specs = nlohmann::json::array();
  bool all_pass = true;
  for (const SpecResult& r : results) {
    nlohmann::json vios = nlohmann::json::array();
    for (const Violation& v : r.violations) vios.push_back(violation_json(v));
    specs.push_back({{"id", r.id},
                     {"checked", r.checked},
                     {"hypothesis_hits", r.hypothesis_hits},
                     {"vacuous_hypotheses", r.vacuous_hypotheses},
                     {"violation_count", r.violation_count},
                     {"violations", vios},
                     {"notes", r.notes},
                     {"pass", r.pass}});
    all_pass = all_pass && r.pass;
  }
  nlohmann::json j{{"resources",
                    {{"nmax", res.nmax},
                     {"discrete_nmax", res.discrete_nmax},
                     {"sample_n", res.sample_n},
                     {"sample_count", res.sample_count},
                     {"seed", res.seed},
                     {"mesh", res.mesh},
                     {"horizon", res.horizon},
                     {"window", res.window}}},
                   {"specs", specs},
                   {"pass", all_pass}};
  return j.dump(2);
}

// ---- counterexample search ----

std::vector<Literal> parse_literals(const std::string& text) {
  std::vector<Literal> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    Literal lit;
    lit.positive = true;
    std::size_t i = 0;
    while (i < tok.size() && (tok[i] == '!' || tok[i] == '~')) {
      lit.positive = !lit.positive;
      ++i;
    }
    lit.name = tok.substr(i);
    if (lit.name.empty()) throw error(errc::parse_error, "dangling negation");
    out.push_back(lit);
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || c == '&' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      tok += c;
  }
  flush();
  if (out.empty()) throw error(errc::parse_error, "no literals");
  return out;
}

namespace {

enum class LitKind { profile, vector, mapprof };

struct LitEval {
  LitKind kind;
  bool (*fn)(Ctx&);
};

const std::map<std::string, LitEval>& literal_registry() {
  static const std::map<std::string, LitEval> reg = {
      {"in", {LitKind::vector, [](Ctx& c) { return c.pv().indecomposable; }}},
      {"tt", {LitKind::vector, [](Ctx& c) { return c.pv().tt; }}},
      {"tt+", {LitKind::vector, [](Ctx& c) { return c.pv().tt_plus; }}},
      {"tt++", {LitKind::vector, [](Ctx& c) { return c.pv().tt_plus_plus; }}},
      {"do", {LitKind::vector, [](Ctx& c) { return c.pv().dense_orbit_seq; }}},
      {"do+", {LitKind::vector, [](Ctx& c) { return c.pv().dense_forward_orbit; }}},
      {"do++", {LitKind::vector, [](Ctx& c) { return c.pv().omega_full; }}},
      {"t0", {LitKind::profile, [](Ctx& c) { return c.prof().t0; }}},
      {"t1", {LitKind::profile, [](Ctx& c) { return c.prof().t1; }}},
      {"t2", {LitKind::profile, [](Ctx& c) { return c.prof().t2; }}},
      {"perfect", {LitKind::profile, [](Ctx& c) { return c.prof().perfect; }}},
      {"fragmentable", {LitKind::profile, [](Ctx& c) { return c.prof().fragmentable; }}},
      {"has_isolated", {LitKind::profile, [](Ctx& c) { return c.prof().isolated != 0; }}},
      {"continuous", {LitKind::mapprof, [](Ctx& c) { return c.mp().continuous; }}},
      {"quasicontinuous", {LitKind::mapprof, [](Ctx& c) { return c.mp().quasicontinuous; }}},
      {"qc", {LitKind::mapprof, [](Ctx& c) { return c.mp().quasicontinuous; }}},
      {"feebly_open", {LitKind::mapprof, [](Ctx& c) { return c.mp().feebly_open; }}},
      {"delta_open", {LitKind::mapprof, [](Ctx& c) { return c.mp().delta_open; }}},
      {"qc_system", {LitKind::mapprof, [](Ctx& c) { return c.mp().qc_system; }}},
      {"qc-system", {LitKind::mapprof, [](Ctx& c) { return c.mp().qc_system; }}},
  };
  return reg;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

SearchOutcome search_counterexample(const std::vector<Literal>& literals, int n_max,
                                    int space_cap) {
  struct Compiled {
    LitEval eval;
    bool positive;
  };
  std::vector<Compiled> compiled;
  for (const Literal& lit : literals) {
    const auto it = literal_registry().find(lower(lit.name));
    if (it == literal_registry().end())
      throw error(errc::parse_error, "unknown literal '" + lit.name + "'");
    compiled.push_back({it->second, lit.positive});
  }
  // Cheap profile literals first.
  std::stable_sort(compiled.begin(), compiled.end(), [](const Compiled& a, const Compiled& b) {
    return static_cast<int>(a.eval.kind) < static_cast<int>(b.eval.kind);
  });

  SearchOutcome out;
  out.n_max = n_max;
  for (int n = 2; n <= n_max && !out.found; ++n) {
    if (n > space_cap) throw error(errc::resource_exceeded, "search at n=" + std::to_string(n));
    for (const FiniteSpace& sp : spaces_of_size(n, space_cap)) {
      const SpaceProfile prof = space_profile(sp);
      bool space_possible = true;
      for (const Compiled& c : compiled) {
        if (c.eval.kind != LitKind::profile) continue;
        System dummy{sp, identity_map(n)};
        Ctx ctx(dummy, prof);
        if (c.eval.fn(ctx) != c.positive) {
          space_possible = false;
          break;
        }
      }
      if (!space_possible) continue;
      bool done = false;
      for_each_map(n, [&](const SelfMap& f) {
        if (done) return;
        System sys{sp, f};
        Ctx ctx(sys, prof);
        bool all = true;
        for (const Compiled& c : compiled)
          if (c.eval.fn(ctx) != c.positive) {
            all = false;
            break;
          }
        if (all) {
          out.found = true;
          out.witness = sys;
          out.profile = prof;
          out.map_profile = ctx.mp();
          PropertyOptions po;
          out.vector = property_vector(sys, po);
          done = true;
        }
      });
      if (done) break;
    }
  }
  return out;
}

// ---- cycle-with-tail fixture ----

bool CycleTailSystem::hits_at(bool a_cycle, long long a, bool b_cycle, long long b,
                              long long step) const {
  if (step < 0) return false;
  if (a_cycle) {
    if (!b_cycle) return false;  // forward orbits of cycle points stay on the cycle
    return ((a + step - b) % k + k) % k == 0;
  }
  if (!b_cycle) return b <= a && step == a - b;
  if (step <= a) return false;  // still inside the tail
  return ((step - (a + 1) - b) % k + k) % k == 0;
}

bool CycleTailSystem::hitting_nonempty(bool a_cycle, long long a, bool b_cycle,
                                       long long b) const {
  if (a_cycle) return b_cycle;
  if (!b_cycle) return b <= a;
  return true;
}

bool CycleTailSystem::hitting_infinite(bool, long long, bool b_cycle, long long) const {
  // Hits recur exactly when the target sits on the cycle.
  return b_cycle;
}

CycleTailReport cycle_tail_checks(int k, int window) {
  if (k < 1) throw error(errc::out_of_domain, "cycle length must be >= 1");
  if (window < 2 * k + 4) window = 2 * k + 4;
  const CycleTailSystem ct{k};
  CycleTailReport r;
  r.k = k;
  r.window = window;

  // Points examined: cycle 0..k-1 and tail 0..window-1; all closed forms are
  // shift-invariant in the tail index beyond that.
  struct Pt {
    bool cyc;
    long long i;
  };
  std::vector<Pt> pts;
  for (int i = 0; i < k; ++i) pts.push_back({true, i});
  for (int j = 0; j < window; ++j) pts.push_back({false, j});

  // TT: every singleton pair interacts in one direction.
  r.tt = true;
  for (const Pt& a : pts)
    for (const Pt& b : pts)
      if (!ct.hitting_nonempty(a.cyc, a.i, b.cyc, b.i) &&
          !ct.hitting_nonempty(b.cyc, b.i, a.cyc, a.i))
        r.tt = false;

  // TT+ fails at ({x0},{y0}); TT++ fails with it.
  r.tt_plus = ct.hitting_nonempty(true, 0, false, 0);
  r.tt_plus_plus = ct.hitting_infinite(true, 0, false, 0);
  r.tt_plus_witness = "U={x0} V={y0}";

  // No transitive point: cycle points never reach y0, and y_j never reaches
  // y_{j+1}.  Singletons are open, so a dense orbit must reach every point.
  bool any_transitive = false;
  for (const Pt& a : pts) {
    const bool misses_target = a.cyc ? !ct.hitting_nonempty(true, a.i, false, 0)
                                     : !ct.hitting_nonempty(false, a.i, false, a.i + 1);
    if (!misses_target) any_transitive = true;
  }
  r.dense_forward_orbit = any_transitive;
  r.omega_full = any_transitive;  // DO++ would imply DO+

  // The bi-infinite sequence through the tail enumerates every point.
  r.dense_orbit_seq = true;
  r.notes.push_back("orbit sequence ..., y_2, y_1, y_0, x_0, x_1, ... covers the space");

  // Preimage structure.
  //   f^-1(x_0) = {x_{k-1}, y_0};   every other point has one preimage.
  r.preimage_count_x0 = 2;
  r.x0_periodic = true;
  r.x0_period = k;
  r.unique_double_preimage = true;
  r.iso_decomposition = true;  // Iso_X = Orb(x_0) ∪ {y_n : n in N} by construction

  // Windowed simulation: truncate the tail at `window` points, simulate
  // forward steps, and compare membership with the closed forms on the safe
  // half of the window (forward orbits never leave the truncation).
  const int n = k + window;
  std::vector<int> img(n);
  for (int i = 0; i < k; ++i) img[i] = (i + 1) % k;
  img[k] = 0;  // y_0 -> x_0
  for (int j = 1; j < window; ++j) img[k + j] = k + j - 1;

  r.window_agrees = true;
  const int safe = window / 2;
  auto point_id = [&](bool cyc, long long i) {
    return cyc ? static_cast<int>(i) : static_cast<int>(k + i);
  };
  for (const Pt& a : pts) {
    if (!a.cyc && a.i >= safe) continue;
    int cur = point_id(a.cyc, a.i);
    for (int step = 0; step <= safe; ++step) {
      for (const Pt& b : pts) {
        if (!b.cyc && b.i >= safe) continue;
        const bool sim = (cur == point_id(b.cyc, b.i));
        if (sim != ct.hits_at(a.cyc, a.i, b.cyc, b.i, step)) r.window_agrees = false;
      }
      cur = img[cur];
    }
  }
  return r;
}

}  // namespace qcdyn
