// Acceptance gate: one PASS/FAIL line per criterion.
//
// Exit status is zero when every criterion passes or fails only for a listed
// known deviation; the FAIL line is still printed with its reason.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "schoolchoice/charax.hpp"
#include "schoolchoice/choicefn.hpp"
#include "schoolchoice/externalities.hpp"
#include "schoolchoice/fixtures.hpp"
#include "schoolchoice/profile_space.hpp"
#include "schoolchoice/stability.hpp"
#include "schoolchoice/sweeps.hpp"

using namespace schoolchoice;

namespace {

// Pinned tolerances.
constexpr double kFixtureSeconds = 5.0;
constexpr double kTheorem1Seconds = 600.0;
constexpr std::size_t kTheorem3Samples = 1000;
constexpr int kOracleProblems = 10000;
constexpr int kEnumeratorProblems = 1000;
constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kB2Samples = 20000;

// The published verdict on FX-C1 lists S-WrARP as the only failing axiom, but
// population monotonicity also fails once student 4 may decline s.
const std::set<std::string> kKnownDeviations = {"FX-C1 population monotonicity"};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string known;  // names a known deviation when the failure is documented
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

const FixtureCheck* find_check(const FixtureReport& r, const std::string& label) {
  for (const auto& c : r.checks)
    if (c.label == label) return &c;
  return nullptr;
}

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const auto reports = reproduce_all();
  const double t = seconds_since(start);
  Outcome o;
  std::size_t published = 0, total = 0;
  std::string failed;
  bool only_c1 = true;
  for (const auto& r : reports)
    for (const auto& c : r.checks) {
      ++total;
      published += c.published;
      if (c.passed()) continue;
      o.pass = false;
      failed += " " + r.name + "/" + c.label;
      only_c1 = only_c1 && r.name == "FX-C1" && c.label == "failing characterization axioms";
    }
  o.detail = std::to_string(reports.size()) + " fixtures, " + std::to_string(total) + " checks (" +
             std::to_string(published) + " published), " + fixed(t) + " s";
  if (t > kFixtureSeconds) {
    o.pass = false;
    only_c1 = false;
    o.detail += " over the " + fixed(kFixtureSeconds) + " s limit";
  }
  if (!o.pass) o.detail += "; mismatches:" + failed;
  if (!o.pass && only_c1) o.known = "FX-C1 population monotonicity";
  return o;
}

Outcome sweep_criterion(SweepKind kind, double limit = 0) {
  SweepOptions options;
  options.coverage = Coverage::Exhaustive;
  const SweepReport r = run_sweep(kind, options);
  Outcome o;
  o.pass = r.clean() && (limit == 0 || r.seconds <= limit);
  o.detail = std::to_string(r.contexts) + " contexts, " + std::to_string(r.instances) + " instances, " +
             std::to_string(r.counterexamples) + " counterexamples, " + fixed(r.seconds) + " s";
  for (const auto& e : r.examples) o.detail += "; " + e;
  return o;
}

Outcome criterion4() {
  SweepOptions options;
  const SweepReport a = run_sweep(SweepKind::Lemma1, options);
  const SweepReport b = run_sweep(SweepKind::Lemma2, options);
  Outcome o;
  o.pass = a.clean() && b.clean();
  auto premise = [](const SweepReport& r) {
    for (const auto& [k, v] : r.tallies)
      if (k == "premise holds") return v;
    return std::uint64_t{0};
  };
  o.detail = std::to_string(a.instances) + " mechanism-context pairs, premise holds on " +
             std::to_string(premise(a)) + "; LGSP violations " + std::to_string(a.counterexamples) +
             ", LGNB violations " + std::to_string(b.counterexamples) + ", " + fixed(a.seconds + b.seconds) + " s";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const Mechanism da = da_mechanism();
  Scope scope;
  scope.max_coalition = 3;
  std::size_t contexts = 0, cyclic = 0, disagreements = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const std::vector<int>& q : {std::vector<int>{1, 1}, std::vector<int>{2, 1}})
    for (const Context& c : priority_profiles(4, q, false)) {
      ++contexts;
      const bool has_cycle = !detect_ergin_cycles(c).empty();
      cyclic += has_cycle;
      if (has_cycle != oracle::has_ergin_cycle(c)) ++disagreements;
      if (has_cycle == check_group_strategy_proof(da, c, scope).holds) ++disagreements;
    }
  o.pass = disagreements == 0;
  o.detail = std::to_string(contexts) + " priority profiles, " + std::to_string(cyclic) + " cyclic, " +
             std::to_string(disagreements) + " disagreements, " + fixed(seconds_since(start)) + " s";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t profiles = 0, bad = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const Context& c : priority_profiles(4, {2, 1}, false)) {
    ++profiles;
    const CharacterizationReport r = verify_characterization(da_population_mechanism(), c);
    bool ok = r.all_axioms_hold && r.equal.value_or(false) && r.recovered.size() == 2;
    for (School s = 0; ok && s < 2; ++s)
      ok = r.recovered[s].responsive &&
           priorities_agree_where_binding(r.recovered[s].order, c.priority(s), c.capacity(s));
    bad += !ok;
  }
  auto failing = [](const PopulationMechanism& m, const Context& universe) {
    std::string out;
    for (const auto& v : check_population_axioms(characterization_axioms(), m, universe))
      if (!v.holds) out += (out.empty() ? "" : ",") + std::string(population_axiom_name(v.axiom));
    return out;
  };
  const std::string ek1 = failing(fx_ek1_mechanism(), fixture_instance("FX-EK1").context);
  const std::string c1 = failing(fx_c1_mechanism(), fixture_instance("FX-C1").context);
  o.pass = bad == 0 && ek1 == "wlnb" && c1 == "swrarp";
  o.detail = std::to_string(profiles) + " priority profiles, " + std::to_string(bad) + " round-trip failures; " +
             "FX-EK1 fails {" + ek1 + "}, FX-C1 fails {" + c1 + "}, " + fixed(seconds_since(start)) + " s";
  if (!o.pass && bad == 0 && ek1 == "wlnb" && c1 == "pm,swrarp") o.known = "FX-C1 population monotonicity";
  return o;
}

Outcome criterion7() {
  SweepOptions options;
  options.samples = kTheorem3Samples;
  const SweepReport r = run_sweep(SweepKind::Theorem3, options);
  const FixtureReport ex2 = reproduce_fixture("FX-EX2");
  bool witnesses = true;
  for (const char* label : {"selection μ: manipulation by P'_2: s2,s4", "selection η: manipulation by P'_1: s1,s3",
                            "every stable selection is manipulable in D_1"}) {
    const FixtureCheck* c = find_check(ex2, label);
    witnesses = witnesses && c && c->passed();
  }
  Outcome o;
  o.pass = r.clean() && witnesses;
  o.detail = std::to_string(r.contexts) + " cyclic contexts x " + std::to_string(kTheorem3Samples) +
             " D_c profiles, " + std::to_string(r.counterexamples) + " counterexamples; FX-EX2 D_1 witnesses " +
             (witnesses ? "reproduced" : "missing") + ", " + fixed(r.seconds) + " s";
  return o;
}

Outcome criterion8() {
  std::mt19937_64 rng(kSeed);
  std::size_t da_bad = 0, school_bad = 0, enum_bad = 0, oracle_bad = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < kOracleProblems; ++k) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 3);
    const Context c = oracle::random_context(n, m, 3, rng);
    const Profile p = oracle::random_profile(n, m, rng);
    const std::vector<Matching> stable = enumerate_stable(c, p);
    std::vector<std::vector<School>> plain;
    for (const Matching& mu : stable) plain.push_back(mu.assignment());
    const auto best = oracle::pareto_extreme(plain, p, true);
    const auto worst = oracle::pareto_extreme(plain, p, false);
    da_bad += !best || da_student(c, p).assignment() != *best;
    school_bad += !worst || da_school(c, p).assignment() != *worst;
    oracle_bad += da_student(c, p).assignment() != oracle::sequential_da(c, p);
    if (k < kEnumeratorProblems) {
      enum_bad += stable != enumerate_stable_bruteforce(c, p);
      enum_bad += plain != oracle::stable_set(c, p);
    }
  }
  Outcome o;
  o.pass = da_bad == 0 && school_bad == 0 && enum_bad == 0 && oracle_bad == 0;
  o.detail = std::to_string(kOracleProblems) + " problems: DA vs best " + std::to_string(da_bad) +
             ", DA^S vs worst " + std::to_string(school_bad) + ", DA vs sequential DA " +
             std::to_string(oracle_bad) + "; enumerators on " + std::to_string(kEnumeratorProblems) + ": " +
             std::to_string(enum_bad) + " disagreements, " + fixed(seconds_since(start)) + " s";
  return o;
}

Outcome criterion9() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t contexts = 0, mismatches = 0;
  for (const Context& c : sweep_grid(GridBounds{})) {
    ++contexts;
    std::vector<ChoiceFunction> tables;
    for (School s = 0; s < c.num_schools(); ++s)
      tables.push_back(ChoiceFunction::responsive(c.priority(s), c.capacity(s)));
    ProfileSpace space(c.num_students(), c.num_schools());
    std::vector<int> code(c.num_students(), 0);
    do {
      const Profile p = space.profile(code);
      mismatches += da_with_choice(p, tables) != da_student(c, p);
    } while (space.next(code));
  }

  bool witnesses = true;
  for (const char* name : {"FX-B1", "FX-B2"}) {
    const FixtureReport r = reproduce_fixture(name);
    const FixtureCheck* c = find_check(r, "DA_s1: P -> (P'_1,P_-1)");
    witnesses = witnesses && c && c->passed();
  }

  // Repaired tables: B1 over its whole profile space; B2 at every unilateral
  // misreport from its profile plus a seeded sample of base profiles.
  bool repaired = true;
  const Instance b1 = repaired_choice_instance("FX-B1");
  Scope full;
  full.coverage = Coverage::Exhaustive;
  repaired = repaired && check_local_non_bossy(choice_da_mechanism(b1.choices), b1.context, full).holds;
  const Instance b2 = repaired_choice_instance("FX-B2");
  const Mechanism da2 = choice_da_mechanism(b2.choices);
  const auto orders = oracle::orders(b2.context.num_schools());
  const Matching base = da2(b2.context, b2.profile);
  for (Student i = 0; i < b2.context.num_students(); ++i)
    for (const Preference& report : orders) {
      Profile q = b2.profile;
      q[i] = report;
      const Matching after = da2(b2.context, q);
      if (after[i] == base[i] && after.members_set(base[i]) != base.members_set(base[i])) repaired = false;
    }
  Scope sampled;
  sampled.coverage = Coverage::Sampled;
  sampled.samples = kB2Samples;
  repaired = repaired && check_local_non_bossy(da2, b2.context, sampled).holds;

  Outcome o;
  o.pass = mismatches == 0 && witnesses && repaired;
  o.detail = std::to_string(contexts) + " grid contexts, " + std::to_string(mismatches) +
             " choice-DA mismatches; B.1/B.2 witnesses " + (witnesses ? "reproduced" : "missing") +
             "; repaired tables locally non-bossy: " + (repaired ? "yes" : "no") + ", " +
             fixed(seconds_since(start)) + " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"fixture exactness", criterion1},
      {"local non-bossiness of DA on the grid", [] { return sweep_criterion(SweepKind::Theorem1, kTheorem1Seconds); }},
      {"colleague disjointness on the grid", [] { return sweep_criterion(SweepKind::Remark1); }},
      {"LNB and SP imply LGSP and LGNB", criterion4},
      {"acyclicity iff group strategy-proofness", criterion5},
      {"characterization round trip", criterion6},
      {"DA-bar strategy-proof and stable on D_c", criterion7},
      {"oracle agreement", criterion8},
      {"choice-function boundary", criterion9},
  };
  bool ok = true;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << index << " " << (o.pass ? "PASS" : "FAIL") << " " << name << ": " << o.detail;
    if (!o.pass && !o.known.empty() && kKnownDeviations.count(o.known)) std::cout << " [known deviation: " << o.known << "]";
    std::cout << std::endl;
    if (!o.pass && (o.known.empty() || !kKnownDeviations.count(o.known))) ok = false;
  }
  return ok ? 0 : 1;
}
