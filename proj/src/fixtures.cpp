#include "schoolchoice/fixtures.hpp"

#include <algorithm>
#include <sstream>

#include "schoolchoice/axioms.hpp"
#include "schoolchoice/cycles.hpp"
#include "schoolchoice/externalities.hpp"
#include "schoolchoice/profile_space.hpp"
#include "schoolchoice/stability.hpp"

namespace schoolchoice {

namespace {

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    part.erase(0, part.find_first_not_of(' '));
    part.erase(part.find_last_not_of(' ') + 1);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::string fmt_set(StudentSet set, const Context& context) { return "{" + set_key(set, context) + "}"; }

std::string join_sorted(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  std::string out = "{";
  for (std::size_t k = 0; k < items.size(); ++k) out += (k ? "; " : "") + items[k];
  return out + "}";
}

std::string fmt_matchings(const std::vector<Matching>& matchings, const Context& context) {
  std::vector<std::string> items;
  for (const Matching& m : matchings) items.push_back(format_matching(m, context));
  return join_sorted(items);
}

std::string fmt_edges(const std::vector<Edge>& edges, const Context& context) {
  std::vector<std::string> items;
  for (auto [i, j] : edges) items.push_back("[" + context.student_name(i) + "," + context.student_name(j) + "]");
  std::sort(items.begin(), items.end());
  std::string out = "{";
  for (std::size_t k = 0; k < items.size(); ++k) out += (k ? "," : "") + items[k];
  return out + "}";
}

std::string fmt_cycle(const std::vector<Student>& cycle, const Context& context) {
  std::string out = "(";
  for (std::size_t k = 0; k < cycle.size(); ++k) out += (k ? "," : "") + context.student_name(cycle[k]);
  return out + ")";
}

std::string fmt_students(const std::vector<Student>& students, const Context& context) {
  return fmt_set(set_of(students), context);
}

std::string verdict(bool holds) { return holds ? "holds" : "fails"; }
std::string yes(bool value) { return value ? "true" : "false"; }

Profile parse_profile(const std::vector<std::string>& rankings, int num_schools) {
  Profile profile;
  for (const std::string& r : rankings) profile.push_back(parse_ranking(r, num_schools));
  return profile;
}

Profile with(Profile profile, Student i, const std::string& ranking) {
  profile[i] = parse_ranking(ranking, profile[i].num_schools());
  return profile;
}

std::string failing_population_axioms(const std::vector<PopulationVerdict>& verdicts) {
  std::string out;
  for (const PopulationVerdict& v : verdicts)
    if (!v.holds) out += (out.empty() ? "" : ",") + std::string(population_axiom_name(v.axiom));
  return out.empty() ? "none" : out;
}

struct Builder {
  FixtureReport report;
  void add(std::string label, bool published, std::string expected, std::string actual) {
    report.checks.push_back({std::move(label), published, std::move(expected), std::move(actual)});
  }
};

// Contexts and base profiles.

Context ek1_context() { return make_context(4, {"1,2,3,4", "1,2,3,4"}, {2, 1}); }
Profile ek1_profile() { return parse_profile({"s2,s0,s1", "s1,s0,s2", "s1,s0,s2", "s1,s0,s2"}, 2); }

Context ex2_context() { return make_context(5, {"4,2,1,3,5", "3,2", "1,2", "2,5"}, {2, 1, 1, 1}); }
Profile ex2_profile() { return parse_profile({"s3", "s2,s1", "s1,s2", "s1", "s4"}, 4); }

Context a1_context() { return make_context(3, {"1,2,3", "3,2,1"}, {2, 1}); }
Profile a1_profile() { return parse_profile({"s1,s2,s0", "s2,s1,s0", "s1,s2,s0"}, 2); }
Context a2_context() { return make_context(3, {"1,2,3", "3,1,2"}, {2, 1}); }
Profile a2_profile() { return parse_profile({"s2,s1,s0", "s1,s2,s0", "s2,s1,s0"}, 2); }
Context a3_context() { return make_context(3, {"1,2,3", "3,2,1"}, {3, 1}); }
Profile a3_profile() { return parse_profile({"s1,s2,s0", "s1,s2,s0", "s1,s2,s0"}, 2); }
Context a4_context() { return make_context(3, {"1,2,3", "3,2,1"}, {2, 2}); }
Profile a4_profile() { return parse_profile({"s1,s2,s0", "s2,s1,s0", "s1,s2,s0"}, 2); }
Context l3_context() { return make_context(3, {"1,2,3", "1,2,3"}, {2, 1}); }
Profile l3_profile() { return parse_profile({"s2,s1,s0", "s1,s2,s0", "s1,s2,s0"}, 2); }

Context c1_context() { return make_context(4, {"1,2,3,4"}, {2}); }
Profile c1_profile() { return parse_profile({"s1", "s1", "s1", "s1"}, 1); }

Context d2_context() { return make_context(4, {"2,1,3,4", "3,4,2,1"}, {2, 2}); }
Profile d2_profile() { return parse_profile({"s2,s1,s0", "s2,s1,s0", "s1,s2,s0", "s1,s2,s0"}, 2); }

Context d3_context() {
  return make_context(6, {"6,1", "5,1,3,2", "4,2,3", "3,4", "2,5"}, {2, 1, 1, 1, 1});
}
Profile d3_profile() {
  return parse_profile({"s2,s1", "s2,s3,s5", "s3,s2,s4", "s4,s3", "s5,s2", "s1"}, 5);
}

std::vector<StudentSet> ranked_sets(const std::vector<std::string>& sets) {
  std::vector<StudentSet> out;
  for (const std::string& text : sets) {
    StudentSet set = 0;
    for (const std::string& name : split(text)) set |= singleton(std::stoi(name) - 1);
    out.push_back(set);
  }
  return out;
}

std::vector<StudentSet> b1_ranking(bool repaired) {
  if (repaired)
    return ranked_sets({"1,2", "1,3", "1,4", "2,3", "2,4", "3,4", "1", "2", "3", "4", ""});
  return ranked_sets({"1,2", "1,3", "1,4", "2,3", "2,4", "1", "2", "3", "3,4", "4", ""});
}

std::vector<StudentSet> b2_ranking(bool repaired) {
  if (repaired)
    return ranked_sets({"1,2", "1,3", "1,4", "1,5", "2,3", "2,4", "2,5", "3,4", "3,5", "4,5", "1", "2", "3", "4", "5", ""});
  return ranked_sets({"1,2", "1,3", "1,5", "1,4", "2,3", "2,4", "2,5", "3,4", "3,5", "4,5", "1", "2", "3", "4", "5", ""});
}

Instance choice_instance(int n, std::vector<StudentSet> ranking, const std::vector<std::string>& other_priorities,
                         Profile profile) {
  ChoiceFunction first = ChoiceFunction::from_ranked_sets(n, ranking);
  std::string id_order;
  for (int i = 1; i <= n; ++i) id_order += (i > 1 ? "," : "") + std::to_string(i);
  std::vector<std::string> priorities{id_order};
  std::vector<int> capacities{std::max(1, set_size(first(full_set(n))))};
  for (const std::string& p : other_priorities) {
    priorities.push_back(p);
    capacities.push_back(1);
  }
  Instance instance;
  instance.context = make_context(n, priorities, capacities);
  instance.profile = std::move(profile);
  instance.choices.push_back(std::move(first));
  instance.explicit_choice.push_back(true);
  for (School s = 1; s < instance.context.num_schools(); ++s) {
    instance.choices.push_back(
        ChoiceFunction::responsive(instance.context.priority(s), instance.context.capacity(s)));
    instance.explicit_choice.push_back(false);
  }
  return instance;
}

Instance b1_instance(bool repaired = false) {
  return choice_instance(4, b1_ranking(repaired), {"3,4,1,2", "2,3,1,4"},
                         parse_profile({"s2,s1,s3,s0", "s2,s3,s1,s0", "s3,s1,s2,s0", "s1,s2,s3,s0"}, 3));
}

Instance b2_instance(bool repaired = false) {
  return choice_instance(
      5, b2_ranking(repaired), {"3,4,5,1,2", "2,3,1,4,5", "1,2,3,4,5"},
      parse_profile({"s2,s1,s3,s4,s0", "s2,s3,s1,s4,s0", "s3,s1,s2,s4,s0", "s1,s4,s3,s2,s0", "s1,s2,s4,s3,s0"}, 4));
}

Instance plain(Context context, Profile profile) {
  Instance instance;
  instance.context = std::move(context);
  instance.profile = std::move(profile);
  return instance;
}

// Scenarios.

FixtureReport fx_ek1() {
  Builder b;
  const Context universe = ek1_context();
  const Profile p = ek1_profile();
  const PopulationMechanism omega = fx_ek1_mechanism();
  const StudentSet everyone = full_set(4);

  const std::vector<Student> sub{0, 1, 2};
  const Context restricted = restrict_priorities(universe, sub);
  std::string order;
  for (Student i : restricted.priority(0)) order += (order.empty() ? "" : ",") + restricted.student_name(i);
  b.add("priority at s1 restricted to {1,2,3}", true, "1,2,3", order);

  const Matching before = omega(universe, everyone, p);
  const Profile deviated = with(p, 1, "s2,s1,s0");
  const Matching after = omega(universe, everyone, deviated);
  b.add("Ω(N̄,P)", true, "((1,s2),(2,s1),(3,s1),(4,s0))", format_matching(before, universe));
  b.add("Ω(N̄,(P'_2,P_-2))", true, "((1,s2),(2,s1),(3,s0),(4,s1))", format_matching(after, universe));
  b.add("student 2 keeps s1, colleagues", true, "s1: {3} -> {4}",
        universe.school_name(after[1]) + ": " + fmt_set(before.colleagues(1), universe) + " -> " +
            fmt_set(after.colleagues(1), universe));

  const auto verdicts = check_population_axioms(characterization_axioms(), omega, universe);
  b.add("failing characterization axioms", true, "wlnb", failing_population_axioms(verdicts));

  Mechanism fixed{"fx-ek1", [omega, everyone](const Context& c, const Profile& q) { return omega(c, everyone, q); }};
  b.add("coalition {2,4} reporting (P'_2,P_4) violates group strategy-proofness", true, "true",
        yes(violates(Axiom::GroupStrategyProof, {1, 3}, kOutside, fixed(universe, p), fixed(universe, deviated), p)));

  const ChoiceFunction c1 = derive_choice_function(omega, universe, 0);
  const PriorityRecovery r = recover_priority(c1, universe.capacity(0));
  std::string recovered;
  for (Student i : r.order) recovered += (recovered.empty() ? "" : ",") + universe.student_name(i);
  b.add("induced choice at s1 is responsive to", false, "1,2,3,4", r.responsive ? recovered : "not responsive");
  b.add("Ergin cycles of ≻", false, "none", detect_ergin_cycles(universe).empty() ? "none" : "present");
  return b.report;
}

FixtureReport fx_ex2() {
  Builder b;
  const Context c = ex2_context();
  const Profile p = ex2_profile();
  const std::string mu = "((1,s3),(2,s1),(3,s2),(4,s1),(5,s4))";
  const std::string eta = "((1,s3),(2,s2),(3,s1),(4,s1),(5,s4))";

  b.add("context size", true, "|N|=5, |S|=4, q_s1=2",
        "|N|=" + std::to_string(c.num_students()) + ", |S|=" + std::to_string(c.num_schools()) +
            ", q_s1=" + std::to_string(c.capacity(0)));
  b.add("P_2 ranks s2 above s1", true, "true", yes(p[1].prefers(1, 0)));
  const std::vector<Matching> stable = enumerate_stable(c, p);
  b.add("stable matchings", true, join_sorted({mu, eta}), fmt_matchings(stable, c));
  b.add("μ audit", true, "stable", is_stable(Matching({2, 0, 1, 0, 3}), c, p) ? "stable" : "unstable");
  b.add("DA-bar on the induced profile", false, eta, format_matching(da_student(c, p), c));
  b.add("stable matchings after P'_2: s2,s4", true, join_sorted({eta}),
        fmt_matchings(enumerate_stable(c, with(p, 1, "s2,s4")), c));
  b.add("stable matchings after P'_1: s1,s3", true, join_sorted({mu}),
        fmt_matchings(enumerate_stable(c, with(p, 0, "s1,s3")), c));

  std::string cycle = "absent";
  for (const ErginCycle& e : detect_ergin_cycles(c))
    if (e.s == 0 && e.s_prime == 1 && e.i == 1 && e.j == 0 && e.k == 2)
      cycle = "N_s=" + fmt_set(e.n_s, c) + ", N_s'=" + fmt_set(e.n_s_prime, c);
  b.add("Ergin cycle (s1,s2), (i,j,k)=(2,1,3)", true, "N_s={4}, N_s'={}", cycle);

  Scope scope;
  scope.samples = 400;
  b.add("DA non-bossiness", false, "fails", verdict(check_non_bossy(da_mechanism(), c, scope).holds));

  // Domain D_1: student 1 ranks μ above η at s3, the others only look at schools.
  const std::vector<Matching> pair = enumerate_stable(c, p);
  const Matching& m_mu = format_matching(pair[0], c) == mu ? pair[0] : pair[1];
  const Matching& m_eta = format_matching(pair[0], c) == mu ? pair[1] : pair[0];
  MatchingPreference first{0, p[0], {m_mu, m_eta}};
  MatchingComparator truth = [&](Student i, const Matching& a, const Matching& x) {
    if (i == 0) return compare_matchings(first, a, x);
    return compare_matchings(ColleaguePreference(i, p[i], c), a, x, ExternalityOptions{false});
  };
  const auto manipulations = stable_manipulations(c, p, truth);
  auto found = [&](const Matching& chosen, Student deviator, const std::string& report) {
    const Preference target = parse_ranking(report, 4);
    for (const StableManipulation& m : manipulations)
      if (m.chosen == chosen && m.deviator == deviator && m.report == target)
        return "student " + c.student_name(deviator) + " -> " + fmt_matchings(m.stable_after, c);
    return std::string("none");
  };
  b.add("selection μ: manipulation by P'_2: s2,s4", true, "student 2 -> " + join_sorted({eta}), found(m_mu, 1, "s2,s4"));
  b.add("selection η: manipulation by P'_1: s1,s3", true, "student 1 -> " + join_sorted({mu}), found(m_eta, 0, "s1,s3"));
  bool every_selection = true;
  for (const Matching& chosen : pair)
    every_selection = every_selection && std::any_of(manipulations.begin(), manipulations.end(),
                                                     [&](const StableManipulation& m) { return m.chosen == chosen; });
  b.add("every stable selection is manipulable in D_1", true, "true", yes(every_selection));
  return b.report;
}

FixtureReport fx_a1() {
  Builder b;
  const Context c = a1_context();
  const Profile p = a1_profile();
  const Mechanism omega = fx_a1_mechanism();
  b.add("DA^S(P̄)", true, "((1,s1),(2,s1),(3,s2))", format_matching(da_school(c, p), c));
  b.add("DA(P̄)", true, "((1,s1),(2,s2),(3,s1))", format_matching(da_student(c, p), c));
  b.add("Boston(P̄)", false, "((1,s1),(2,s2),(3,s1))", format_matching(boston(c, p), c));
  const Profile q = with(p, 0, "s2,s1,s0");
  b.add("Ω(P_1,P̄_-1)", true, "((1,s1),(2,s2),(3,s1))", format_matching(omega(c, q), c));
  b.add("Ω_s1: P_1 -> P̄_1", true, "{1,3} -> {1,2}",
        fmt_set(omega(c, q).members_set(0), c) + " -> " + fmt_set(omega(c, p).members_set(0), c));
  const auto v = check_axioms({Axiom::LocalNonBossy, Axiom::StrategyProof, Axiom::WeakNonBossy}, omega, c);
  b.add("Ω local non-bossiness", true, "fails", verdict(v[0].holds));
  b.add("Ω strategy-proofness", true, "fails", verdict(v[1].holds));
  b.add("Ω weak non-bossiness", true, "holds", verdict(v[2].holds));
  b.add("Ω stable at every profile", true, "true", [&] {
    ProfileSpace space(3, 2);
    std::vector<int> code(3, 0);
    do {
      const Profile r = space.profile(code);
      if (!is_stable(omega(c, r), c, r)) return std::string("false");
    } while (space.next(code));
    return std::string("true");
  }());
  b.add("Boston strategy-proofness", false, "holds", verdict(check_strategy_proof(boston_mechanism(), c).holds));
  b.add("Boston strategy-proofness, 4 students, q=(1,1)", true, "fails",
        verdict(check_strategy_proof(boston_mechanism(), make_context(4, {"1,2,3,4", "1,2,3,4"}, {1, 1})).holds));
  b.add("Boston local group non-bossiness", true, "holds",
        verdict(check_local_group_non_bossy(boston_mechanism(), c).holds));
  return b.report;
}

FixtureReport fx_a2() {
  Builder b;
  const Context c = a2_context();
  const Profile p = a2_profile();
  const Mechanism omega = fx_a2_mechanism();
  const Profile q = with(p, 0, "s1,s2,s0");
  b.add("Ω(P)", true, "((1,s1),(2,s1),(3,s2))", format_matching(omega(c, p), c));
  b.add("Ω_s1: P -> (P'_1,P_-1)", true, "{1,2} -> {1}",
        fmt_set(omega(c, p).members_set(0), c) + " -> " + fmt_set(omega(c, q).members_set(0), c));
  b.add("Ω_s0: P -> (P'_1,P_-1)", true, "{} -> {2,3}",
        fmt_set(omega(c, p).members_set(kOutside), c) + " -> " + fmt_set(omega(c, q).members_set(kOutside), c));
  const auto v = check_axioms({Axiom::StrategyProof, Axiom::LocalGroupStrategyProof, Axiom::LocalNonBossy,
                               Axiom::WeakNonBossy},
                              omega, c);
  b.add("Ω strategy-proofness", true, "holds", verdict(v[0].holds));
  b.add("Ω local group strategy-proofness", true, "holds", verdict(v[1].holds));
  b.add("Ω local non-bossiness", true, "fails", verdict(v[2].holds));
  b.add("Ω weak non-bossiness", true, "fails", verdict(v[3].holds));
  return b.report;
}

FixtureReport fx_a3() {
  Builder b;
  const Context c = a3_context();
  const Profile p = a3_profile();
  const Mechanism omega = fx_a3_mechanism();
  const Profile q = with(with(p, 0, "s2,s1,s0"), 1, "s2,s1,s0");
  b.add("Ω_s1: P -> (P'_1,P'_2,P_3)", true, "{1,2} -> {1,2,3}",
        fmt_set(omega(c, p).members_set(0), c) + " -> " + fmt_set(omega(c, q).members_set(0), c));
  const auto v = check_axioms({Axiom::LocalNonBossy, Axiom::LocalGroupNonBossy}, omega, c);
  b.add("Ω local non-bossiness", true, "holds", verdict(v[0].holds));
  b.add("Ω local group non-bossiness", true, "fails", verdict(v[1].holds));
  return b.report;
}

FixtureReport fx_a4() {
  Builder b;
  const Context c = a4_context();
  const Profile p = a4_profile();
  const Mechanism omega = fx_a4_mechanism();
  const Profile q = with(p, 0, "s1,s0,s2");
  b.add("Ω(P)", true, "((1,s1),(2,s1),(3,s2))", format_matching(omega(c, p), c));
  b.add("Ω(P'_1,P_2,P_3)", true, "((1,s1),(2,s2),(3,s1))", format_matching(omega(c, q), c));
  b.add("coalition {1,2} ⊆ Ω_s1(P) manipulates", true, "true",
        yes(violates(Axiom::LocalGroupStrategyProof, {0, 1}, 0, omega(c, p), omega(c, q), p)));
  const auto v = check_axioms({Axiom::StrategyProof, Axiom::LocalGroupStrategyProof}, omega, c);
  b.add("Ω strategy-proofness", true, "holds", verdict(v[0].holds));
  b.add("Ω local group strategy-proofness", true, "fails", verdict(v[1].holds));
  return b.report;
}

FixtureReport fx_l3() {
  Builder b;
  const Context c = l3_context();
  const Mechanism omega = fx_l3_mechanism();
  const Profile p = l3_profile();
  b.add("Ω(P) with s2 P_1 s1", true, "((1,s1),(2,s1),(3,s2))", format_matching(omega(c, p), c));
  b.add("Ω(P) with s1 P_1 s2", true, "((1,s1),(2,s1),(3,s0))", format_matching(omega(c, with(p, 0, "s1,s2,s0")), c));
  const auto v = check_axioms({Axiom::LocalNonBossy, Axiom::StrategyProof, Axiom::WeakNonBossy}, omega, c);
  b.add("Ω local non-bossiness", true, "holds", verdict(v[0].holds));
  b.add("Ω strategy-proofness", true, "holds", verdict(v[1].holds));
  b.add("Ω weak non-bossiness", true, "fails", verdict(v[2].holds));
  return b.report;
}

FixtureReport fx_b1() {
  Builder b;
  const Instance inst = b1_instance();
  const Context& c = inst.context;
  const ChoiceFunction& choice = inst.choices[0];
  const Mechanism da = choice_da_mechanism(inst.choices);
  const Profile& p = inst.profile;
  const Profile q = with(p, 0, "s1,s2,s3,s0");
  b.add("C^s1({3,4})", true, "{3}", fmt_set(choice(set_of(std::vector<Student>{2, 3})), c));
  b.add("C^s1({1,2})", true, "{1,2}", fmt_set(choice(set_of(std::vector<Student>{0, 1})), c));
  b.add("substitutability", true, "holds", verdict(!check_substitutable(choice)));
  b.add("law of aggregate demand", true, "holds", verdict(!check_lad(choice)));
  b.add("q-acceptance", true, "fails", verdict(check_q_acceptance(choice).q.has_value()));
  const Matching mu = da(c, p);
  const Matching mu_prime = da(c, q);
  b.add("DA(P)", true, "((1,s1),(2,s3),(3,s1),(4,s2))", format_matching(mu, c));
  b.add("DA(P'_1,P_-1)", true, "((1,s1),(2,s2),(3,s3),(4,s1))", format_matching(mu_prime, c));
  b.add("DA_s1: P -> (P'_1,P_-1)", true, "{1,3} -> {1,4}",
        fmt_set(mu.members_set(0), c) + " -> " + fmt_set(mu_prime.members_set(0), c));
  const Matching eta = apply_cycle(mu, {0, 3}, p);
  b.add("η from cycle (1,4)", true, "((1,s2),(2,s3),(3,s1),(4,s1))", format_matching(eta, c));
  b.add("η individually rational", true, "false", yes(audit_choice_stability(eta, p, inst.choices).individually_rational));
  b.add("DA(P) choice-stable", false, "true", yes(audit_choice_stability(mu, p, inst.choices).stable));
  const ChoiceFunction repaired = b1_instance(true).choices[0];
  const std::vector<Student> order{0, 1, 2, 3};
  b.add("repaired table is responsive to 1,2,3,4 with q=2", true, "true",
        yes(repaired == ChoiceFunction::responsive(order, 2)));
  return b.report;
}

FixtureReport fx_b2() {
  Builder b;
  const Instance inst = b2_instance();
  const Context& c = inst.context;
  const ChoiceFunction& choice = inst.choices[0];
  const Mechanism da = choice_da_mechanism(inst.choices);
  const Profile& p = inst.profile;
  const Profile q = with(p, 0, "s1,s2,s3,s4,s0");
  const QAcceptance qa = check_q_acceptance(choice);
  b.add("substitutability", true, "holds", verdict(!check_substitutable(choice)));
  b.add("q-acceptance", true, "q=2", qa.q ? "q=" + std::to_string(*qa.q) : "fails");
  b.add("C^s1({3,4,5})", true, "{3,4}", fmt_set(choice(set_of(std::vector<Student>{2, 3, 4})), c));
  b.add("C^s1({1,4,5})", true, "{1,5}", fmt_set(choice(set_of(std::vector<Student>{0, 3, 4})), c));
  const Matching mu = da(c, p);
  const Matching mu_prime = da(c, q);
  b.add("DA(P)", true, "((1,s1),(2,s3),(3,s1),(4,s4),(5,s2))", format_matching(mu, c));
  b.add("DA(P'_1,P_-1)", true, "((1,s1),(2,s2),(3,s3),(4,s4),(5,s1))", format_matching(mu_prime, c));
  b.add("DA_s1: P -> (P'_1,P_-1)", true, "{1,3} -> {1,5}",
        fmt_set(mu.members_set(0), c) + " -> " + fmt_set(mu_prime.members_set(0), c));
  const Matching eta = apply_cycle(mu, {0, 4}, p);
  auto blocks = [&](const Matching& m) {
    for (auto [i, s] : audit_choice_stability(m, p, inst.choices).blocking_pairs)
      if (i == 3) return true;
    return false;
  };
  b.add("η from cycle (1,5)", false, "((1,s2),(2,s3),(3,s1),(4,s4),(5,s1))", format_matching(eta, c));
  b.add("student 4 blocks η", true, "true", yes(blocks(eta)));
  b.add("student 4 blocks DA(P'_1,P_-1)", true, "false", yes(blocks(mu_prime)));
  const ChoiceFunction repaired = b2_instance(true).choices[0];
  const std::vector<Student> order{0, 1, 2, 3, 4};
  b.add("repaired table is responsive to 1,2,3,4,5 with q=2", true, "true",
        yes(repaired == ChoiceFunction::responsive(order, 2)));
  return b.report;
}

FixtureReport fx_c1() {
  Builder b;
  const Context universe = c1_context();
  const Profile p = c1_profile();
  const PopulationMechanism phi = fx_c1_mechanism();
  b.add("Φ_s({1,2,3},P̃)", true, "{1,3}", fmt_set(phi(universe, 0b0111, p).members_set(0), universe));
  b.add("Φ_s(N̄,P̃)", true, "{3,4}", fmt_set(phi(universe, 0b1111, p).members_set(0), universe));
  const auto verdicts = check_population_axioms(characterization_axioms(), phi, universe);
  b.add("failing characterization axioms", true, "swrarp", failing_population_axioms(verdicts));
  const ChoiceFunction choice = derive_choice_function(phi, universe, 0);
  const auto w = check_wrarp_q1(choice, universe.capacity(0));
  b.add("(q+1)-WrARP witness", true, "N={1,2,3}, N'={1,2,4}, i=1, j=2",
        w ? "N=" + fmt_set(w->first, universe) + ", N'=" + fmt_set(w->second, universe) +
                ", i=" + universe.student_name(w->i) + ", j=" + universe.student_name(w->j)
          : "none");
  b.add("induced choice responsive", false, "false", yes(recover_priority(choice, universe.capacity(0)).responsive));
  b.add("population monotonicity at P̃", true, "holds", [&] {
    for (StudentSet small = 1; small < 16; ++small)
      for (StudentSet large = small; large < 16; ++large) {
        if ((small & ~large) != 0) continue;
        const Matching a = phi(universe, small, p);
        const Matching z = phi(universe, large, p);
        for (Student i : members_of(small))
          if (p[i].prefers(z[i], a[i])) return std::string("fails");
      }
    return std::string("holds");
  }());
  const Profile r = with(p, 3, "s0,s1");
  b.add("Φ_s({1,2,3}) vs Φ_s(N̄), student 4 declines s", false, "{1,3} vs {2,3}",
        fmt_set(phi(universe, 0b0111, r).members_set(0), universe) + " vs " +
            fmt_set(phi(universe, 0b1111, r).members_set(0), universe));
  return b.report;
}

FixtureReport fx_d2() {
  Builder b;
  const Context c = d2_context();
  const Profile p = d2_profile();
  const std::string mu = "((1,s2),(2,s2),(3,s1),(4,s1))";
  const std::string eta = "((1,s1),(2,s2),(3,s1),(4,s2))";
  const std::string rho = "((1,s1),(2,s1),(3,s2),(4,s2))";
  b.add("stable matchings", true, join_sorted({mu, eta, rho}), fmt_matchings(enumerate_stable(c, p), c));
  b.add("DA(P)", false, mu, format_matching(da_student(c, p), c));
  b.add("DA^S(P)", false, rho, format_matching(da_school(c, p), c));
  b.add("school-median(P)", true, eta, format_matching(school_median(c, p), c));
  const Profile q = with(p, 0, "s1,s2,s0");
  b.add("stable matchings after P'_1", true, join_sorted({eta, rho}), fmt_matchings(enumerate_stable(c, q), c));
  b.add("school-median(P'_1,P_-1)", true, rho, format_matching(school_median(c, q), c));
  b.add("school-median local non-bossiness", true, "fails",
        verdict(check_local_non_bossy(school_median_mechanism(), c).holds));
  const Matching envious({1, 0, 0, 1});
  b.add("((1,s2),(2,s1),(3,s1),(4,s2)) has justified envy", false, "true",
        yes(!audit_matching(envious, c, p).envy_triples.empty()));
  return b.report;
}

FixtureReport fx_d3() {
  Builder b;
  const Context c = d3_context();
  const Profile p = d3_profile();
  const Matching mu = da_student(c, p);
  const Matching mu_prime = da_student(c, with(p, 0, "s1"));
  b.add("μ = DA(P)", true, "((1,s1),(2,s5),(3,s4),(4,s3),(5,s2),(6,s1))", format_matching(mu, c));
  b.add("μ' = DA(P'_1,P_-1)", true, "((1,s1),(2,s2),(3,s3),(4,s4),(5,s5),(6,s1))", format_matching(mu_prime, c));
  const ImprovementGraph g = build_graph(mu, mu_prime, c, p);
  b.add("V", true, "{2,3,4,5}", fmt_students(g.nodes, c));
  b.add("E", true, "{[2,5],[3,4],[4,3],[5,2]}", fmt_edges(g.edges, c));
  b.add("blockers of [2,5] in V", true, "{3}", fmt_students(blocking_set(1, 4, g, c, p), c));
  b.add("blockers of [3,4] in V", true, "{2}", fmt_students(blocking_set(2, 3, g, c, p), c));
  const ImprovementGraph g_prime = edge_replace(g, c, p);
  b.add("E'", true, "{[2,4],[3,5],[4,3],[5,2]}", fmt_edges(g_prime.edges, c));
  const std::vector<Student> cycle = find_cycle(g_prime);
  b.add("cycle of G'", true, "(2,4,3,5)", fmt_cycle(cycle, c));
  b.add("cycle of G' is μ-improving", true, "true", yes(is_improving_cycle(cycle, mu, p)));
  std::vector<std::string> cycles;
  for (const auto& k : all_cycles(g)) cycles.push_back(fmt_cycle(k, c));
  b.add("cycles of G", true, join_sorted({"(2,5)", "(3,4)"}), join_sorted(cycles));
  b.add("find_cycle on G", false, "(2,5)", fmt_cycle(find_cycle(g), c));
  b.add("blockers of (2,4,3,5)", true, "{1}", fmt_students(cycle_blockers(cycle, mu, c, p), c));
  std::string at;
  for (auto [k, from, to] : cycle_blocks(cycle, mu, c, p))
    at += (at.empty() ? "" : ",") + c.student_name(k) + "@[" + c.student_name(from) + "," + c.student_name(to) + "]";
  b.add("blocking edge of (2,4,3,5)", true, "1@[3,5]", at);
  b.add("blockers of (2,5)", true, "{1,3}", fmt_students(cycle_blockers({1, 4}, mu, c, p), c));
  b.add("blockers of (3,4)", true, "{2}", fmt_students(cycle_blockers({2, 3}, mu, c, p), c));
  const Matching eta = apply_cycle(mu, cycle, p);
  b.add("η = μ after (2,4,3,5)", true, "((1,s1),(2,s3),(3,s2),(4,s4),(5,s5),(6,s1))", format_matching(eta, c));
  b.add("μ' implements (2,4,3,5)", true, "false", yes(eta == mu_prime));
  b.add("μ' Pareto dominates η", true, "true", yes(weakly_pareto_dominates(mu_prime, eta, p) && mu_prime != eta));
  return b.report;
}

struct Entry {
  const char* name;
  const char* title;
  FixtureReport (*run)();
  Instance (*instance)();
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"FX-EK1", "variable-population mechanism failing only weak local non-bossiness", fx_ek1,
       [] { return plain(ek1_context(), ek1_profile()); }},
      {"FX-EX2", "two stable matchings, an Ergin cycle and manipulable stable selections", fx_ex2,
       [] { return plain(ex2_context(), ex2_profile()); }},
      {"FX-A1", "stable mechanism that is neither locally non-bossy nor strategy-proof", fx_a1,
       [] { return plain(a1_context(), a1_profile()); }},
      {"FX-A2", "locally group strategy-proof mechanism that is locally and weakly bossy", fx_a2,
       [] { return plain(a2_context(), a2_profile()); }},
      {"FX-A3", "locally non-bossy mechanism that is locally group bossy", fx_a3,
       [] { return plain(a3_context(), a3_profile()); }},
      {"FX-A4", "strategy-proof mechanism that is not locally group strategy-proof", fx_a4,
       [] { return plain(a4_context(), a4_profile()); }},
      {"FX-L3", "locally non-bossy and strategy-proof but weakly bossy", fx_l3,
       [] { return plain(l3_context(), l3_profile()); }},
      {"FX-B1", "substitutable choice with aggregate demand, DA locally bossy", fx_b1, [] { return b1_instance(); }},
      {"FX-B2", "substitutable q-acceptant choice, DA locally bossy", fx_b2, [] { return b2_instance(); }},
      {"FX-C1", "variable-population mechanism failing only S-WrARP", fx_c1,
       [] { return plain(c1_context(), c1_profile()); }},
      {"FX-D2", "school-median stable mechanism is locally bossy", fx_d2,
       [] { return plain(d2_context(), d2_profile()); }},
      {"FX-D3", "improvement graph, edge replacement and the blocked cycle", fx_d3,
       [] { return plain(d3_context(), d3_profile()); }},
  };
  return entries;
}

const Entry& lookup(const std::string& name) {
  for (const Entry& e : registry())
    if (name == e.name) return e;
  throw DomainError("unknown fixture '" + name + "'");
}

}  // namespace

bool FixtureReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const FixtureCheck& c) { return c.passed(); });
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Entry& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

Instance fixture_instance(const std::string& name) { return lookup(name).instance(); }

Instance repaired_choice_instance(const std::string& name) {
  if (name == "FX-B1") return b1_instance(true);
  if (name == "FX-B2") return b2_instance(true);
  throw DomainError("no repaired table for '" + name + "'");
}

FixtureReport reproduce_fixture(const std::string& name) {
  const Entry& e = lookup(name);
  FixtureReport report = e.run();
  report.name = e.name;
  report.title = e.title;
  return report;
}

std::vector<FixtureReport> reproduce_all() {
  std::vector<FixtureReport> out;
  for (const std::string& name : fixture_names()) out.push_back(reproduce_fixture(name));
  return out;
}

Preference parse_ranking(const std::string& text, int num_schools) {
  std::vector<School> listed;
  bool has_outside = false;
  for (const std::string& token : split(text)) {
    if (token.size() < 2 || token[0] != 's') throw DomainError("bad alternative '" + token + "'", text);
    const int k = std::stoi(token.substr(1));
    if (k == 0) has_outside = true;
    listed.push_back(k == 0 ? kOutside : k - 1);
  }
  if (!has_outside) return Preference::from_admissible(listed, num_schools);
  for (School s = 0; s < num_schools; ++s)
    if (std::find(listed.begin(), listed.end(), s) == listed.end()) listed.push_back(s);
  return Preference(listed, num_schools);
}

Context make_context(int num_students, const std::vector<std::string>& priorities, std::vector<int> capacities) {
  std::vector<std::vector<Student>> orders;
  for (const std::string& text : priorities) {
    std::vector<Student> order;
    for (const std::string& token : split(text)) order.push_back(std::stoi(token) - 1);
    for (Student i = 0; i < num_students; ++i)
      if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
    orders.push_back(std::move(order));
  }
  return Context(num_students, std::move(orders), std::move(capacities));
}

Mechanism fx_a1_mechanism() {
  return {"fx-a1", [](const Context& c, const Profile& p) {
            static const Profile special = a1_profile();
            if (p == special) return da_school(c, p);
            return da_student(c, p);
          }};
}

Mechanism fx_a2_mechanism() {
  return {"fx-a2", [](const Context& c, const Profile& p) {
            if (p[0].top() != 0) return da_student(c, p);
            Matching m = Matching::unassigned(c.num_students());
            m[0] = 0;
            return m;
          }};
}

Mechanism fx_a3_mechanism() {
  return {"fx-a3", [](const Context& c, const Profile& p) {
            Matching m = Matching::unassigned(c.num_students());
            if (p[0].top() == 0 && p[1].top() == 0) m = Matching({0, 0, 1});
            if (p[0].top() == 1 && p[1].top() == 1) m = Matching({0, 0, 0});
            return m;
          }};
}

Mechanism fx_a4_mechanism() {
  return {"fx-a4", [](const Context&, const Profile& p) {
            const auto ranking = p[0].ranking();
            if (ranking[1] == 1) return Matching({ranking[0], 0, 1});
            return Matching({ranking[0], 1, 0});
          }};
}

Mechanism fx_l3_mechanism() {
  return {"fx-l3", [](const Context&, const Profile& p) {
            if (p[0].prefers(1, 0)) return Matching({0, 0, 1});
            return Matching({0, 0, kOutside});
          }};
}

PopulationMechanism fx_ek1_mechanism() {
  return {"fx-ek1", [](const Context& universe, StudentSet population, const Profile& p) {
            const bool both = contains(population, 0) && contains(population, 1);
            if (!(both && p[0].top() == 1 && p[1].top() == 1)) return da_student(universe, p, population);
            std::vector<std::vector<Student>> priorities = universe.priorities();
            auto& first = priorities[0];
            std::iter_swap(std::find(first.begin(), first.end(), 2), std::find(first.begin(), first.end(), 3));
            const Context swapped(universe.num_students(), priorities, universe.capacities());
            return da_student(swapped, p, population);
          }};
}

PopulationMechanism fx_c1_mechanism() {
  return {"fx-c1", [](const Context& universe, StudentSet population, const Profile& p) {
            const StudentSet special = 0b0111;
            bool all_admissible = true;
            for (Student i : members_of(special)) all_admissible = all_admissible && p[i].admissible(0);
            if (population == special && all_admissible) return Matching({0, kOutside, 0, kAbsent});
            std::vector<Student> order(universe.num_students());
            for (Student i = 0; i < universe.num_students(); ++i) order[i] = universe.num_students() - 1 - i;
            std::vector<std::vector<Student>> priorities(universe.num_schools(), order);
            const Context sd(universe.num_students(), priorities, universe.capacities());
            return da_student(sd, p, population);
          }};
}

std::vector<RegisteredMechanism> registered_mechanisms() {
  const PopulationMechanism ek1 = fx_ek1_mechanism();
  const StudentSet everyone = full_set(4);
  return {
      {"fx-a1", fx_a1_mechanism(), a1_context()},
      {"fx-a2", fx_a2_mechanism(), a2_context()},
      {"fx-a3", fx_a3_mechanism(), a3_context()},
      {"fx-a4", fx_a4_mechanism(), a4_context()},
      {"fx-l3", fx_l3_mechanism(), l3_context()},
      {"fx-ek1", Mechanism{"fx-ek1", [ek1, everyone](const Context& c, const Profile& p) { return ek1(c, everyone, p); }},
       ek1_context()},
      {"boston", boston_mechanism(), a1_context()},
      {"da-school", da_school_mechanism(), d2_context()},
      {"median", school_median_mechanism(), d2_context()},
      {"da", da_mechanism(), d2_context()},
  };
}

Mechanism mechanism_by_name(const std::string& name, const Instance& instance, const std::vector<Student>& order) {
  if (name == "da") return da_mechanism();
  if (name == "da-school") return da_school_mechanism();
  if (name == "boston") return boston_mechanism();
  if (name == "median") return school_median_mechanism();
  if (name == "sd") {
    std::vector<Student> o = order;
    if (o.empty())
      for (Student i = 0; i < instance.context.num_students(); ++i) o.push_back(i);
    return serial_dictatorship_mechanism(o);
  }
  if (name == "da-choice") {
    if (instance.choices.empty()) throw DomainError("da-choice needs choice tables in the instance");
    return choice_da_mechanism(instance.choices);
  }
  if (name.rfind("fx-", 0) == 0) {
    const Context& c = instance.context;
    const int q_needed = name == "fx-a3" ? 3 : 0;
    if (c.num_students() != 3 || c.num_schools() != 2 || (q_needed && c.capacity(0) < q_needed))
      throw DomainError(name + " is defined for 3 students and 2 schools");
  }
  if (name == "fx-a1") return fx_a1_mechanism();
  if (name == "fx-a2") return fx_a2_mechanism();
  if (name == "fx-a3") return fx_a3_mechanism();
  if (name == "fx-a4") return fx_a4_mechanism();
  if (name == "fx-l3") return fx_l3_mechanism();
  throw DomainError("unknown mechanism '" + name + "'");
}

PopulationMechanism population_mechanism_by_name(const std::string& name) {
  if (name == "da") return da_population_mechanism();
  if (name == "fx-ek1") return fx_ek1_mechanism();
  if (name == "fx-c1") return fx_c1_mechanism();
  throw DomainError("unknown population mechanism '" + name + "'");
}

}  // namespace schoolchoice
