#include "schoolchoice/reports.hpp"

#include <sstream>

namespace schoolchoice {

namespace {

Json names(std::span<const Student> students, const Context& context) {
  Json out = Json::array();
  for (Student i : students) out.push_back(context.student_name(i));
  return out;
}

Json edges_to_json(const std::vector<Edge>& edges, const Context& context) {
  Json out = Json::array();
  for (auto [i, j] : edges) out.push_back(Json::array({context.student_name(i), context.student_name(j)}));
  return out;
}

std::string school_or_none(School s, const Context& context) {
  return s == kAbsent ? std::string("absent") : context.school_name(s);
}

bool scalar_array(const Json& value) {
  if (!value.is_array()) return false;
  for (const Json& v : value)
    if (v.is_structured() && !scalar_array(v)) return false;
  return true;
}

std::string inline_value(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string out = "[";
    bool first = true;
    for (const Json& v : value) {
      out += (first ? "" : ", ") + inline_value(v);
      first = false;
    }
    return out + "]";
  }
  if (value.is_object()) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : value.items()) {
      out += (first ? "" : ", ") + k + ": " + inline_value(v);
      first = false;
    }
    return out + "}";
  }
  return value.dump();
}

bool flat_object(const Json& value) {
  if (!value.is_object() || value.size() > 8) return false;
  for (const auto& [k, v] : value.items())
    if (v.is_structured() && !scalar_array(v)) return false;
  return true;
}

void render(const Json& value, int depth, std::ostringstream& out) {
  const std::string pad(2 * depth, ' ');
  if (value.is_object()) {
    for (const auto& [k, v] : value.items()) {
      if (!v.is_structured() || scalar_array(v) || (flat_object(v) && v.size() <= 6)) {
        out << pad << k << ": " << inline_value(v) << '\n';
      } else {
        out << pad << k << ":\n";
        render(v, depth + 1, out);
      }
    }
  } else if (value.is_array()) {
    for (const Json& v : value) {
      if (!v.is_structured() || scalar_array(v) || flat_object(v)) {
        out << pad << "- " << inline_value(v) << '\n';
      } else {
        out << pad << "-\n";
        render(v, depth + 1, out);
      }
    }
  } else {
    out << pad << inline_value(value) << '\n';
  }
}

}  // namespace

Json trace_to_json(const Trace& trace, const Context& context, bool schools_propose) {
  auto pair = [&](std::pair<int, int> p) {
    const Student i = schools_propose ? p.second : p.first;
    const School s = schools_propose ? p.first : p.second;
    return Json::array({context.student_name(i), context.school_name(s)});
  };
  Json out = Json::array();
  for (std::size_t r = 0; r < trace.size(); ++r) {
    Json round = {{"round", r + 1}};
    for (auto [key, list] : {std::pair{"proposals", &trace[r].proposals}, std::pair{"accepted", &trace[r].accepted},
                             std::pair{"rejected", &trace[r].rejected}}) {
      Json entries = Json::array();
      for (auto p : *list) entries.push_back(pair(p));
      round[key] = entries;
    }
    out.push_back(round);
  }
  return out;
}

Json audit_to_json(const StabilityReport& report, const Context& context) {
  Json irrational = names(report.irrational_students, context);
  Json wasteful = Json::array();
  for (auto [i, s] : report.wasteful_pairs)
    wasteful.push_back(Json::array({context.student_name(i), context.school_name(s)}));
  Json envy = Json::array();
  for (auto [i, s, j] : report.envy_triples)
    envy.push_back({{"student", context.student_name(i)},
                    {"school", context.school_name(s)},
                    {"displaced", context.student_name(j)}});
  Json blocking = Json::array();
  for (auto [i, s] : report.blocking_pairs)
    blocking.push_back(Json::array({context.student_name(i), context.school_name(s)}));
  return {{"stable", report.stable},
          {"individually_rational", report.individually_rational},
          {"irrational_students", irrational},
          {"wasteful_pairs", wasteful},
          {"justified_envy", envy},
          {"blocking_pairs", blocking}};
}

Json stable_set_to_json(const std::vector<Matching>& matchings, const Context& context) {
  Json list = Json::array();
  for (const Matching& m : matchings) list.push_back(matching_to_json(m, context));
  return {{"count", matchings.size()}, {"stable_matchings", list}};
}

Json counterexample_to_json(const Counterexample& witness, const Context& context) {
  Json out = {{"deviators", names(witness.deviators, context)}};
  if (is_local(witness.axiom)) out["school"] = context.school_name(witness.school);
  out["profile"] = profile_to_json(witness.profile, context);
  Json reports = Json::object();
  for (Student i : witness.deviators)
    reports[context.student_name(i)] = preference_to_json(witness.deviated[i], context);
  out["reports"] = reports;
  out["before"] = matching_to_json(witness.before, context);
  out["after"] = matching_to_json(witness.after, context);
  out["evidence"] = witness.evidence;
  return out;
}

Json verdict_to_json(const Verdict& verdict, const Context& context) {
  Json witnesses = Json::array();
  for (const Counterexample& w : verdict.witnesses) witnesses.push_back(counterexample_to_json(w, context));
  return {{"axiom", axiom_name(verdict.axiom)},
          {"holds", verdict.holds},
          {"exhaustive", verdict.exhaustive},
          {"base_profiles", verdict.base_profiles},
          {"witnesses", witnesses}};
}

Json population_witness_to_json(const PopulationWitness& witness, const Context& universe) {
  Json out = {{"population", set_to_json(witness.population, universe)}};
  if (witness.other_population) out["other_population"] = set_to_json(witness.other_population, universe);
  out["student"] = universe.student_name(witness.student);
  Json prefs = Json::object();
  for (Student i : members_of(witness.population | witness.other_population))
    prefs[universe.student_name(i)] = preference_to_json(witness.profile[i], universe);
  out["profile"] = prefs;
  if (!witness.deviated.empty())
    out["report"] = preference_to_json(witness.deviated[witness.student], universe);
  auto assignment = [&](const Matching& m) {
    Json a = Json::object();
    for (Student i = 0; i < m.num_students(); ++i)
      if (m[i] != kAbsent) a[universe.student_name(i)] = school_or_none(m[i], universe);
    return a;
  };
  if (witness.before.num_students()) out["before"] = assignment(witness.before);
  if (witness.after.num_students()) out["after"] = assignment(witness.after);
  out["evidence"] = witness.evidence;
  return out;
}

Json population_verdict_to_json(const PopulationVerdict& verdict, const Context& universe) {
  Json witnesses = Json::array();
  for (const PopulationWitness& w : verdict.witnesses) witnesses.push_back(population_witness_to_json(w, universe));
  return {{"axiom", population_axiom_name(verdict.axiom)}, {"holds", verdict.holds}, {"witnesses", witnesses}};
}

Json characterization_to_json(const CharacterizationReport& report, const Context& universe) {
  Json verdicts = Json::array();
  for (const PopulationVerdict& v : report.verdicts) verdicts.push_back(population_verdict_to_json(v, universe));
  Json out = {{"axioms", verdicts},
              {"truncation_invariant", population_verdict_to_json(report.truncation, universe)},
              {"all_axioms_hold", report.all_axioms_hold}};
  Json recovered = Json::array();
  for (School s = 0; s < static_cast<School>(report.recovered.size()); ++s) {
    const PriorityRecovery& r = report.recovered[s];
    recovered.push_back({{"school", universe.school_name(s)},
                         {"responsive", r.responsive},
                         {"unconstrained", r.unconstrained},
                         {"priority", names(r.order, universe)},
                         {"matches_universe", priorities_agree_where_binding(r.order, universe.priority(s),
                                                                             universe.capacity(s))}});
  }
  out["recovered_priorities"] = recovered;
  out["equal_to_da"] = report.equal ? Json(*report.equal) : Json(nullptr);
  out["mismatch"] = report.mismatch ? population_witness_to_json(*report.mismatch, universe) : Json(nullptr);
  return out;
}

Json cycle_report(const Context& context, const Profile& before, const Profile& after) {
  const Matching mu = da_student(context, before);
  const Matching mu_prime = da_student(context, after);
  Json out = {{"mu", matching_to_json(mu, context)}, {"mu_prime", matching_to_json(mu_prime, context)}};
  if (mu == mu_prime) throw DomainError("the two profiles give the same matching");
  const ImprovementGraph g = build_graph(mu, mu_prime, context, before);
  out["improving"] = names(g.improving, context);
  out["V"] = names(g.nodes, context);
  out["E"] = edges_to_json(g.edges, context);
  Json blockers = Json::array();
  for (auto [i, j] : g.edges)
    blockers.push_back({{"edge", Json::array({context.student_name(i), context.student_name(j)})},
                        {"blockers", names(blocking_set(i, j, g, context, before), context)}});
  out["edge_blockers"] = blockers;
  const ImprovementGraph g_prime = edge_replace(g, context, before);
  out["E_prime"] = edges_to_json(g_prime.edges, context);
  std::vector<Student> cycle;
  try {
    cycle = find_cycle(g_prime);
  } catch (const DomainError& e) {
    out["cycle"] = nullptr;
    out["note"] = e.what();
    return out;
  }
  out["cycle"] = names(cycle, context);
  const bool improving = is_improving_cycle(cycle, mu, before);
  out["cycle_improving"] = improving;
  if (!improving) return out;
  Json blocks = Json::array();
  for (auto [k, from, to] : cycle_blocks(cycle, mu, context, before))
    blocks.push_back({{"blocker", context.student_name(k)},
                      {"edge", Json::array({context.student_name(from), context.student_name(to)})}});
  out["cycle_blocks"] = blocks;
  const Matching eta = apply_cycle(mu, cycle, before);
  out["eta"] = matching_to_json(eta, context);
  out["mu_prime_dominates_eta"] = weakly_pareto_dominates(mu_prime, eta, before) && mu_prime != eta;
  return out;
}

Json fixture_report_to_json(const FixtureReport& report) {
  Json checks = Json::array();
  for (const FixtureCheck& c : report.checks)
    checks.push_back({{"label", c.label},
                      {"source", c.published ? "published" : "derived"},
                      {"expected", c.expected},
                      {"actual", c.actual},
                      {"passed", c.passed()}});
  return {{"fixture", report.name}, {"title", report.title}, {"passed", report.passed()}, {"checks", checks}};
}

std::string render_table(const Json& document) {
  std::ostringstream out;
  render(document, 0, out);
  return out.str();
}

}  // namespace schoolchoice
