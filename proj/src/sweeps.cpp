#include "schoolchoice/sweeps.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <sstream>

#include "schoolchoice/charax.hpp"
#include "schoolchoice/externalities.hpp"
#include "schoolchoice/fixtures.hpp"
#include "schoolchoice/mechanisms.hpp"
#include "schoolchoice/profile_space.hpp"

namespace schoolchoice {

namespace {

std::vector<std::vector<Student>> permutations(int n) {
  std::vector<Student> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Student>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void capacity_vectors(int m, int max_capacity, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == m) {
    out.push_back(current);
    return;
  }
  for (int q = 1; q <= max_capacity; ++q) {
    current.push_back(q);
    capacity_vectors(m, max_capacity, current, out);
    current.pop_back();
  }
}

void note(SweepReport& report, const SweepOptions& options, const std::string& text) {
  ++report.counterexamples;
  if (report.examples.size() < options.keep) report.examples.push_back(text);
}

void tally(SweepReport& report, const std::string& key, std::uint64_t amount = 1) {
  for (auto& [name, value] : report.tallies)
    if (name == key) {
      value += amount;
      return;
    }
  report.tallies.emplace_back(key, amount);
}

Scope axiom_scope(const SweepOptions& options) {
  Scope scope;
  scope.coverage = options.coverage;
  scope.seed = options.seed;
  scope.samples = options.samples;
  scope.max_witnesses = 0;
  scope.budget = options.budget;
  return scope;
}

std::uint64_t unilateral_instances(const Context& c, const Verdict& v) {
  const std::uint64_t k = ProfileSpace(c.num_students(), c.num_schools()).num_orders();
  return v.base_profiles * c.num_students() * (k - 1);
}

void unilateral_sweep(SweepReport& report, const SweepOptions& options, Axiom axiom) {
  const Mechanism da = da_mechanism();
  for (const Context& c : sweep_grid(options.bounds)) {
    ++report.contexts;
    const Verdict v = check_axiom(axiom, da, c, axiom_scope(options));
    report.instances += unilateral_instances(c, v);
    if (!v.exhaustive) tally(report, "sampled contexts");
    for (const Counterexample& w : v.witnesses) note(report, options, describe_context(c) + ": " + w.evidence);
  }
}

void lemma_sweep(SweepReport& report, const SweepOptions& options, Axiom conclusion) {
  std::vector<RegisteredMechanism> cases = registered_mechanisms();
  for (const Context& c : sweep_grid(options.bounds)) {
    std::vector<Student> order(c.num_students());
    std::iota(order.begin(), order.end(), 0);
    cases.push_back({"da", da_mechanism(), c});
    cases.push_back({"da-school", da_school_mechanism(), c});
    cases.push_back({"boston", boston_mechanism(), c});
    cases.push_back({"median", school_median_mechanism(), c});
    cases.push_back({"sd", serial_dictatorship_mechanism(order), c});
  }
  Scope scope = axiom_scope(options);
  scope.max_witnesses = 1;
  for (const RegisteredMechanism& r : cases) {
    ++report.contexts;
    ++report.instances;
    scope.max_coalition = r.context.num_students();
    const auto premise = check_axioms({Axiom::LocalNonBossy, Axiom::StrategyProof}, r.mechanism, r.context, scope);
    if (!premise[0].holds || !premise[1].holds) continue;
    tally(report, "premise holds");
    const Verdict v = check_axiom(conclusion, r.mechanism, r.context, scope);
    if (!v.holds)
      note(report, options, r.name + " on " + describe_context(r.context) + ": " + v.witnesses.front().evidence);
  }
}

void corollary_sweep(SweepReport& report, const SweepOptions& options) {
  std::vector<std::vector<int>> capacities = options.capacities;
  if (capacities.empty()) capacities = {{1, 1}, {2, 1}};
  const Mechanism da = da_mechanism();
  Scope scope = axiom_scope(options);
  scope.max_witnesses = 1;
  scope.max_coalition = options.max_coalition;
  for (const std::vector<int>& q : capacities) {
    for (const Context& c : priority_profiles(options.bounds.max_students, q, options.bounds.relabel)) {
      ++report.contexts;
      ++report.instances;
      const bool cyclic = !detect_ergin_cycles(c).empty();
      const bool gsp = check_group_strategy_proof(da, c, scope).holds;
      tally(report, cyclic ? "cyclic" : "acyclic");
      if (gsp) tally(report, "group strategy-proof");
      if (cyclic == gsp)
        note(report, options,
             describe_context(c) + (cyclic ? ": cyclic but group strategy-proof" : ": acyclic but manipulable"));
    }
  }
}

void theorem3_sweep(SweepReport& report, const SweepOptions& options) {
  const ColleagueMechanism mechanism = da_bar_mechanism();
  std::uint64_t index = 0;
  for (const Context& c : sweep_grid(options.bounds)) {
    ++index;
    if (detect_ergin_cycles(c).empty()) {
      tally(report, "acyclic contexts skipped");
      continue;
    }
    ++report.contexts;
    std::mt19937_64 rng(options.seed ^ (index * 0x9E3779B97F4A7C15ULL));
    std::vector<ColleagueProfile> bases;
    for (std::size_t k = 0; k < options.samples; ++k) bases.push_back(random_colleague_profile(c, rng));
    report.instances += bases.size();
    const ExternalityVerdict v = check_sp_externalities(mechanism, c, bases, {}, 0, options.budget);
    for (const ExternalityWitness& w : v.witnesses)
      note(report, options,
           describe_context(c) + ": student " + c.student_name(w.deviator) + " gains " +
               format_matching(w.before, c) + " -> " + format_matching(w.after, c));
    for (const ColleagueProfile& p : bases) {
      const Matching mu = mechanism(c, p);
      if (!is_stable_externalities(mu, c, p)) {
        tally(report, "unstable outcomes");
        note(report, options, describe_context(c) + ": unstable " + format_matching(mu, c));
      }
    }
  }
}

}  // namespace

std::vector<Context> priority_profiles(int num_students, const std::vector<int>& capacities, bool relabel) {
  const int m = static_cast<int>(capacities.size());
  const auto perms = permutations(num_students);
  std::vector<Context> out;
  std::vector<std::size_t> choice(m, 0);
  const std::size_t first_options = relabel ? 1 : perms.size();
  while (true) {
    std::vector<std::vector<Student>> priorities;
    for (int s = 0; s < m; ++s) priorities.push_back(perms[choice[s]]);
    out.emplace_back(num_students, priorities, capacities);
    int s = m - 1;
    while (s >= 0 && ++choice[s] == (s == 0 ? first_options : perms.size())) choice[s--] = 0;
    if (s < 0) break;
  }
  return out;
}

std::vector<Context> sweep_grid(const GridBounds& bounds) {
  std::vector<Context> out;
  for (int n = 1; n <= bounds.max_students; ++n)
    for (int m = 1; m <= bounds.max_schools; ++m) {
      std::vector<std::vector<int>> caps;
      std::vector<int> current;
      capacity_vectors(m, bounds.max_capacity, current, caps);
      for (const auto& q : caps) {
        auto contexts = priority_profiles(n, q, bounds.relabel);
        out.insert(out.end(), contexts.begin(), contexts.end());
      }
    }
  return out;
}

std::string describe_context(const Context& context) {
  std::ostringstream out;
  out << "n=" << context.num_students() << " q=(";
  for (School s = 0; s < context.num_schools(); ++s) out << (s ? "," : "") << context.capacity(s);
  out << ")";
  for (School s = 0; s < context.num_schools(); ++s) {
    out << ' ' << context.school_name(s) << ':';
    bool first = true;
    for (Student i : context.priority(s)) {
      out << (first ? "" : ",") << context.student_name(i);
      first = false;
    }
  }
  return out.str();
}

const char* sweep_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::Theorem1: return "theorem1";
    case SweepKind::Remark1: return "remark1";
    case SweepKind::Lemma1: return "lemma1";
    case SweepKind::Lemma2: return "lemma2";
    case SweepKind::Corollary2: return "corollary2";
    case SweepKind::Theorem3: return "theorem3";
  }
  return "?";
}

std::optional<SweepKind> parse_sweep(const std::string& name) {
  for (SweepKind k : {SweepKind::Theorem1, SweepKind::Remark1, SweepKind::Lemma1, SweepKind::Lemma2,
                      SweepKind::Corollary2, SweepKind::Theorem3})
    if (name == sweep_name(k)) return k;
  return std::nullopt;
}

SweepReport run_sweep(SweepKind kind, const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SweepReport report;
  report.kind = kind;
  switch (kind) {
    case SweepKind::Theorem1: unilateral_sweep(report, options, Axiom::LocalNonBossy); break;
    case SweepKind::Remark1: unilateral_sweep(report, options, Axiom::ColleagueDisjoint); break;
    case SweepKind::Lemma1: lemma_sweep(report, options, Axiom::LocalGroupStrategyProof); break;
    case SweepKind::Lemma2: lemma_sweep(report, options, Axiom::LocalGroupNonBossy); break;
    case SweepKind::Corollary2: corollary_sweep(report, options); break;
    case SweepKind::Theorem3: theorem3_sweep(report, options); break;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json sweep_report_to_json(const SweepReport& report, const SweepOptions& options) {
  Json bounds = {{"max_students", options.bounds.max_students},
                 {"max_schools", options.bounds.max_schools},
                 {"max_capacity", options.bounds.max_capacity},
                 {"relabel", options.bounds.relabel}};
  Json out = {{"sweep", sweep_name(report.kind)},
              {"bounds", bounds},
              {"seed", options.seed},
              {"contexts", report.contexts},
              {"instances", report.instances},
              {"counterexamples", report.counterexamples}};
  Json tallies = Json::object();
  for (const auto& [name, value] : report.tallies) tallies[name] = value;
  out["tallies"] = tallies;
  out["examples"] = report.examples;
  return out;
}

}  // namespace schoolchoice
