#include "schoolchoice/axioms.hpp"

#include <algorithm>
#include <sstream>

#include "schoolchoice/profile_space.hpp"

namespace schoolchoice {

namespace {

struct AxiomInfo {
  Axiom axiom;
  const char* name;
};

constexpr AxiomInfo kAxioms[] = {
    {Axiom::StrategyProof, "sp"},
    {Axiom::NonBossy, "nb"},
    {Axiom::LocalNonBossy, "lnb"},
    {Axiom::WeakNonBossy, "wnb"},
    {Axiom::GroupStrategyProof, "gsp"},
    {Axiom::LocalGroupStrategyProof, "lgsp"},
    {Axiom::GroupNonBossy, "gnb"},
    {Axiom::LocalGroupNonBossy, "lgnb"},
    {Axiom::ColleagueDisjoint, "coll"},
};

std::string format_set(StudentSet set, const Context& context) {
  std::string out = "{";
  bool first = true;
  for (Student i : members_of(set)) {
    if (!first) out += ',';
    first = false;
    out += context.student_name(i);
  }
  return out + "}";
}

bool same_schools(const std::vector<Student>& coalition, const Matching& a, const Matching& b) {
  for (Student i : coalition)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

const char* axiom_name(Axiom axiom) {
  for (const auto& info : kAxioms)
    if (info.axiom == axiom) return info.name;
  return "?";
}

std::optional<Axiom> parse_axiom(const std::string& name) {
  for (const auto& info : kAxioms)
    if (name == info.name) return info.axiom;
  return std::nullopt;
}

bool is_coalitional(Axiom axiom) {
  return axiom == Axiom::GroupStrategyProof || axiom == Axiom::LocalGroupStrategyProof ||
         axiom == Axiom::GroupNonBossy || axiom == Axiom::LocalGroupNonBossy;
}

bool is_local(Axiom axiom) { return axiom == Axiom::LocalGroupStrategyProof || axiom == Axiom::LocalGroupNonBossy; }

bool violates(Axiom axiom, const std::vector<Student>& deviators, School school, const Matching& before,
              const Matching& after, const Profile& truth) {
  if (deviators.empty()) return false;
  const Student i = deviators.front();
  switch (axiom) {
    case Axiom::StrategyProof:
      return truth[i].prefers(after[i], before[i]);
    case Axiom::NonBossy:
      return before[i] == after[i] && before != after;
    case Axiom::LocalNonBossy:
      return before[i] == after[i] && before.members_set(before[i]) != after.members_set(before[i]);
    case Axiom::WeakNonBossy:
      return before[i] == after[i] && before.members_set(kOutside) != after.members_set(kOutside);
    case Axiom::ColleagueDisjoint:
      return before[i] != after[i] && (before.colleagues(i) & after.colleagues(i)) != 0;
    case Axiom::GroupStrategyProof:
    case Axiom::LocalGroupStrategyProof: {
      if (axiom == Axiom::LocalGroupStrategyProof)
        for (Student j : deviators)
          if (before[j] != school) return false;
      bool gain = false;
      for (Student j : deviators) {
        if (truth[j].prefers(before[j], after[j])) return false;
        gain = gain || truth[j].prefers(after[j], before[j]);
      }
      return gain;
    }
    case Axiom::GroupNonBossy:
      return same_schools(deviators, before, after) && before != after;
    case Axiom::LocalGroupNonBossy:
      for (Student j : deviators)
        if (before[j] != school) return false;
      return same_schools(deviators, before, after) && before.members_set(school) != after.members_set(school);
  }
  return false;
}

bool replay(const Counterexample& witness, const Mechanism& mechanism, const Context& context) {
  Matching before = mechanism(context, witness.profile);
  Matching after = mechanism(context, witness.deviated);
  if (before != witness.before || after != witness.after) return false;
  for (Student i = 0; i < context.num_students(); ++i) {
    bool deviates = std::binary_search(witness.deviators.begin(), witness.deviators.end(), i);
    if (!deviates && !(witness.profile[i] == witness.deviated[i])) return false;
  }
  return violates(witness.axiom, witness.deviators, witness.school, before, after, witness.profile);
}

std::string describe(const Counterexample& w, const Context& context) {
  std::ostringstream out;
  const Student i = w.deviators.empty() ? 0 : w.deviators.front();
  const std::string& name = context.student_name(i);
  switch (w.axiom) {
    case Axiom::StrategyProof:
      out << "student " << name << " gains " << context.school_name(w.after[i]) << " over "
          << context.school_name(w.before[i]) << " by misreporting";
      break;
    case Axiom::NonBossy:
      out << "student " << name << " keeps " << context.school_name(w.before[i]) << " but the matching changes";
      break;
    case Axiom::LocalNonBossy:
      out << "student " << name << " keeps " << context.school_name(w.before[i]) << " but its members change "
          << format_set(w.before.members_set(w.before[i]), context) << " -> "
          << format_set(w.after.members_set(w.before[i]), context);
      break;
    case Axiom::WeakNonBossy:
      out << "student " << name << " keeps " << context.school_name(w.before[i])
          << " but the unassigned set changes " << format_set(w.before.members_set(kOutside), context) << " -> "
          << format_set(w.after.members_set(kOutside), context);
      break;
    case Axiom::ColleagueDisjoint:
      out << "student " << name << " moves " << context.school_name(w.before[i]) << " -> "
          << context.school_name(w.after[i]) << " and keeps colleagues "
          << format_set(w.before.colleagues(i) & w.after.colleagues(i), context);
      break;
    case Axiom::GroupStrategyProof:
    case Axiom::LocalGroupStrategyProof:
      out << "coalition " << format_set(set_of(w.deviators), context) << " manipulates:";
      for (Student j : w.deviators)
        out << ' ' << context.student_name(j) << ':' << context.school_name(w.before[j]) << "->"
            << context.school_name(w.after[j]);
      break;
    case Axiom::GroupNonBossy:
      out << "coalition " << format_set(set_of(w.deviators), context)
          << " keeps its schools but the matching changes";
      break;
    case Axiom::LocalGroupNonBossy:
      out << "coalition " << format_set(set_of(w.deviators), context) << " keeps "
          << context.school_name(w.school) << " but its members change "
          << format_set(w.before.members_set(w.school), context) << " -> "
          << format_set(w.after.members_set(w.school), context);
      break;
  }
  return out.str();
}

std::vector<Verdict> check_axioms(const std::vector<Axiom>& axioms, const Mechanism& mechanism,
                                  const Context& context, const Scope& scope) {
  const int n = context.num_students();
  const int m = context.num_schools();
  if (n > kMaxSetStudents) throw DomainError("too many students for profile search");
  ProfileSpace space(n, m);
  const bool exhaustive =
      scope.coverage == Coverage::Exhaustive || (scope.coverage == Coverage::Automatic && m <= 2);
  if (exhaustive && space.size() > scope.budget)
    throw BudgetExceeded("instance too large: " + std::to_string(space.size()) + " profiles exceed budget " +
                         std::to_string(scope.budget));
  OutcomeCache cache(mechanism, context, space, exhaustive ? space.size() : 0);

  std::vector<Verdict> verdicts;
  for (Axiom a : axioms) {
    Verdict v;
    v.axiom = a;
    v.exhaustive = exhaustive;
    verdicts.push_back(v);
  }
  auto wants_more = [&](const Verdict& v) {
    return scope.max_witnesses == 0 || v.witnesses.size() < scope.max_witnesses;
  };

  const int k = space.num_orders();
  std::vector<std::vector<Student>> coalitions;
  for (StudentSet c = 1; c <= full_set(n) && n > 0; ++c)
    if (set_size(c) <= scope.max_coalition) coalitions.push_back(members_of(c));

  auto examine = [&](Verdict& verdict, const std::vector<int>& code) {
    const Matching before = cache.at(code);
    const Profile truth = space.profile(code);
    auto record = [&](const std::vector<Student>& coalition, School school, const std::vector<int>& dev,
                      const Matching& after) {
      Counterexample w;
      w.axiom = verdict.axiom;
      w.profile = truth;
      w.deviators = coalition;
      w.deviated = space.profile(dev);
      w.school = school;
      w.before = before;
      w.after = after;
      w.evidence = describe(w, context);
      verdict.witnesses.push_back(std::move(w));
      verdict.holds = false;
    };

    std::vector<int> dev = code;
    if (!is_coalitional(verdict.axiom)) {
      for (Student i = 0; i < n; ++i) {
        for (int alt = 0; alt < k; ++alt) {
          if (alt == code[i]) continue;
          dev[i] = alt;
          const Matching& after = cache.at(dev);
          if (violates(verdict.axiom, {i}, before[i], before, after, truth)) {
            record({i}, before[i], dev, after);
            if (!wants_more(verdict)) return;
          }
        }
        dev[i] = code[i];
      }
      return;
    }

    for (const std::vector<Student>& coalition : coalitions) {
      School school = before[coalition.front()];
      if (is_local(verdict.axiom)) {
        bool together = true;
        for (Student j : coalition) together = together && before[j] == school;
        if (!together) continue;
      }
      // Odometer over joint reports of the coalition.
      std::vector<int> digit(coalition.size(), 0);
      while (true) {
        bool truthful = true;
        for (std::size_t c = 0; c < coalition.size(); ++c) {
          dev[coalition[c]] = digit[c];
          truthful = truthful && digit[c] == code[coalition[c]];
        }
        if (!truthful) {
          const Matching& after = cache.at(dev);
          if (violates(verdict.axiom, coalition, school, before, after, truth)) {
            record(coalition, school, dev, after);
            if (!wants_more(verdict)) {
              for (Student j : coalition) dev[j] = code[j];
              return;
            }
          }
        }
        std::size_t c = 0;
        while (c < digit.size() && ++digit[c] == k) digit[c++] = 0;
        if (c == digit.size()) break;
      }
      for (Student j : coalition) dev[j] = code[j];
    }
  };

  auto visit = [&](const std::vector<int>& code) {
    bool any = false;
    for (Verdict& v : verdicts) {
      if (!wants_more(v)) continue;
      any = true;
      ++v.base_profiles;
      examine(v, code);
    }
    return any;
  };

  if (exhaustive) {
    std::vector<int> code(n, 0);
    do {
      if (!visit(code)) break;
    } while (space.next(code));
  } else {
    std::mt19937_64 rng(scope.seed);
    for (std::size_t s = 0; s < scope.samples; ++s)
      if (!visit(space.random_code(rng))) break;
  }
  return verdicts;
}

Verdict check_axiom(Axiom axiom, const Mechanism& mechanism, const Context& context, const Scope& scope) {
  return check_axioms({axiom}, mechanism, context, scope).front();
}

}  // namespace schoolchoice
