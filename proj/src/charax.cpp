#include "schoolchoice/charax.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "schoolchoice/mechanisms.hpp"
#include "schoolchoice/profile_space.hpp"

namespace schoolchoice {

namespace {

struct AxiomName {
  PopulationAxiom axiom;
  const char* name;
};

constexpr AxiomName kNames[] = {
    {PopulationAxiom::IndividuallyRational, "ir"}, {PopulationAxiom::WeaklyNonWasteful, "wnw"},
    {PopulationAxiom::PopulationMonotonic, "pm"},  {PopulationAxiom::StrategyProof, "sp"},
    {PopulationAxiom::WeakLocalNonBossy, "wlnb"},  {PopulationAxiom::SWrARP, "swrarp"},
    {PopulationAxiom::TruncationInvariant, "trunc"},
};

// Truncation classes: every ordered list of distinct schools, as canonical preferences.
std::vector<Preference> all_truncations(int num_schools) {
  std::vector<Preference> out;
  std::vector<School> prefix;
  std::vector<bool> used(num_schools, false);
  auto extend = [&](auto&& self) -> void {
    out.push_back(Preference::from_admissible(prefix, num_schools));
    for (School s = 0; s < num_schools; ++s) {
      if (used[s]) continue;
      used[s] = true;
      prefix.push_back(s);
      self(self);
      prefix.pop_back();
      used[s] = false;
    }
  };
  extend(extend);
  return out;
}

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

StudentSet assigned_to(const Matching& matching, School s) { return matching.members_set(s); }

// Outcomes of Φ over (population, truncated profile) pairs.
class PopulationSearch {
 public:
  PopulationSearch(const PopulationMechanism& mechanism, const Context& universe)
      : mechanism_(mechanism), universe_(universe), truncations_(all_truncations(universe.num_schools())) {}

  int num_truncations() const { return static_cast<int>(truncations_.size()); }
  const Preference& truncation(int t) const { return truncations_[t]; }

  Profile profile(const std::vector<int>& code) const {
    Profile p;
    for (int t : code) p.push_back(truncations_[t]);
    return p;
  }

  const Matching& at(StudentSet population, const std::vector<int>& code) {
    std::uint64_t key = population;
    for (Student i = universe_.num_students() - 1; i >= 0; --i)
      key = key * truncations_.size() + (contains(population, i) ? code[i] : 0);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      std::vector<int> canonical = code;
      for (Student i = 0; i < universe_.num_students(); ++i)
        if (!contains(population, i)) canonical[i] = 0;
      it = cache_.emplace(key, mechanism_(universe_, population, profile(canonical))).first;
    }
    return it->second;
  }

 private:
  const PopulationMechanism& mechanism_;
  const Context& universe_;
  std::vector<Preference> truncations_;
  std::unordered_map<std::uint64_t, Matching> cache_;
};

bool sp_violated(const Matching& before, const Matching& after, Student i, const Profile& truth) {
  return truth[i].prefers(after[i], before[i]);
}

bool wlnb_violated(const Matching& before, const Matching& after, Student i) {
  return before[i] == after[i] && before[i] >= 0 && assigned_to(before, before[i]) != assigned_to(after, before[i]);
}

// Returns the first school s with s P_i s0 left with a free seat while i is unassigned.
std::optional<School> wasted_school(const Matching& matching, Student i, const Context& universe,
                                    const Profile& truth) {
  if (matching[i] != kOutside) return std::nullopt;
  for (School s : truth[i].admissible_schools())
    if (matching.count(s) < universe.capacity(s)) return s;
  return std::nullopt;
}

}  // namespace

PopulationMechanism da_population_mechanism() {
  return {"da", [](const Context& universe, StudentSet population, const Profile& profile) {
            return da_student(universe, profile, population);
          }};
}

PopulationMechanism da_population_mechanism(Context priorities) {
  return {"da", [priorities = std::move(priorities)](const Context&, StudentSet population, const Profile& profile) {
            return da_student(priorities, profile, population);
          }};
}

const char* population_axiom_name(PopulationAxiom axiom) {
  for (const auto& entry : kNames)
    if (entry.axiom == axiom) return entry.name;
  return "?";
}

const std::vector<PopulationAxiom>& characterization_axioms() {
  static const std::vector<PopulationAxiom> axioms{
      PopulationAxiom::IndividuallyRational, PopulationAxiom::WeaklyNonWasteful,
      PopulationAxiom::PopulationMonotonic,  PopulationAxiom::StrategyProof,
      PopulationAxiom::WeakLocalNonBossy,    PopulationAxiom::SWrARP,
  };
  return axioms;
}

Preference single_school_preference(School s, int num_schools) {
  std::vector<School> admissible{s};
  return Preference::from_admissible(admissible, num_schools);
}

ChoiceFunction derive_choice_function(const PopulationMechanism& mechanism, const Context& universe, School s) {
  const int n = universe.num_students();
  const int m = universe.num_schools();
  if (n > kMaxChoiceStudents) throw DomainError("universe too large for a choice table");
  const Profile canonical(n, single_school_preference(s, m));
  // Another representative of the same truncation: the other schools in reverse order.
  std::vector<School> alt_order{s, kOutside};
  for (School t = m - 1; t >= 0; --t)
    if (t != s) alt_order.push_back(t);
  const Profile alternative(n, Preference(alt_order, m));

  std::vector<StudentSet> table(std::size_t{1} << n, 0);
  for (StudentSet population = 1; population < table.size(); ++population) {
    Matching outcome = mechanism(universe, population, canonical);
    if (mechanism(universe, population, alternative) != outcome)
      throw DomainError("truncation invariance violated while deriving the choice of " + universe.school_name(s));
    table[population] = outcome.members_set(s) & population;
  }
  return ChoiceFunction(n, std::move(table));
}

std::optional<WrarpWitness> check_wrarp_q1(const ChoiceFunction& choice, int q) {
  std::vector<StudentSet> sets;
  for (StudentSet set = 0; set < choice.table().size(); ++set)
    if (set_size(set) == q + 1) sets.push_back(set);
  for (StudentSet first : sets) {
    for (StudentSet second : sets) {
      const StudentSet common = first & second;
      for (Student i : members_of(common)) {
        for (Student j : members_of(common)) {
          if (i == j) continue;
          if (contains(choice(first), i) && contains(choice(second), j) && !contains(choice(first), j) &&
              !contains(choice(second), i))
            return WrarpWitness{first, second, i, j};
        }
      }
    }
  }
  return std::nullopt;
}

PriorityRecovery recover_priority(const ChoiceFunction& choice, int q) {
  const int n = choice.num_students();
  PriorityRecovery result;
  if (n <= q) {
    result.unconstrained = true;
    for (Student i = 0; i < n; ++i) result.order.push_back(i);
  } else {
    // above[r] collects students revealed above r: whenever C drops exactly r from a (q+1)-set.
    std::vector<StudentSet> above(n, 0);
    for (StudentSet set = 0; set < choice.table().size(); ++set) {
      if (set_size(set) != q + 1) continue;
      StudentSet rejected = set & ~choice(set);
      if (set_size(rejected) != 1) {
        result.violating = set;
        return result;
      }
      Student r = members_of(rejected).front();
      above[r] |= set & ~rejected;
    }
    // Kahn's algorithm, smallest id first among students with nothing left above them.
    StudentSet placed = 0;
    while (static_cast<int>(result.order.size()) < n) {
      Student pick = -1;
      for (Student i = 0; i < n && pick < 0; ++i)
        if (!contains(placed, i) && (above[i] & ~placed) == 0) pick = i;
      if (pick < 0) {
        for (Student i = 0; i < n; ++i)
          if (!contains(placed, i)) result.order.push_back(i);
        break;
      }
      result.order.push_back(pick);
      placed |= singleton(pick);
    }
  }
  ChoiceFunction rebuilt = ChoiceFunction::responsive(result.order, q);
  for (StudentSet set = 0; set < choice.table().size(); ++set) {
    if (rebuilt(set) != choice(set)) {
      result.violating = set;
      return result;
    }
  }
  result.responsive = true;
  return result;
}

bool priorities_agree_where_binding(std::span<const Student> a, std::span<const Student> b, int q) {
  if (a.size() != b.size()) return false;
  std::vector<int> rank_b(b.size());
  for (std::size_t pos = 0; pos < b.size(); ++pos) rank_b[b[pos]] = static_cast<int>(pos);
  for (std::size_t y = static_cast<std::size_t>(q); y < a.size(); ++y)
    for (std::size_t x = 0; x < y; ++x)
      if (rank_b[a[x]] > rank_b[a[y]]) return false;
  return true;
}

std::vector<PopulationVerdict> check_population_axioms(const std::vector<PopulationAxiom>& axioms,
                                                       const PopulationMechanism& mechanism, const Context& universe,
                                                       const Scope& scope) {
  const int n = universe.num_students();
  const int m = universe.num_schools();
  if (n > kMaxChoiceStudents) throw DomainError("universe too large for population search");
  PopulationSearch search(mechanism, universe);
  const int t = search.num_truncations();

  std::vector<PopulationVerdict> verdicts;
  for (PopulationAxiom a : axioms) verdicts.push_back(PopulationVerdict{a, true, {}});
  auto wants_more = [&](const PopulationVerdict& v) {
    return scope.max_witnesses == 0 || v.witnesses.size() < scope.max_witnesses;
  };
  auto record = [&](PopulationVerdict& v, PopulationWitness w) {
    v.holds = false;
    v.witnesses.push_back(std::move(w));
  };

  // S-WrARP reads the induced choice functions only.
  for (PopulationVerdict& v : verdicts) {
    if (v.axiom != PopulationAxiom::SWrARP) continue;
    for (School s = 0; s < m && wants_more(v); ++s) {
      ChoiceFunction choice = derive_choice_function(mechanism, universe, s);
      if (auto w = check_wrarp_q1(choice, universe.capacity(s))) {
        PopulationWitness witness;
        witness.population = w->first;
        witness.other_population = w->second;
        witness.student = w->i;
        witness.other_student = w->j;
        witness.school = s;
        witness.profile = Profile(n, single_school_preference(s, m));
        witness.before = mechanism(universe, w->first, witness.profile);
        witness.after = mechanism(universe, w->second, witness.profile);
        std::ostringstream out;
        out << "at " << universe.school_name(s) << ": C(" << format_set(w->first, universe)
            << ")=" << format_set(choice(w->first), universe) << ", C(" << format_set(w->second, universe)
            << ")=" << format_set(choice(w->second), universe) << ", i=" << universe.student_name(w->i)
            << ", j=" << universe.student_name(w->j);
        witness.evidence = out.str();
        record(v, std::move(witness));
      }
    }
  }

  std::vector<Preference> orders = all_preferences(m);
  auto visit = [&](StudentSet population, const std::vector<int>& code, bool canonical) {
    const Profile truth = search.profile(code);
    const Matching before = search.at(population, code);
    for (PopulationVerdict& v : verdicts) {
      if (!wants_more(v)) continue;
      PopulationWitness w;
      w.population = population;
      w.profile = truth;
      w.before = before;
      switch (v.axiom) {
        case PopulationAxiom::IndividuallyRational:
          if (!canonical) break;
          for (Student i : members_of(population)) {
            if (truth[i].weakly_prefers(before[i], kOutside)) continue;
            w.student = i;
            w.school = before[i];
            w.evidence = "student " + universe.student_name(i) + " gets inadmissible " + universe.school_name(before[i]);
            record(v, w);
            break;
          }
          break;
        case PopulationAxiom::WeaklyNonWasteful:
          if (!canonical) break;
          for (Student i : members_of(population)) {
            auto s = wasted_school(before, i, universe, truth);
            if (!s) continue;
            w.student = i;
            w.school = *s;
            w.evidence = "student " + universe.student_name(i) + " unassigned while " + universe.school_name(*s) +
                         " has a free seat";
            record(v, w);
            break;
          }
          break;
        case PopulationAxiom::PopulationMonotonic:
          for (Student j = 0; j < n && wants_more(v); ++j) {
            if (contains(population, j)) continue;
            const StudentSet larger = population | singleton(j);
            const Matching& after = search.at(larger, code);
            for (Student i : members_of(population)) {
              if (!truth[i].prefers(after[i], before[i])) continue;
              w.other_population = larger;
              w.after = after;
              w.student = i;
              w.evidence = "student " + universe.student_name(i) + " improves from " +
                           universe.school_name(before[i]) + " to " + universe.school_name(after[i]) + " when " +
                           universe.student_name(j) + " joins";
              record(v, w);
              break;
            }
          }
          break;
        case PopulationAxiom::StrategyProof:
        case PopulationAxiom::WeakLocalNonBossy: {
          if (!canonical) break;
          std::vector<int> dev = code;
          bool done = false;
          for (Student i : members_of(population)) {
            for (int alt = 0; alt < t && !done; ++alt) {
              if (alt == code[i]) continue;
              dev[i] = alt;
              const Matching& after = search.at(population, dev);
              bool bad = v.axiom == PopulationAxiom::StrategyProof ? sp_violated(before, after, i, truth)
                                                                   : wlnb_violated(before, after, i);
              if (!bad) continue;
              w.deviated = search.profile(dev);
              w.after = after;
              w.student = i;
              w.school = before[i];
              if (v.axiom == PopulationAxiom::StrategyProof)
                w.evidence = "student " + universe.student_name(i) + " gains " + universe.school_name(after[i]) +
                             " over " + universe.school_name(before[i]);
              else
                w.evidence = "student " + universe.student_name(i) + " keeps " + universe.school_name(before[i]) +
                             " but its members change " + format_set(assigned_to(before, before[i]), universe) +
                             " -> " + format_set(assigned_to(after, before[i]), universe);
              record(v, w);
              done = !wants_more(v);
            }
            dev[i] = code[i];
            if (done) break;
          }
          break;
        }
        case PopulationAxiom::TruncationInvariant: {
          if (!canonical) break;
          for (Student i = 0; i < n && wants_more(v); ++i) {
            for (const Preference& order : orders) {
              const bool same_class = contains(population, i)
                                          ? order.admissible_schools() == truth[i].admissible_schools()
                                          : true;
              if (!same_class || order == truth[i]) continue;
              Profile deviated = truth;
              deviated[i] = order;
              Matching after = mechanism(universe, population, deviated);
              if (after == before) continue;
              w.deviated = deviated;
              w.after = after;
              w.student = i;
              w.evidence = std::string(contains(population, i) ? "inadmissible tail" : "absent preference") +
                           " of student " + universe.student_name(i) + " changes the outcome";
              record(v, w);
              break;
            }
          }
          break;
        }
        case PopulationAxiom::SWrARP:
          break;
      }
    }
  };

  const bool exhaustive = scope.coverage == Coverage::Exhaustive ||
                          (scope.coverage == Coverage::Automatic && n <= 4 && m <= 2);
  if (exhaustive) {
    std::uint64_t total = std::uint64_t{1} << n;
    for (int i = 0; i < n; ++i) {
      total *= static_cast<std::uint64_t>(t);
      if (total > scope.budget) throw BudgetExceeded("instance too large: population search exceeds budget");
    }
    std::vector<int> code(n, 0);
    while (true) {
      for (StudentSet population = 1; population <= full_set(n); ++population) {
        bool canonical = true;
        for (Student i = 0; i < n; ++i)
          if (!contains(population, i) && code[i] != 0) canonical = false;
        visit(population, code, canonical);
      }
      int i = 0;
      while (i < n && ++code[i] == t) code[i++] = 0;
      if (i == n) break;
    }
  } else {
    std::mt19937_64 rng(scope.seed);
    for (std::size_t k = 0; k < scope.samples; ++k) {
      std::vector<int> code(n);
      for (int& c : code) c = static_cast<int>(rng() % static_cast<std::uint64_t>(t));
      StudentSet population = static_cast<StudentSet>(1 + rng() % full_set(n));
      for (Student i = 0; i < n; ++i)
        if (!contains(population, i)) code[i] = 0;
      visit(population, code, true);
      // Monotonicity also needs the newcomers' preferences.
      std::vector<int> full = code;
      for (Student i = 0; i < n; ++i)
        if (!contains(population, i)) full[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(t));
      visit(population, full, false);
    }
  }
  return verdicts;
}

PopulationVerdict check_population_axiom(PopulationAxiom axiom, const PopulationMechanism& mechanism,
                                         const Context& universe, const Scope& scope) {
  return check_population_axioms({axiom}, mechanism, universe, scope).front();
}

bool replay(const PopulationWitness& w, PopulationAxiom axiom, const PopulationMechanism& mechanism,
            const Context& universe) {
  const Matching before = mechanism(universe, w.population, w.profile);
  const Student i = w.student;
  switch (axiom) {
    case PopulationAxiom::IndividuallyRational:
      return before == w.before && !w.profile[i].weakly_prefers(before[i], kOutside);
    case PopulationAxiom::WeaklyNonWasteful:
      return before == w.before && before[i] == kOutside && w.profile[i].admissible(w.school) &&
             before.count(w.school) < universe.capacity(w.school);
    case PopulationAxiom::PopulationMonotonic: {
      const Matching after = mechanism(universe, w.other_population, w.profile);
      return before == w.before && after == w.after && (w.population & ~w.other_population) == 0 &&
             w.profile[i].prefers(after[i], before[i]);
    }
    case PopulationAxiom::StrategyProof:
    case PopulationAxiom::WeakLocalNonBossy: {
      const Matching after = mechanism(universe, w.population, w.deviated);
      for (Student k = 0; k < universe.num_students(); ++k)
        if (k != i && !(w.profile[k] == w.deviated[k])) return false;
      if (before != w.before || after != w.after) return false;
      return axiom == PopulationAxiom::StrategyProof ? sp_violated(before, after, i, w.profile)
                                                     : wlnb_violated(before, after, i);
    }
    case PopulationAxiom::SWrARP: {
      const StudentSet c1 = before.members_set(w.school) & w.population;
      const StudentSet c2 = mechanism(universe, w.other_population, w.profile).members_set(w.school) &
                            w.other_population;
      const int q = universe.capacity(w.school);
      return set_size(w.population) == q + 1 && set_size(w.other_population) == q + 1 &&
             contains(w.population & w.other_population, i) &&
             contains(w.population & w.other_population, w.other_student) && contains(c1, i) &&
             contains(c2, w.other_student) && !contains(c1, w.other_student) && !contains(c2, i);
    }
    case PopulationAxiom::TruncationInvariant:
      return mechanism(universe, w.population, w.deviated) != before;
  }
  return false;
}

CharacterizationReport verify_characterization(const PopulationMechanism& mechanism, const Context& universe,
                                               const Scope& scope) {
  CharacterizationReport report;
  report.truncation = check_population_axiom(PopulationAxiom::TruncationInvariant, mechanism, universe, scope);
  if (!report.truncation.holds) return report;
  report.verdicts = check_population_axioms(characterization_axioms(), mechanism, universe, scope);
  report.all_axioms_hold =
      std::all_of(report.verdicts.begin(), report.verdicts.end(), [](const auto& v) { return v.holds; });

  std::vector<std::vector<Student>> priorities;
  bool responsive = true;
  for (School s = 0; s < universe.num_schools(); ++s) {
    report.recovered.push_back(
        recover_priority(derive_choice_function(mechanism, universe, s), universe.capacity(s)));
    responsive = responsive && report.recovered.back().responsive;
    priorities.push_back(report.recovered.back().order);
  }
  if (!report.all_axioms_hold) return report;
  if (!responsive) {
    report.equal = false;
    return report;
  }

  const Context recovered(universe.num_students(), priorities, universe.capacities(), universe.student_names(),
                          universe.school_names());
  const int n = universe.num_students();
  const int m = universe.num_schools();
  const std::vector<Preference> truncations = all_truncations(m);
  const int t = static_cast<int>(truncations.size());
  auto compare = [&](StudentSet population, const std::vector<int>& code) {
    Profile profile;
    for (int c : code) profile.push_back(truncations[c]);
    Matching phi = mechanism(universe, population, profile);
    Matching da_out = da_student(recovered, profile, population);
    if (phi == da_out) return true;
    PopulationWitness w;
    w.population = population;
    w.profile = profile;
    w.before = phi;
    w.after = da_out;
    w.evidence = "mechanism differs from DA with the recovered priorities";
    report.mismatch = w;
    return false;
  };

  const bool exhaustive = scope.coverage == Coverage::Exhaustive ||
                          (scope.coverage == Coverage::Automatic && n <= 4 && m <= 2);
  report.equal = true;
  if (exhaustive) {
    std::vector<int> code(n, 0);
    while (true) {
      for (StudentSet population = 1; population <= full_set(n); ++population) {
        bool canonical = true;
        for (Student i = 0; i < n; ++i)
          if (!contains(population, i) && code[i] != 0) canonical = false;
        if (canonical && !compare(population, code)) {
          report.equal = false;
          return report;
        }
      }
      int i = 0;
      while (i < n && ++code[i] == t) code[i++] = 0;
      if (i == n) break;
    }
  } else {
    std::mt19937_64 rng(scope.seed);
    for (std::size_t k = 0; k < scope.samples; ++k) {
      std::vector<int> code(n);
      for (int& c : code) c = static_cast<int>(rng() % static_cast<std::uint64_t>(t));
      StudentSet population = static_cast<StudentSet>(1 + rng() % full_set(n));
      if (!compare(population, code)) {
        report.equal = false;
        return report;
      }
    }
  }
  return report;
}

std::vector<ErginCycle> detect_ergin_cycles(const Context& context) {
  const int n = context.num_students();
  const int m = context.num_schools();
  std::vector<ErginCycle> out;
  auto above = [&](School s, Student x) {
    StudentSet set = 0;
    for (Student y = 0; y < n; ++y)
      if (context.higher_priority(s, y, x)) set |= singleton(y);
    return set;
  };
  for (School s = 0; s < m; ++s) {
    for (School sp = 0; sp < m; ++sp) {
      if (sp == s) continue;
      for (Student i = 0; i < n; ++i) {
        for (Student j = 0; j < n; ++j) {
          if (j == i || !context.higher_priority(s, i, j)) continue;
          for (Student k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            if (!context.higher_priority(s, j, k) || !context.higher_priority(sp, k, i)) continue;
            const StudentSet excluded = singleton(i) | singleton(j) | singleton(k);
            const StudentSet pool_s = above(s, j) & ~excluded;
            const StudentSet pool_sp = above(sp, i) & ~excluded;
            const int need_s = context.capacity(s) - 1;
            const int need_sp = context.capacity(sp) - 1;
            bool found = false;
            for (StudentSet a = 0; a <= pool_s && !found; ++a) {
              if ((a & ~pool_s) || set_size(a) != need_s) continue;
              for (StudentSet b = 0; b <= pool_sp && !found; ++b) {
                if ((b & ~pool_sp) || (a & b) || set_size(b) != need_sp) continue;
                out.push_back(ErginCycle{s, sp, i, j, k, a, b});
                found = true;
              }
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace schoolchoice
