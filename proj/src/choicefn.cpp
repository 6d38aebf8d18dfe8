#include "schoolchoice/choicefn.hpp"

#include <algorithm>
#include <stdexcept>

namespace schoolchoice {

ChoiceFunction::ChoiceFunction(int num_students, std::vector<StudentSet> table)
    : num_students_(num_students), table_(std::move(table)) {
  if (num_students < 0 || num_students > kMaxChoiceStudents)
    throw DomainError("choice tables support at most " + std::to_string(kMaxChoiceStudents) + " students");
  if (table_.size() != (std::size_t{1} << num_students)) throw DomainError("choice table must cover every subset");
  for (StudentSet set = 0; set < table_.size(); ++set)
    if ((table_[set] & ~set) != 0) throw DomainError("choice picks a student outside the candidate set");
}

ChoiceFunction ChoiceFunction::responsive(std::span<const Student> priority, int capacity) {
  const int n = static_cast<int>(priority.size());
  std::vector<StudentSet> table(std::size_t{1} << n, 0);
  for (StudentSet set = 0; set < table.size(); ++set) {
    int taken = 0;
    for (Student i : priority) {
      if (taken == capacity) break;
      if (contains(set, i)) {
        table[set] |= singleton(i);
        ++taken;
      }
    }
  }
  return ChoiceFunction(n, std::move(table));
}

ChoiceFunction ChoiceFunction::from_ranked_sets(int num_students, const std::vector<StudentSet>& ranked) {
  std::vector<StudentSet> table(std::size_t{1} << num_students, 0);
  for (StudentSet set = 0; set < table.size(); ++set) {
    for (StudentSet option : ranked) {
      if ((option & ~set) == 0) {
        table[set] = option;
        break;
      }
    }
  }
  return ChoiceFunction(num_students, std::move(table));
}

// Single removals suffice for both properties: any N' ⊆ N'' is reached from
// N'' by a chain of them.
std::optional<ChoiceWitness> check_substitutable(const ChoiceFunction& choice) {
  const auto& table = choice.table();
  for (StudentSet larger = 0; larger < table.size(); ++larger) {
    for (Student j : members_of(larger)) {
      StudentSet smaller = larger & ~singleton(j);
      StudentSet lost = table[larger] & smaller & ~table[smaller];
      if (lost) return ChoiceWitness{members_of(lost).front(), smaller, larger};
    }
  }
  return std::nullopt;
}

std::optional<ChoiceWitness> check_lad(const ChoiceFunction& choice) {
  const auto& table = choice.table();
  for (StudentSet larger = 0; larger < table.size(); ++larger) {
    for (Student j : members_of(larger)) {
      StudentSet smaller = larger & ~singleton(j);
      if (set_size(table[smaller]) > set_size(table[larger])) return ChoiceWitness{j, smaller, larger};
    }
  }
  return std::nullopt;
}

QAcceptance check_q_acceptance(const ChoiceFunction& choice) {
  const auto& table = choice.table();
  const int q = set_size(table.back());
  for (StudentSet set = 0; set < table.size(); ++set)
    if (set_size(table[set]) != std::min(q, set_size(set))) return QAcceptance{std::nullopt, set};
  return QAcceptance{q, 0};
}

Matching da_with_choice(const Profile& profile, const std::vector<ChoiceFunction>& choices) {
  const int n = static_cast<int>(profile.size());
  const int m = static_cast<int>(choices.size());
  for (const ChoiceFunction& c : choices)
    if (c.num_students() != n) throw DomainError("choice function population differs from the profile");
  for (const Preference& p : profile)
    if (p.num_schools() != m) throw DomainError("preference ranks a different school set");

  std::vector<int> next(n, 0);
  std::vector<StudentSet> held(m, 0);
  StudentSet free = full_set(n);
  const int bound = n * m + 1;
  for (int round = 0; free; ++round) {
    if (round > bound) throw std::logic_error("deferred acceptance exceeded its round bound");
    std::vector<StudentSet> incoming(m, 0);
    bool any = false;
    for (Student i : members_of(free)) {
      School s = profile[i].ranking()[next[i]];
      if (s == kOutside) continue;
      ++next[i];
      incoming[s] |= singleton(i);
      any = true;
    }
    if (!any) break;
    free = 0;
    for (School s = 0; s < m; ++s) {
      if (!incoming[s]) continue;
      StudentSet pool = held[s] | incoming[s];
      held[s] = choices[s](pool);
      free |= pool & ~held[s];
    }
  }

  Matching result = Matching::unassigned(n);
  for (School s = 0; s < m; ++s)
    for (Student i : members_of(held[s])) result[i] = s;
  return result;
}

ChoiceStabilityReport audit_choice_stability(const Matching& matching, const Profile& profile,
                                             const std::vector<ChoiceFunction>& choices) {
  ChoiceStabilityReport report;
  const int n = matching.num_students();
  const int m = static_cast<int>(choices.size());
  for (Student i = 0; i < n; ++i) {
    if (!profile[i].weakly_prefers(matching[i], kOutside)) {
      report.individually_rational = false;
      report.irrational_students.push_back(i);
    }
  }
  for (School s = 0; s < m; ++s) {
    StudentSet members = matching.members_set(s);
    if (choices[s](members) != members) {
      report.individually_rational = false;
      report.unstable_schools.push_back(s);
    }
  }
  for (Student i = 0; i < n; ++i) {
    for (School s = 0; s < m; ++s) {
      if (!profile[i].prefers(s, matching[i])) continue;
      if (contains(choices[s](matching.members_set(s) | singleton(i)), i)) report.blocking_pairs.emplace_back(i, s);
    }
  }
  report.stable = report.individually_rational && report.blocking_pairs.empty();
  return report;
}

Mechanism choice_da_mechanism(std::vector<ChoiceFunction> choices) {
  return {"da-choice", [choices = std::move(choices)](const Context&, const Profile& profile) {
            return da_with_choice(profile, choices);
          }};
}

Context choice_context(const std::vector<ChoiceFunction>& choices, std::vector<std::string> school_names) {
  const int n = choices.empty() ? 0 : choices.front().num_students();
  std::vector<Student> ids(n);
  for (Student i = 0; i < n; ++i) ids[i] = i;
  std::vector<std::vector<Student>> priorities(choices.size(), ids);
  std::vector<int> capacities;
  for (const ChoiceFunction& c : choices) capacities.push_back(std::max(1, set_size(c(full_set(n)))));
  return Context(n, std::move(priorities), std::move(capacities), {}, std::move(school_names));
}

}  // namespace schoolchoice
