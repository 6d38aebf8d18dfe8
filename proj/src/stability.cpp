#include "schoolchoice/stability.hpp"

#include <algorithm>

namespace schoolchoice {

namespace {

void check_budget(const Context& context, std::uint64_t budget) {
  std::uint64_t space = 1;
  for (int k = 0; k < context.num_students(); ++k) {
    space *= static_cast<std::uint64_t>(context.num_schools() + 1);
    if (space > budget)
      throw BudgetExceeded("instance too large: stable-set search space (|S|+1)^|N| exceeds budget " + std::to_string(budget));
  }
}

// Early-exit variant of the audit; assumes capacities hold.
bool stable_fast(const Matching& matching, const Context& context, const Profile& profile,
                 const std::vector<int>& load) {
  const int n = context.num_students();
  for (Student i = 0; i < n; ++i) {
    School own = matching[i];
    if (own != kOutside && !profile[i].admissible(own)) return false;
    for (School s : profile[i].ranking()) {
      if (s == own) break;
      if (s == kOutside) continue;
      if (load[s] < context.capacity(s)) return false;
      for (Student j = 0; j < n; ++j)
        if (matching[j] == s && context.higher_priority(s, i, j)) return false;
    }
  }
  return true;
}

}  // namespace

StabilityReport audit_matching(const Matching& matching, const Context& context, const Profile& profile) {
  matching.validate(context);
  validate_profile(context, profile);
  StabilityReport report;
  const int n = context.num_students();
  for (Student i = 0; i < n; ++i) {
    School own = matching[i];
    if (own == kAbsent) continue;
    if (own != kOutside && !profile[i].admissible(own)) {
      report.individually_rational = false;
      report.irrational_students.push_back(i);
    }
    for (School s = 0; s < context.num_schools(); ++s) {
      if (!profile[i].prefers(s, own)) continue;
      bool blocks = false;
      if (matching.count(s) < context.capacity(s)) {
        report.wasteful_pairs.emplace_back(i, s);
        blocks = true;
      }
      for (Student j : matching.members(s)) {
        if (context.higher_priority(s, i, j)) {
          report.envy_triples.emplace_back(i, s, j);
          blocks = true;
        }
      }
      if (blocks) report.blocking_pairs.emplace_back(i, s);
    }
  }
  report.stable = report.individually_rational && report.blocking_pairs.empty();
  return report;
}

bool is_stable(const Matching& matching, const Context& context, const Profile& profile) {
  matching.validate(context);
  std::vector<int> load(context.num_schools(), 0);
  for (Student i = 0; i < matching.num_students(); ++i)
    if (matching[i] >= 0) ++load[matching[i]];
  return stable_fast(matching, context, profile, load);
}

std::vector<Matching> enumerate_stable(const Context& context, const Profile& profile, std::uint64_t budget) {
  validate_profile(context, profile);
  check_budget(context, budget);
  const int n = context.num_students();
  const int m = context.num_schools();

  std::vector<StudentSet> candidates(m, 0);
  for (Student i = 0; i < n; ++i)
    for (School s : profile[i].admissible_schools()) candidates[s] |= singleton(i);

  std::vector<Matching> found;
  Matching current = Matching::unassigned(n);
  std::vector<int> load(m, 0);

  // Assign school s a subset of the still-free students who accept it.
  auto recurse = [&](auto&& self, School s, StudentSet free) -> void {
    if (s == m) {
      if (stable_fast(current, context, profile, load)) found.push_back(current);
      return;
    }
    const StudentSet pool = candidates[s] & free;
    // Iterate all subsets of pool, including the empty one.
    StudentSet sub = pool;
    while (true) {
      if (set_size(sub) <= context.capacity(s)) {
        for (Student i : members_of(sub)) current[i] = s;
        load[s] = set_size(sub);
        self(self, s + 1, free & ~sub);
        for (Student i : members_of(sub)) current[i] = kOutside;
        load[s] = 0;
      }
      if (sub == 0) break;
      sub = (sub - 1) & pool;
    }
  };
  recurse(recurse, 0, full_set(n));
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<Matching> enumerate_stable_bruteforce(const Context& context, const Profile& profile,
                                                  std::uint64_t budget) {
  validate_profile(context, profile);
  check_budget(context, budget);
  const int n = context.num_students();
  const int m = context.num_schools();
  std::vector<int> digits(n, 0);
  std::vector<Matching> found;
  while (true) {
    Matching candidate = Matching::unassigned(n);
    std::vector<int> load(m, 0);
    bool feasible = true;
    for (Student i = 0; i < n; ++i) {
      candidate[i] = digits[i] - 1;
      if (candidate[i] >= 0 && ++load[candidate[i]] > context.capacity(candidate[i])) feasible = false;
    }
    if (feasible && stable_fast(candidate, context, profile, load)) found.push_back(candidate);
    int k = 0;
    while (k < n && ++digits[k] == m + 1) digits[k++] = 0;
    if (k == n) break;
  }
  std::sort(found.begin(), found.end());
  return found;
}

namespace {

std::optional<Matching> extreme(const std::vector<Matching>& matchings, const Profile& profile, bool best) {
  for (const Matching& candidate : matchings) {
    bool ok = true;
    for (const Matching& other : matchings) {
      ok = best ? weakly_pareto_dominates(candidate, other, profile)
                : weakly_pareto_dominates(other, candidate, profile);
      if (!ok) break;
    }
    if (ok) return candidate;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Matching> student_best(const std::vector<Matching>& matchings, const Profile& profile) {
  return extreme(matchings, profile, true);
}

std::optional<Matching> student_worst(const std::vector<Matching>& matchings, const Profile& profile) {
  return extreme(matchings, profile, false);
}

}  // namespace schoolchoice
