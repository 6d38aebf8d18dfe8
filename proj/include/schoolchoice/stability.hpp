#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "schoolchoice/core.hpp"

namespace schoolchoice {

/// Every stability violation of a matching, not just the first.
struct StabilityReport {
  bool individually_rational = true;
  std::vector<Student> irrational_students;
  std::vector<std::pair<Student, School>> wasteful_pairs;
  /// (envious student, school, displaced student with lower priority)
  std::vector<std::tuple<Student, School, Student>> envy_triples;
  std::vector<std::pair<Student, School>> blocking_pairs;
  bool stable = true;
};

/// Throws DomainError if the matching violates a capacity.
StabilityReport audit_matching(const Matching& matching, const Context& context, const Profile& profile);
bool is_stable(const Matching& matching, const Context& context, const Profile& profile);

/// All stable matchings, sorted. Builds assignments school by school over
/// admissible student subsets of size <= q_s. Throws BudgetExceeded when
/// (|S|+1)^|N| exceeds `budget`.
std::vector<Matching> enumerate_stable(const Context& context, const Profile& profile,
                                       std::uint64_t budget = default_budget());

/// Reference enumerator: scans every function N -> S ∪ {s0}.
std::vector<Matching> enumerate_stable_bruteforce(const Context& context, const Profile& profile,
                                                  std::uint64_t budget = default_budget());

/// The element every student weakly prefers to all others, if one exists.
std::optional<Matching> student_best(const std::vector<Matching>& matchings, const Profile& profile);
/// The element every student weakly disprefers to all others, if one exists.
std::optional<Matching> student_worst(const std::vector<Matching>& matchings, const Profile& profile);

}  // namespace schoolchoice
