#pragma once

// Explicit school choice functions over subsets of a small population, their
// structural properties, and deferred acceptance driven by them.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schoolchoice/core.hpp"
#include "schoolchoice/mechanisms.hpp"

namespace schoolchoice {

inline constexpr int kMaxChoiceStudents = 12;

/// C : 2^N -> 2^N stored as a table indexed by the candidate bitmask.
class ChoiceFunction {
 public:
  ChoiceFunction() = default;
  /// Throws DomainError unless table has 2^n entries with C(N') ⊆ N'.
  ChoiceFunction(int num_students, std::vector<StudentSet> table);

  /// The min(|N'|, q) highest-priority members of N'.
  static ChoiceFunction responsive(std::span<const Student> priority, int capacity);
  /// C(N') is the first listed subset contained in N'; ∅ when none is.
  static ChoiceFunction from_ranked_sets(int num_students, const std::vector<StudentSet>& ranked);

  int num_students() const { return num_students_; }
  StudentSet operator()(StudentSet candidates) const { return table_[candidates]; }
  const std::vector<StudentSet>& table() const { return table_; }

  friend bool operator==(const ChoiceFunction&, const ChoiceFunction&) = default;

 private:
  int num_students_ = 0;
  std::vector<StudentSet> table_;
};

/// Violation data: `student` is in `smaller` ⊆ `larger`; for substitutability
/// she is chosen from `larger` but not from `smaller`, for the law of aggregate
/// demand `student` is the extra candidate and |C(smaller)| > |C(larger)|.
struct ChoiceWitness {
  Student student = 0;
  StudentSet smaller = 0;
  StudentSet larger = 0;
};

std::optional<ChoiceWitness> check_substitutable(const ChoiceFunction& choice);
std::optional<ChoiceWitness> check_lad(const ChoiceFunction& choice);

/// q with |C(N')| = min(q, |N'|) for all N', or the first subset that rules
/// every candidate q out.
struct QAcceptance {
  std::optional<int> q;
  StudentSet violating = 0;
};
QAcceptance check_q_acceptance(const ChoiceFunction& choice);

/// Deferred acceptance where school s keeps C^s(held ∪ proposals) each round.
/// Throws std::logic_error if the round bound |N||S|+1 is exceeded.
Matching da_with_choice(const Profile& profile, const std::vector<ChoiceFunction>& choices);

struct ChoiceStabilityReport {
  bool individually_rational = true;
  std::vector<Student> irrational_students;  // μ(i) not weakly above s0
  std::vector<School> unstable_schools;      // C^s(μ(s)) != μ(s)
  std::vector<std::pair<Student, School>> blocking_pairs;
  bool stable = true;
};

ChoiceStabilityReport audit_choice_stability(const Matching& matching, const Profile& profile,
                                             const std::vector<ChoiceFunction>& choices);

/// da_with_choice as a Mechanism; the context only fixes N and S.
Mechanism choice_da_mechanism(std::vector<ChoiceFunction> choices);

/// A context shaped like the choice functions: id-order priorities and
/// capacities |C^s(N)|, floored at 1.
Context choice_context(const std::vector<ChoiceFunction>& choices, std::vector<std::string> school_names = {});

}  // namespace schoolchoice
