#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "schoolchoice/core.hpp"

namespace schoolchoice {

/// One round of a proposal algorithm, kept for CLI traces only.
struct TraceRound {
  std::vector<std::pair<int, int>> proposals;  // (proposer, receiver)
  std::vector<std::pair<int, int>> accepted;   // held or finalised after the round
  std::vector<std::pair<int, int>> rejected;
};
using Trace = std::vector<TraceRound>;

/// A deterministic rule (context, profile) -> matching.
struct Mechanism {
  std::string name;
  std::function<Matching(const Context&, const Profile&)> run;

  Matching operator()(const Context& context, const Profile& profile) const { return run(context, profile); }
};

/// Student-proposing deferred acceptance. Unassigned students propose
/// simultaneously each round to their best admissible school not yet tried;
/// every school holds its q_s highest-priority proposers.
Matching da_student(const Context& context, const Profile& profile, Trace* trace = nullptr);

/// Deferred acceptance restricted to `population`; absent students get kAbsent
/// and are ignored by the priorities (the induced ≻^N).
Matching da_student(const Context& context, const Profile& profile, StudentSet population);

/// School-proposing deferred acceptance: schools offer seats down their priority
/// order, students hold their best admissible offer. Yields the school-optimal
/// stable matching.
Matching da_school(const Context& context, const Profile& profile, Trace* trace = nullptr);

/// Boston / immediate acceptance: in round k each unassigned student applies to
/// her k-th choice; acceptances are final and seats are consumed.
Matching boston(const Context& context, const Profile& profile, Trace* trace = nullptr);

/// Each student in `order` takes her favourite alternative with a free seat.
/// Throws DomainError unless `order` is a permutation of the students.
Matching serial_dictatorship(const Context& context, const Profile& profile, const std::vector<Student>& order);

/// The school-median stable matching: with k stable matchings, each student gets
/// her ((k+1)/2)-th (k odd) or ((k+2)/2)-th (k even) weakly best stable match.
/// Throws BudgetExceeded when (|S|+1)^|N| exceeds `budget`.
Matching school_median(const Context& context, const Profile& profile, std::uint64_t budget = default_budget());

/// Assigns the generalized median position of each student over `stable_set`.
Matching median_of(const std::vector<Matching>& stable_set, const Profile& profile);

Mechanism da_mechanism();
Mechanism da_school_mechanism();
Mechanism boston_mechanism();
Mechanism serial_dictatorship_mechanism(std::vector<Student> order);
Mechanism school_median_mechanism();
/// Returns `fixed` for every profile.
Mechanism constant_mechanism(Matching fixed);

}  // namespace schoolchoice
