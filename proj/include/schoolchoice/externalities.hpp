#pragma once

// School-lexicographic preferences over matchings: the own school decides
// first, ties at the same school are broken by colleagues (D_c) or by an
// explicit ranking of whole matchings (D).

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "schoolchoice/core.hpp"
#include "schoolchoice/mechanisms.hpp"

namespace schoolchoice {

/// Result of comparing matching a against matching b for one student.
enum class Comparison { Worse = -1, Indifferent = 0, Better = 1 };

struct ExternalityOptions {
  /// Two matchings leaving the owner unassigned are ranked by the unassigned
  /// set. When false such matchings are always indifferent.
  bool s0_inclusive = true;
};

/// D_c preference of one student: a school ranking and, per alternative, a
/// strict ranking of the feasible colleague sets there (best first).
class ColleaguePreference {
 public:
  ColleaguePreference() = default;
  /// Unlisted feasible colleague sets follow the listed ones in the default
  /// order. Throws DomainError on infeasible or repeated sets.
  ColleaguePreference(Student owner, Preference school_ranking, const Context& context,
                      std::vector<std::vector<StudentSet>> listed = {});

  Student owner() const { return owner_; }
  const Preference& school_ranking() const { return school_ranking_; }
  /// Colleague sets at `alternative` (kOutside allowed), best first.
  const std::vector<StudentSet>& colleague_ranking(School alternative) const { return rankings_[alternative + 1]; }
  bool uses_default_colleagues() const { return default_; }

  ColleaguePreference with_school_ranking(Preference ranking) const;
  ColleaguePreference with_colleague_ranking(School alternative, std::vector<StudentSet> ranking) const;

 private:
  Student owner_ = 0;
  Preference school_ranking_;
  std::vector<std::vector<StudentSet>> rankings_;  // indexed by alternative + 1
  bool default_ = true;
};

using ColleagueProfile = std::vector<ColleaguePreference>;

/// Subsets of N∖{owner} that can share `alternative` with the owner, in the
/// default order: increasing size, then lexicographic by member ids.
std::vector<StudentSet> feasible_colleague_sets(Student owner, School alternative, const Context& context);

/// P_i(⊵_i), the stored school ranking.
const Preference& induced_school_preference(const ColleaguePreference& preference);
Profile induced_profile(const ColleagueProfile& profile);

Comparison compare_matchings(const ColleaguePreference& preference, const Matching& a, const Matching& b,
                             const ExternalityOptions& options = {});

/// A D preference: school ranking first, then `matching_order` (best first) for
/// matchings that give the owner the same school; unlisted matchings rank below
/// the listed ones and are mutually indifferent.
struct MatchingPreference {
  Student owner = 0;
  Preference school_ranking;
  std::vector<Matching> matching_order;
};

Comparison compare_matchings(const MatchingPreference& preference, const Matching& a, const Matching& b);

/// DA on the induced school rankings.
Matching da_bar(const Context& context, const ColleagueProfile& profile);

struct ColleagueMechanism {
  std::string name;
  std::function<Matching(const Context&, const ColleagueProfile&)> run;
  /// The outcome depends on the profile only through the school rankings.
  bool school_rankings_only = false;

  Matching operator()(const Context& context, const ColleagueProfile& profile) const {
    return run(context, profile);
  }
};

ColleagueMechanism da_bar_mechanism();
/// Any fixed-population mechanism applied to P(⊵).
ColleagueMechanism induced_mechanism(Mechanism mechanism);

struct ExternalityWitness {
  ColleagueProfile profile;
  Student deviator = 0;
  ColleaguePreference deviation;
  Matching before;
  Matching after;
};

struct ExternalityVerdict {
  bool holds = true;
  std::uint64_t profiles_checked = 0;
  std::vector<ExternalityWitness> witnesses;
};

/// Manipulation audit over `bases`: the deviator's true preference judges the
/// outcomes. Mechanisms flagged school_rankings_only get school-ranking
/// deviations only; others also get every colleague-ranking deviation, within
/// `budget` outcomes per deviator.
ExternalityVerdict check_sp_externalities(const ColleagueMechanism& mechanism, const Context& context,
                                          const std::vector<ColleagueProfile>& bases,
                                          const ExternalityOptions& options = {}, std::size_t max_witnesses = 1,
                                          std::uint64_t budget = default_budget());

/// Seeded D_c profile: uniform school rankings, shuffled colleague rankings.
ColleagueProfile random_colleague_profile(const Context& context, std::mt19937_64& rng);

/// Stability with externalities: IR plus no pair (i, s) such that i strictly
/// prefers, by compare_matchings, the matching where she takes a seat at s
/// (evicting the lowest-priority member if s is full) and either s has a free
/// seat or she outranks that member.
bool is_stable_externalities(const Matching& matching, const Context& context, const ColleagueProfile& profile,
                             const ExternalityOptions& options = {});

/// For one stable matching chosen at P, a unilateral misreport after which
/// every stable matching is strictly better for the deviator's true preference.
struct StableManipulation {
  Matching chosen;
  Student deviator = 0;
  Preference report;
  std::vector<Matching> stable_after;
};

using MatchingComparator = std::function<Comparison(Student, const Matching&, const Matching&)>;

/// For each stable matching at `profile`, every manipulation that defeats any
/// stable mechanism selecting it. `truth` judges outcomes for each student.
std::vector<StableManipulation> stable_manipulations(const Context& context, const Profile& profile,
                                                     const MatchingComparator& truth,
                                                     std::uint64_t budget = default_budget());

}  // namespace schoolchoice
