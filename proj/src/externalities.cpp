#include "schoolchoice/externalities.hpp"

#include <algorithm>
#include <limits>

#include "schoolchoice/profile_space.hpp"
#include "schoolchoice/stability.hpp"

namespace schoolchoice {

namespace {

Comparison from_ranks(int a, int b) {
  if (a < b) return Comparison::Better;
  if (a > b) return Comparison::Worse;
  return Comparison::Indifferent;
}

std::uint64_t factorial_capped(std::size_t k, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t f = 2; f <= k; ++f) {
    out *= f;
    if (out > cap) return cap + 1;
  }
  return out;
}

}  // namespace

std::vector<StudentSet> feasible_colleague_sets(Student owner, School alternative, const Context& context) {
  const int n = context.num_students();
  const StudentSet others = full_set(n) & ~singleton(owner);
  const int limit = alternative == kOutside ? n : context.capacity(alternative) - 1;
  std::vector<std::vector<Student>> lists;
  for (StudentSet set = 0; set <= others; ++set)
    if ((set & ~others) == 0 && set_size(set) <= limit) lists.push_back(members_of(set));
  std::sort(lists.begin(), lists.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<StudentSet> out;
  for (const auto& list : lists) out.push_back(set_of(list));
  return out;
}

ColleaguePreference::ColleaguePreference(Student owner, Preference school_ranking, const Context& context,
                                         std::vector<std::vector<StudentSet>> listed)
    : owner_(owner), school_ranking_(std::move(school_ranking)), default_(true) {
  const int m = context.num_schools();
  if (school_ranking_.num_schools() != m) throw DomainError("school ranking covers a different school set");
  listed.resize(m + 1);
  for (School a = kOutside; a < m; ++a) {
    std::vector<StudentSet> feasible = feasible_colleague_sets(owner, a, context);
    std::vector<StudentSet> ranking;
    for (StudentSet set : listed[a + 1]) {
      if (std::find(feasible.begin(), feasible.end(), set) == feasible.end())
        throw DomainError("infeasible colleague set", "student " + context.student_name(owner));
      if (std::find(ranking.begin(), ranking.end(), set) != ranking.end())
        throw DomainError("repeated colleague set", "student " + context.student_name(owner));
      ranking.push_back(set);
      default_ = false;
    }
    for (StudentSet set : feasible)
      if (std::find(ranking.begin(), ranking.end(), set) == ranking.end()) ranking.push_back(set);
    rankings_.push_back(std::move(ranking));
  }
}

ColleaguePreference ColleaguePreference::with_school_ranking(Preference ranking) const {
  ColleaguePreference copy = *this;
  copy.school_ranking_ = std::move(ranking);
  return copy;
}

ColleaguePreference ColleaguePreference::with_colleague_ranking(School alternative,
                                                                std::vector<StudentSet> ranking) const {
  ColleaguePreference copy = *this;
  std::vector<StudentSet> a = ranking;
  std::vector<StudentSet> b = rankings_[alternative + 1];
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw DomainError("colleague ranking must reorder the feasible sets");
  copy.rankings_[alternative + 1] = std::move(ranking);
  copy.default_ = false;
  return copy;
}

const Preference& induced_school_preference(const ColleaguePreference& preference) {
  return preference.school_ranking();
}

Profile induced_profile(const ColleagueProfile& profile) {
  Profile out;
  for (const ColleaguePreference& p : profile) out.push_back(p.school_ranking());
  return out;
}

Comparison compare_matchings(const ColleaguePreference& preference, const Matching& a, const Matching& b,
                             const ExternalityOptions& options) {
  const Student i = preference.owner();
  if (a[i] != b[i]) return from_ranks(preference.school_ranking().rank(a[i]), preference.school_ranking().rank(b[i]));
  const School s = a[i];
  if (s == kOutside && !options.s0_inclusive) return Comparison::Indifferent;
  const StudentSet ca = a.colleagues(i);
  const StudentSet cb = b.colleagues(i);
  if (ca == cb) return Comparison::Indifferent;
  const auto& ranking = preference.colleague_ranking(s);
  auto pos = [&](StudentSet set) { return static_cast<int>(std::find(ranking.begin(), ranking.end(), set) - ranking.begin()); };
  return from_ranks(pos(ca), pos(cb));
}

Comparison compare_matchings(const MatchingPreference& preference, const Matching& a, const Matching& b) {
  const Student i = preference.owner;
  if (a[i] != b[i]) return from_ranks(preference.school_ranking.rank(a[i]), preference.school_ranking.rank(b[i]));
  if (a == b) return Comparison::Indifferent;
  const auto& order = preference.matching_order;
  auto pos = [&](const Matching& m) { return static_cast<int>(std::find(order.begin(), order.end(), m) - order.begin()); };
  return from_ranks(pos(a), pos(b));
}

Matching da_bar(const Context& context, const ColleagueProfile& profile) {
  return da_student(context, induced_profile(profile));
}

ColleagueMechanism da_bar_mechanism() {
  return {"da-bar", [](const Context& c, const ColleagueProfile& p) { return da_bar(c, p); }, true};
}

ColleagueMechanism induced_mechanism(Mechanism mechanism) {
  std::string name = mechanism.name + "-bar";
  return {name,
          [mechanism = std::move(mechanism)](const Context& c, const ColleagueProfile& p) {
            return mechanism(c, induced_profile(p));
          },
          true};
}

ExternalityVerdict check_sp_externalities(const ColleagueMechanism& mechanism, const Context& context,
                                          const std::vector<ColleagueProfile>& bases,
                                          const ExternalityOptions& options, std::size_t max_witnesses,
                                          std::uint64_t budget) {
  ExternalityVerdict verdict;
  const std::vector<Preference> orders = all_preferences(context.num_schools());
  auto wants_more = [&] { return max_witnesses == 0 || verdict.witnesses.size() < max_witnesses; };

  for (const ColleagueProfile& base : bases) {
    if (!wants_more()) break;
    ++verdict.profiles_checked;
    const Matching before = mechanism(context, base);
    for (Student i = 0; i < context.num_students() && wants_more(); ++i) {
      const ColleaguePreference& truth = base[i];
      auto test = [&](const ColleaguePreference& deviation) {
        ColleagueProfile deviated = base;
        deviated[i] = deviation;
        Matching after = mechanism(context, deviated);
        if (compare_matchings(truth, after, before, options) != Comparison::Better) return;
        verdict.holds = false;
        verdict.witnesses.push_back(ExternalityWitness{base, i, deviation, before, after});
      };

      if (mechanism.school_rankings_only) {
        for (const Preference& order : orders) {
          if (order == truth.school_ranking()) continue;
          test(truth.with_school_ranking(order));
          if (!wants_more()) break;
        }
        continue;
      }

      std::uint64_t count = orders.size();
      for (School a = kOutside; a < context.num_schools(); ++a) {
        count *= factorial_capped(truth.colleague_ranking(a).size(), budget);
        if (count > budget) throw BudgetExceeded("instance too large: colleague deviations exceed budget");
      }
      for (const Preference& order : orders) {
        ColleaguePreference deviation = truth.with_school_ranking(order);
        auto recurse = [&](auto&& self, School a) -> void {
          if (!wants_more()) return;
          if (a == context.num_schools()) {
            test(deviation);
            return;
          }
          std::vector<StudentSet> ranking = truth.colleague_ranking(a);
          std::sort(ranking.begin(), ranking.end());
          do {
            deviation = deviation.with_colleague_ranking(a, ranking);
            self(self, a + 1);
          } while (wants_more() && std::next_permutation(ranking.begin(), ranking.end()));
        };
        recurse(recurse, kOutside);
        if (!wants_more()) break;
      }
    }
  }
  return verdict;
}

ColleagueProfile random_colleague_profile(const Context& context, std::mt19937_64& rng) {
  const std::vector<Preference> orders = all_preferences(context.num_schools());
  ColleagueProfile profile;
  for (Student i = 0; i < context.num_students(); ++i) {
    ColleaguePreference p(i, orders[rng() % orders.size()], context);
    for (School a = kOutside; a < context.num_schools(); ++a) {
      std::vector<StudentSet> ranking = p.colleague_ranking(a);
      for (std::size_t k = ranking.size(); k > 1; --k) std::swap(ranking[k - 1], ranking[rng() % k]);
      p = p.with_colleague_ranking(a, std::move(ranking));
    }
    profile.push_back(std::move(p));
  }
  return profile;
}

bool is_stable_externalities(const Matching& matching, const Context& context, const ColleagueProfile& profile,
                             const ExternalityOptions& options) {
  for (Student i = 0; i < context.num_students(); ++i) {
    const Preference& ranking = profile[i].school_ranking();
    if (!ranking.weakly_prefers(matching[i], kOutside)) return false;
    for (School s = 0; s < context.num_schools(); ++s) {
      if (s == matching[i]) continue;
      Matching moved = matching;
      moved[i] = s;
      std::vector<Student> members = matching.members(s);
      bool justified = static_cast<int>(members.size()) < context.capacity(s);
      if (!justified) {
        Student lowest = *std::max_element(members.begin(), members.end(), [&](Student a, Student b) {
          return context.priority_rank(s, a) < context.priority_rank(s, b);
        });
        justified = context.higher_priority(s, i, lowest);
        moved[lowest] = kOutside;
      }
      if (justified && compare_matchings(profile[i], moved, matching, options) == Comparison::Better) return false;
    }
  }
  return true;
}

std::vector<StableManipulation> stable_manipulations(const Context& context, const Profile& profile,
                                                     const MatchingComparator& truth, std::uint64_t budget) {
  const std::vector<Preference> orders = all_preferences(context.num_schools());
  const std::vector<Matching> stable = enumerate_stable(context, profile, budget);
  std::vector<StableManipulation> out;
  for (const Matching& chosen : stable) {
    for (Student i = 0; i < context.num_students(); ++i) {
      for (const Preference& order : orders) {
        if (order == profile[i]) continue;
        Profile deviated = profile;
        deviated[i] = order;
        std::vector<Matching> after = enumerate_stable(context, deviated, budget);
        bool all_better = std::all_of(after.begin(), after.end(), [&](const Matching& m) {
          return truth(i, m, chosen) == Comparison::Better;
        });
        if (all_better) out.push_back(StableManipulation{chosen, i, order, after});
      }
    }
  }
  return out;
}

}  // namespace schoolchoice
