#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "schoolchoice/core.hpp"
#include "schoolchoice/mechanisms.hpp"

namespace schoolchoice {

/// Every strict order over S ∪ {s0}, in lexicographic order of the rankings
/// (s0 sorts first since it is -1).
std::vector<Preference> all_preferences(int num_schools);

/// Profiles over a fixed student count encoded as one order index per student.
class ProfileSpace {
 public:
  ProfileSpace(int num_students, int num_schools);

  int num_students() const { return num_students_; }
  int num_schools() const { return num_schools_; }
  int num_orders() const { return static_cast<int>(orders_.size()); }
  const Preference& order(int k) const { return orders_[k]; }
  const std::vector<Preference>& orders() const { return orders_; }
  int index_of(const Preference& preference) const;

  /// K^n, saturating at UINT64_MAX.
  std::uint64_t size() const { return size_; }
  std::uint64_t encode(const std::vector<int>& code) const;
  std::vector<int> decode(std::uint64_t index) const;
  Profile profile(const std::vector<int>& code) const;
  std::vector<int> code_of(const Profile& profile) const;

  /// Advances `code` in mixed radix; false after the last profile.
  bool next(std::vector<int>& code) const;
  std::vector<int> random_code(std::mt19937_64& rng) const;

 private:
  int num_students_;
  int num_schools_;
  std::vector<Preference> orders_;
  std::uint64_t size_;
};

/// Memoised mechanism outcomes over a profile space. Uses a dense table when
/// the space fits under `dense_limit` entries and a hash map otherwise.
class OutcomeCache {
 public:
  OutcomeCache(const Mechanism& mechanism, const Context& context, const ProfileSpace& space,
               std::uint64_t dense_limit = 4'000'000);

  const Matching& at(const std::vector<int>& code);
  const ProfileSpace& space() const { return space_; }
  const Context& context() const { return context_; }

 private:
  const Mechanism& mechanism_;
  const Context& context_;
  const ProfileSpace& space_;
  bool dense_;
  std::vector<Matching> table_;
  std::vector<char> filled_;
  std::unordered_map<std::uint64_t, Matching> sparse_;
};

}  // namespace schoolchoice
