#include "schoolchoice/profile_space.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace schoolchoice {

std::vector<Preference> all_preferences(int num_schools) {
  std::vector<School> order(num_schools + 1);
  std::iota(order.begin(), order.end(), kOutside);
  std::vector<Preference> out;
  do {
    out.emplace_back(order, num_schools);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

ProfileSpace::ProfileSpace(int num_students, int num_schools)
    : num_students_(num_students), num_schools_(num_schools), orders_(all_preferences(num_schools)), size_(1) {
  const std::uint64_t k = orders_.size();
  for (int i = 0; i < num_students; ++i) {
    if (size_ > std::numeric_limits<std::uint64_t>::max() / k) {
      size_ = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    size_ *= k;
  }
}

int ProfileSpace::index_of(const Preference& preference) const {
  auto it = std::lower_bound(orders_.begin(), orders_.end(), preference, [](const Preference& a, const Preference& b) {
    return std::lexicographical_compare(a.ranking().begin(), a.ranking().end(), b.ranking().begin(),
                                        b.ranking().end());
  });
  if (it == orders_.end() || !(*it == preference)) throw DomainError("preference outside the profile space");
  return static_cast<int>(it - orders_.begin());
}

std::uint64_t ProfileSpace::encode(const std::vector<int>& code) const {
  std::uint64_t index = 0;
  for (int i = num_students_ - 1; i >= 0; --i) index = index * orders_.size() + static_cast<std::uint64_t>(code[i]);
  return index;
}

std::vector<int> ProfileSpace::decode(std::uint64_t index) const {
  std::vector<int> code(num_students_);
  for (int i = 0; i < num_students_; ++i) {
    code[i] = static_cast<int>(index % orders_.size());
    index /= orders_.size();
  }
  return code;
}

Profile ProfileSpace::profile(const std::vector<int>& code) const {
  Profile out;
  out.reserve(code.size());
  for (int k : code) out.push_back(orders_[k]);
  return out;
}

std::vector<int> ProfileSpace::code_of(const Profile& profile) const {
  std::vector<int> code;
  for (const Preference& p : profile) code.push_back(index_of(p));
  return code;
}

bool ProfileSpace::next(std::vector<int>& code) const {
  for (int i = 0; i < num_students_; ++i) {
    if (++code[i] < num_orders()) return true;
    code[i] = 0;
  }
  return false;
}

std::vector<int> ProfileSpace::random_code(std::mt19937_64& rng) const {
  std::vector<int> code(num_students_);
  for (int& k : code) k = static_cast<int>(rng() % orders_.size());
  return code;
}

OutcomeCache::OutcomeCache(const Mechanism& mechanism, const Context& context, const ProfileSpace& space,
                           std::uint64_t dense_limit)
    : mechanism_(mechanism), context_(context), space_(space), dense_(space.size() <= dense_limit) {
  if (dense_) {
    table_.resize(space.size());
    filled_.assign(space.size(), 0);
  }
}

const Matching& OutcomeCache::at(const std::vector<int>& code) {
  const std::uint64_t index = space_.encode(code);
  if (dense_) {
    if (!filled_[index]) {
      table_[index] = mechanism_(context_, space_.profile(code));
      filled_[index] = 1;
    }
    return table_[index];
  }
  auto it = sparse_.find(index);
  if (it == sparse_.end()) it = sparse_.emplace(index, mechanism_(context_, space_.profile(code))).first;
  return it->second;
}

}  // namespace schoolchoice
