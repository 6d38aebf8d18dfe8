#include "schoolchoice/core.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace schoolchoice {

int set_size(StudentSet set) { return std::popcount(set); }

std::vector<Student> members_of(StudentSet set) {
  std::vector<Student> out;
  while (set) {
    out.push_back(std::countr_zero(set));
    set &= set - 1;
  }
  return out;
}

StudentSet set_of(std::span<const Student> students) {
  StudentSet set = 0;
  for (Student i : students) set |= singleton(i);
  return set;
}

DomainError::DomainError(const std::string& what, std::string where)
    : std::invalid_argument(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("SCHOOLCHOICE_BUDGET")) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return 10'000'000ULL;
}

// ---------------------------------------------------------------------------
// Preference

Preference::Preference(std::vector<School> ranking, int num_schools)
    : num_schools_(num_schools), order_(std::move(ranking)), rank_(num_schools + 1, -1) {
  if (num_schools < 0) throw DomainError("negative school count");
  if (static_cast<int>(order_.size()) != num_schools + 1) throw DomainError("non-total preference");
  for (int pos = 0; pos < static_cast<int>(order_.size()); ++pos) {
    School a = order_[pos];
    if (a < kOutside || a >= num_schools) throw DomainError("unknown alternative in preference");
    if (rank_[a + 1] != -1) throw DomainError("duplicate alternative in preference");
    rank_[a + 1] = pos;
  }
}

int Preference::rank(School alternative) const {
  if (alternative < kOutside || alternative >= num_schools_) throw DomainError("unknown alternative");
  return rank_[alternative + 1];
}

std::vector<School> Preference::admissible_schools() const {
  std::vector<School> out;
  for (School a : order_) {
    if (a == kOutside) break;
    out.push_back(a);
  }
  return out;
}

Preference Preference::canonical_truncation() const {
  return from_admissible(admissible_schools(), num_schools_);
}

Preference Preference::with_top(const Preference& base, School alternative) {
  std::vector<School> order{alternative};
  for (School a : base.order_)
    if (a != alternative) order.push_back(a);
  return Preference(std::move(order), base.num_schools_);
}

Preference Preference::from_admissible(std::span<const School> admissible, int num_schools) {
  std::vector<School> order(admissible.begin(), admissible.end());
  order.push_back(kOutside);
  for (School s = 0; s < num_schools; ++s)
    if (std::find(admissible.begin(), admissible.end(), s) == admissible.end()) order.push_back(s);
  return Preference(std::move(order), num_schools);
}

// ---------------------------------------------------------------------------
// Context

Context::Context(int num_students, std::vector<std::vector<Student>> priorities, std::vector<int> capacities,
                 std::vector<std::string> student_names, std::vector<std::string> school_names)
    : num_students_(num_students),
      priority_(std::move(priorities)),
      capacity_(std::move(capacities)),
      student_names_(std::move(student_names)),
      school_names_(std::move(school_names)) {
  if (num_students < 0) throw DomainError("negative student count");
  if (priority_.size() != capacity_.size()) throw DomainError("priority/capacity count mismatch");
  if (student_names_.empty())
    for (int i = 0; i < num_students; ++i) student_names_.push_back(std::to_string(i + 1));
  if (school_names_.empty())
    for (int s = 0; s < num_schools(); ++s) school_names_.push_back("s" + std::to_string(s + 1));
  if (static_cast<int>(student_names_.size()) != num_students) throw DomainError("student name count mismatch");
  if (static_cast<int>(school_names_.size()) != num_schools()) throw DomainError("school name count mismatch");

  std::vector<std::string> sorted = student_names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DomainError("duplicate student id");
  sorted = school_names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DomainError("duplicate school id");
  if (std::find(sorted.begin(), sorted.end(), "s0") != sorted.end())
    throw DomainError("s0 is reserved for the outside option");

  priority_rank_.assign(num_schools(), std::vector<int>(num_students, -1));
  for (School s = 0; s < num_schools(); ++s) {
    const std::string where = "school " + school_names_[s];
    if (capacity_[s] < 1) throw DomainError("capacity < 1", where);
    if (static_cast<int>(priority_[s].size()) != num_students) throw DomainError("non-total priority order", where);
    for (int pos = 0; pos < num_students; ++pos) {
      Student i = priority_[s][pos];
      if (i < 0 || i >= num_students) throw DomainError("unknown student in priority order", where);
      if (priority_rank_[s][i] != -1) throw DomainError("duplicate student in priority order", where);
      priority_rank_[s][i] = pos;
    }
  }
}

const std::string& Context::school_name(School s) const {
  static const std::string outside = "s0";
  static const std::string absent = "-";
  if (s == kOutside) return outside;
  if (s == kAbsent) return absent;
  return school_names_.at(s);
}

Student Context::student_index(const std::string& name) const {
  auto it = std::find(student_names_.begin(), student_names_.end(), name);
  if (it == student_names_.end()) throw DomainError("unknown student '" + name + "'");
  return static_cast<Student>(it - student_names_.begin());
}

School Context::school_index(const std::string& name) const {
  if (name == "s0") return kOutside;
  auto it = std::find(school_names_.begin(), school_names_.end(), name);
  if (it == school_names_.end()) throw DomainError("unknown school '" + name + "'");
  return static_cast<School>(it - school_names_.begin());
}

bool operator==(const Context& a, const Context& b) {
  return a.num_students_ == b.num_students_ && a.priority_ == b.priority_ && a.capacity_ == b.capacity_ &&
         a.student_names_ == b.student_names_ && a.school_names_ == b.school_names_;
}

Context restrict_priorities(const Context& context, std::span<const Student> subpopulation) {
  std::vector<Student> kept(subpopulation.begin(), subpopulation.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw DomainError("subpopulation lists a student twice");
  std::vector<int> new_index(context.num_students(), -1);
  for (int k = 0; k < static_cast<int>(kept.size()); ++k) {
    if (kept[k] < 0 || kept[k] >= context.num_students())
      throw DomainError("subpopulation is not a subset of the students");
    new_index[kept[k]] = k;
  }
  std::vector<std::vector<Student>> priorities(context.num_schools());
  for (School s = 0; s < context.num_schools(); ++s)
    for (Student i : context.priority(s))
      if (new_index[i] >= 0) priorities[s].push_back(new_index[i]);
  std::vector<std::string> names;
  for (Student i : kept) names.push_back(context.student_name(i));
  return Context(static_cast<int>(kept.size()), std::move(priorities), context.capacities(), std::move(names),
                 context.school_names());
}

void validate_profile(const Context& context, const Profile& profile) {
  if (static_cast<int>(profile.size()) != context.num_students())
    throw DomainError("profile does not cover the student set");
  for (Student i = 0; i < context.num_students(); ++i)
    if (profile[i].num_schools() != context.num_schools())
      throw DomainError("preference ranks a different school set", "student " + context.student_name(i));
}

// ---------------------------------------------------------------------------
// Matching

std::vector<Student> Matching::members(School s) const {
  std::vector<Student> out;
  for (Student i = 0; i < num_students(); ++i)
    if (assignment_[i] == s) out.push_back(i);
  return out;
}

StudentSet Matching::members_set(School s) const {
  StudentSet set = 0;
  for (Student i = 0; i < num_students(); ++i)
    if (assignment_[i] == s) set |= singleton(i);
  return set;
}

int Matching::count(School s) const {
  return static_cast<int>(std::count(assignment_.begin(), assignment_.end(), s));
}

StudentSet Matching::colleagues(Student i) const { return members_set(assignment_[i]) & ~singleton(i); }

void Matching::validate(const Context& context) const {
  if (num_students() != context.num_students()) throw DomainError("matching does not cover the student set");
  std::vector<int> load(context.num_schools(), 0);
  for (Student i = 0; i < num_students(); ++i) {
    School s = assignment_[i];
    if (s == kOutside || s == kAbsent) continue;
    if (s < 0 || s >= context.num_schools())
      throw DomainError("unknown school in matching", "student " + context.student_name(i));
    ++load[s];
  }
  for (School s = 0; s < context.num_schools(); ++s)
    if (load[s] > context.capacity(s)) throw DomainError("capacity violation", "school " + context.school_name(s));
}

bool weakly_pareto_dominates(const Matching& a, const Matching& b, const Profile& profile) {
  for (Student i = 0; i < a.num_students(); ++i)
    if (!profile[i].weakly_prefers(a[i], b[i])) return false;
  return true;
}

std::string format_matching(const Matching& matching, const Context& context) {
  std::ostringstream out;
  out << '(';
  bool first = true;
  for (Student i = 0; i < matching.num_students(); ++i) {
    if (matching[i] == kAbsent) continue;
    if (!first) out << ',';
    first = false;
    out << '(' << context.student_name(i) << ',' << context.school_name(matching[i]) << ')';
  }
  out << ')';
  return out.str();
}

}  // namespace schoolchoice
