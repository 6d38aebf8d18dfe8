#pragma once

// Domain model for school choice: contexts [N, S, priorities, capacities],
// strict student preferences over schools plus the outside option, and
// capacity-respecting matchings.
//
// Students and schools are dense integer indices. The outside option is the
// distinguished value kOutside; it is never a member of the school set.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schoolchoice {

using Student = int;
using School = int;

/// The outside option s0.
inline constexpr School kOutside = -1;
/// Marks a student that is not part of the current population (variable-population work).
inline constexpr School kAbsent = -2;

/// Bitset over students. Desk-scale work keeps populations small.
using StudentSet = std::uint32_t;
inline constexpr int kMaxSetStudents = 30;

inline StudentSet singleton(Student i) { return StudentSet{1} << i; }
inline bool contains(StudentSet set, Student i) { return (set >> i) & 1U; }
inline StudentSet full_set(int n) { return n >= 32 ? ~StudentSet{0} : (StudentSet{1} << n) - 1; }
int set_size(StudentSet set);
std::vector<Student> members_of(StudentSet set);
StudentSet set_of(std::span<const Student> students);

/// Raised for malformed domain objects; `where` names the offending location.
class DomainError : public std::invalid_argument {
 public:
  DomainError(const std::string& what, std::string where = {});
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Raised when an exhaustive search would exceed its candidate budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default candidate budget for brute-force searches (10^7), overridable with
/// the SCHOOLCHOICE_BUDGET environment variable.
std::uint64_t default_budget();

/// Strict linear order over S ∪ {s0}, most preferred first.
class Preference {
 public:
  Preference() = default;
  /// Throws DomainError unless `ranking` is a permutation of {0..num_schools-1, kOutside}.
  Preference(std::vector<School> ranking, int num_schools);

  int num_schools() const { return num_schools_; }
  std::span<const School> ranking() const { return order_; }

  /// Position of `alternative` in the ranking, 0 = best.
  int rank(School alternative) const;
  bool prefers(School a, School b) const { return rank(a) < rank(b); }
  bool weakly_prefers(School a, School b) const { return rank(a) <= rank(b); }
  bool admissible(School s) const { return s != kOutside && prefers(s, kOutside); }

  /// A(P): schools ranked above s0, in preference order (the truncation P^t).
  std::vector<School> admissible_schools() const;
  School top() const { return order_.front(); }

  /// Representative of the truncation class: admissible schools, then s0, then
  /// the remaining schools in id order.
  Preference canonical_truncation() const;

  /// Preference that keeps the order of `base` but moves `alternative` to the top.
  static Preference with_top(const Preference& base, School alternative);
  /// The order (admissible..., s0, rest by id).
  static Preference from_admissible(std::span<const School> admissible, int num_schools);

  friend bool operator==(const Preference& a, const Preference& b) { return a.order_ == b.order_; }

 private:
  int num_schools_ = 0;
  std::vector<School> order_;
  std::vector<int> rank_;  // indexed by alternative + 1
};

using Profile = std::vector<Preference>;

/// The fixed environment [N, S, ≻, q]. Immutable after construction.
class Context {
 public:
  Context() = default;
  /// priorities[s] lists every student exactly once, highest priority first.
  Context(int num_students, std::vector<std::vector<Student>> priorities, std::vector<int> capacities,
          std::vector<std::string> student_names = {}, std::vector<std::string> school_names = {});

  int num_students() const { return num_students_; }
  int num_schools() const { return static_cast<int>(capacity_.size()); }
  int capacity(School s) const { return capacity_[s]; }
  const std::vector<int>& capacities() const { return capacity_; }
  std::span<const Student> priority(School s) const { return priority_[s]; }
  const std::vector<std::vector<Student>>& priorities() const { return priority_; }
  /// Position of `i` in school s's priority order, 0 = highest.
  int priority_rank(School s, Student i) const { return priority_rank_[s][i]; }
  /// i ≻_s j
  bool higher_priority(School s, Student i, Student j) const {
    return priority_rank_[s][i] < priority_rank_[s][j];
  }

  const std::string& student_name(Student i) const { return student_names_[i]; }
  const std::string& school_name(School s) const;
  const std::vector<std::string>& student_names() const { return student_names_; }
  const std::vector<std::string>& school_names() const { return school_names_; }
  Student student_index(const std::string& name) const;
  /// Accepts "s0" for the outside option.
  School school_index(const std::string& name) const;

  friend bool operator==(const Context& a, const Context& b);

 private:
  int num_students_ = 0;
  std::vector<std::vector<Student>> priority_;
  std::vector<std::vector<int>> priority_rank_;
  std::vector<int> capacity_;
  std::vector<std::string> student_names_;
  std::vector<std::string> school_names_;
};

/// Builds ≻^N: keeps only `subpopulation`, preserving relative priority order.
/// Students are renumbered in increasing original index; names carry over.
Context restrict_priorities(const Context& context, std::span<const Student> subpopulation);

/// Throws DomainError unless the profile has one preference per student over the
/// context's schools.
void validate_profile(const Context& context, const Profile& profile);

/// A capacity-respecting assignment of students to schools or s0.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<School> assignment) : assignment_(std::move(assignment)) {}
  static Matching unassigned(int num_students) { return Matching(std::vector<School>(num_students, kOutside)); }

  int num_students() const { return static_cast<int>(assignment_.size()); }
  School operator[](Student i) const { return assignment_[i]; }
  School& operator[](Student i) { return assignment_[i]; }
  const std::vector<School>& assignment() const { return assignment_; }

  /// μ(s) for s ∈ S ∪ {s0}, increasing student order.
  std::vector<Student> members(School s) const;
  StudentSet members_set(School s) const;
  int count(School s) const;
  /// Coll_i: students other than i sharing i's school (or sharing s0).
  StudentSet colleagues(Student i) const;

  /// Throws DomainError on capacity violations or unknown schools.
  void validate(const Context& context) const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<School> assignment_;
};

/// Every student weakly prefers `a` to `b`.
bool weakly_pareto_dominates(const Matching& a, const Matching& b, const Profile& profile);

/// Human-readable "((1,s1),(2,s0),...)" using context names.
std::string format_matching(const Matching& matching, const Context& context);

}  // namespace schoolchoice
