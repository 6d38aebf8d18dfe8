#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "schoolchoice/mechanisms.hpp"
#include "schoolchoice/stability.hpp"

using namespace schoolchoice;

namespace {
Preference pref(std::vector<School> r, int m) { return Preference(std::move(r), m); }
}  // namespace

TEST_CASE("audit lists every violation") {
  const Context c(3, {{0, 1, 2}, {0, 1, 2}}, {1, 1});
  const Profile p{pref({0, 1, kOutside}, 2), pref({kOutside, 0, 1}, 2), pref({1, 0, kOutside}, 2)};
  // 2 holds inadmissible s1; 1 and 3 sit at s0 while s2 is free; 1 outranks 2 at s1.
  const Matching mu({kOutside, 0, kOutside});
  const StabilityReport r = audit_matching(mu, c, p);
  CHECK_FALSE(r.stable);
  CHECK_FALSE(r.individually_rational);
  CHECK(r.irrational_students == std::vector<Student>{1});
  CHECK(r.wasteful_pairs.size() == 2);  // (1,s2), (3,s2)
  REQUIRE(r.envy_triples.size() == 1);
  CHECK(r.envy_triples[0] == std::tuple<Student, School, Student>{0, 0, 1});
  CHECK_THROWS_AS(audit_matching(Matching({0, 0, 1}), c, p), DomainError);
}

TEST_CASE("stable audit agrees with the definition") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 3000; ++k) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 3);
    const Context c = oracle::random_context(n, m, 2, rng);
    const Profile p = oracle::random_profile(n, m, rng);
    std::vector<School> a(n);
    for (auto& s : a) s = static_cast<School>(rng() % (m + 1)) - 1;
    bool feasible = true;
    for (School s = 0; s < m; ++s)
      feasible = feasible && std::count(a.begin(), a.end(), s) <= c.capacity(s);
    if (!feasible) continue;
    REQUIRE(is_stable(Matching(a), c, p) == oracle::stable(a, c, p));
  }
}

TEST_CASE("both enumerators match the reference stable set") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 3);
    const Context c = oracle::random_context(n, m, 3, rng);
    const Profile p = oracle::random_profile(n, m, rng);
    const auto fast = enumerate_stable(c, p);
    const auto slow = enumerate_stable_bruteforce(c, p);
    REQUIRE(fast == slow);
    std::vector<std::vector<School>> plain;
    for (const Matching& mu : fast) plain.push_back(mu.assignment());
    REQUIRE(plain == oracle::stable_set(c, p));
  }
}

TEST_CASE("rural hospitals: unmatched students and fill counts are fixed across stable matchings") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 500; ++k) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 3);
    const Context c = oracle::random_context(n, m, 2, rng);
    const Profile p = oracle::random_profile(n, m, rng);
    const auto stable = enumerate_stable(c, p);
    for (const Matching& mu : stable)
      for (School s = kOutside; s < m; ++s) {
        REQUIRE(mu.count(s) == stable.front().count(s));
        if (s == kOutside) REQUIRE(mu.members(s) == stable.front().members(s));
      }
  }
}

TEST_CASE("student-best and student-worst pick the lattice ends") {
  const Context c(4, {{1, 0, 2, 3}, {2, 3, 1, 0}}, {2, 2});
  const Profile p{pref({1, 0, kOutside}, 2), pref({1, 0, kOutside}, 2), pref({0, 1, kOutside}, 2),
                  pref({0, 1, kOutside}, 2)};
  const auto stable = enumerate_stable(c, p);
  CHECK(student_best(stable, p) == da_student(c, p));
  CHECK(student_worst(stable, p) == da_school(c, p));
  CHECK_FALSE(student_best({}, p).has_value());
}

TEST_CASE("enumeration respects the budget") {
  const Context c(6, {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}}, {1, 1});
  const Profile p(6, pref({0, 1, kOutside}, 2));
  CHECK_THROWS_AS(enumerate_stable(c, p, 10), BudgetExceeded);
  CHECK_NOTHROW(enumerate_stable(c, p, 1000));
}
