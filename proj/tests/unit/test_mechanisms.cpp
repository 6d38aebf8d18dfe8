#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "schoolchoice/mechanisms.hpp"
#include "schoolchoice/stability.hpp"

using namespace schoolchoice;

namespace {

Preference pref(std::vector<School> r, int m) { return Preference(std::move(r), m); }

// s1, s2 with one seat each, common priority 1,2,3.
Context small() { return Context(3, {{0, 1, 2}, {0, 1, 2}}, {1, 1}); }
Profile small_profile() {
  return {pref({0, 1, kOutside}, 2), pref({0, 1, kOutside}, 2), pref({1, 0, kOutside}, 2)};
}

}  // namespace

TEST_CASE("DA, Boston and the school-proposing variant by hand") {
  const Context c = small();
  const Profile p = small_profile();
  CHECK(da_student(c, p) == Matching({0, 1, kOutside}));
  CHECK(boston(c, p) == Matching({0, kOutside, 1}));
  CHECK(da_school(c, p) == Matching({0, 1, kOutside}));
}

TEST_CASE("serial dictatorship follows the order") {
  const Context c = small();
  const Profile p = small_profile();
  CHECK(serial_dictatorship(c, p, {2, 1, 0}) == Matching({kOutside, 0, 1}));
  CHECK(serial_dictatorship(c, p, {0, 1, 2}) == Matching({0, 1, kOutside}));
  CHECK_THROWS_AS(serial_dictatorship(c, p, {0, 0, 1}), DomainError);
}

TEST_CASE("DA agrees with one-at-a-time proposals and is student-optimal") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 2000; ++k) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 3);
    const Context c = oracle::random_context(n, m, 3, rng);
    const Profile p = oracle::random_profile(n, m, rng);
    const Matching mu = da_student(c, p);
    REQUIRE(mu.assignment() == oracle::sequential_da(c, p));
    const auto stable = oracle::stable_set(c, p);
    REQUIRE(mu.assignment() == *oracle::pareto_extreme(stable, p, true));
    REQUIRE(da_school(c, p).assignment() == *oracle::pareto_extreme(stable, p, false));
  }
}

TEST_CASE("Boston and serial dictatorship are individually rational and non-wasteful") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 3);
    const Context c = oracle::random_context(n, m, 2, rng);
    const Profile p = oracle::random_profile(n, m, rng);
    std::vector<Student> order = oracle::random_permutation(n, rng);
    for (const Matching& mu : {boston(c, p), serial_dictatorship(c, p, order)}) {
      const StabilityReport r = audit_matching(mu, c, p);
      REQUIRE(r.individually_rational);
      REQUIRE(r.wasteful_pairs.empty());
    }
  }
}

TEST_CASE("population-restricted DA ignores absent students") {
  const Context c(3, {{2, 0, 1}}, {1});
  const Profile p(3, pref({0, kOutside}, 1));
  const Matching mu = da_student(c, p, set_of(std::vector<Student>{0, 1}));
  CHECK(mu[2] == kAbsent);
  CHECK(mu[0] == 0);
  CHECK(mu[1] == kOutside);
}

TEST_CASE("school-median picks the middle of an odd stable set") {
  // Two schools, two seats each; three stable matchings.
  const Context c(4, {{1, 0, 2, 3}, {2, 3, 1, 0}}, {2, 2});
  const Profile p{pref({1, 0, kOutside}, 2), pref({1, 0, kOutside}, 2), pref({0, 1, kOutside}, 2),
                  pref({0, 1, kOutside}, 2)};
  const auto stable = enumerate_stable(c, p);
  REQUIRE(stable.size() == 3);
  const Matching med = school_median(c, p);
  CHECK(med != da_student(c, p));
  CHECK(med != da_school(c, p));
  CHECK(is_stable(med, c, p));
}

TEST_CASE("a unique stable matching is its own median") {
  const Context c = small();
  const Profile p = small_profile();
  REQUIRE(enumerate_stable(c, p).size() == 1);
  CHECK(school_median(c, p) == da_student(c, p));
}

TEST_CASE("traces record every round") {
  const Context c = small();
  const Profile p = small_profile();
  Trace t;
  da_student(c, p, &t);
  REQUIRE(t.size() >= 2);
  CHECK(t.front().proposals.size() == 3);
  CHECK(t.front().rejected.size() == 1);
  Trace b;
  boston(c, p, &b);
  CHECK(b.front().accepted.size() == 2);
}

TEST_CASE("constant mechanism ignores the profile") {
  const Mechanism m = constant_mechanism(Matching({1, 0, kOutside}));
  CHECK(m(small(), small_profile()) == Matching({1, 0, kOutside}));
}
