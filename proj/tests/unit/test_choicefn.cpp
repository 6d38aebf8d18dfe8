#include <doctest.h>

#include <bit>
#include <numeric>
#include <random>

#include "../oracles.hpp"
#include "schoolchoice/choicefn.hpp"
#include "schoolchoice/fixtures.hpp"
#include "schoolchoice/io.hpp"
#include "schoolchoice/mechanisms.hpp"

using namespace schoolchoice;

namespace {

bool subset(StudentSet a, StudentSet b) { return (a & ~b) == 0; }

bool oracle_substitutable(const ChoiceFunction& c) {
  const StudentSet all = full_set(c.num_students());
  for (StudentSet big = 0; big <= all; ++big)
    for (StudentSet small = big;; small = (small - 1) & big) {
      if (c(big) & small & ~c(small)) return false;
      if (small == 0) break;
    }
  return true;
}

bool oracle_lad(const ChoiceFunction& c) {
  const StudentSet all = full_set(c.num_students());
  for (StudentSet big = 0; big <= all; ++big)
    for (StudentSet small = big;; small = (small - 1) & big) {
      if (std::popcount(c(small)) > std::popcount(c(big))) return false;
      if (small == 0) break;
    }
  return true;
}

std::optional<int> oracle_q(const ChoiceFunction& c) {
  const StudentSet all = full_set(c.num_students());
  for (int q = 0; q <= c.num_students(); ++q) {
    bool ok = true;
    for (StudentSet s = 0; s <= all && ok; ++s) ok = std::popcount(c(s)) == std::min(q, std::popcount(s));
    if (ok) return q;
  }
  return std::nullopt;
}

ChoiceFunction random_ranked(int n, std::mt19937_64& rng) {
  std::vector<StudentSet> ranked;
  const int k = 1 + static_cast<int>(rng() % 6);
  for (int t = 0; t < k; ++t) ranked.push_back(static_cast<StudentSet>(rng() % (1U << n)));
  return ChoiceFunction::from_ranked_sets(n, ranked);
}

}  // namespace

TEST_CASE("responsive choice keeps the top q") {
  const ChoiceFunction c = ChoiceFunction::responsive(std::vector<Student>{2, 0, 1, 3}, 2);
  CHECK(c(0b1111) == 0b0101);
  CHECK(c(0b1010) == 0b1010);
  CHECK(c(0b0010) == 0b0010);
  CHECK(c(0) == 0);
  CHECK(oracle_substitutable(c));
  CHECK_FALSE(check_substitutable(c));
  CHECK_FALSE(check_lad(c));
  CHECK(check_q_acceptance(c).q == 2);
}

TEST_CASE("ranked-set choice: first listed subset contained in the candidates") {
  const ChoiceFunction c = ChoiceFunction::from_ranked_sets(3, {0b011, 0b100});
  CHECK(c(0b111) == 0b011);
  CHECK(c(0b101) == 0b100);
  CHECK(c(0b001) == 0);
}

TEST_CASE("invalid tables are rejected") {
  CHECK_THROWS_AS(ChoiceFunction(2, {0, 1, 2}), DomainError);
  CHECK_THROWS_AS(ChoiceFunction(2, {0, 2, 2, 3}), DomainError);
}

TEST_CASE("property checks agree with the definitions on random tables") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 400; ++k) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const ChoiceFunction c = random_ranked(n, rng);
    const auto sub = check_substitutable(c);
    REQUIRE(!sub.has_value() == oracle_substitutable(c));
    if (sub) {
      CHECK(subset(sub->smaller, sub->larger));
      CHECK(contains(c(sub->larger), sub->student));
      CHECK_FALSE(contains(c(sub->smaller), sub->student));
    }
    const auto lad = check_lad(c);
    REQUIRE(!lad.has_value() == oracle_lad(c));
    if (lad) CHECK(std::popcount(c(lad->smaller)) > std::popcount(c(lad->larger)));
    CHECK(check_q_acceptance(c).q == oracle_q(c));
  }
}

TEST_CASE("DA with responsive choice equals DA") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 500; ++k) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 3);
    const Context c = oracle::random_context(n, m, 2, rng);
    const Profile p = oracle::random_profile(n, m, rng);
    std::vector<ChoiceFunction> choices;
    for (School s = 0; s < m; ++s) choices.push_back(ChoiceFunction::responsive(c.priority(s), c.capacity(s)));
    const Matching mu = da_with_choice(p, choices);
    REQUIRE(mu.assignment() == oracle::sequential_da(c, p));
    CHECK(audit_choice_stability(mu, p, choices).stable);
  }
}

TEST_CASE("choice stability audit flags blocking pairs") {
  const std::vector<ChoiceFunction> choices{ChoiceFunction::responsive(std::vector<Student>{0, 1}, 1)};
  const Profile p{Preference({0, kOutside}, 1), Preference({0, kOutside}, 1)};
  const auto r = audit_choice_stability(Matching({kOutside, 0}), p, choices);
  CHECK_FALSE(r.stable);
  CHECK(r.blocking_pairs == std::vector<std::pair<Student, School>>{{0, 0}});
  CHECK(audit_choice_stability(Matching({0, kOutside}), p, choices).stable);
}

TEST_CASE("bossy example tables are substitutable and DA on them is choice-stable") {
  for (const std::string name : {"FX-B1", "FX-B2"}) {
    CAPTURE(name);
    const Instance inst = fixture_instance(name);
    REQUIRE_FALSE(inst.choices.empty());
    const ChoiceFunction& s1 = inst.choices[0];
    CHECK(oracle_substitutable(s1));
    const Matching mu = da_with_choice(inst.profile, inst.choices);
    CHECK(mu[0] == 0);
    CHECK(audit_choice_stability(mu, inst.profile, inst.choices).stable);

    std::vector<Student> order(inst.context.num_students());
    std::iota(order.begin(), order.end(), 0);
    CHECK(repaired_choice_instance(name).choices[0] == ChoiceFunction::responsive(order, 2));
  }
  CHECK(oracle_lad(fixture_instance("FX-B1").choices[0]));
  CHECK_FALSE(oracle_q(fixture_instance("FX-B1").choices[0]));
  CHECK(oracle_q(fixture_instance("FX-B2").choices[0]) == 2);
}
