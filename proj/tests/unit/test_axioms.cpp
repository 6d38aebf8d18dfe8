#include <doctest.h>

#include <map>
#include <random>

#include "../oracles.hpp"
#include "schoolchoice/axioms.hpp"
#include "schoolchoice/fixtures.hpp"
#include "schoolchoice/mechanisms.hpp"

using namespace schoolchoice;

namespace {

// Outcomes of a mechanism on every profile, indexed by base-K digits.
struct Table {
  int n = 0;
  std::vector<Preference> orders;
  std::vector<std::vector<School>> out;

  Table(const Mechanism& m, const Context& c) : n(c.num_students()), orders(oracle::orders(c.num_schools())) {
    const int k = static_cast<int>(orders.size());
    std::size_t size = 1;
    for (int i = 0; i < n; ++i) size *= k;
    for (std::size_t x = 0; x < size; ++x) out.push_back(m(c, profile(x)).assignment());
  }
  int k() const { return static_cast<int>(orders.size()); }
  int digit(std::size_t x, int i) const {
    for (int t = 0; t < i; ++t) x /= k();
    return static_cast<int>(x % k());
  }
  std::size_t with(std::size_t x, int i, int d) const {
    std::size_t w = 1;
    for (int t = 0; t < i; ++t) w *= k();
    return x - digit(x, i) * w + d * w;
  }
  Profile profile(std::size_t x) const {
    Profile p;
    for (int i = 0; i < n; ++i) p.push_back(orders[digit(x, i)]);
    return p;
  }
};

std::vector<Student> members(const std::vector<School>& mu, School s, Student skip = -1) {
  std::vector<Student> out;
  for (Student j = 0; j < static_cast<Student>(mu.size()); ++j)
    if (mu[j] == s && j != skip) out.push_back(j);
  return out;
}

// Definitions verbatim, unilateral deviations.
bool oracle_holds(Axiom a, const Table& t) {
  for (std::size_t x = 0; x < t.out.size(); ++x)
    for (int i = 0; i < t.n; ++i)
      for (int d = 0; d < t.k(); ++d) {
        const auto& mu = t.out[x];
        const auto& nu = t.out[t.with(x, i, d)];
        const Preference& truth = t.orders[t.digit(x, i)];
        switch (a) {
          case Axiom::StrategyProof:
            if (oracle::rank_of(truth, nu[i]) < oracle::rank_of(truth, mu[i])) return false;
            break;
          case Axiom::NonBossy:
            if (mu[i] == nu[i] && mu != nu) return false;
            break;
          case Axiom::LocalNonBossy:
            if (mu[i] == nu[i] && members(mu, mu[i]) != members(nu, mu[i])) return false;
            break;
          case Axiom::WeakNonBossy:
            if (mu[i] == nu[i] && members(mu, kOutside) != members(nu, kOutside)) return false;
            break;
          case Axiom::ColleagueDisjoint:
            if (mu[i] != nu[i])
              for (Student j : members(mu, mu[i], i))
                if (nu[j] == nu[i]) return false;
            break;
          default:
            break;
        }
      }
  return true;
}

bool oracle_gsp(const Table& t) {
  const int n = t.n;
  for (std::size_t x = 0; x < t.out.size(); ++x)
    for (unsigned c = 1; c < (1U << n); ++c) {
      std::vector<Student> coalition;
      for (Student i = 0; i < n; ++i)
        if ((c >> i) & 1U) coalition.push_back(i);
      std::vector<int> d(coalition.size(), 0);
      while (true) {
        std::size_t y = x;
        for (std::size_t a = 0; a < coalition.size(); ++a) y = t.with(y, coalition[a], d[a]);
        bool no_loss = true, gain = false;
        for (Student j : coalition) {
          const Preference& truth = t.orders[t.digit(x, j)];
          const int before = oracle::rank_of(truth, t.out[x][j]);
          const int after = oracle::rank_of(truth, t.out[y][j]);
          no_loss = no_loss && after <= before;
          gain = gain || after < before;
        }
        if (no_loss && gain) return false;
        std::size_t a = 0;
        while (a < d.size() && ++d[a] == t.k()) d[a++] = 0;
        if (a == d.size()) break;
      }
    }
  return true;
}

const std::vector<Axiom> kUnilateral{Axiom::StrategyProof, Axiom::NonBossy, Axiom::LocalNonBossy,
                                     Axiom::WeakNonBossy, Axiom::ColleagueDisjoint};

}  // namespace

TEST_CASE("axiom checkers agree with brute force on every registered mechanism") {
  for (const RegisteredMechanism& r : registered_mechanisms()) {
    CAPTURE(r.name);
    const Table t(r.mechanism, r.context);
    Scope scope;
    scope.coverage = Coverage::Exhaustive;
    scope.max_coalition = r.context.num_students();
    for (Axiom a : kUnilateral) {
      CAPTURE(axiom_name(a));
      CHECK(check_axiom(a, r.mechanism, r.context, scope).holds == oracle_holds(a, t));
    }
    CHECK(check_group_strategy_proof(r.mechanism, r.context, scope).holds == oracle_gsp(t));
  }
}

TEST_CASE("axiom checkers agree with brute force on random contexts") {
  std::mt19937_64 rng(5);
  const std::vector<Mechanism> mechanisms{da_mechanism(), boston_mechanism(), da_school_mechanism(),
                                          serial_dictatorship_mechanism({2, 0, 1})};
  for (int k = 0; k < 12; ++k) {
    const Context c = oracle::random_context(3, 2, 2, rng);
    for (const Mechanism& m : mechanisms) {
      CAPTURE(m.name);
      const Table t(m, c);
      for (Axiom a : kUnilateral) CHECK(check_axiom(a, m, c).holds == oracle_holds(a, t));
    }
  }
}

TEST_CASE("witnesses replay and name the clause") {
  const Context c = make_context(4, {"1,2,3,4", "1,2,3,4"}, {1, 1});
  Scope scope;
  scope.max_witnesses = 0;
  const Verdict v = check_strategy_proof(boston_mechanism(), c, scope);
  REQUIRE_FALSE(v.holds);
  CHECK(v.exhaustive);
  CHECK(v.witnesses.size() > 1);
  for (const Counterexample& w : v.witnesses) {
    CHECK(replay(w, boston_mechanism(), c));
    CHECK_FALSE(replay(w, da_mechanism(), c));
    CHECK(describe(w, c).find("by misreporting") != std::string::npos);
  }
}

TEST_CASE("a constant mechanism satisfies every axiom") {
  const Context c = make_context(3, {"1,2,3", "3,2,1"}, {1, 1});
  const Mechanism m = constant_mechanism(Matching({0, 1, kOutside}));
  Scope scope;
  scope.max_coalition = 3;
  for (Axiom a : {Axiom::StrategyProof, Axiom::NonBossy, Axiom::LocalNonBossy, Axiom::WeakNonBossy,
                  Axiom::GroupStrategyProof, Axiom::LocalGroupStrategyProof, Axiom::GroupNonBossy,
                  Axiom::LocalGroupNonBossy, Axiom::ColleagueDisjoint})
    CHECK(check_axiom(a, m, c, scope).holds);
}

TEST_CASE("sampled coverage is seeded") {
  const Context c = make_context(3, {"1,2,3", "2,3,1", "3,1,2"}, {1, 1, 1});
  Scope scope;
  scope.coverage = Coverage::Sampled;
  scope.samples = 50;
  const Verdict a = check_non_bossy(boston_mechanism(), c, scope);
  const Verdict b = check_non_bossy(boston_mechanism(), c, scope);
  CHECK_FALSE(a.exhaustive);
  CHECK(a.base_profiles == 50);
  CHECK(a.holds == b.holds);
  if (!a.holds) CHECK(a.witnesses.front().profile == b.witnesses.front().profile);
}

TEST_CASE("axiom names round-trip") {
  for (Axiom a : {Axiom::StrategyProof, Axiom::NonBossy, Axiom::LocalNonBossy, Axiom::WeakNonBossy,
                  Axiom::GroupStrategyProof, Axiom::LocalGroupStrategyProof, Axiom::GroupNonBossy,
                  Axiom::LocalGroupNonBossy, Axiom::ColleagueDisjoint})
    CHECK(parse_axiom(axiom_name(a)) == a);
  CHECK_FALSE(parse_axiom("fair"));
}
