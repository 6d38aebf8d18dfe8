#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "schoolchoice/cycles.hpp"
#include "schoolchoice/fixtures.hpp"
#include "schoolchoice/mechanisms.hpp"

using namespace schoolchoice;

namespace {

std::vector<Student> ids(std::initializer_list<int> one_based) {
  std::vector<Student> out;
  for (int i : one_based) out.push_back(i - 1);
  return out;
}

}  // namespace

TEST_CASE("six-student graph: nodes, edges, replacement and the blocked cycle") {
  const Instance inst = fixture_instance("FX-D3");
  const Context& c = inst.context;
  const Profile& p = inst.profile;
  Profile q = p;
  q[0] = parse_ranking("s1", c.num_schools());
  const Matching mu = da_student(c, p);
  const Matching mu_prime = da_student(c, q);

  const ImprovementGraph g = build_graph(mu, mu_prime, c, p);
  CHECK(g.nodes == ids({2, 3, 4, 5}));
  CHECK(g.improving == ids({2, 3, 4, 5}));
  CHECK(g.edges == std::vector<Edge>{{1, 4}, {2, 3}, {3, 2}, {4, 1}});
  CHECK(blocking_set(1, 4, g, c, p) == ids({3}));
  CHECK_THROWS_AS(blocking_set(0, 1, g, c, p), DomainError);

  const ImprovementGraph g2 = edge_replace(g, c, p);
  CHECK(g2.edges == std::vector<Edge>{{1, 3}, {2, 4}, {3, 2}, {4, 1}});
  const auto cycle = find_cycle(g2);
  CHECK(cycle == ids({2, 4, 3, 5}));
  CHECK(is_improving_cycle(cycle, mu, p));
  CHECK(cycle_blockers(cycle, mu, c, p) == ids({1}));
  CHECK(all_cycles(g) == std::vector<std::vector<Student>>{ids({2, 5}), ids({3, 4})});

  const Matching eta = apply_cycle(mu, cycle, p);
  CHECK(format_matching(eta, c) == "((1,s1),(2,s3),(3,s2),(4,s4),(5,s5),(6,s1))");
  CHECK(weakly_pareto_dominates(mu_prime, eta, p));
  CHECK_THROWS_AS(build_graph(mu, mu, c, p), DomainError);
}

TEST_CASE("swap cycles exchange schools; non-improving cycles are rejected") {
  const Profile p{Preference({1, 0, kOutside}, 2), Preference({0, 1, kOutside}, 2)};
  const Matching mu({0, 1});
  CHECK(is_improving_cycle({0, 1}, mu, p));
  CHECK(apply_cycle(mu, {0, 1}, p) == Matching({1, 0}));
  CHECK_FALSE(is_improving_cycle({0}, mu, p));
  CHECK_THROWS_AS(apply_cycle(Matching({1, 0}), {0, 1}, p), DomainError);
}

TEST_CASE("monotonic transformations") {
  const Preference before({2, 0, kOutside, 1}, 3);
  CHECK(is_monotonic_transformation(before, Preference({0, kOutside, 2, 1}, 3), 0));
  CHECK_FALSE(is_monotonic_transformation(before, Preference({1, 0, 2, kOutside}, 3), 0));
}

TEST_CASE("G-star contains every improving student") {
  const Instance inst = fixture_instance("FX-D3");
  Profile q = inst.profile;
  q[0] = parse_ranking("s1", inst.context.num_schools());
  const Matching mu = da_student(inst.context, inst.profile);
  const Matching mu_prime = da_student(inst.context, q);
  const ImprovementGraph star = build_graph_star(mu, mu_prime, inst.context, inst.profile);
  for (Student i : star.improving)
    CHECK(std::find(star.nodes.begin(), star.nodes.end(), i) != star.nodes.end());
  CHECK_FALSE(star.edges.empty());
}

TEST_CASE("replaced graphs yield improving cycles unblocked inside V and dominated by the deviation outcome") {
  std::mt19937_64 rng(21);
  int cases = 0;
  for (int k = 0; k < 20000 && cases < 300; ++k) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const int m = 2 + static_cast<int>(rng() % 2);
    const Context c = oracle::random_context(n, m, 2, rng);
    const Profile p = oracle::random_profile(n, m, rng);
    Profile q = p;
    q[0] = oracle::random_preference(m, rng);
    const Matching mu = da_student(c, p);
    const Matching mu_prime = da_student(c, q);
    if (mu == mu_prime || mu[0] != mu_prime[0]) continue;
    if (!is_monotonic_transformation(p[0], q[0], mu[0])) continue;
    const ImprovementGraph g = build_graph(mu, mu_prime, c, p);
    if (g.improving.empty()) continue;
    ++cases;
    const ImprovementGraph g2 = edge_replace(g, c, p);
    const auto cycle = find_cycle(g2);
    REQUIRE(is_improving_cycle(cycle, mu, p));
    for (Student b : cycle_blockers(cycle, mu, c, p))
      REQUIRE(std::find(g.nodes.begin(), g.nodes.end(), b) == g.nodes.end());
    REQUIRE(weakly_pareto_dominates(mu_prime, apply_cycle(mu, cycle, p), p));
  }
  CHECK(cases > 0);
}
