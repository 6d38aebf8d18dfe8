#include "schoolchoice/cycles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace schoolchoice {

namespace {

std::vector<Student> improving_students(const Matching& mu, const Matching& mu_prime, const Profile& profile) {
  std::vector<Student> out;
  for (Student i = 0; i < mu.num_students(); ++i)
    if (profile[i].prefers(mu_prime[i], mu[i])) out.push_back(i);
  return out;
}

std::vector<Edge> edges_from(const std::vector<Student>& improving, const Matching& mu, const Matching& mu_prime) {
  std::vector<Edge> edges;
  for (Student i : improving)
    for (Student j = 0; j < mu.num_students(); ++j)
      if (mu[j] == mu_prime[i]) edges.emplace_back(i, j);
  std::sort(edges.begin(), edges.end());
  return edges;
}

void check_pair(const Matching& mu, const Matching& mu_prime, const Context& context, const Profile& profile) {
  mu.validate(context);
  mu_prime.validate(context);
  validate_profile(context, profile);
}

std::vector<Student> rotate_to_min(std::vector<Student> cycle) {
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

}  // namespace

ImprovementGraph build_graph(const Matching& mu, const Matching& mu_prime, const Context& context,
                             const Profile& profile) {
  check_pair(mu, mu_prime, context, profile);
  if (mu == mu_prime) throw DomainError("improvement graph needs two different matchings");
  ImprovementGraph graph;
  graph.baseline = mu;
  graph.target = mu_prime;
  for (School s = kOutside; s < context.num_schools(); ++s) {
    if (mu.members_set(s) == mu_prime.members_set(s)) continue;
    for (Student i : mu.members(s)) graph.nodes.push_back(i);
  }
  std::sort(graph.nodes.begin(), graph.nodes.end());
  graph.improving = improving_students(mu, mu_prime, profile);
  graph.edges = edges_from(graph.improving, mu, mu_prime);
  return graph;
}

ImprovementGraph build_graph_star(const Matching& mu, const Matching& mu_prime, const Context& context,
                                  const Profile& profile) {
  check_pair(mu, mu_prime, context, profile);
  ImprovementGraph graph;
  graph.baseline = mu;
  graph.target = mu_prime;
  graph.improving = improving_students(mu, mu_prime, profile);
  std::set<School> reached;
  for (Student i : graph.improving) reached.insert(mu[i]);
  for (Student i = 0; i < mu.num_students(); ++i)
    if (reached.count(mu[i])) graph.nodes.push_back(i);
  graph.edges = edges_from(graph.improving, mu, mu_prime);
  return graph;
}

bool mu_blocks(Student k, Student i, Student j, const Matching& mu, const Context& context, const Profile& profile) {
  School s = mu[j];
  if (s == kOutside) return false;
  return profile[k].prefers(s, mu[k]) && context.higher_priority(s, k, i);
}

std::vector<Student> blocking_set(Student i, Student j, const ImprovementGraph& graph, const Context& context,
                                  const Profile& profile) {
  if (!std::binary_search(graph.edges.begin(), graph.edges.end(), Edge{i, j}))
    throw DomainError("edge [" + context.student_name(i) + "," + context.student_name(j) + "] not in graph");
  std::vector<Student> out;
  for (Student k : graph.nodes)
    if (mu_blocks(k, i, j, graph.baseline, context, profile)) out.push_back(k);
  return out;
}

ImprovementGraph edge_replace(const ImprovementGraph& graph, const Context& context, const Profile& profile) {
  ImprovementGraph replaced = graph;
  replaced.edges.clear();
  for (const auto& [i, j] : graph.edges) {
    std::vector<Student> blockers = blocking_set(i, j, graph, context, profile);
    if (blockers.empty()) {
      replaced.edges.emplace_back(i, j);
      continue;
    }
    School s = graph.baseline[j];
    Student best = *std::min_element(blockers.begin(), blockers.end(), [&](Student a, Student b) {
      return context.higher_priority(s, a, b);
    });
    replaced.edges.emplace_back(best, j);
  }
  std::sort(replaced.edges.begin(), replaced.edges.end());
  return replaced;
}

std::vector<Student> find_cycle(const ImprovementGraph& graph) {
  if (graph.nodes.empty()) throw DomainError("graph has no nodes");
  std::map<Student, Student> predecessor;
  for (const auto& [u, v] : graph.edges) {
    auto it = predecessor.find(v);
    if (it == predecessor.end() || u < it->second) predecessor[v] = u;
  }
  for (Student v : graph.nodes)
    if (!predecessor.count(v)) throw DomainError("node " + std::to_string(v + 1) + " has no in-edge");

  std::vector<Student> walk{graph.nodes.front()};
  std::map<Student, std::size_t> seen{{walk.front(), 0}};
  while (true) {
    Student next = predecessor.at(walk.back());
    if (auto it = seen.find(next); it != seen.end()) {
      std::vector<Student> cycle(walk.begin() + static_cast<std::ptrdiff_t>(it->second), walk.end());
      std::reverse(cycle.begin(), cycle.end());
      return rotate_to_min(cycle);
    }
    seen[next] = walk.size();
    walk.push_back(next);
  }
}

std::vector<std::vector<Student>> all_cycles(const ImprovementGraph& graph) {
  std::map<Student, std::set<Student>> successors;
  for (const auto& [u, v] : graph.edges) successors[u].insert(v);
  std::vector<std::vector<Student>> cycles;
  std::vector<Student> path;
  std::set<Student> on_path;

  auto dfs = [&](auto&& self, Student start, Student v) -> void {
    for (Student w : successors[v]) {
      if (w == start) {
        cycles.push_back(path);
      } else if (w > start && !on_path.count(w)) {
        path.push_back(w);
        on_path.insert(w);
        self(self, start, w);
        on_path.erase(w);
        path.pop_back();
      }
    }
  };
  std::set<Student> starts;
  for (const auto& [u, v] : graph.edges) starts.insert(u);
  for (Student start : starts) {
    path = {start};
    on_path = {start};
    dfs(dfs, start, start);
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

bool is_improving_cycle(const std::vector<Student>& cycle, const Matching& mu, const Profile& profile) {
  if (cycle.empty()) return false;
  std::set<Student> distinct(cycle.begin(), cycle.end());
  if (distinct.size() != cycle.size()) return false;
  for (std::size_t l = 0; l < cycle.size(); ++l) {
    Student i = cycle[l];
    Student next = cycle[(l + 1) % cycle.size()];
    if (!profile[i].prefers(mu[next], mu[i])) return false;
  }
  return true;
}

std::vector<std::tuple<Student, Student, Student>> cycle_blocks(const std::vector<Student>& cycle, const Matching& mu,
                                                                const Context& context, const Profile& profile) {
  if (!is_improving_cycle(cycle, mu, profile)) throw DomainError("not a μ-improving cycle");
  std::vector<std::tuple<Student, Student, Student>> out;
  for (std::size_t l = 0; l < cycle.size(); ++l) {
    Student i = cycle[l];
    Student j = cycle[(l + 1) % cycle.size()];
    for (Student k = 0; k < context.num_students(); ++k)
      if (mu_blocks(k, i, j, mu, context, profile)) out.emplace_back(k, i, j);
  }
  return out;
}

std::vector<Student> cycle_blockers(const std::vector<Student>& cycle, const Matching& mu, const Context& context,
                                    const Profile& profile) {
  std::set<Student> out;
  for (const auto& block : cycle_blocks(cycle, mu, context, profile)) out.insert(std::get<0>(block));
  return {out.begin(), out.end()};
}

Matching apply_cycle(const Matching& mu, const std::vector<Student>& cycle, const Profile& profile) {
  if (!is_improving_cycle(cycle, mu, profile)) throw DomainError("not a μ-improving cycle");
  Matching eta = mu;
  for (std::size_t l = 0; l < cycle.size(); ++l) eta[cycle[l]] = mu[cycle[(l + 1) % cycle.size()]];
  return eta;
}

bool is_monotonic_transformation(const Preference& before, const Preference& after, School pivot) {
  for (School a : after.ranking()) {
    if (a == pivot) break;
    if (!before.prefers(a, pivot)) return false;
  }
  return true;
}

}  // namespace schoolchoice
