#pragma once

// Improvement graphs between two matchings, μ-blocking, edge replacement and
// μ-improving cycles.

#include <tuple>
#include <utility>
#include <vector>

#include "schoolchoice/core.hpp"

namespace schoolchoice {

using Edge = std::pair<Student, Student>;

struct ImprovementGraph {
  std::vector<Student> nodes;     // sorted
  std::vector<Edge> edges;        // multiset, sorted
  std::vector<Student> improving; // I = {i : μ'(i) P_i μ(i)}, sorted
  Matching baseline;              // μ
  Matching target;                // μ'
};

/// G: nodes are the μ-members of every alternative whose member set differs
/// between μ and μ'; edges [i,j] for i ∈ I and μ(j) = μ'(i).
/// Throws DomainError when μ = μ'.
ImprovementGraph build_graph(const Matching& mu, const Matching& mu_prime, const Context& context,
                             const Profile& profile);

/// G*: nodes {i : μ(i) ∈ μ(I)}, same edge rule as G.
ImprovementGraph build_graph_star(const Matching& mu, const Matching& mu_prime, const Context& context,
                                  const Profile& profile);

/// k μ-blocks [i,j] when μ(j) P_k μ(k) and k ≻_{μ(j)} i. Nobody blocks an edge
/// into s0, which carries no priority.
bool mu_blocks(Student k, Student i, Student j, const Matching& mu, const Context& context, const Profile& profile);

/// The μ-blockers of [i,j] among the graph's nodes. Throws DomainError if the
/// edge is absent.
std::vector<Student> blocking_set(Student i, Student j, const ImprovementGraph& graph, const Context& context,
                                  const Profile& profile);

/// G': each edge [i,j] with blockers in V becomes [k,j] for the blocker k with
/// the highest priority at μ(j). Parallel edges are kept.
ImprovementGraph edge_replace(const ImprovementGraph& graph, const Context& context, const Profile& profile);

/// Walks backwards from the lowest node, always along the in-edge with the
/// smallest source, until a node repeats. Returns the cycle in edge direction
/// rotated to start at its smallest member. Throws DomainError if some node has
/// no in-edge.
std::vector<Student> find_cycle(const ImprovementGraph& graph);

/// All simple cycles of the graph, each rotated to its smallest member, sorted.
std::vector<std::vector<Student>> all_cycles(const ImprovementGraph& graph);

/// μ(i_{l+1}) P_{i_l} μ(i_l) for every l, indices modulo the length.
bool is_improving_cycle(const std::vector<Student>& cycle, const Matching& mu, const Profile& profile);

/// (blocker, i_l, i_{l+1}) for every student in N blocking some cycle edge.
/// Throws DomainError for a non-improving cycle.
std::vector<std::tuple<Student, Student, Student>> cycle_blocks(const std::vector<Student>& cycle, const Matching& mu,
                                                                const Context& context, const Profile& profile);
/// Sorted distinct blockers from cycle_blocks.
std::vector<Student> cycle_blockers(const std::vector<Student>& cycle, const Matching& mu, const Context& context,
                                    const Profile& profile);

/// Reassigns each i_l to μ(i_{l+1}). Throws DomainError for a non-improving cycle.
Matching apply_cycle(const Matching& mu, const std::vector<Student>& cycle, const Profile& profile);

/// The set of alternatives P'_i ranks above `pivot` is contained in the set P_i
/// ranks above it.
bool is_monotonic_transformation(const Preference& before, const Preference& after, School pivot);

}  // namespace schoolchoice
