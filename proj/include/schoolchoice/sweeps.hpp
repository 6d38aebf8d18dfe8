#pragma once

// Property sweeps over a grid of small contexts. Each sweep counts the
// instances it examined and keeps the first few counterexamples.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schoolchoice/axioms.hpp"
#include "schoolchoice/core.hpp"
#include "schoolchoice/io.hpp"

namespace schoolchoice {

/// Contexts with 1..max_students students, 1..max_schools schools and every
/// capacity in 1..max_capacity. With `relabel`, the first school's priority is
/// fixed to the identity, which covers every context up to renaming students.
struct GridBounds {
  int max_students = 4;
  int max_schools = 2;
  int max_capacity = 3;
  bool relabel = true;
};

std::vector<Context> sweep_grid(const GridBounds& bounds);
/// Every priority profile over `num_students` for fixed capacities.
std::vector<Context> priority_profiles(int num_students, const std::vector<int>& capacities, bool relabel);

/// "n=3 q=(2,1) s1:1,2,3 s2:3,1,2"
std::string describe_context(const Context& context);

enum class SweepKind { Theorem1, Remark1, Lemma1, Lemma2, Corollary2, Theorem3 };

const char* sweep_name(SweepKind kind);
std::optional<SweepKind> parse_sweep(const std::string& name);

struct SweepOptions {
  GridBounds bounds;
  Coverage coverage = Coverage::Automatic;
  std::uint64_t seed = 20240601;
  std::size_t samples = 1000;   // D_c profiles per context (theorem3), base profiles when sampling
  int max_coalition = 3;        // corollary2
  /// corollary2 capacity vectors; defaults to (1,1) and (2,1) on four students.
  std::vector<std::vector<int>> capacities;
  std::size_t keep = 5;         // counterexamples kept in the report
  std::uint64_t budget = default_budget();
};

struct SweepReport {
  SweepKind kind = SweepKind::Theorem1;
  std::uint64_t contexts = 0;
  std::uint64_t instances = 0;
  std::uint64_t counterexamples = 0;
  std::vector<std::string> examples;
  /// Kind-specific tallies, in insertion order.
  std::vector<std::pair<std::string, std::uint64_t>> tallies;
  double seconds = 0;

  bool clean() const { return counterexamples == 0; }
};

/// Throws BudgetExceeded when a context's profile space exceeds the budget.
SweepReport run_sweep(SweepKind kind, const SweepOptions& options);

/// Timing is left out so equal seeds give identical documents.
Json sweep_report_to_json(const SweepReport& report, const SweepOptions& options);

}  // namespace schoolchoice
