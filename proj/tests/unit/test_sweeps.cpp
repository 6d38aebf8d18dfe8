#include <doctest.h>

#include "schoolchoice/sweeps.hpp"

using namespace schoolchoice;

TEST_CASE("grid sizes") {
  GridBounds b{2, 1, 2, false};
  // n=1: q in {1,2}; n=2: 2 orders x 2 capacities.
  CHECK(sweep_grid(b).size() == 6u);
  b.relabel = true;
  CHECK(sweep_grid(b).size() == 4u);
  CHECK(priority_profiles(3, {1, 1}, false).size() == 36u);
  CHECK(priority_profiles(3, {1, 1}, true).size() == 6u);
  CHECK(describe_context(priority_profiles(2, {2, 1}, true).front()) == "n=2 q=(2,1) s1:1,2 s2:1,2");
}

TEST_CASE("small sweeps are clean and deterministic") {
  SweepOptions o;
  o.bounds = GridBounds{3, 2, 2, true};
  o.samples = 30;
  for (SweepKind k : {SweepKind::Theorem1, SweepKind::Remark1, SweepKind::Lemma1, SweepKind::Lemma2,
                      SweepKind::Theorem3}) {
    CAPTURE(sweep_name(k));
    const SweepReport a = run_sweep(k, o);
    CHECK(a.clean());
    CHECK(a.instances > 0);
    CHECK(sweep_report_to_json(a, o).dump() == sweep_report_to_json(run_sweep(k, o), o).dump());
  }
}

TEST_CASE("corollary sweep separates cyclic and acyclic profiles") {
  SweepOptions o;
  o.bounds.max_students = 3;
  o.bounds.relabel = false;
  o.capacities = {{1, 1}};
  const SweepReport r = run_sweep(SweepKind::Corollary2, o);
  CHECK(r.clean());
  CHECK(r.instances == 36u);
}

TEST_CASE("sweep names round-trip") {
  for (SweepKind k : {SweepKind::Theorem1, SweepKind::Remark1, SweepKind::Lemma1, SweepKind::Lemma2,
                      SweepKind::Corollary2, SweepKind::Theorem3})
    CHECK(parse_sweep(sweep_name(k)) == k);
  CHECK_FALSE(parse_sweep("theorem9"));
}
