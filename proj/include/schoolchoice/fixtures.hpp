#pragma once

// Registry of the worked examples: each fixture bundles its context and
// profiles, the built-in mechanisms it exercises, and the expected values,
// every one tagged as published or derived.

#include <string>
#include <vector>

#include "schoolchoice/charax.hpp"
#include "schoolchoice/io.hpp"
#include "schoolchoice/mechanisms.hpp"

namespace schoolchoice {

struct FixtureCheck {
  std::string label;
  bool published = true;  // false: derived by hand or by an independent oracle
  std::string expected;
  std::string actual;

  bool passed() const { return expected == actual; }
};

struct FixtureReport {
  std::string name;
  std::string title;
  std::vector<FixtureCheck> checks;

  bool passed() const;
};

const std::vector<std::string>& fixture_names();
/// Base context and profile of a fixture (choice tables and colleague
/// rankings included where the fixture has them).
Instance fixture_instance(const std::string& name);
/// FX-B1 or FX-B2 with s1's table replaced by its repaired, responsive version.
Instance repaired_choice_instance(const std::string& name);
/// Throws DomainError for an unknown name.
FixtureReport reproduce_fixture(const std::string& name);
std::vector<FixtureReport> reproduce_all();

/// "s2,s1" lists the top of a ranking. Without s0 the listed schools are
/// followed by s0 and the rest by id; with s0 the remaining schools follow it.
Preference parse_ranking(const std::string& text, int num_schools);
/// Priorities given as "4,2,1,3,5"; unlisted students follow in id order.
Context make_context(int num_students, const std::vector<std::string>& priorities, std::vector<int> capacities);

/// Fixed-population mechanisms of the worked examples.
Mechanism fx_a1_mechanism();  // DA, except the school-optimal matching at one profile
Mechanism fx_a2_mechanism();  // DA unless student 1 tops s1
Mechanism fx_a3_mechanism();  // tops of students 1 and 2 decide
Mechanism fx_a4_mechanism();  // student 1's second choice decides 2 and 3
Mechanism fx_l3_mechanism();  // s2 P_1 s1 decides student 3
/// Variable-population mechanisms of the characterization examples.
PopulationMechanism fx_ek1_mechanism();
PopulationMechanism fx_c1_mechanism();

struct RegisteredMechanism {
  std::string name;
  Mechanism mechanism;
  Context context;
};

/// Every fixture mechanism with the context it is defined on.
std::vector<RegisteredMechanism> registered_mechanisms();

/// Built-in mechanisms by CLI name: da, da-school, boston, sd, median,
/// da-choice (needs choice tables) and the fx-* fixtures.
Mechanism mechanism_by_name(const std::string& name, const Instance& instance,
                            const std::vector<Student>& order = {});
PopulationMechanism population_mechanism_by_name(const std::string& name);

}  // namespace schoolchoice
