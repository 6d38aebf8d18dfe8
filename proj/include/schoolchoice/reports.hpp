#pragma once

// Structured report documents shared by the command-line tool and the Python
// module. Student and school names come from the context.

#include <string>

#include "schoolchoice/axioms.hpp"
#include "schoolchoice/charax.hpp"
#include "schoolchoice/cycles.hpp"
#include "schoolchoice/fixtures.hpp"
#include "schoolchoice/io.hpp"
#include "schoolchoice/mechanisms.hpp"
#include "schoolchoice/stability.hpp"

namespace schoolchoice {

Json trace_to_json(const Trace& trace, const Context& context, bool schools_propose);
Json audit_to_json(const StabilityReport& report, const Context& context);
Json stable_set_to_json(const std::vector<Matching>& matchings, const Context& context);

Json counterexample_to_json(const Counterexample& witness, const Context& context);
Json verdict_to_json(const Verdict& verdict, const Context& context);

Json population_witness_to_json(const PopulationWitness& witness, const Context& universe);
Json population_verdict_to_json(const PopulationVerdict& verdict, const Context& universe);
Json characterization_to_json(const CharacterizationReport& report, const Context& universe);

/// μ = DA(P), μ' = DA(P'): the graphs G and G', blockers per edge, the chosen
/// cycle of G', its blockers and the matching it implements.
Json cycle_report(const Context& context, const Profile& before, const Profile& after);

Json fixture_report_to_json(const FixtureReport& report);

/// Compact text rendering of any report document.
std::string render_table(const Json& document);

}  // namespace schoolchoice
