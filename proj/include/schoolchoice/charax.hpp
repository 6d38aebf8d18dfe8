#pragma once

// Variable-population mechanisms Φ(N, P) over a universe N̄, the axioms of the
// DA characterization, induced choice functions, priority recovery and
// Ergin-cycle detection.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "schoolchoice/axioms.hpp"
#include "schoolchoice/choicefn.hpp"
#include "schoolchoice/core.hpp"

namespace schoolchoice {

/// Φ(N, P): `universe` fixes N̄, S, q (and priorities for DA-like rules);
/// `profile` covers N̄ but only members of `population` matter. Students
/// outside the population are reported as kAbsent.
struct PopulationMechanism {
  std::string name;
  std::function<Matching(const Context& universe, StudentSet population, const Profile& profile)> run;

  Matching operator()(const Context& universe, StudentSet population, const Profile& profile) const {
    return run(universe, population, profile);
  }
};

/// DA^≻ with the universe's priorities.
PopulationMechanism da_population_mechanism();
/// DA^≻ with fixed `priorities`, ignoring the universe's.
PopulationMechanism da_population_mechanism(Context priorities);

enum class PopulationAxiom {
  IndividuallyRational,
  WeaklyNonWasteful,
  PopulationMonotonic,
  StrategyProof,
  WeakLocalNonBossy,
  SWrARP,
  TruncationInvariant,
};

/// ir, wnw, pm, sp, wlnb, swrarp, trunc
const char* population_axiom_name(PopulationAxiom axiom);
/// The six axioms of the characterization, in report order.
const std::vector<PopulationAxiom>& characterization_axioms();

struct PopulationWitness {
  StudentSet population = 0;
  StudentSet other_population = 0;  // N' for monotonicity and S-WrARP
  Profile profile;
  Profile deviated;                 // unilateral deviations only
  Student student = 0;
  Student other_student = 0;        // j for S-WrARP
  School school = kOutside;
  Matching before;
  Matching after;
  std::string evidence;
};

struct PopulationVerdict {
  PopulationAxiom axiom = PopulationAxiom::IndividuallyRational;
  bool holds = true;
  std::vector<PopulationWitness> witnesses;
};

/// Runs the requested axioms over all non-empty populations and all truncated
/// profiles (exhaustive) or a seeded sample of them.
std::vector<PopulationVerdict> check_population_axioms(const std::vector<PopulationAxiom>& axioms,
                                                       const PopulationMechanism& mechanism, const Context& universe,
                                                       const Scope& scope = {});
PopulationVerdict check_population_axiom(PopulationAxiom axiom, const PopulationMechanism& mechanism,
                                         const Context& universe, const Scope& scope = {});

/// Re-runs the mechanism on the witness data and re-evaluates the clause.
bool replay(const PopulationWitness& witness, PopulationAxiom axiom, const PopulationMechanism& mechanism,
            const Context& universe);

/// P^s: s, s0, then the other schools by id.
Preference single_school_preference(School s, int num_schools);

/// C^{Φ,s}(N) = Φ_s(N, (P^s, ..., P^s)). Throws DomainError if another
/// representative of the same truncation changes the answer.
ChoiceFunction derive_choice_function(const PopulationMechanism& mechanism, const Context& universe, School s);

/// Witness (N, N', i, j) of a (q+1)-WrARP violation, first in lexicographic order.
struct WrarpWitness {
  StudentSet first = 0;
  StudentSet second = 0;
  Student i = 0;
  Student j = 0;
};
std::optional<WrarpWitness> check_wrarp_q1(const ChoiceFunction& choice, int q);

struct PriorityRecovery {
  bool responsive = false;
  bool unconstrained = false;  // |N̄| <= q: every order rationalises C
  std::vector<Student> order;
  StudentSet violating = 0;    // a subset where the candidate order disagrees with C
};
PriorityRecovery recover_priority(const ChoiceFunction& choice, int q);

/// Orders a and b agree on every pair x ≻ y where y has at least q students
/// above it in `a`, i.e. wherever a q-responsive choice reveals the comparison.
bool priorities_agree_where_binding(std::span<const Student> a, std::span<const Student> b, int q);

struct CharacterizationReport {
  std::vector<PopulationVerdict> verdicts;  // the six axioms
  PopulationVerdict truncation;
  bool all_axioms_hold = false;
  std::vector<PriorityRecovery> recovered;  // per school, filled when all axioms hold
  std::optional<bool> equal;                // Φ ≡ DA^≻ over the scope
  std::optional<PopulationWitness> mismatch;
};

CharacterizationReport verify_characterization(const PopulationMechanism& mechanism, const Context& universe,
                                               const Scope& scope = {});

struct ErginCycle {
  School s = 0;
  School s_prime = 0;
  Student i = 0;
  Student j = 0;
  Student k = 0;
  StudentSet n_s = 0;
  StudentSet n_s_prime = 0;
};

/// Every (s, s', i, j, k) that admits witness sets, with the first such sets
/// in increasing bitmask order. Empty iff the priority profile is acyclic.
std::vector<ErginCycle> detect_ergin_cycles(const Context& context);

}  // namespace schoolchoice
