#pragma once

// Fixed-population incentive axioms, checked by exhaustive or seeded search
// over preference profiles. Each checker returns every witness it was asked
// to collect; a witness replays through the mechanism.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schoolchoice/core.hpp"
#include "schoolchoice/mechanisms.hpp"

namespace schoolchoice {

enum class Axiom {
  StrategyProof,
  NonBossy,
  LocalNonBossy,
  WeakNonBossy,
  GroupStrategyProof,
  LocalGroupStrategyProof,
  GroupNonBossy,
  LocalGroupNonBossy,
  ColleagueDisjoint,
};

/// Short CLI names: sp, nb, lnb, wnb, gsp, lgsp, gnb, lgnb, coll.
const char* axiom_name(Axiom axiom);
std::optional<Axiom> parse_axiom(const std::string& name);
bool is_coalitional(Axiom axiom);
bool is_local(Axiom axiom);

enum class Coverage {
  Automatic,  // exhaustive for |S| <= 2, sampled otherwise
  Exhaustive,
  Sampled,
};

struct Scope {
  Coverage coverage = Coverage::Automatic;
  std::size_t samples = 2000;        // base profiles when sampling
  std::uint64_t seed = 20240601;
  int max_coalition = 3;
  std::size_t max_witnesses = 1;     // 0 = collect all
  std::uint64_t budget = default_budget();
};

struct Counterexample {
  Axiom axiom = Axiom::StrategyProof;
  Profile profile;                 // P
  std::vector<Student> deviators;  // C, sorted
  Profile deviated;                // (P'_C, P_{-C})
  School school = kOutside;        // clause school for the local axioms
  Matching before;                 // Φ(P)
  Matching after;                  // Φ(P'_C, P_{-C})
  std::string evidence;
};

struct Verdict {
  Axiom axiom = Axiom::StrategyProof;
  bool holds = true;
  bool exhaustive = true;
  std::uint64_t base_profiles = 0;
  std::vector<Counterexample> witnesses;
};

/// Whether the clause of `axiom` is violated for coalition `deviators` moving
/// from `before` to `after`; `school` is only read by the local group axioms.
bool violates(Axiom axiom, const std::vector<Student>& deviators, School school, const Matching& before,
              const Matching& after, const Profile& truth);

/// Re-runs the mechanism on the stored profiles and re-evaluates the clause.
bool replay(const Counterexample& witness, const Mechanism& mechanism, const Context& context);

Verdict check_axiom(Axiom axiom, const Mechanism& mechanism, const Context& context, const Scope& scope = {});

inline Verdict check_strategy_proof(const Mechanism& m, const Context& c, const Scope& s = {}) {
  return check_axiom(Axiom::StrategyProof, m, c, s);
}
inline Verdict check_non_bossy(const Mechanism& m, const Context& c, const Scope& s = {}) {
  return check_axiom(Axiom::NonBossy, m, c, s);
}
inline Verdict check_local_non_bossy(const Mechanism& m, const Context& c, const Scope& s = {}) {
  return check_axiom(Axiom::LocalNonBossy, m, c, s);
}
inline Verdict check_weak_non_bossy(const Mechanism& m, const Context& c, const Scope& s = {}) {
  return check_axiom(Axiom::WeakNonBossy, m, c, s);
}
inline Verdict check_group_strategy_proof(const Mechanism& m, const Context& c, const Scope& s = {}) {
  return check_axiom(Axiom::GroupStrategyProof, m, c, s);
}
inline Verdict check_local_group_strategy_proof(const Mechanism& m, const Context& c, const Scope& s = {}) {
  return check_axiom(Axiom::LocalGroupStrategyProof, m, c, s);
}
inline Verdict check_group_non_bossy(const Mechanism& m, const Context& c, const Scope& s = {}) {
  return check_axiom(Axiom::GroupNonBossy, m, c, s);
}
inline Verdict check_local_group_non_bossy(const Mechanism& m, const Context& c, const Scope& s = {}) {
  return check_axiom(Axiom::LocalGroupNonBossy, m, c, s);
}
inline Verdict check_colleague_disjointness(const Mechanism& m, const Context& c, const Scope& s = {}) {
  return check_axiom(Axiom::ColleagueDisjoint, m, c, s);
}

/// Checks a whole list of axioms against one outcome table.
std::vector<Verdict> check_axioms(const std::vector<Axiom>& axioms, const Mechanism& mechanism,
                                  const Context& context, const Scope& scope = {});

std::string describe(const Counterexample& witness, const Context& context);

}  // namespace schoolchoice
