#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causeway/cause_defs.hpp"

namespace causeway {

enum class PropertyKind { CE, ACWM };  // Counterfactual Eligibility / Cause-Witness Minimality

struct ViolationReport {
  PropertyKind property = PropertyKind::CE;
  // CE: per audited pair, the cause conjuncts whose agent's information state
  // changed in the witness world. Indices refer into the audited CauseSet.
  struct PairViolations {
    std::size_t pair_index = 0;
    std::vector<std::pair<VariableId, std::uint64_t>> conjuncts;
  };
  std::vector<PairViolations> ce_violations;

  // ACWM: indices of pairs whose cause-contingency variable union strictly
  // contains another pair's union.
  std::vector<std::size_t> non_minimal_pairs;

  // Distinct action variables flagged at least once (CE statistic).
  std::size_t distinct_violating_actions = 0;
  // Distinct (cause, contingency) pairs in the set, total and violating
  // (ACWM statistics).
  std::size_t distinct_cause_contingency_total = 0;
  std::size_t distinct_cause_contingency_violating = 0;
};

// Cause conjuncts of one pair whose information state in the witness world
// [A<-a', W<-w'] differs from the actual one.
std::vector<std::pair<VariableId, std::uint64_t>> property1_violations(
    const Engine& engine, const Context& ctx, const Event& event,
    const CauseWitnessPair& pair, WorldCache* cache = nullptr);

// Pairs of the set whose (cause, contingency) variable union strictly
// contains the union of some other pair in the set. The set is expected to be
// a full enumeration of its definition at its budget.
std::vector<std::size_t> property2_violations(const CauseSet& set);

ViolationReport audit_property1(const Engine& engine, const Context& ctx, const Event& event,
                                const CauseSet& set, WorldCache* cache = nullptr);
ViolationReport audit_property2(const CauseSet& set);

// Moves every Counterfactual-Eligibility-violating conjunct from the cause
// (with its counterfactual value) into the contingency; pairs whose cause
// empties are dropped. Idempotent.
CauseSet correct_property1(const Engine& engine, const Context& ctx, const Event& event,
                           const CauseSet& set, WorldCache* cache = nullptr);

// Removes pairs with non-minimal cause-contingency unions. Idempotent.
CauseSet correct_property2(const CauseSet& set);

}  // namespace causeway
