#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causeway/cause_defs.hpp"
#include "causeway/rational.hpp"

namespace causeway {

enum class RespMethod { CH, AC, ACCS, ACW, ACW_I };

std::string method_name(RespMethod m);
std::optional<RespMethod> method_from_name(const std::string& name);

// Nonnegative weights over the pairs of a cause set, in the set's canonical
// order. AC/ACCS weights are owner-specific; ACW/ACW-I are shared.
struct WeightVector {
  int owner = -1;
  std::vector<Rational> weights;
};

struct ResponsibilityProfile {
  RespMethod method = RespMethod::CH;
  std::vector<Rational> degrees;  // per agent
  bool empty_cause_set = false;   // degrees forced to 0 by an empty H_D
};

// Chockler-Halpern degree: the best m/k over the pairs the agent takes part
// in, with k = |A|+|W| and m the agent's conjuncts in A.
Rational ch_degree(const CauseSet& set, int agent);

// Definition-5 degree: sum_c b_c * m_c/k_c over sum_c b_c with
// k_c = |A|+|W| - w_c, discounting the agent's own contingency conjuncts.
Rational weighted_degree(const CauseSet& set, const WeightVector& weights, int agent);

// The four weighting schemes: AC puts weight 1 on one best pair per distinct
// cause, ACCS per (cause, cf setting) group, ACW weights every pair 1, ACW-I
// weights every pair by its counterfactual improvement.
WeightVector weights_for(RespMethod method, const CauseSet& set, int agent);

ResponsibilityProfile responsibility_profile(const CauseSet& set, RespMethod method,
                                             int agent_count);

// Total absolute difference between two profiles over all agents.
Rational impact(const ResponsibilityProfile& before, const ResponsibilityProfile& after);

}  // namespace causeway
