#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "causeway/categorical.hpp"
#include "causeway/event.hpp"
#include "causeway/model.hpp"
#include "causeway/trajectory.hpp"
#include "causeway/variable.hpp"

namespace causeway {

// The event of interest does not hold in the actual world; cause queries on
// such settings are a distinguished failure, not a plain "false".
struct EventNotRealized : std::runtime_error {
  explicit EventNotRealized(const std::string& what) : std::runtime_error(what) {}
};

// Interventions force action variables to fixed values; their mechanisms are
// bypassed during rollout.
class InterventionSet {
 public:
  InterventionSet() = default;

  void set(VariableId var, std::uint64_t value);
  std::optional<std::uint64_t> forced_value(const VariableId& var) const;
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<std::pair<VariableId, std::uint64_t>>& items() const { return items_; }

  // Earliest intervened time-step, or none. Everything before it coincides
  // with the actual trajectory, which rollout exploits.
  std::optional<std::int32_t> first_time() const;

 private:
  std::vector<std::pair<VariableId, std::uint64_t>> items_;  // sorted by variable
};

// A Dec-POMDP compiled into Gumbel-max mechanisms: every endogenous variable
// is the argmax of log-probabilities plus its Gumbel(0,1) noise block.
struct ScmInstance {
  DecPomdpModel model;
  std::vector<AgentModel> agents;

  std::uint32_t variable_count = 0;  // T * (2 + 2n)

  std::uint32_t linear_index(const VariableId& v) const {
    return var_linear_index(v, model.agent_count);
  }
  std::uint64_t noise_dim(const VariableId& v) const;
  bool in_action_space(int agent, std::uint64_t value) const {
    return value < model.action_space_sizes[agent];
  }
};

// One exogenous draw: a Gumbel(0,1) vector per endogenous variable, laid out
// time-major (State, Obs, Info_0..n-1, Action_0..n-1 within each step).
// Blocks over small spaces are materialized; blocks over combinatorially
// large spaces evaluate coordinates on demand from the same counter-based
// derivation, so both paths yield identical draws.
class Context {
 public:
  static constexpr std::uint64_t kMaterializeLimit = 1u << 16;

  std::uint64_t seed() const { return seed_; }
  double gumbel(std::uint32_t var_index, std::uint64_t outcome_key) const;
  const std::vector<double>& block(std::uint32_t var_index) const {
    return blocks_[var_index];
  }

  friend Context sample_context(const ScmInstance& scm, std::uint64_t seed);

 private:
  std::uint64_t seed_ = 0;
  std::vector<std::vector<double>> blocks_;  // empty vector = lazy block
};

ScmInstance build_scm(DecPomdpModel model, std::vector<AgentModel> agents);
Context sample_context(const ScmInstance& scm, std::uint64_t seed);

struct RolloutResult {
  Trajectory trajectory;
  // Interventions that forced an action unavailable in the counterfactual
  // world (per the model's feasibility map). Cause search rejects such
  // worlds; plain rollouts only report them.
  std::vector<VariableId> infeasible;
  bool feasible() const { return infeasible.empty(); }
};

RolloutResult roll(const ScmInstance& scm, const Context& ctx,
                   const InterventionSet& interventions,
                   const Trajectory* actual_prefix = nullptr);

Trajectory rollout(const ScmInstance& scm, const Context& ctx,
                   const InterventionSet& interventions);

// Everything a cause query needs: the compiled model, the environment's named
// predicates, the action variables eligible for cause enumeration and an
// optional counterfactual-improvement annotator.
struct Engine {
  ScmInstance scm;
  PredicateRegistry predicates;
  std::vector<VariableId> eligible_vars;
  std::function<std::int64_t(const Trajectory& actual, const Trajectory& cf)> improvement;
};

bool satisfies(const Engine& engine, const Context& ctx,
               const InterventionSet& interventions, const Event& event);

// Plain-text DAG: one "parent -> child" line per edge, LF endings, exogenous
// U_* nodes included. Deterministic time-major order.
std::string export_causal_graph(const ScmInstance& scm);

// Samples contexts, applies random single-action interventions and counts
// next-state changes that the counterfactual-stability inequality forbids:
// s' != s_{t+1} although P(s_{t+1}|s,a')/P(s_{t+1}|s,a) >= P(s'|s,a')/P(s'|s,a).
// Gumbel-max mechanisms admit none, so the expected count is 0.
std::uint64_t check_counterfactual_stability(const ScmInstance& scm,
                                             std::uint64_t trials,
                                             std::uint64_t seed);

}  // namespace causeway
