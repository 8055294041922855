#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "causeway/scm.hpp"

namespace causeway {

inline constexpr int kDefaultMaxSize = 4;

enum class DefinitionTag { BF, HP, HP_MIN, AC };

std::string definition_name(DefinitionTag tag);
std::optional<DefinitionTag> definition_from_name(const std::string& name);

// Ordered conjunction of (action variable, value) with distinct variables.
struct AssignmentConjunction {
  std::vector<std::pair<VariableId, std::uint64_t>> items;  // sorted by variable

  static AssignmentConjunction of(std::vector<std::pair<VariableId, std::uint64_t>> items);

  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }
  std::vector<VariableId> vars() const;
  std::optional<std::uint64_t> value_of(const VariableId& v) const;

  friend bool operator==(const AssignmentConjunction&, const AssignmentConjunction&) = default;
  friend auto operator<=>(const AssignmentConjunction&, const AssignmentConjunction&) = default;
};

// One element of H_D: the actual cause A=a plus its witness (W, w', a').
struct CauseWitnessPair {
  DefinitionTag tag = DefinitionTag::BF;
  AssignmentConjunction cause;               // actual values
  std::vector<std::uint64_t> cf_setting;     // aligned with cause.items
  AssignmentConjunction contingency;         // w' values (actual values under HP)
  std::optional<std::int64_t> improvement;

  std::vector<VariableId> union_vars() const;

  friend bool operator==(const CauseWitnessPair& a, const CauseWitnessPair& b) {
    return a.tag == b.tag && a.cause == b.cause && a.cf_setting == b.cf_setting &&
           a.contingency == b.contingency;
  }
  friend auto operator<=>(const CauseWitnessPair& a, const CauseWitnessPair& b) {
    if (auto c = a.cause <=> b.cause; c != 0) return c;
    if (auto c = a.cf_setting <=> b.cf_setting; c != 0) return c;
    return a.contingency <=> b.contingency;
  }
};

struct CauseSet {
  DefinitionTag tag = DefinitionTag::BF;
  std::string event_str;
  std::uint64_t seed = 0;
  int max_size = kDefaultMaxSize;
  std::vector<CauseWitnessPair> pairs;  // canonically sorted, deduplicated
};

// Shared, memoizing evaluator of counterfactual worlds for one causal setting
// (engine, context, event). All definition checkers and the enumerator read
// worlds through this cache; it is safe to share across threads.
class WorldCache {
 public:
  using Assignment = std::vector<std::pair<VariableId, std::uint64_t>>;  // sorted

  struct Eval {
    bool feasible = false;
    bool event_holds = false;
    std::int64_t improvement = 0;
    std::uint64_t traj_hash1 = 0, traj_hash2 = 0;  // world identity
  };

  WorldCache(const Engine& engine, const Context& ctx, const Event& event);
  ~WorldCache();
  WorldCache(const WorldCache&) = delete;
  WorldCache& operator=(const WorldCache&) = delete;

  const Trajectory& actual() const;
  bool event_actual() const;
  std::uint64_t actual_value(const VariableId& v) const;

  Eval evaluate(const Assignment& assignment) const;
  Trajectory world_trajectory(const Assignment& assignment) const;

  // True when the forced value of `var` does no work: dropping it from the
  // assignment leaves the counterfactual trajectory unchanged.
  bool vacuous_in(const Assignment& assignment, const VariableId& var) const;

  // Existence of a feasible event-flipping setting over exactly `vars`.
  bool butfor_flip_exists(const std::vector<VariableId>& vars) const;
  // Existence of an HP witness for cause `vars`: some setting a' plus some
  // contingency W (frozen to actual values, |vars|+|W| <= budget) flipping
  // the event. W ranges over the engine's eligible variables.
  bool hp_flip_exists(const std::vector<VariableId>& vars, int budget) const;

  const Engine& engine() const;
  // Eligible enumeration variables in canonical (time-major) order.
  const std::vector<VariableId>& eligible() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Definition checkers. Each throws EventNotRealized when the event does not
// hold in the actual world. A shared WorldCache may be passed to amortize
// counterfactual rollouts; otherwise a private one is built per call.

bool is_but_for_cause(const Engine& engine, const Context& ctx, const Event& event,
                      const AssignmentConjunction& cause,
                      const std::vector<std::uint64_t>& cf_setting,
                      WorldCache* cache = nullptr);

bool is_hp_cause(const Engine& engine, const Context& ctx, const Event& event,
                 const AssignmentConjunction& cause,
                 const std::vector<std::uint64_t>& cf_setting,
                 const AssignmentConjunction& contingency,
                 int max_size = kDefaultMaxSize, WorldCache* cache = nullptr);

bool is_hp_min_cause(const Engine& engine, const Context& ctx, const Event& event,
                     const AssignmentConjunction& cause,
                     const std::vector<std::uint64_t>& cf_setting,
                     const AssignmentConjunction& contingency,
                     int max_size = kDefaultMaxSize, WorldCache* cache = nullptr);

bool is_ac_cause(const Engine& engine, const Context& ctx, const Event& event,
                 const AssignmentConjunction& cause,
                 const std::vector<std::uint64_t>& cf_setting,
                 const AssignmentConjunction& contingency,
                 WorldCache* cache = nullptr);

// Exhaustive enumeration of every cause-witness pair with |A|+|W| <= max_size
// passing the tagged definition, deduplicated and canonically ordered.
CauseSet enumerate_pairs(const Engine& engine, const Context& ctx, const Event& event,
                         DefinitionTag tag, int max_size = kDefaultMaxSize,
                         unsigned threads = 1);

// Same sweep, several definitions at once (single world cache).
std::map<DefinitionTag, CauseSet> enumerate_pairs_multi(
    const Engine& engine, const Context& ctx, const Event& event,
    const std::vector<DefinitionTag>& tags, int max_size = kDefaultMaxSize,
    unsigned threads = 1);

// Splits a but-for cause into (actual cause, contingency) by comparing each
// agent's information state between the witness world and the actual one.
// Returns nothing when every conjunct's information state changed.
std::optional<CauseWitnessPair> partition_butfor(const Engine& engine, const Context& ctx,
                                                 const Event& event,
                                                 const AssignmentConjunction& butfor_cause,
                                                 const std::vector<std::uint64_t>& setting,
                                                 WorldCache* cache = nullptr);

}  // namespace causeway
