#include "causeway/properties.hpp"

#include <algorithm>
#include <set>

namespace causeway {

namespace {

WorldCache::Assignment witness_assignment(const CauseWitnessPair& pair) {
  WorldCache::Assignment a;
  for (std::size_t i = 0; i < pair.cause.items.size(); ++i)
    a.push_back({pair.cause.items[i].first, pair.cf_setting[i]});
  for (const auto& item : pair.contingency.items) a.push_back(item);
  std::sort(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return a;
}

}  // namespace

std::vector<std::pair<VariableId, std::uint64_t>> property1_violations(
    const Engine& engine, const Context& ctx, const Event& event,
    const CauseWitnessPair& pair, WorldCache* shared) {
  std::unique_ptr<WorldCache> owned;
  if (!shared) {
    owned = std::make_unique<WorldCache>(engine, ctx, event);
    shared = owned.get();
  }
  const Trajectory witness = shared->world_trajectory(witness_assignment(pair));
  const Trajectory& actual = shared->actual();

  std::vector<std::pair<VariableId, std::uint64_t>> out;
  for (const auto& item : pair.cause.items) {
    const VariableId& var = item.first;
    if (witness.info[var.agent][var.t] != actual.info[var.agent][var.t]) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> property2_violations(const CauseSet& set) {
  std::vector<std::vector<VariableId>> unions;
  unions.reserve(set.pairs.size());
  for (const auto& pair : set.pairs) unions.push_back(pair.union_vars());

  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    bool flagged = false;
    for (std::size_t j = 0; !flagged && j < set.pairs.size(); ++j) {
      if (unions[j].size() >= unions[i].size()) continue;
      flagged = std::includes(unions[i].begin(), unions[i].end(), unions[j].begin(),
                              unions[j].end());
    }
    if (flagged) out.push_back(i);
  }
  return out;
}

ViolationReport audit_property1(const Engine& engine, const Context& ctx, const Event& event,
                                const CauseSet& set, WorldCache* shared) {
  std::unique_ptr<WorldCache> owned;
  if (!shared) {
    owned = std::make_unique<WorldCache>(engine, ctx, event);
    shared = owned.get();
  }
  ViolationReport report;
  report.property = PropertyKind::CE;
  std::set<VariableId> distinct;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    auto violating = property1_violations(engine, ctx, event, set.pairs[i], shared);
    if (violating.empty()) continue;
    for (const auto& [var, _] : violating) distinct.insert(var);
    report.ce_violations.push_back({i, std::move(violating)});
  }
  report.distinct_violating_actions = distinct.size();
  return report;
}

ViolationReport audit_property2(const CauseSet& set) {
  ViolationReport report;
  report.property = PropertyKind::ACWM;
  report.non_minimal_pairs = property2_violations(set);

  // Distinct (cause, contingency) groups, counted once across cf settings.
  std::set<std::pair<AssignmentConjunction, AssignmentConjunction>> total, violating;
  for (std::size_t i = 0; i < set.pairs.size(); ++i)
    total.insert({set.pairs[i].cause, set.pairs[i].contingency});
  for (auto i : report.non_minimal_pairs)
    violating.insert({set.pairs[i].cause, set.pairs[i].contingency});
  report.distinct_cause_contingency_total = total.size();
  report.distinct_cause_contingency_violating = violating.size();
  return report;
}

CauseSet correct_property1(const Engine& engine, const Context& ctx, const Event& event,
                           const CauseSet& set, WorldCache* shared) {
  std::unique_ptr<WorldCache> owned;
  if (!shared) {
    owned = std::make_unique<WorldCache>(engine, ctx, event);
    shared = owned.get();
  }
  CauseSet out;
  out.tag = set.tag;
  out.event_str = set.event_str;
  out.seed = set.seed;
  out.max_size = set.max_size;

  for (const auto& pair : set.pairs) {
    const auto violating = property1_violations(engine, ctx, event, pair, shared);
    if (violating.empty()) {
      out.pairs.push_back(pair);
      continue;
    }
    std::vector<std::pair<VariableId, std::uint64_t>> cause_items, cont_items(
        pair.contingency.items);
    std::vector<std::uint64_t> cf;
    for (std::size_t i = 0; i < pair.cause.items.size(); ++i) {
      const auto& item = pair.cause.items[i];
      const bool moved = std::any_of(violating.begin(), violating.end(),
                                     [&](const auto& v) { return v.first == item.first; });
      if (moved) {
        // The moved conjunct keeps the counterfactual value it had in a'.
        // On a variable collision the moved value wins.
        std::erase_if(cont_items, [&](const auto& c) { return c.first == item.first; });
        cont_items.push_back({item.first, pair.cf_setting[i]});
      } else {
        cause_items.push_back(item);
        cf.push_back(pair.cf_setting[i]);
      }
    }
    if (cause_items.empty()) continue;  // pure contingency: dropped
    CauseWitnessPair corrected;
    corrected.tag = pair.tag;
    corrected.cause = AssignmentConjunction::of(std::move(cause_items));
    corrected.cf_setting = std::move(cf);
    corrected.contingency = AssignmentConjunction::of(std::move(cont_items));
    corrected.improvement = pair.improvement;
    out.pairs.push_back(std::move(corrected));
  }

  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const CauseWitnessPair& a, const CauseWitnessPair& b) { return (a <=> b) < 0; });
  out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
  return out;
}

CauseSet correct_property2(const CauseSet& set) {
  const auto flagged = property2_violations(set);
  CauseSet out;
  out.tag = set.tag;
  out.event_str = set.event_str;
  out.seed = set.seed;
  out.max_size = set.max_size;
  std::size_t next = 0;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    if (next < flagged.size() && flagged[next] == i) {
      ++next;
      continue;
    }
    out.pairs.push_back(set.pairs[i]);
  }
  return out;
}

}  // namespace causeway
