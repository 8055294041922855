#include "causeway/json_io.hpp"

#include <sstream>

#include "json.hpp"

namespace causeway::io {

using ordered_json = nlohmann::ordered_json;

std::string value_label(const ScmInstance& scm, const VariableId& var, std::uint64_t value) {
  switch (var.kind) {
    case VarKind::State:
      if (scm.model.state_label) return scm.model.state_label(value);
      break;
    case VarKind::Obs:
      break;  // joint observations serialize per agent
    case VarKind::Info:
      if (scm.agents[var.agent].info_label) return scm.agents[var.agent].info_label(value);
      break;
    case VarKind::Action:
      if (scm.agents[var.agent].action_label)
        return scm.agents[var.agent].action_label(value);
      break;
  }
  return std::to_string(value);
}

std::string trajectory_json(const ScmInstance& scm, const Trajectory& traj) {
  ordered_json j;
  j["states"] = ordered_json::array();
  for (auto s : traj.states)
    j["states"].push_back(scm.model.state_label ? scm.model.state_label(s)
                                                : std::to_string(s));
  j["observations"] = ordered_json::array();
  for (std::uint64_t t = 0; t < traj.horizon; ++t) {
    ordered_json per_agent = ordered_json::array();
    for (int i = 0; i < traj.agent_count; ++i) {
      const std::uint64_t o = scm.model.obs_component(traj.joint_obs[t], i);
      per_agent.push_back(scm.model.obs_label ? scm.model.obs_label(i, o)
                                              : std::to_string(o));
    }
    j["observations"].push_back(per_agent);
  }
  j["info"] = ordered_json::array();
  for (int i = 0; i < traj.agent_count; ++i) {
    ordered_json row = ordered_json::array();
    for (std::uint64_t t = 0; t < traj.horizon; ++t) {
      const std::uint64_t v = traj.info[i][t];
      row.push_back(scm.agents[i].info_label ? scm.agents[i].info_label(v)
                                             : std::to_string(v));
    }
    j["info"].push_back(row);
  }
  j["actions"] = ordered_json::array();
  for (int i = 0; i < traj.agent_count; ++i) {
    ordered_json row = ordered_json::array();
    for (std::uint64_t t = 0; t < traj.horizon; ++t) {
      const std::uint64_t v = traj.actions[i][t];
      row.push_back(scm.agents[i].action_label ? scm.agents[i].action_label(v)
                                               : std::to_string(v));
    }
    j["actions"].push_back(row);
  }
  j["seed"] = traj.seed;
  return j.dump(2) + "\n";
}

namespace {

ordered_json conjunction_json(const Engine& engine, const AssignmentConjunction& conj) {
  ordered_json arr = ordered_json::array();
  for (const auto& [var, val] : conj.items)
    arr.push_back({var.str(), value_label(engine.scm, var, val)});
  return arr;
}

ordered_json pair_json(const Engine& engine, const CauseWitnessPair& pair) {
  ordered_json p;
  p["cause"] = conjunction_json(engine, pair.cause);
  ordered_json cf = ordered_json::array();
  for (std::size_t i = 0; i < pair.cf_setting.size(); ++i)
    cf.push_back(
        value_label(engine.scm, pair.cause.items[i].first, pair.cf_setting[i]));
  p["cf"] = cf;
  p["contingency"] = conjunction_json(engine, pair.contingency);
  if (pair.improvement) p["improvement"] = *pair.improvement;
  return p;
}

ordered_json causeset_to_json(const Engine& engine, const CauseSet& set) {
  ordered_json j;
  j["definition"] = definition_name(set.tag);
  j["event"] = set.event_str;
  j["seed"] = set.seed;
  j["max_size"] = set.max_size;
  j["pairs"] = ordered_json::array();
  for (const auto& pair : set.pairs) j["pairs"].push_back(pair_json(engine, pair));
  return j;
}

std::string conjunction_csv(const Engine& engine, const AssignmentConjunction& conj) {
  std::string s;
  for (const auto& [var, val] : conj.items) {
    if (!s.empty()) s += ";";
    s += var.str() + "=" + value_label(engine.scm, var, val);
  }
  return s.empty() ? "-" : s;
}

}  // namespace

std::string causeset_json(const Engine& engine, const CauseSet& set) {
  return causeset_to_json(engine, set).dump(2) + "\n";
}

std::string causeset_csv(const Engine& engine, const CauseSet& set) {
  std::ostringstream os;
  os << "definition,cause,cf_setting,contingency,improvement\n";
  for (const auto& pair : set.pairs) {
    os << definition_name(set.tag) << "," << conjunction_csv(engine, pair.cause) << ",";
    std::string cf;
    for (std::size_t i = 0; i < pair.cf_setting.size(); ++i) {
      if (!cf.empty()) cf += ";";
      cf += value_label(engine.scm, pair.cause.items[i].first, pair.cf_setting[i]);
    }
    os << cf << "," << conjunction_csv(engine, pair.contingency) << ",";
    if (pair.improvement) os << *pair.improvement;
    else os << "-";
    os << "\n";
  }
  return os.str();
}

std::uint64_t causeset_hash(const Engine& engine, const CauseSet& set) {
  const std::string canon = causeset_to_json(engine, set).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string profile_json(const ResponsibilityProfile& profile, std::uint64_t source_hash) {
  ordered_json j;
  j["method"] = method_name(profile.method);
  ordered_json degrees;
  for (std::size_t i = 0; i < profile.degrees.size(); ++i)
    degrees[std::to_string(i)] = profile.degrees[i].str();
  j["degrees"] = degrees;
  j["source_causeset_hash"] = source_hash;
  if (profile.empty_cause_set) j["empty_cause_set"] = true;
  return j.dump(2) + "\n";
}

std::string violation_report_json(const Engine& engine, const CauseSet& set,
                                  const ViolationReport& ce, const ViolationReport& acwm) {
  ordered_json j = causeset_to_json(engine, set);
  ordered_json v;
  ordered_json ce_arr = ordered_json::array();
  for (const auto& pv : ce.ce_violations) {
    ordered_json e;
    e["pair"] = pv.pair_index;
    ordered_json conj = ordered_json::array();
    for (const auto& [var, val] : pv.conjuncts)
      conj.push_back({var.str(), value_label(engine.scm, var, val)});
    e["conjuncts"] = conj;
    ce_arr.push_back(e);
  }
  v["counterfactual_eligibility"] = ce_arr;
  v["distinct_violating_actions"] = ce.distinct_violating_actions;
  v["non_minimal_pairs"] = acwm.non_minimal_pairs;
  v["cause_contingency_pairs_total"] = acwm.distinct_cause_contingency_total;
  v["cause_contingency_pairs_violating"] = acwm.distinct_cause_contingency_violating;
  j["violations"] = v;
  return j.dump(2) + "\n";
}

}  // namespace causeway::io
