#pragma once

#include <cstdint>
#include <vector>

#include "causeway/variable.hpp"

namespace causeway {

// One realized trajectory: states, joint observations, information states and
// actions over the full horizon, plus the seed of the context that produced
// it. Values are space keys; labels live with the model.
struct Trajectory {
  std::uint64_t seed = 0;
  int agent_count = 0;
  std::uint64_t horizon = 0;

  std::vector<std::uint64_t> states;              // [t]
  std::vector<std::uint64_t> joint_obs;           // [t]
  std::vector<std::vector<std::uint64_t>> info;   // [agent][t]
  std::vector<std::vector<std::uint64_t>> actions;// [agent][t]

  std::uint64_t value_of(const VariableId& v) const {
    switch (v.kind) {
      case VarKind::State: return states[v.t];
      case VarKind::Obs: return joint_obs[v.t];
      case VarKind::Info: return info[v.agent][v.t];
      case VarKind::Action: return actions[v.agent][v.t];
    }
    return 0;
  }

  friend bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.states == b.states && a.joint_obs == b.joint_obs && a.info == b.info &&
           a.actions == b.actions;
  }
};

}  // namespace causeway
