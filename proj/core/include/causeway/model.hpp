#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "causeway/categorical.hpp"

namespace causeway {

// Per-agent model m_i: information space, policy, information update and
// initial information. All maps are sparse-categorical valued so both
// deterministic and stochastic components use the same mechanism form.
struct AgentModel {
  std::uint64_t info_space_size = 0;
  std::uint64_t action_space_size = 0;

  std::function<Categorical(std::uint64_t info)> policy;
  // (previous info, own action, own observation) -> next info
  std::function<Categorical(std::uint64_t, std::uint64_t, std::uint64_t)> info_update;
  // own initial observation -> initial info
  std::function<Categorical(std::uint64_t)> initial_info;

  std::function<std::string(std::uint64_t)> info_label;
  std::function<std::string(std::uint64_t)> action_label;
};

// The environment tuple: finite state/action/observation spaces, transition
// kernel, observation function, horizon and initial distribution. Spaces are
// identified by 64-bit keys; large environments keep them implicit behind a
// packed encoding and only ever touch reachable keys.
struct DecPomdpModel {
  std::string name;
  int agent_count = 0;
  std::uint64_t horizon = 0;

  std::uint64_t state_space_size = 0;
  std::uint64_t joint_obs_space_size = 0;
  std::vector<std::uint64_t> obs_space_sizes;    // per agent
  std::vector<std::uint64_t> action_space_sizes; // per agent

  Categorical initial_dist;
  std::function<Categorical(std::uint64_t state, std::span<const std::uint64_t> joint_action)>
      transition;
  std::function<Categorical(std::uint64_t state)> observation;  // over joint obs keys

  // Joint observation keys are mixed-radix over per-agent components; agent i
  // consumes only component i.
  std::function<std::uint64_t(std::uint64_t joint_obs, int agent)> obs_component;

  // Whether an action value is actually available to the agent in a state.
  // Used to reject counterfactual worlds that force impossible moves; absent
  // means every in-space action is available.
  std::function<bool(std::uint64_t state, int agent, std::uint64_t action)> action_feasible;

  std::function<std::string(std::uint64_t)> state_label;
  std::function<std::string(int agent, std::uint64_t)> obs_label;
};

inline std::uint64_t default_obs_component(const std::vector<std::uint64_t>& sizes,
                                           std::uint64_t joint, int agent) {
  // Component 0 varies slowest.
  std::uint64_t stride = 1;
  for (std::size_t j = agent + 1; j < sizes.size(); ++j) stride *= sizes[j];
  return (joint / stride) % sizes[agent];
}

inline std::uint64_t compose_joint_obs(const std::vector<std::uint64_t>& sizes,
                                       std::span<const std::uint64_t> components) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) key = key * sizes[i] + components[i];
  return key;
}

}  // namespace causeway
