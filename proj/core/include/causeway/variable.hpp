#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace causeway {

enum class VarKind : std::uint8_t { State = 0, Obs = 1, Info = 2, Action = 3 };

// One endogenous variable of the unrolled model: S_t, O_t, I_{i,t} or
// A_{i,t}. Agent indices are 0-based throughout (Ag0, Ag1, ...).
struct VariableId {
  VarKind kind = VarKind::State;
  std::int16_t agent = -1;  // -1 for State/Obs
  std::int32_t t = 0;

  static VariableId state(std::int32_t t) { return {VarKind::State, -1, t}; }
  static VariableId obs(std::int32_t t) { return {VarKind::Obs, -1, t}; }
  static VariableId info(std::int16_t agent, std::int32_t t) {
    return {VarKind::Info, agent, t};
  }
  static VariableId action(std::int16_t agent, std::int32_t t) {
    return {VarKind::Action, agent, t};
  }

  friend bool operator==(const VariableId&, const VariableId&) = default;

  // Canonical time-major order: within a step State < Obs < Info_0..n-1 <
  // Action_0..n-1. This order also fixes the noise block layout.
  friend std::strong_ordering operator<=>(const VariableId& a, const VariableId& b) {
    if (auto c = a.t <=> b.t; c != 0) return c;
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
    return a.agent <=> b.agent;
  }

  std::string str() const {
    switch (kind) {
      case VarKind::State: return "S_" + std::to_string(t);
      case VarKind::Obs: return "O_" + std::to_string(t);
      case VarKind::Info:
        return "I_{" + std::to_string(agent) + "," + std::to_string(t) + "}";
      case VarKind::Action:
        return "A_{" + std::to_string(agent) + "," + std::to_string(t) + "}";
    }
    return "?";
  }
};

// Position of a variable in the time-major layout with n agents:
// t*(2+2n) + {0: S, 1: O, 2+i: I_i, 2+n+i: A_i}.
inline std::uint32_t var_linear_index(const VariableId& v, int agent_count) {
  const std::uint32_t stride = 2 + 2 * static_cast<std::uint32_t>(agent_count);
  std::uint32_t offset = 0;
  switch (v.kind) {
    case VarKind::State: offset = 0; break;
    case VarKind::Obs: offset = 1; break;
    case VarKind::Info: offset = 2 + static_cast<std::uint32_t>(v.agent); break;
    case VarKind::Action:
      offset = 2 + static_cast<std::uint32_t>(agent_count) +
               static_cast<std::uint32_t>(v.agent);
      break;
  }
  return static_cast<std::uint32_t>(v.t) * stride + offset;
}

inline VariableId var_from_linear_index(std::uint32_t idx, int agent_count) {
  const std::uint32_t stride = 2 + 2 * static_cast<std::uint32_t>(agent_count);
  const std::int32_t t = static_cast<std::int32_t>(idx / stride);
  std::uint32_t offset = idx % stride;
  if (offset == 0) return VariableId::state(t);
  if (offset == 1) return VariableId::obs(t);
  offset -= 2;
  if (offset < static_cast<std::uint32_t>(agent_count))
    return VariableId::info(static_cast<std::int16_t>(offset), t);
  return VariableId::action(
      static_cast<std::int16_t>(offset - static_cast<std::uint32_t>(agent_count)), t);
}

}  // namespace causeway
