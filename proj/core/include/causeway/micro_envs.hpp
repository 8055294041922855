#pragma once

#include <string>

#include "causeway/scm.hpp"

namespace causeway::micro {

// Executable encodings of the two bogus-prevention variants. The outcome is a
// terminal state component, so the victim-dies event is a primitive event.
//
// bogus_single: one assassin decides at t=0 and t=1 whether to poison the
// water; the victim dies at t=2 iff the water was ever poisoned.
// Action keys: 0 = not-poison, 1 = poison.
//
// bogus_duo: the bodyguard places the antidote (t=0), the assassin observes
// it and places the poison (t=1); the victim survives iff both chose the same
// liquid. Action keys: 0 = water, 1 = wine.

inline constexpr std::uint64_t kNotPoison = 0, kPoison = 1;
inline constexpr std::uint64_t kWater = 0, kWine = 1;

// The assassin of bogus_single: poison whenever the water is clean, or only
// on the first opportunity.
enum class AssassinPolicy { AlwaysPoison, PoisonOnceEarly };

struct MicroEnv {
  std::string name;
  Engine engine;
  Context context;  // canonical context realizing the example's trajectory
  Event victim_dies;
};

MicroEnv build_micro_env(const std::string& name);
MicroEnv build_bogus_single(AssassinPolicy policy);
MicroEnv build_bogus_duo();

}  // namespace causeway::micro
