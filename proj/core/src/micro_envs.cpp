#include "causeway/micro_envs.hpp"

#include <stdexcept>

namespace causeway::micro {

namespace {

// bogus_single states
constexpr std::uint64_t kClean0 = 0, kClean1 = 1, kPoisoned1 = 2, kAlive = 3, kDead = 4;
// bogus_duo states
constexpr std::uint64_t kStart = 0, kAntWater = 1, kAntWine = 2;
// assassin info (bogus_single)
constexpr std::uint64_t kInfoStart = 0, kInfoClean = 1, kInfoPoisoned = 2;
// assassin info (bogus_duo)
constexpr std::uint64_t kSawNothing = 0, kSawWater = 1, kSawWine = 2;

std::string single_state_label(std::uint64_t s) {
  switch (s) {
    case kClean0: return "clean@0";
    case kClean1: return "clean@1";
    case kPoisoned1: return "poisoned@1";
    case kAlive: return "alive";
    case kDead: return "dead";
  }
  return "?";
}

std::string duo_state_label(std::uint64_t s) {
  switch (s) {
    case kStart: return "start";
    case kAntWater: return "antidote-water";
    case kAntWine: return "antidote-wine";
    case kAlive: return "alive";
    case kDead: return "dead";
  }
  return "?";
}

}  // namespace

MicroEnv build_bogus_single(AssassinPolicy variant) {
  DecPomdpModel model;
  model.name = "bogus-single";
  model.agent_count = 1;
  model.horizon = 3;
  model.state_space_size = 5;
  model.obs_space_sizes = {1};
  model.joint_obs_space_size = 1;
  model.action_space_sizes = {2};
  model.initial_dist = Categorical::point_mass(kClean0);

  model.transition = [](std::uint64_t s, std::span<const std::uint64_t> a) {
    switch (s) {
      case kClean0: return Categorical::point_mass(a[0] == kPoison ? kPoisoned1 : kClean1);
      case kClean1: return Categorical::point_mass(a[0] == kPoison ? kDead : kAlive);
      case kPoisoned1: return Categorical::point_mass(kDead);
      default: return Categorical::point_mass(s);  // absorbing outcome
    }
  };
  model.observation = [](std::uint64_t) { return Categorical::point_mass(0); };
  model.state_label = single_state_label;
  model.obs_label = [](int, std::uint64_t) { return std::string("-"); };

  AgentModel assassin;
  assassin.info_space_size = 3;
  assassin.action_space_size = 2;
  assassin.policy = [variant](std::uint64_t info) {
    switch (info) {
      case kInfoStart: return Categorical::point_mass(kPoison);
      case kInfoClean:
        return Categorical::point_mass(
            variant == AssassinPolicy::AlwaysPoison ? kPoison : kNotPoison);
      default: return Categorical::point_mass(kNotPoison);  // already poisoned
    }
  };
  assassin.initial_info = [](std::uint64_t) { return Categorical::point_mass(kInfoStart); };
  assassin.info_update = [](std::uint64_t prev, std::uint64_t action, std::uint64_t) {
    if (prev == kInfoPoisoned || action == kPoison)
      return Categorical::point_mass(kInfoPoisoned);
    return Categorical::point_mass(kInfoClean);
  };
  assassin.info_label = [](std::uint64_t info) {
    switch (info) {
      case kInfoStart: return std::string("start");
      case kInfoClean: return std::string("water-clean");
      default: return std::string("water-poisoned");
    }
  };
  assassin.action_label = [](std::uint64_t a) {
    return a == kPoison ? std::string("poison") : std::string("not-poison");
  };

  MicroEnv env;
  env.name = "bogus-single";
  env.engine.scm = build_scm(model, {assassin});
  env.engine.eligible_vars = {VariableId::action(0, 0), VariableId::action(0, 1)};
  env.context = sample_context(env.engine.scm, 0);
  env.victim_dies = Event::primitive(VariableId::state(2), kDead, "dead");
  return env;
}

MicroEnv build_bogus_duo() {
  DecPomdpModel model;
  model.name = "bogus-duo";
  model.agent_count = 2;
  model.horizon = 3;
  model.state_space_size = 5;
  model.obs_space_sizes = {3, 3};
  model.joint_obs_space_size = 9;
  model.action_space_sizes = {2, 2};
  model.initial_dist = Categorical::point_mass(kStart);

  model.transition = [](std::uint64_t s, std::span<const std::uint64_t> a) {
    switch (s) {
      case kStart:
        return Categorical::point_mass(a[0] == kWater ? kAntWater : kAntWine);
      case kAntWater:
        return Categorical::point_mass(a[1] == kWater ? kAlive : kDead);
      case kAntWine:
        return Categorical::point_mass(a[1] == kWine ? kAlive : kDead);
      default: return Categorical::point_mass(s);
    }
  };
  // The assassin (agent 1) observes where the antidote went; the bodyguard
  // observes nothing.
  model.observation = [](std::uint64_t s) {
    std::uint64_t assassin_obs = kSawNothing;
    if (s == kAntWater) assassin_obs = kSawWater;
    if (s == kAntWine) assassin_obs = kSawWine;
    return Categorical::point_mass(kSawNothing * 3 + assassin_obs);
  };
  model.state_label = duo_state_label;
  model.obs_label = [](int, std::uint64_t o) {
    switch (o) {
      case kSawWater: return std::string("saw-water");
      case kSawWine: return std::string("saw-wine");
      default: return std::string("-");
    }
  };

  auto liquid_label = [](std::uint64_t a) {
    return a == kWater ? std::string("water") : std::string("wine");
  };

  AgentModel bodyguard;
  bodyguard.info_space_size = 1;
  bodyguard.action_space_size = 2;
  bodyguard.policy = [](std::uint64_t) { return Categorical::point_mass(kWater); };
  bodyguard.initial_info = [](std::uint64_t) { return Categorical::point_mass(0); };
  bodyguard.info_update = [](std::uint64_t, std::uint64_t, std::uint64_t) {
    return Categorical::point_mass(0);
  };
  bodyguard.info_label = [](std::uint64_t) { return std::string("-"); };
  bodyguard.action_label = liquid_label;

  AgentModel assassin;
  assassin.info_space_size = 3;
  assassin.action_space_size = 2;
  assassin.policy = [](std::uint64_t info) {
    // Poison the liquid opposite to the observed antidote.
    if (info == kSawWater) return Categorical::point_mass(kWine);
    if (info == kSawWine) return Categorical::point_mass(kWater);
    return Categorical::point_mass(kWater);  // no information yet; never reaches the state
  };
  assassin.initial_info = [](std::uint64_t obs) { return Categorical::point_mass(obs); };
  assassin.info_update = [](std::uint64_t prev, std::uint64_t, std::uint64_t obs) {
    return Categorical::point_mass(obs == kSawNothing ? prev : obs);
  };
  assassin.info_label = [](std::uint64_t info) {
    switch (info) {
      case kSawWater: return std::string("saw-water");
      case kSawWine: return std::string("saw-wine");
      default: return std::string("start");
    }
  };
  assassin.action_label = liquid_label;

  MicroEnv env;
  env.name = "bogus-duo";
  env.engine.scm = build_scm(model, {bodyguard, assassin});
  env.engine.eligible_vars = {VariableId::action(0, 0), VariableId::action(1, 1)};
  env.context = sample_context(env.engine.scm, 0);
  env.victim_dies = Event::primitive(VariableId::state(2), kDead, "dead");
  return env;
}

MicroEnv build_micro_env(const std::string& name) {
  if (name == "bogus-single" || name == "bogus_single")
    return build_bogus_single(AssassinPolicy::AlwaysPoison);
  if (name == "bogus-duo" || name == "bogus_duo") return build_bogus_duo();
  throw std::invalid_argument("unknown micro environment: " + name);
}

}  // namespace causeway::micro
