#include "causeway/scm.hpp"

#include <algorithm>
#include <sstream>

#include "causeway/prng.hpp"

namespace causeway {

void InterventionSet::set(VariableId var, std::uint64_t value) {
  if (var.kind != VarKind::Action)
    throw std::invalid_argument("interventions are restricted to action variables, got " +
                                var.str());
  auto it = std::lower_bound(items_.begin(), items_.end(), var,
                             [](const auto& p, const VariableId& v) { return p.first < v; });
  if (it != items_.end() && it->first == var)
    throw std::invalid_argument("duplicate intervention on " + var.str());
  items_.insert(it, {var, value});
}

std::optional<std::uint64_t> InterventionSet::forced_value(const VariableId& var) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), var,
                             [](const auto& p, const VariableId& v) { return p.first < v; });
  if (it != items_.end() && it->first == var) return it->second;
  return std::nullopt;
}

std::optional<std::int32_t> InterventionSet::first_time() const {
  if (items_.empty()) return std::nullopt;
  return items_.front().first.t;  // items_ sorted time-major
}

std::uint64_t ScmInstance::noise_dim(const VariableId& v) const {
  switch (v.kind) {
    case VarKind::State: return model.state_space_size;
    case VarKind::Obs: return model.joint_obs_space_size;
    case VarKind::Info: return agents[v.agent].info_space_size;
    case VarKind::Action: return agents[v.agent].action_space_size;
  }
  return 0;
}

ScmInstance build_scm(DecPomdpModel model, std::vector<AgentModel> agents) {
  if (static_cast<int>(agents.size()) != model.agent_count)
    throw std::invalid_argument("build_scm: model declares " +
                                std::to_string(model.agent_count) + " agents but " +
                                std::to_string(agents.size()) + " agent models were given");
  if (model.horizon < 1) throw std::invalid_argument("build_scm: horizon must be >= 1");
  if (model.action_space_sizes.size() != agents.size() ||
      model.obs_space_sizes.size() != agents.size())
    throw std::invalid_argument("build_scm: per-agent space lists do not match agent count");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (agents[i].action_space_size != model.action_space_sizes[i])
      throw std::invalid_argument("build_scm: action space mismatch for agent " +
                                  std::to_string(i));
  }
  if (!model.obs_component) {
    auto sizes = model.obs_space_sizes;
    model.obs_component = [sizes](std::uint64_t joint, int agent) {
      return default_obs_component(sizes, joint, agent);
    };
  }

  // Distribution tables reachable through std::function kernels are validated
  // on construction of each Categorical row; small fully-enumerable models are
  // probed here so a bad table fails fast with its name.
  const std::uint64_t joint_actions = [&] {
    std::uint64_t p = 1;
    for (auto a : model.action_space_sizes) p *= a;
    return p;
  }();
  if (model.state_space_size > 0 && model.state_space_size * joint_actions <= 100000) {
    std::vector<std::uint64_t> ja(model.agent_count, 0);
    for (std::uint64_t s = 0; s < model.state_space_size; ++s) {
      (void)model.observation(s);
      for (std::uint64_t code = 0; code < joint_actions; ++code) {
        std::uint64_t rest = code;
        for (int i = model.agent_count - 1; i >= 0; --i) {
          ja[i] = rest % model.action_space_sizes[i];
          rest /= model.action_space_sizes[i];
        }
        (void)model.transition(s, ja);
      }
    }
  }

  ScmInstance scm;
  scm.variable_count = static_cast<std::uint32_t>(model.horizon) *
                       (2 + 2 * static_cast<std::uint32_t>(model.agent_count));
  scm.model = std::move(model);
  scm.agents = std::move(agents);
  return scm;
}

double Context::gumbel(std::uint32_t var_index, std::uint64_t outcome_key) const {
  const auto& block = blocks_[var_index];
  if (!block.empty()) return block[outcome_key];
  return noise_gumbel(seed_, var_index, outcome_key);
}

Context sample_context(const ScmInstance& scm, std::uint64_t seed) {
  Context ctx;
  ctx.seed_ = seed;
  ctx.blocks_.resize(scm.variable_count);
  for (std::uint32_t v = 0; v < scm.variable_count; ++v) {
    const VariableId var = var_from_linear_index(v, scm.model.agent_count);
    const std::uint64_t dim = scm.noise_dim(var);
    if (dim == 0 || dim > Context::kMaterializeLimit) continue;  // lazy block
    auto& block = ctx.blocks_[v];
    block.resize(dim);
    for (std::uint64_t k = 0; k < dim; ++k) block[k] = noise_gumbel(seed, v, k);
  }
  return ctx;
}

namespace {

std::uint64_t mechanism_value(const Categorical& dist, const Context& ctx,
                              std::uint32_t var_index) {
  return dist.argmax([&](std::uint64_t key) { return ctx.gumbel(var_index, key); });
}

}  // namespace

RolloutResult roll(const ScmInstance& scm, const Context& ctx,
                   const InterventionSet& interventions, const Trajectory* actual_prefix) {
  const auto& model = scm.model;
  const int n = model.agent_count;
  const std::uint64_t T = model.horizon;

  RolloutResult out;
  Trajectory& traj = out.trajectory;
  traj.seed = ctx.seed();
  traj.agent_count = n;
  traj.horizon = T;
  traj.states.resize(T);
  traj.joint_obs.resize(T);
  traj.info.assign(n, std::vector<std::uint64_t>(T));
  traj.actions.assign(n, std::vector<std::uint64_t>(T));

  for (const auto& [var, value] : interventions.items()) {
    if (var.t < 0 || static_cast<std::uint64_t>(var.t) >= T)
      throw std::invalid_argument("intervention outside horizon: " + var.str());
    if (var.agent < 0 || var.agent >= n)
      throw std::invalid_argument("intervention on unknown agent: " + var.str());
    if (!scm.in_action_space(var.agent, value))
      throw std::invalid_argument("intervention value " + std::to_string(value) +
                                  " outside action space of agent " +
                                  std::to_string(var.agent));
  }

  // Interventions only touch action variables, so everything strictly before
  // the earliest intervened step matches the actual trajectory; within that
  // step the state, observation and information states match as well.
  std::uint64_t t0 = 0;
  bool have_prefix = false;
  if (actual_prefix) {
    if (interventions.empty()) {
      traj = *actual_prefix;
      return out;
    }
    have_prefix = true;
    t0 = static_cast<std::uint64_t>(*interventions.first_time());
    for (std::uint64_t t = 0; t < t0; ++t) {
      traj.states[t] = actual_prefix->states[t];
      traj.joint_obs[t] = actual_prefix->joint_obs[t];
      for (int i = 0; i < n; ++i) {
        traj.info[i][t] = actual_prefix->info[i][t];
        traj.actions[i][t] = actual_prefix->actions[i][t];
      }
    }
  }

  std::vector<std::uint64_t> joint_action(n);
  for (std::uint64_t t = t0; t < T; ++t) {
    const bool prefix_step = have_prefix && t == t0;
    // S_t
    if (prefix_step) {
      traj.states[t] = actual_prefix->states[t];
    } else if (t == 0) {
      traj.states[0] =
          mechanism_value(model.initial_dist, ctx, scm.linear_index(VariableId::state(0)));
    } else {
      for (int i = 0; i < n; ++i) joint_action[i] = traj.actions[i][t - 1];
      const Categorical dist = model.transition(traj.states[t - 1], joint_action);
      traj.states[t] = mechanism_value(dist, ctx, scm.linear_index(VariableId::state(t)));
    }
    // O_t
    if (prefix_step) {
      traj.joint_obs[t] = actual_prefix->joint_obs[t];
    } else {
      const Categorical dist = model.observation(traj.states[t]);
      traj.joint_obs[t] = mechanism_value(dist, ctx, scm.linear_index(VariableId::obs(t)));
    }
    // I_{i,t}
    for (int i = 0; i < n; ++i) {
      if (prefix_step) {
        traj.info[i][t] = actual_prefix->info[i][t];
        continue;
      }
      const std::uint64_t own_obs = model.obs_component(traj.joint_obs[t], i);
      const Categorical dist =
          t == 0 ? scm.agents[i].initial_info(own_obs)
                 : scm.agents[i].info_update(traj.info[i][t - 1], traj.actions[i][t - 1],
                                             own_obs);
      traj.info[i][t] = mechanism_value(
          dist, ctx, scm.linear_index(VariableId::info(static_cast<std::int16_t>(i),
                                                       static_cast<std::int32_t>(t))));
    }
    // A_{i,t}
    for (int i = 0; i < n; ++i) {
      const VariableId var =
          VariableId::action(static_cast<std::int16_t>(i), static_cast<std::int32_t>(t));
      if (auto forced = interventions.forced_value(var)) {
        traj.actions[i][t] = *forced;
        if (model.action_feasible && !model.action_feasible(traj.states[t], i, *forced))
          out.infeasible.push_back(var);
      } else {
        const Categorical dist = scm.agents[i].policy(traj.info[i][t]);
        traj.actions[i][t] = mechanism_value(dist, ctx, scm.linear_index(var));
      }
    }
  }
  return out;
}

Trajectory rollout(const ScmInstance& scm, const Context& ctx,
                   const InterventionSet& interventions) {
  return roll(scm, ctx, interventions).trajectory;
}

bool satisfies(const Engine& engine, const Context& ctx,
               const InterventionSet& interventions, const Event& event) {
  event.check_resolvable(engine.predicates);
  const Trajectory traj = rollout(engine.scm, ctx, interventions);
  return event.eval(traj, engine.predicates);
}

std::string export_causal_graph(const ScmInstance& scm) {
  std::ostringstream os;
  const int n = scm.model.agent_count;
  const std::uint64_t T = scm.model.horizon;
  auto exo = [](const VariableId& v) { return "U_{" + v.str() + "}"; };

  for (std::uint64_t tu = 0; tu < T; ++tu) {
    const auto t = static_cast<std::int32_t>(tu);
    const VariableId s = VariableId::state(t);
    if (t > 0) {
      os << VariableId::state(t - 1).str() << " -> " << s.str() << "\n";
      for (int i = 0; i < n; ++i)
        os << VariableId::action(static_cast<std::int16_t>(i), t - 1).str() << " -> "
           << s.str() << "\n";
    }
    os << exo(s) << " -> " << s.str() << "\n";

    const VariableId o = VariableId::obs(t);
    os << s.str() << " -> " << o.str() << "\n";
    os << exo(o) << " -> " << o.str() << "\n";

    for (int i = 0; i < n; ++i) {
      const VariableId inf = VariableId::info(static_cast<std::int16_t>(i), t);
      if (t > 0) {
        os << VariableId::info(static_cast<std::int16_t>(i), t - 1).str() << " -> "
           << inf.str() << "\n";
        os << VariableId::action(static_cast<std::int16_t>(i), t - 1).str() << " -> "
           << inf.str() << "\n";
      }
      os << o.str() << " -> " << inf.str() << "\n";
      os << exo(inf) << " -> " << inf.str() << "\n";
    }
    for (int i = 0; i < n; ++i) {
      const VariableId a = VariableId::action(static_cast<std::int16_t>(i), t);
      os << VariableId::info(static_cast<std::int16_t>(i), t).str() << " -> " << a.str()
         << "\n";
      os << exo(a) << " -> " << a.str() << "\n";
    }
  }
  return os.str();
}

std::uint64_t check_counterfactual_stability(const ScmInstance& scm,
                                             std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("check_counterfactual_stability: trials >= 1");
  const int n = scm.model.agent_count;
  const std::uint64_t T = scm.model.horizon;
  std::uint64_t violations = 0;

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = mix_seed(seed, trial);
    const Context ctx = sample_context(scm, trial_seed);
    const Trajectory actual = rollout(scm, ctx, {});
    if (T < 2) continue;

    std::uint64_t pick = splitmix64(trial_seed ^ 0x5bd1e995u);
    const auto t = static_cast<std::int32_t>(pick % (T - 1));  // a step with a successor
    pick = splitmix64(pick);
    const int agent = static_cast<int>(pick % static_cast<std::uint64_t>(n));
    pick = splitmix64(pick);
    const std::uint64_t spaces = scm.model.action_space_sizes[agent];
    if (spaces < 2) continue;
    std::uint64_t alt = pick % spaces;
    if (alt == actual.actions[agent][t]) alt = (alt + 1) % spaces;

    InterventionSet iv;
    iv.set(VariableId::action(static_cast<std::int16_t>(agent), t), alt);
    const Trajectory cf = roll(scm, ctx, iv, &actual).trajectory;

    // Only the transition out of the intervened step starts from the same
    // state in both worlds, so the stability inequality applies there.
    const std::uint64_t s_next_actual = actual.states[t + 1];
    const std::uint64_t s_next_cf = cf.states[t + 1];
    if (s_next_cf == s_next_actual) continue;

    std::vector<std::uint64_t> ja_actual(n), ja_cf(n);
    for (int i = 0; i < n; ++i) {
      ja_actual[i] = actual.actions[i][t];
      ja_cf[i] = cf.actions[i][t];
    }
    const Categorical row_actual = scm.model.transition(actual.states[t], ja_actual);
    const Categorical row_cf = scm.model.transition(actual.states[t], ja_cf);
    const double p_keep_cf = row_cf.prob_of(s_next_actual);
    const double p_keep_actual = row_actual.prob_of(s_next_actual);
    const double p_alt_cf = row_cf.prob_of(s_next_cf);
    const double p_alt_actual = row_actual.prob_of(s_next_cf);
    // Violation: the realized alternative s' appeared although the relative
    // likelihood of s_{t+1} did not decrease.
    if (p_keep_cf * p_alt_actual >= p_alt_cf * p_keep_actual) ++violations;
  }
  return violations;
}

}  // namespace causeway
