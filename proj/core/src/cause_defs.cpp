#include "causeway/cause_defs.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "causeway/prng.hpp"

namespace causeway {

std::string definition_name(DefinitionTag tag) {
  switch (tag) {
    case DefinitionTag::BF: return "bf";
    case DefinitionTag::HP: return "hp";
    case DefinitionTag::HP_MIN: return "hp-min";
    case DefinitionTag::AC: return "ac";
  }
  return "?";
}

std::optional<DefinitionTag> definition_from_name(const std::string& name) {
  if (name == "bf") return DefinitionTag::BF;
  if (name == "hp") return DefinitionTag::HP;
  if (name == "hp-min" || name == "hp_min" || name == "hpmin") return DefinitionTag::HP_MIN;
  if (name == "ac") return DefinitionTag::AC;
  return std::nullopt;
}

AssignmentConjunction AssignmentConjunction::of(
    std::vector<std::pair<VariableId, std::uint64_t>> in) {
  std::sort(in.begin(), in.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i].first.kind != VarKind::Action)
      throw std::invalid_argument("conjunction restricted to action variables, got " +
                                  in[i].first.str());
    if (i > 0 && in[i].first == in[i - 1].first)
      throw std::invalid_argument("duplicate variable in conjunction: " + in[i].first.str());
  }
  AssignmentConjunction c;
  c.items = std::move(in);
  return c;
}

std::vector<VariableId> AssignmentConjunction::vars() const {
  std::vector<VariableId> out;
  out.reserve(items.size());
  for (const auto& [v, _] : items) out.push_back(v);
  return out;
}

std::optional<std::uint64_t> AssignmentConjunction::value_of(const VariableId& v) const {
  for (const auto& [var, val] : items)
    if (var == v) return val;
  return std::nullopt;
}

std::vector<VariableId> CauseWitnessPair::union_vars() const {
  std::vector<VariableId> out = cause.vars();
  for (const auto& [v, _] : contingency.items) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// WorldCache

namespace {

struct Key128 {
  std::uint64_t lo, hi;
  friend bool operator==(const Key128&, const Key128&) = default;
};

struct Key128Hash {
  std::size_t operator()(const Key128& k) const { return k.lo ^ (k.hi * kGolden); }
};

Key128 assignment_key(const WorldCache::Assignment& a, int agent_count) {
  std::uint64_t h1 = 0x8f1bbcdcbfa53e0bull, h2 = 0x2545f4914f6cdd1dull;
  for (const auto& [var, val] : a) {
    const std::uint64_t v = (static_cast<std::uint64_t>(var_linear_index(var, agent_count))
                             << 32) ^ val;
    h1 = splitmix64(h1 ^ v);
    h2 = splitmix64(h2 ^ splitmix64(v));
  }
  return {h1, h2};
}

std::pair<std::uint64_t, std::uint64_t> trajectory_hash(const Trajectory& t) {
  std::uint64_t h1 = 0x9e0c1ecu, h2 = 0x51ab39du;
  auto feed = [&](std::uint64_t v) {
    h1 = splitmix64(h1 ^ v);
    h2 = splitmix64(h2 ^ splitmix64(v ^ kGolden));
  };
  for (auto v : t.states) feed(v);
  for (auto v : t.joint_obs) feed(v);
  for (const auto& row : t.info)
    for (auto v : row) feed(v);
  for (const auto& row : t.actions)
    for (auto v : row) feed(v);
  return {h1, h2};
}

constexpr std::size_t kShards = 16;

}  // namespace

struct WorldCache::Impl {
  const Engine& engine;
  const Context& ctx;
  const Event& event;

  Trajectory actual;
  bool event_actual = false;
  std::vector<VariableId> eligible;

  struct Shard {
    mutable std::mutex mu;
    std::unordered_map<Key128, Eval, Key128Hash> map;
  };
  mutable std::array<Shard, kShards> shards;

  Impl(const Engine& e, const Context& c, const Event& ev) : engine(e), ctx(c), event(ev) {
    event.check_resolvable(engine.predicates);
    actual = rollout(engine.scm, ctx, {});
    event_actual = event.eval(actual, engine.predicates);
    eligible = engine.eligible_vars;
    std::sort(eligible.begin(), eligible.end());
    eligible.erase(std::unique(eligible.begin(), eligible.end()), eligible.end());
  }

  InterventionSet to_interventions(const Assignment& a) const {
    InterventionSet iv;
    for (const auto& [var, val] : a) iv.set(var, val);
    return iv;
  }

  Eval compute(const Assignment& a) const {
    const RolloutResult rr = roll(engine.scm, ctx, to_interventions(a), &actual);
    Eval e;
    e.feasible = rr.feasible();
    e.event_holds = event.eval(rr.trajectory, engine.predicates);
    const auto [t1, t2] = trajectory_hash(rr.trajectory);
    e.traj_hash1 = t1;
    e.traj_hash2 = t2;
    e.improvement =
        engine.improvement ? engine.improvement(actual, rr.trajectory) : 0;
    return e;
  }

  Eval evaluate(const Assignment& a) const {
    const Key128 key = assignment_key(a, engine.scm.model.agent_count);
    Shard& shard = shards[key.lo % kShards];
    {
      std::lock_guard<std::mutex> lock(shard.mu);
      auto it = shard.map.find(key);
      if (it != shard.map.end()) return it->second;
    }
    const Eval e = compute(a);
    std::lock_guard<std::mutex> lock(shard.mu);
    return shard.map.emplace(key, e).first->second;
  }
};

WorldCache::WorldCache(const Engine& engine, const Context& ctx, const Event& event)
    : impl_(std::make_unique<Impl>(engine, ctx, event)) {}
WorldCache::~WorldCache() = default;

const Trajectory& WorldCache::actual() const { return impl_->actual; }
bool WorldCache::event_actual() const { return impl_->event_actual; }
const Engine& WorldCache::engine() const { return impl_->engine; }
const std::vector<VariableId>& WorldCache::eligible() const { return impl_->eligible; }

std::uint64_t WorldCache::actual_value(const VariableId& v) const {
  return impl_->actual.value_of(v);
}

WorldCache::Eval WorldCache::evaluate(const Assignment& assignment) const {
  return impl_->evaluate(assignment);
}

Trajectory WorldCache::world_trajectory(const Assignment& assignment) const {
  return roll(impl_->engine.scm, impl_->ctx, impl_->to_interventions(assignment),
              &impl_->actual)
      .trajectory;
}

bool WorldCache::vacuous_in(const Assignment& assignment, const VariableId& var) const {
  Assignment reduced;
  reduced.reserve(assignment.size() - 1);
  for (const auto& item : assignment)
    if (!(item.first == var)) reduced.push_back(item);
  const Eval full = evaluate(assignment);
  const Eval dropped = evaluate(reduced);
  return full.traj_hash1 == dropped.traj_hash1 && full.traj_hash2 == dropped.traj_hash2;
}

namespace {

// Iterates assignments over `vars` (full per-variable action spaces, the
// all-actual combination excluded) and stops early when fn returns true.
template <typename Fn>
bool for_each_assignment(const Engine& engine, const Trajectory& actual,
                         const std::vector<VariableId>& vars, Fn&& fn) {
  const std::size_t k = vars.size();
  if (k == 0) return false;
  std::vector<std::uint64_t> sizes(k), values(k, 0), actual_vals(k);
  for (std::size_t j = 0; j < k; ++j) {
    sizes[j] = engine.scm.model.action_space_sizes[vars[j].agent];
    actual_vals[j] = actual.value_of(vars[j]);
  }
  WorldCache::Assignment a(k);
  while (true) {
    bool all_actual = true;
    for (std::size_t j = 0; j < k; ++j) {
      a[j] = {vars[j], values[j]};
      if (values[j] != actual_vals[j]) all_actual = false;
    }
    if (!all_actual && fn(a)) return true;
    std::size_t j = k;
    while (j > 0) {
      --j;
      if (++values[j] < sizes[j]) break;
      values[j] = 0;
      if (j == 0) return false;
    }
  }
}

template <typename Fn>
void for_each_subset(std::size_t m, int budget, Fn&& fn) {
  std::vector<std::size_t> idxs;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < m; ++i) {
      idxs.push_back(i);
      fn(idxs);
      if (static_cast<int>(idxs.size()) < budget) self(self, i + 1);
      idxs.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

bool WorldCache::butfor_flip_exists(const std::vector<VariableId>& vars) const {
  return for_each_assignment(impl_->engine, impl_->actual, vars,
                             [&](const Assignment& a) {
                               const Eval e = evaluate(a);
                               return e.feasible && !e.event_holds;
                             });
}

bool WorldCache::hp_flip_exists(const std::vector<VariableId>& vars, int budget) const {
  if (vars.empty()) return false;
  const auto& eligible = impl_->eligible;
  std::vector<VariableId> rest;
  for (const auto& v : eligible)
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) rest.push_back(v);

  const int w_budget = budget - static_cast<int>(vars.size());
  if (w_budget < 0) return false;

  bool found = false;
  auto try_with_w = [&](const std::vector<VariableId>& wvars) {
    if (found) return;
    Assignment frozen;
    for (const auto& w : wvars) frozen.push_back({w, impl_->actual.value_of(w)});
    found = for_each_assignment(
        impl_->engine, impl_->actual, vars, [&](const Assignment& a) {
          Assignment joint = a;
          joint.insert(joint.end(), frozen.begin(), frozen.end());
          std::sort(joint.begin(), joint.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
          const Eval e = evaluate(joint);
          return e.feasible && !e.event_holds;
        });
  };

  try_with_w({});
  if (found) return true;
  if (w_budget > 0) {
    std::vector<VariableId> wset;
    for_each_subset(rest.size(), w_budget, [&](const std::vector<std::size_t>& idxs) {
      if (found) return;
      wset.clear();
      for (auto i : idxs) wset.push_back(rest[i]);
      try_with_w(wset);
    });
  }
  return found;
}

// ---------------------------------------------------------------------------
// Checkers

namespace {

WorldCache::Assignment make_assignment(const AssignmentConjunction& cause,
                                       const std::vector<std::uint64_t>& values) {
  if (values.size() != cause.items.size())
    throw std::invalid_argument("setting length does not match cause size");
  WorldCache::Assignment a;
  a.reserve(cause.items.size());
  for (std::size_t i = 0; i < cause.items.size(); ++i)
    a.push_back({cause.items[i].first, values[i]});
  return a;
}

void require_event(const WorldCache& cache) {
  if (!cache.event_actual())
    throw EventNotRealized("event not realized in the actual world");
}

bool values_actual(const WorldCache& cache, const AssignmentConjunction& conj) {
  for (const auto& [var, val] : conj.items)
    if (cache.actual_value(var) != val) return false;
  return true;
}

bool flips(const WorldCache& cache, const WorldCache::Assignment& a) {
  const auto e = cache.evaluate(a);
  return e.feasible && !e.event_holds;
}

// No strict nonempty sub-conjunction admits a flipping setting of its own.
bool butfor_minimal(const WorldCache& cache, const std::vector<VariableId>& vars) {
  const std::size_t k = vars.size();
  std::vector<VariableId> sub;
  for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
    sub.clear();
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (1u << j)) sub.push_back(vars[j]);
    if (cache.butfor_flip_exists(sub)) return false;
  }
  return true;
}

struct LocalCache {
  std::unique_ptr<WorldCache> owned;
  WorldCache* get(const Engine& e, const Context& c, const Event& ev, WorldCache* shared) {
    if (shared) return shared;
    owned = std::make_unique<WorldCache>(e, c, ev);
    return owned.get();
  }
};

}  // namespace

bool is_but_for_cause(const Engine& engine, const Context& ctx, const Event& event,
                      const AssignmentConjunction& cause,
                      const std::vector<std::uint64_t>& cf_setting, WorldCache* shared) {
  if (cause.empty()) throw std::invalid_argument("but-for cause must be nonempty");
  LocalCache local;
  WorldCache& cache = *local.get(engine, ctx, event, shared);
  require_event(cache);
  // BFC1
  if (!values_actual(cache, cause)) return false;
  // BFC2 with the given setting
  if (!flips(cache, make_assignment(cause, cf_setting))) return false;
  // BFC3
  return butfor_minimal(cache, cause.vars());
}

bool is_hp_cause(const Engine& engine, const Context& ctx, const Event& event,
                 const AssignmentConjunction& cause,
                 const std::vector<std::uint64_t>& cf_setting,
                 const AssignmentConjunction& contingency, int max_size,
                 WorldCache* shared) {
  if (cause.empty()) throw std::invalid_argument("HP cause must be nonempty");
  LocalCache local;
  WorldCache& cache = *local.get(engine, ctx, event, shared);
  require_event(cache);
  // Contingencies freeze actual values; anything else is a malformed witness.
  for (const auto& [var, val] : contingency.items) {
    if (cause.value_of(var))
      throw std::invalid_argument("contingency overlaps cause at " + var.str());
    if (cache.actual_value(var) != val)
      throw std::invalid_argument("HP contingency value for " + var.str() +
                                  " differs from the actual value");
  }
  // HPC1
  if (!values_actual(cache, cause)) return false;
  // HPC2
  WorldCache::Assignment world = make_assignment(cause, cf_setting);
  for (const auto& item : contingency.items) world.push_back(item);
  std::sort(world.begin(), world.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (!flips(cache, world)) return false;
  // Every frozen conjunct must be doing work: dropping it has to change the
  // witness world, otherwise the same pair exists with a smaller contingency.
  for (const auto& [var, _] : contingency.items)
    if (cache.vacuous_in(world, var)) return false;
  // HPC3 within the size budget
  const auto vars = cause.vars();
  const std::size_t k = vars.size();
  std::vector<VariableId> sub;
  for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
    sub.clear();
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (1u << j)) sub.push_back(vars[j]);
    if (cache.hp_flip_exists(sub, max_size)) return false;
  }
  return true;
}

bool is_hp_min_cause(const Engine& engine, const Context& ctx, const Event& event,
                     const AssignmentConjunction& cause,
                     const std::vector<std::uint64_t>& cf_setting,
                     const AssignmentConjunction& contingency, int max_size,
                     WorldCache* shared) {
  LocalCache local;
  WorldCache& cache = *local.get(engine, ctx, event, shared);
  if (!is_hp_cause(engine, ctx, event, cause, cf_setting, contingency, max_size, &cache))
    return false;
  // Witness minimality: no strict contingency subset works for the same cause
  // and counterfactual setting.
  const std::size_t k = contingency.items.size();
  for (std::uint32_t mask = 0; k > 0 && mask + 1 < (1u << k); ++mask) {
    std::vector<std::pair<VariableId, std::uint64_t>> sub;
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (1u << j)) sub.push_back(contingency.items[j]);
    if (is_hp_cause(engine, ctx, event, cause, cf_setting, AssignmentConjunction::of(sub),
                    max_size, &cache))
      return false;
  }
  return true;
}

bool is_ac_cause(const Engine& engine, const Context& ctx, const Event& event,
                 const AssignmentConjunction& cause,
                 const std::vector<std::uint64_t>& cf_setting,
                 const AssignmentConjunction& contingency, WorldCache* shared) {
  if (cause.empty()) throw std::invalid_argument("actual cause must be nonempty");
  LocalCache local;
  WorldCache& cache = *local.get(engine, ctx, event, shared);
  require_event(cache);
  for (const auto& [var, _] : contingency.items)
    if (cause.value_of(var))
      throw std::invalid_argument("contingency overlaps cause at " + var.str());
  if (!values_actual(cache, cause)) return false;

  // AC1: cause and contingency variables with their actual values form a
  // but-for cause, and the combined setting (a', w') flips the event.
  std::vector<VariableId> union_vars = cause.vars();
  for (const auto& [v, _] : contingency.items) union_vars.push_back(v);
  std::sort(union_vars.begin(), union_vars.end());

  WorldCache::Assignment world = make_assignment(cause, cf_setting);
  for (const auto& item : contingency.items) world.push_back(item);
  std::sort(world.begin(), world.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (!flips(cache, world)) return false;
  if (!cache.butfor_flip_exists(union_vars)) return false;  // some setting; `world` already is one
  if (!butfor_minimal(cache, union_vars)) return false;

  // AC2/AC3: cause conjuncts keep their information state in the witness
  // world, contingency conjuncts do not.
  const Trajectory witness = cache.world_trajectory(world);
  const Trajectory& actual = cache.actual();
  for (const auto& [var, _] : cause.items)
    if (witness.info[var.agent][var.t] != actual.info[var.agent][var.t]) return false;
  for (const auto& [var, _] : contingency.items)
    if (witness.info[var.agent][var.t] == actual.info[var.agent][var.t]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct FlipRec {
  WorldCache::Assignment assignment;
  WorldCache::Eval eval;
};

using VarSet = std::vector<VariableId>;  // sorted

struct SweepData {
  std::map<VarSet, std::vector<FlipRec>> flips;
  std::set<VarSet> hp_flip_index;  // X with N(alpha) <= X <= vars(alpha) for some flip

  bool has_flip(const VarSet& s) const {
    auto it = flips.find(s);
    return it != flips.end() && !it->second.empty();
  }

  bool butfor_minimal(const VarSet& s) const {
    const std::size_t k = s.size();
    VarSet sub;
    for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
      sub.clear();
      for (std::size_t j = 0; j < k; ++j)
        if (mask & (1u << j)) sub.push_back(s[j]);
      if (has_flip(sub)) return false;
    }
    return true;
  }
};

SweepData sweep_worlds(const WorldCache& cache, int budget, unsigned threads) {
  const auto& eligible = cache.eligible();
  const std::size_t m = eligible.size();
  threads = std::max(1u, threads);

  // Subsets are partitioned by their smallest eligible index so workers touch
  // disjoint families.
  std::atomic<std::size_t> next{0};
  std::vector<SweepData> partials(threads);

  auto worker = [&](unsigned wi) {
    SweepData& out = partials[wi];
    for (std::size_t first = next.fetch_add(1); first < m; first = next.fetch_add(1)) {
      std::vector<std::size_t> idxs{first};
      auto handle_subset = [&](const std::vector<std::size_t>& subset) {
        VarSet vars;
        vars.reserve(subset.size());
        for (auto i : subset) vars.push_back(eligible[i]);
        std::vector<FlipRec>& recs = out.flips[vars];  // ensure key exists
        for_each_assignment(cache.engine(), cache.actual(), vars,
                            [&](const WorldCache::Assignment& a) {
                              const auto e = cache.evaluate(a);
                              if (e.feasible && !e.event_holds) recs.push_back({a, e});
                              return false;
                            });
      };
      handle_subset(idxs);
      if (budget > 1) {
        auto rec = [&](auto&& self, std::size_t start) -> void {
          for (std::size_t i = start; i < m; ++i) {
            idxs.push_back(i);
            handle_subset(idxs);
            if (static_cast<int>(idxs.size()) < budget) self(self, i + 1);
            idxs.pop_back();
          }
        };
        rec(rec, first + 1);
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }

  SweepData merged;
  for (auto& p : partials)
    for (auto& [vars, recs] : p.flips) {
      auto& dst = merged.flips[vars];
      dst.insert(dst.end(), recs.begin(), recs.end());
    }

  // Index for HPC3 lookups: a cause candidate X has an HP witness iff some
  // flipping assignment forces non-actual values only inside X.
  for (const auto& [vars, recs] : merged.flips) {
    for (const auto& rec : recs) {
      VarSet nonactual, actual_part;
      for (const auto& [var, val] : rec.assignment)
        (val == cache.actual_value(var) ? actual_part : nonactual).push_back(var);
      if (nonactual.empty()) continue;
      const std::size_t extra = actual_part.size();
      for (std::uint32_t mask = 0; mask < (1u << extra); ++mask) {
        VarSet x = nonactual;
        for (std::size_t j = 0; j < extra; ++j)
          if (mask & (1u << j)) x.push_back(actual_part[j]);
        std::sort(x.begin(), x.end());
        merged.hp_flip_index.insert(std::move(x));
      }
    }
  }
  return merged;
}

std::optional<std::int64_t> annotate(const Engine& engine, const WorldCache::Eval& e) {
  if (!engine.improvement) return std::nullopt;
  return e.improvement;
}

CauseWitnessPair split_assignment(const WorldCache& cache, const VarSet& vars,
                                  const FlipRec& rec, DefinitionTag tag,
                                  const std::vector<bool>& to_contingency) {
  CauseWitnessPair pair;
  pair.tag = tag;
  std::vector<std::pair<VariableId, std::uint64_t>> cause_items, cont_items;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto& [var, forced] = rec.assignment[j];
    if (to_contingency[j]) {
      cont_items.push_back({var, forced});
    } else {
      cause_items.push_back({var, cache.actual_value(var)});
      pair.cf_setting.push_back(forced);
    }
  }
  pair.cause = AssignmentConjunction::of(std::move(cause_items));
  pair.contingency = AssignmentConjunction::of(std::move(cont_items));
  pair.improvement = annotate(cache.engine(), rec.eval);
  return pair;
}

void finalize(CauseSet& set) {
  std::sort(set.pairs.begin(), set.pairs.end(),
            [](const CauseWitnessPair& a, const CauseWitnessPair& b) { return (a <=> b) < 0; });
  set.pairs.erase(std::unique(set.pairs.begin(), set.pairs.end()), set.pairs.end());
}

CauseSet build_butfor(const WorldCache& cache, const SweepData& sweep) {
  CauseSet out;
  out.tag = DefinitionTag::BF;
  for (const auto& [vars, recs] : sweep.flips) {
    if (recs.empty() || !sweep.butfor_minimal(vars)) continue;
    for (const auto& rec : recs) {
      const std::vector<bool> none(vars.size(), false);
      out.pairs.push_back(split_assignment(cache, vars, rec, DefinitionTag::BF, none));
    }
  }
  finalize(out);
  return out;
}

CauseSet build_hp(const WorldCache& cache, const SweepData& sweep) {
  CauseSet out;
  out.tag = DefinitionTag::HP;
  for (const auto& [vars, recs] : sweep.flips) {
    for (const auto& rec : recs) {
      // Cause = conjuncts forced away from their actual values; conjuncts
      // frozen at actual values are the contingency.
      std::vector<bool> to_cont(vars.size(), false);
      VarSet cause_vars;
      bool has_cause = false;
      for (std::size_t j = 0; j < vars.size(); ++j) {
        const auto& [var, forced] = rec.assignment[j];
        if (forced == cache.actual_value(var)) {
          to_cont[j] = true;
        } else {
          cause_vars.push_back(var);
          has_cause = true;
        }
      }
      if (!has_cause) continue;
      // HPC3: no strict sub-cause has a witness of its own.
      bool minimal = true;
      const std::size_t k = cause_vars.size();
      VarSet sub;
      for (std::uint32_t mask = 1; minimal && mask + 1 < (1u << k); ++mask) {
        sub.clear();
        for (std::size_t j = 0; j < k; ++j)
          if (mask & (1u << j)) sub.push_back(cause_vars[j]);
        if (sweep.hp_flip_index.count(sub)) minimal = false;
      }
      if (!minimal) continue;
      // Frozen conjuncts must all be binding.
      bool all_binding = true;
      for (std::size_t j = 0; all_binding && j < vars.size(); ++j)
        if (to_cont[j] && cache.vacuous_in(rec.assignment, vars[j])) all_binding = false;
      if (!all_binding) continue;
      out.pairs.push_back(split_assignment(cache, vars, rec, DefinitionTag::HP, to_cont));
    }
  }
  finalize(out);
  return out;
}

CauseSet build_hp_min(const CauseSet& hp) {
  CauseSet out;
  out.tag = DefinitionTag::HP_MIN;
  for (const auto& pair : hp.pairs) {
    bool keep = true;
    for (const auto& other : hp.pairs) {
      if (other.cause != pair.cause || other.cf_setting != pair.cf_setting) continue;
      if (other.contingency.items.size() >= pair.contingency.items.size()) continue;
      const bool subset = std::includes(
          pair.contingency.items.begin(), pair.contingency.items.end(),
          other.contingency.items.begin(), other.contingency.items.end());
      if (subset) {
        keep = false;
        break;
      }
    }
    if (keep) {
      CauseWitnessPair p = pair;
      p.tag = DefinitionTag::HP_MIN;
      out.pairs.push_back(std::move(p));
    }
  }
  finalize(out);
  return out;
}

CauseSet build_ac(const WorldCache& cache, const SweepData& sweep) {
  CauseSet out;
  out.tag = DefinitionTag::AC;
  const Trajectory& actual = cache.actual();
  for (const auto& [vars, recs] : sweep.flips) {
    if (recs.empty() || !sweep.butfor_minimal(vars)) continue;
    for (const auto& rec : recs) {
      // Partition the but-for cause by whether each agent's information state
      // survives into the witness world.
      const Trajectory witness = cache.world_trajectory(rec.assignment);
      std::vector<bool> to_cont(vars.size(), false);
      bool has_cause = false;
      for (std::size_t j = 0; j < vars.size(); ++j) {
        const VariableId& var = vars[j];
        const bool changed =
            witness.info[var.agent][var.t] != actual.info[var.agent][var.t];
        to_cont[j] = changed;
        if (!changed) has_cause = true;
      }
      if (!has_cause) continue;  // no stable part: no cause asserted
      out.pairs.push_back(split_assignment(cache, vars, rec, DefinitionTag::AC, to_cont));
    }
  }
  finalize(out);
  return out;
}

}  // namespace

std::map<DefinitionTag, CauseSet> enumerate_pairs_multi(
    const Engine& engine, const Context& ctx, const Event& event,
    const std::vector<DefinitionTag>& tags, int max_size, unsigned threads) {
  if (max_size < 1) throw std::invalid_argument("enumerate_pairs: max_size must be >= 1");
  WorldCache cache(engine, ctx, event);
  if (!cache.event_actual())
    throw EventNotRealized("event not realized in the actual world");
  const SweepData sweep = sweep_worlds(cache, max_size, threads);

  std::map<DefinitionTag, CauseSet> out;
  auto want = [&](DefinitionTag t) {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
  };

  if (want(DefinitionTag::BF)) out[DefinitionTag::BF] = build_butfor(cache, sweep);
  if (want(DefinitionTag::AC)) out[DefinitionTag::AC] = build_ac(cache, sweep);
  if (want(DefinitionTag::HP) || want(DefinitionTag::HP_MIN)) {
    CauseSet hp = build_hp(cache, sweep);
    if (want(DefinitionTag::HP_MIN)) out[DefinitionTag::HP_MIN] = build_hp_min(hp);
    if (want(DefinitionTag::HP)) out[DefinitionTag::HP] = std::move(hp);
  }

  for (auto& [tag, set] : out) {
    set.event_str = event.str();
    set.seed = ctx.seed();
    set.max_size = max_size;
  }
  return out;
}

CauseSet enumerate_pairs(const Engine& engine, const Context& ctx, const Event& event,
                         DefinitionTag tag, int max_size, unsigned threads) {
  auto all = enumerate_pairs_multi(engine, ctx, event, {tag}, max_size, threads);
  return std::move(all.at(tag));
}

std::optional<CauseWitnessPair> partition_butfor(const Engine& engine, const Context& ctx,
                                                 const Event& event,
                                                 const AssignmentConjunction& butfor_cause,
                                                 const std::vector<std::uint64_t>& setting,
                                                 WorldCache* shared) {
  LocalCache local;
  WorldCache& cache = *local.get(engine, ctx, event, shared);
  if (!is_but_for_cause(engine, ctx, event, butfor_cause, setting, &cache))
    throw std::invalid_argument("partition_butfor: inputs do not form a but-for cause");

  const WorldCache::Assignment world = make_assignment(butfor_cause, setting);
  const Trajectory witness = cache.world_trajectory(world);
  const Trajectory& actual = cache.actual();

  std::vector<std::pair<VariableId, std::uint64_t>> cause_items, cont_items;
  std::vector<std::uint64_t> cf;
  for (std::size_t j = 0; j < butfor_cause.items.size(); ++j) {
    const VariableId& var = butfor_cause.items[j].first;
    if (witness.info[var.agent][var.t] == actual.info[var.agent][var.t]) {
      cause_items.push_back(butfor_cause.items[j]);
      cf.push_back(setting[j]);
    } else {
      cont_items.push_back({var, setting[j]});
    }
  }
  if (cause_items.empty()) return std::nullopt;

  CauseWitnessPair pair;
  pair.tag = DefinitionTag::AC;
  pair.cause = AssignmentConjunction::of(std::move(cause_items));
  pair.cf_setting = std::move(cf);
  pair.contingency = AssignmentConjunction::of(std::move(cont_items));
  pair.improvement = annotate(engine, cache.evaluate(world));
  return pair;
}

}  // namespace causeway
