#pragma once

// Brute-force oracle for the two bogus-prevention micro environments. This
// re-derives the cause tables straight from the story rules by enumerating
// all action profiles; it shares no code with the SCM path it validates.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace micro_oracle {

// Variables are indexed 0 and 1 in decision order: bogus_single uses the
// assassin's two steps, bogus_duo uses (bodyguard, assassin). Values use the
// same keys as the library: poison/wine = 1, not-poison/water = 0.
using Profile = std::array<std::optional<std::uint64_t>, 2>;

struct World {
  std::array<std::uint64_t, 2> actions{};
  std::array<std::uint64_t, 2> infos{};  // info state at each decision point
  bool dies = false;
};

enum class Env { SingleAlways, SingleOnceEarly, Duo };

inline World simulate(Env env, const Profile& forced) {
  World w;
  if (env == Env::Duo) {
    const std::uint64_t b = forced[0].value_or(0);  // bodyguard: water
    w.infos[0] = 0;                                 // constant information
    const std::uint64_t saw = b;                    // assassin observes the liquid
    w.infos[1] = saw + 1;                           // 1 = saw-water, 2 = saw-wine
    const std::uint64_t a = forced[1] ? *forced[1] : (b == 0 ? 1 : 0);  // opposite
    w.actions = {b, a};
    w.dies = a != b;
    return w;
  }
  const std::uint64_t a0 = forced[0].value_or(1);  // policy: poison first chance
  w.infos[0] = 0;                                  // start
  const bool poisoned_after_0 = a0 == 1;
  w.infos[1] = poisoned_after_0 ? 2 : 1;  // 2 = water-poisoned, 1 = water-clean
  std::uint64_t a1;
  if (forced[1]) {
    a1 = *forced[1];
  } else if (env == Env::SingleAlways) {
    a1 = poisoned_after_0 ? 0 : 1;
  } else {
    a1 = 0;  // poisons only at the first opportunity
  }
  w.actions = {a0, a1};
  w.dies = (a0 == 1) || (a1 == 1);
  return w;
}

// One cause-witness pair in oracle form: variable indices, actual values come
// from the actual world, cf/contingency values explicit.
struct OraclePair {
  std::vector<std::size_t> cause_vars;
  std::vector<std::uint64_t> cf;
  std::vector<std::size_t> cont_vars;
  std::vector<std::uint64_t> cont_vals;

  friend auto operator<=>(const OraclePair&, const OraclePair&) = default;
};

inline bool dies_under(Env env, const std::vector<std::size_t>& vars,
                       const std::vector<std::uint64_t>& vals) {
  Profile forced{};
  for (std::size_t i = 0; i < vars.size(); ++i) forced[vars[i]] = vals[i];
  return simulate(env, forced).dies;
}

// Every (vars, values) combination over a variable subset, including values
// equal to the actual ones (all-actual combinations excluded).
inline std::vector<std::vector<std::uint64_t>> settings_over(
    const World& actual, const std::vector<std::size_t>& vars) {
  std::vector<std::vector<std::uint64_t>> out;
  const std::size_t k = vars.size();
  for (std::uint32_t code = 0; code < (1u << k); ++code) {
    std::vector<std::uint64_t> vals(k);
    bool all_actual = true;
    for (std::size_t i = 0; i < k; ++i) {
      vals[i] = (code >> i) & 1u;
      if (vals[i] != actual.actions[vars[i]]) all_actual = false;
    }
    if (!all_actual) out.push_back(vals);
  }
  return out;
}

inline std::vector<std::vector<std::size_t>> subsets_of_two() {
  return {{0}, {1}, {0, 1}};
}

inline bool butfor_flip(Env env, const World& actual, const std::vector<std::size_t>& vars) {
  for (const auto& vals : settings_over(actual, vars))
    if (!dies_under(env, vars, vals)) return true;
  return false;
}

inline bool is_butfor_minimal(Env env, const World& actual,
                              const std::vector<std::size_t>& vars) {
  if (!butfor_flip(env, actual, vars)) return false;
  for (const auto& sub : subsets_of_two()) {
    if (sub.size() >= vars.size()) continue;
    bool contained = true;
    for (auto v : sub)
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) contained = false;
    if (contained && butfor_flip(env, actual, sub)) return false;
  }
  return true;
}

inline std::set<OraclePair> enumerate_bf(Env env) {
  const World actual = simulate(env, {});
  std::set<OraclePair> out;
  for (const auto& vars : subsets_of_two()) {
    if (!is_butfor_minimal(env, actual, vars)) continue;
    for (const auto& vals : settings_over(actual, vars))
      if (!dies_under(env, vars, vals)) out.insert({vars, vals, {}, {}});
  }
  return out;
}

inline std::set<OraclePair> enumerate_hp(Env env) {
  const World actual = simulate(env, {});
  std::set<OraclePair> out;
  for (const auto& cause : subsets_of_two()) {
    std::vector<std::size_t> rest;
    for (std::size_t v : {std::size_t{0}, std::size_t{1}})
      if (std::find(cause.begin(), cause.end(), v) == cause.end()) rest.push_back(v);
    // settings with every cause conjunct moved off its actual value
    for (const auto& vals : settings_over(actual, cause)) {
      bool proper = true;
      for (std::size_t i = 0; i < cause.size(); ++i)
        if (vals[i] == actual.actions[cause[i]]) proper = false;
      if (!proper) continue;
      for (std::uint32_t wmask = 0; wmask < (1u << rest.size()); ++wmask) {
        std::vector<std::size_t> wvars;
        std::vector<std::uint64_t> wvals;
        for (std::size_t i = 0; i < rest.size(); ++i)
          if (wmask & (1u << i)) {
            wvars.push_back(rest[i]);
            wvals.push_back(actual.actions[rest[i]]);  // frozen at actual
          }
        std::vector<std::size_t> all = cause;
        std::vector<std::uint64_t> allv = vals;
        all.insert(all.end(), wvars.begin(), wvars.end());
        allv.insert(allv.end(), wvals.begin(), wvals.end());
        if (dies_under(env, all, allv)) continue;  // no flip
        // HPC3: a strict sub-cause with any witness disqualifies the cause.
        bool minimal = true;
        for (const auto& sub : subsets_of_two()) {
          if (sub.size() >= cause.size()) continue;
          bool contained = true;
          for (auto v : sub)
            if (std::find(cause.begin(), cause.end(), v) == cause.end()) contained = false;
          if (!contained) continue;
          // any setting of sub plus any frozen W flips?
          for (const auto& sv : settings_over(actual, sub)) {
            std::vector<std::size_t> rest2;
            for (std::size_t v : {std::size_t{0}, std::size_t{1}})
              if (std::find(sub.begin(), sub.end(), v) == sub.end()) rest2.push_back(v);
            for (std::uint32_t m2 = 0; m2 < (1u << rest2.size()); ++m2) {
              std::vector<std::size_t> u = sub;
              std::vector<std::uint64_t> uv = sv;
              for (std::size_t i = 0; i < rest2.size(); ++i)
                if (m2 & (1u << i)) {
                  u.push_back(rest2[i]);
                  uv.push_back(actual.actions[rest2[i]]);
                }
              if (!dies_under(env, u, uv)) minimal = false;
            }
          }
        }
        if (!minimal) continue;
        // Binding contingencies: dropping a frozen conjunct must change the
        // counterfactual world (here: the realized actions).
        bool all_binding = true;
        for (std::size_t d = 0; d < wvars.size(); ++d) {
          std::vector<std::size_t> u;
          std::vector<std::uint64_t> uv;
          for (std::size_t i = 0; i < all.size(); ++i) {
            if (all[i] == wvars[d]) continue;
            u.push_back(all[i]);
            uv.push_back(allv[i]);
          }
          Profile pf{}, pf_full{};
          for (std::size_t i = 0; i < u.size(); ++i) pf[u[i]] = uv[i];
          for (std::size_t i = 0; i < all.size(); ++i) pf_full[all[i]] = allv[i];
          if (simulate(env, pf).actions == simulate(env, pf_full).actions)
            all_binding = false;
        }
        if (!all_binding) continue;
        out.insert({cause, vals, wvars, wvals});
      }
    }
  }
  return out;
}

inline std::set<OraclePair> enumerate_hp_min(Env env) {
  const auto hp = enumerate_hp(env);
  std::set<OraclePair> out;
  for (const auto& pair : hp) {
    bool keep = true;
    for (const auto& other : hp) {
      if (other.cause_vars != pair.cause_vars || other.cf != pair.cf) continue;
      if (other.cont_vars.size() >= pair.cont_vars.size()) continue;
      bool subset = true;
      for (auto v : other.cont_vars)
        if (std::find(pair.cont_vars.begin(), pair.cont_vars.end(), v) ==
            pair.cont_vars.end())
          subset = false;
      if (subset) keep = false;
    }
    if (keep) out.insert(pair);
  }
  return out;
}

inline std::set<OraclePair> enumerate_ac(Env env) {
  const World actual = simulate(env, {});
  std::set<OraclePair> out;
  for (const auto& vars : subsets_of_two()) {
    if (!is_butfor_minimal(env, actual, vars)) continue;
    for (const auto& vals : settings_over(actual, vars)) {
      if (dies_under(env, vars, vals)) continue;
      Profile pf{};
      for (std::size_t i = 0; i < vars.size(); ++i) pf[vars[i]] = vals[i];
      const World witness = simulate(env, pf);
      OraclePair pair;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (witness.infos[vars[i]] == actual.infos[vars[i]]) {
          pair.cause_vars.push_back(vars[i]);
          pair.cf.push_back(vals[i]);
        } else {
          pair.cont_vars.push_back(vars[i]);
          pair.cont_vals.push_back(vals[i]);
        }
      }
      if (pair.cause_vars.empty()) continue;
      out.insert(pair);
    }
  }
  return out;
}

}  // namespace micro_oracle
