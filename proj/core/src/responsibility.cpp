#include "causeway/responsibility.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace causeway {

std::string method_name(RespMethod m) {
  switch (m) {
    case RespMethod::CH: return "ch";
    case RespMethod::AC: return "ac";
    case RespMethod::ACCS: return "accs";
    case RespMethod::ACW: return "acw";
    case RespMethod::ACW_I: return "acw-i";
  }
  return "?";
}

std::optional<RespMethod> method_from_name(const std::string& name) {
  if (name == "ch") return RespMethod::CH;
  if (name == "ac") return RespMethod::AC;
  if (name == "accs") return RespMethod::ACCS;
  if (name == "acw") return RespMethod::ACW;
  if (name == "acw-i" || name == "acw_i" || name == "acwi") return RespMethod::ACW_I;
  return std::nullopt;
}

namespace {

int count_agent(const AssignmentConjunction& conj, int agent) {
  int m = 0;
  for (const auto& [var, _] : conj.items)
    if (var.agent == agent) ++m;
  return m;
}

// m_c / k_c with the Definition-5 contingency self-discount.
Rational pair_share(const CauseWitnessPair& pair, int agent) {
  const int m = count_agent(pair.cause, agent);
  if (m == 0) return Rational(0);
  const int w = count_agent(pair.contingency, agent);
  const int k = static_cast<int>(pair.cause.size() + pair.contingency.size()) - w;
  return Rational(m, k);
}

bool participates(const CauseSet& set, int agent) {
  for (const auto& pair : set.pairs)
    if (count_agent(pair.cause, agent) > 0) return true;
  return false;
}

}  // namespace

Rational ch_degree(const CauseSet& set, int agent) {
  Rational best(0);
  for (const auto& pair : set.pairs) {
    const int m = count_agent(pair.cause, agent);
    if (m == 0) continue;
    const int k = static_cast<int>(pair.cause.size() + pair.contingency.size());
    const Rational v(m, k);
    if (v > best) best = v;
  }
  return best;
}

Rational weighted_degree(const CauseSet& set, const WeightVector& weights, int agent) {
  if (weights.weights.size() != set.pairs.size())
    throw std::invalid_argument("weight vector length does not match cause set size");
  Rational total(0);
  bool any_positive = false;
  for (const auto& b : weights.weights) {
    if (b < Rational(0)) throw std::invalid_argument("weights must be nonnegative");
    if (b > Rational(0)) any_positive = true;
    total += b;
  }
  if (!any_positive) throw std::invalid_argument("weight vector must have a positive entry");
  if (!participates(set, agent)) return Rational(0);

  Rational acc(0);
  for (std::size_t c = 0; c < set.pairs.size(); ++c)
    acc += weights.weights[c] * pair_share(set.pairs[c], agent);
  return acc / total;
}

WeightVector weights_for(RespMethod method, const CauseSet& set, int agent) {
  WeightVector out;
  out.owner = agent;
  out.weights.assign(set.pairs.size(), Rational(0));
  if (set.pairs.empty()) return out;

  switch (method) {
    case RespMethod::ACW: {
      out.weights.assign(set.pairs.size(), Rational(1));
      return out;
    }
    case RespMethod::ACW_I: {
      for (std::size_t c = 0; c < set.pairs.size(); ++c) {
        const auto& pair = set.pairs[c];
        if (!pair.improvement || *pair.improvement <= 0)
          throw std::invalid_argument(
              "acw-i requires a positive improvement annotation on every pair; missing for "
              "pair " +
              std::to_string(c));
        out.weights[c] = Rational(*pair.improvement);
      }
      return out;
    }
    case RespMethod::AC:
    case RespMethod::ACCS: {
      // One unit weight per group: the group's pair maximizing the agent's
      // share, ties resolved by canonical order.
      std::map<std::pair<AssignmentConjunction, std::vector<std::uint64_t>>, std::size_t>
          best;
      for (std::size_t c = 0; c < set.pairs.size(); ++c) {
        const auto& pair = set.pairs[c];
        std::pair<AssignmentConjunction, std::vector<std::uint64_t>> key;
        key.first = pair.cause;
        if (method == RespMethod::ACCS) key.second = pair.cf_setting;
        auto it = best.find(key);
        if (it == best.end()) {
          best.emplace(std::move(key), c);
        } else if (pair_share(pair, agent) > pair_share(set.pairs[it->second], agent)) {
          it->second = c;
        }
      }
      for (const auto& [_, c] : best) out.weights[c] = Rational(1);
      return out;
    }
    case RespMethod::CH:
      throw std::invalid_argument("CH is not a weighted method");
  }
  return out;
}

ResponsibilityProfile responsibility_profile(const CauseSet& set, RespMethod method,
                                             int agent_count) {
  ResponsibilityProfile profile;
  profile.method = method;
  profile.degrees.assign(agent_count, Rational(0));
  if (set.pairs.empty()) {
    profile.empty_cause_set = true;
    return profile;
  }
  for (int i = 0; i < agent_count; ++i) {
    if (method == RespMethod::CH) {
      profile.degrees[i] = ch_degree(set, i);
    } else {
      profile.degrees[i] = weighted_degree(set, weights_for(method, set, i), i);
    }
  }
  return profile;
}

Rational impact(const ResponsibilityProfile& before, const ResponsibilityProfile& after) {
  if (before.degrees.size() != after.degrees.size())
    throw std::invalid_argument("profiles have different agent counts");
  Rational total(0);
  for (std::size_t i = 0; i < before.degrees.size(); ++i)
    total += (before.degrees[i] - after.degrees[i]).abs();
  return total;
}

}  // namespace causeway
