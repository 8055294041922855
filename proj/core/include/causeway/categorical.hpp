#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace causeway {

// Sparse categorical distribution over 64-bit outcome keys. Only outcomes
// with positive probability are stored, which is exactly the "log 0 acts as
// an absorbing floor" rule: zero-probability outcomes can never win the
// Gumbel argmax because they are not candidates at all.
class Categorical {
 public:
  struct Entry {
    std::uint64_t key;
    double prob;
    double logp;
  };

  Categorical() = default;

  static Categorical point_mass(std::uint64_t key) {
    Categorical c;
    c.entries_.push_back({key, 1.0, 0.0});
    return c;
  }

  static Categorical from_pairs(std::vector<std::pair<std::uint64_t, double>> pairs,
                                const std::string& table_name = "categorical") {
    Categorical c;
    double total = 0.0;
    for (const auto& [key, p] : pairs) {
      if (p < 0.0)
        throw std::invalid_argument(table_name + ": negative probability for key " +
                                    std::to_string(key));
      if (p == 0.0) continue;
      for (const auto& e : c.entries_)
        if (e.key == key)
          throw std::invalid_argument(table_name + ": duplicate outcome key " +
                                      std::to_string(key));
      c.entries_.push_back({key, p, std::log(p)});
      total += p;
    }
    if (c.entries_.empty())
      throw std::invalid_argument(table_name + ": empty support");
    if (std::abs(total - 1.0) > 1e-9)
      throw std::invalid_argument(table_name + ": probabilities sum to " +
                                  std::to_string(total) + ", expected 1");
    return c;
  }

  static Categorical uniform(const std::vector<std::uint64_t>& keys,
                             const std::string& table_name = "categorical") {
    std::vector<std::pair<std::uint64_t, double>> pairs;
    pairs.reserve(keys.size());
    const double p = 1.0 / static_cast<double>(keys.size());
    for (auto k : keys) pairs.emplace_back(k, p);
    return from_pairs(std::move(pairs), table_name);
  }

  const std::vector<Entry>& support() const { return entries_; }
  bool deterministic() const { return entries_.size() == 1; }

  double prob_of(std::uint64_t key) const {
    for (const auto& e : entries_)
      if (e.key == key) return e.prob;
    return 0.0;
  }

  // Gumbel-max mechanism: argmax over the support of log p + g(key), where g
  // supplies one Gumbel(0,1) coordinate per outcome key. Ties (measure zero)
  // break toward the smaller key for determinism.
  std::uint64_t argmax(const std::function<double(std::uint64_t)>& gumbel) const {
    if (entries_.size() == 1) return entries_.front().key;
    double best = -1e300;
    std::uint64_t best_key = 0;
    bool have = false;
    for (const auto& e : entries_) {
      const double score = e.logp + gumbel(e.key);
      if (!have || score > best || (score == best && e.key < best_key)) {
        best = score;
        best_key = e.key;
        have = true;
      }
    }
    return best_key;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace causeway
