#pragma once

// Independent TeamGoofspiel scorer: replays the game rules over the four
// players' realized bids without touching the SCM machinery.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace goofspiel_replay {

struct Outcome {
  int agents_score = 0;
  int opponents_score = 0;
};

// bids[player][round], player order Ag0, Ag1, Opp0, Opp1, cards 1..N.
inline Outcome score(const std::vector<int>& deck,
                     const std::vector<std::vector<int>>& bids) {
  const int n = static_cast<int>(deck.size());
  Outcome out;
  std::vector<std::uint32_t> hands(4, (1u << n) - 1u);
  for (int t = 0; t < n; ++t) {
    const int prize = deck[t];
    int sums[2] = {0, 0};
    for (int p = 0; p < 4; ++p) {
      const int card = bids[p][t];
      if (card < 1 || card > n || !((hands[p] >> (card - 1)) & 1u))
        throw std::invalid_argument("replay: bid of an unavailable card");
      hands[p] &= ~(1u << (card - 1));
      sums[p / 2] += card;
    }
    if (sums[0] > sums[1]) out.agents_score += prize;
    if (sums[1] > sums[0]) out.opponents_score += prize;
  }
  return out;
}

}  // namespace goofspiel_replay
