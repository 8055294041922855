#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "causeway/scm.hpp"

namespace causeway::goofspiel {

// Bids are cards 1..N; action keys are card-1. Player order in hands:
// Ag0, Ag1, Opp0, Opp1.
struct GoofspielState {
  int round = 0;  // N = terminal
  std::array<std::uint32_t, 4> hands{};  // bitmask, bit c-1 = card c
  int agents_score = 0;
  int opponents_score = 0;
  int deck_rank = -1;  // Lehmer rank of the deck, only when the deck lives in the state
};

struct GoofspielInfoState {
  std::uint32_t hand = 0;  // own remaining cards, bitmask
  int prize = 0;           // 0 on the terminal step
  bool winning = false;    // own team strictly ahead entering the round
};

// Scripted policies. Ag0 matches the prize whenever possible; Ag1 plays its
// highest card iff the prize beats the hand average minus X; the opponents
// randomize over qualifying cards.
int ag0_policy(const GoofspielInfoState& info);
int ag1_policy(const GoofspielInfoState& info);
Categorical opponent_policy(const GoofspielInfoState& info);

struct Game {
  int n_cards = 0;
  std::vector<int> deck;  // empty when the deck is drawn from the initial distribution
  DecPomdpModel model;
  std::vector<AgentModel> agents;

  std::uint64_t encode_state(const GoofspielState& s) const;
  GoofspielState decode_state(std::uint64_t key) const;
  std::vector<int> deck_of(const Trajectory& traj) const;

  // Final agents-minus-opponents score difference.
  int final_diff(const Trajectory& traj) const;
  // Improvement of the counterfactual final score difference over the actual
  // one, in prize points. Both trajectories must share the deck.
  std::int64_t cf_improvement(const Trajectory& actual, const Trajectory& cf) const;
};

// TeamGoofspiel(N). With a deck, the initial distribution is a point mass;
// without one it is uniform over all N! permutations (supported for N <= 8,
// where the initial argmax stays cheap).
Game new_game(int n_cards, std::optional<std::vector<int>> deck);

Event agents_do_not_win_event();

// Game compiled into a causal engine: SCM, the agents_do_not_win predicate,
// the agents' (not the opponents') action variables as the enumeration
// domain, and score improvement as the pair annotation.
Engine make_engine(int n_cards, std::optional<std::vector<int>> deck);

// Uniformly shuffled deck derived from a seed, for harness-level sampling.
std::vector<int> sample_deck(int n_cards, std::uint64_t seed);

}  // namespace causeway::goofspiel
