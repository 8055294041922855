#include "causeway/goofspiel.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "causeway/prng.hpp"

namespace causeway::goofspiel {

namespace {

constexpr int kMinCards = 3;
constexpr int kMaxCards = 13;
constexpr int kMaxUniformDeck = 8;  // N! initial supports stay enumerable

int popcount(std::uint32_t x) { return __builtin_popcount(x); }
int lowest_card(std::uint32_t hand) { return __builtin_ctz(hand) + 1; }
int highest_card(std::uint32_t hand) { return 31 - __builtin_clz(hand) + 1; }
bool holds(std::uint32_t hand, int card) { return (hand >> (card - 1)) & 1u; }
int hand_sum(std::uint32_t hand) {
  int s = 0;
  for (std::uint32_t h = hand; h;) {
    const int c = __builtin_ctz(h);
    s += c + 1;
    h &= h - 1;
  }
  return s;
}

std::array<std::array<std::uint64_t, 14>, 14> make_binomials() {
  std::array<std::array<std::uint64_t, 14>, 14> c{};
  for (int n = 0; n < 14; ++n) {
    c[n][0] = 1;
    for (int k = 1; k <= n; ++k)
      c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
  }
  return c;
}
const auto kBinom = make_binomials();

// Combinadic rank of a k-subset of {0..n-1} given as a bitmask.
std::uint64_t rank_hand(std::uint32_t hand) {
  std::uint64_t rank = 0;
  int seen = 0;
  for (std::uint32_t h = hand; h;) {
    const int pos = __builtin_ctz(h);
    ++seen;
    rank += kBinom[pos][seen];
    h &= h - 1;
  }
  return rank;
}

std::uint32_t unrank_hand(std::uint64_t rank, int k, int n) {
  std::uint32_t hand = 0;
  for (int slot = k; slot >= 1; --slot) {
    int pos = slot - 1;
    while (pos + 1 < n && kBinom[pos + 1][slot] <= rank) ++pos;
    hand |= (1u << pos);
    rank -= kBinom[pos][slot];
  }
  return hand;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t rank_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (perm[j] < perm[i]) ++smaller;
    rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
  }
  return rank;
}

std::vector<int> unrank_permutation(std::uint64_t rank, int n) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i + 1;
  std::vector<int> perm;
  perm.reserve(n);
  for (int i = n - 1; i >= 0; --i) {
    const std::uint64_t f = factorial(i);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    perm.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return perm;
}

struct Layout {
  int n = 0;
  bool deck_in_state = false;
  int hand_bits = 0, score_bits = 0, perm_bits = 0;

  explicit Layout(int n_cards, bool uniform) : n(n_cards), deck_in_state(uniform) {
    hand_bits = 1;
    while ((1u << hand_bits) < kBinom[n][n / 2]) ++hand_bits;
    const int max_score = n * (n + 1) / 2;
    score_bits = 1;
    while ((1 << score_bits) <= max_score) ++score_bits;
    if (uniform) {
      perm_bits = 1;
      while ((1ull << perm_bits) < factorial(n)) ++perm_bits;
    }
  }
};

std::string cards_str(std::uint32_t hand) {
  std::string s;
  for (std::uint32_t h = hand; h;) {
    const int c = __builtin_ctz(h) + 1;
    if (!s.empty()) s += ",";
    s += std::to_string(c);
    h &= h - 1;
  }
  return s.empty() ? "-" : s;
}

GoofspielInfoState decode_info(std::uint64_t key) {
  GoofspielInfoState info;
  info.winning = key & 1u;
  info.prize = static_cast<int>((key >> 1) & 0xFu);
  info.hand = static_cast<std::uint32_t>(key >> 5);
  return info;
}

std::uint64_t encode_info(const GoofspielInfoState& info) {
  return (static_cast<std::uint64_t>(info.hand) << 5) |
         (static_cast<std::uint64_t>(info.prize) << 1) | (info.winning ? 1u : 0u);
}

std::uint64_t encode_obs(int prize, bool winning) {
  return static_cast<std::uint64_t>(prize) * 2 + (winning ? 1 : 0);
}

}  // namespace

int ag0_policy(const GoofspielInfoState& info) {
  const std::uint32_t hand = info.hand;
  const int prize = info.prize;
  if (holds(hand, prize)) return prize;
  if (info.winning) {
    const std::uint32_t below = hand & ((1u << (prize - 1)) - 1u);
    return below ? highest_card(below) : lowest_card(hand);
  }
  const std::uint32_t above = hand & ~((1u << prize) - 1u);
  return above ? lowest_card(above) : highest_card(hand);
}

int ag1_policy(const GoofspielInfoState& info) {
  const std::uint32_t hand = info.hand;
  const int x = info.winning ? 0 : 1;
  const int size = popcount(hand);
  // prize > mean(hand) - X, compared exactly via cross multiplication
  if (info.prize * size > hand_sum(hand) - x * size) return highest_card(hand);
  return lowest_card(hand);
}

Categorical opponent_policy(const GoofspielInfoState& info) {
  const std::uint32_t hand = info.hand;
  std::uint32_t qualifying;
  if (info.winning) {
    qualifying = hand & ((1u << info.prize) - 1u);  // c <= prize
  } else {
    qualifying = hand & ~((1u << (info.prize - 1)) - 1u);  // c >= prize
  }
  if (!qualifying) qualifying = hand;
  std::vector<std::uint64_t> keys;
  for (std::uint32_t q = qualifying; q;) {
    keys.push_back(static_cast<std::uint64_t>(__builtin_ctz(q)));  // card-1
    q &= q - 1;
  }
  return Categorical::uniform(keys, "opponent policy");
}

std::uint64_t Game::encode_state(const GoofspielState& s) const {
  const Layout layout(n_cards, deck.empty());
  std::uint64_t key = static_cast<std::uint64_t>(s.round);
  if (layout.deck_in_state)
    key = (key << layout.perm_bits) | static_cast<std::uint64_t>(s.deck_rank);
  for (int p = 0; p < 4; ++p) key = (key << layout.hand_bits) | rank_hand(s.hands[p]);
  key = (key << layout.score_bits) | static_cast<std::uint64_t>(s.agents_score);
  key = (key << layout.score_bits) | static_cast<std::uint64_t>(s.opponents_score);
  return key;
}

GoofspielState Game::decode_state(std::uint64_t key) const {
  const Layout layout(n_cards, deck.empty());
  GoofspielState s;
  s.opponents_score = static_cast<int>(key & ((1ull << layout.score_bits) - 1));
  key >>= layout.score_bits;
  s.agents_score = static_cast<int>(key & ((1ull << layout.score_bits) - 1));
  key >>= layout.score_bits;
  std::array<std::uint64_t, 4> ranks{};
  for (int p = 3; p >= 0; --p) {
    ranks[p] = key & ((1ull << layout.hand_bits) - 1);
    key >>= layout.hand_bits;
  }
  if (layout.deck_in_state) {
    s.deck_rank = static_cast<int>(key & ((1ull << layout.perm_bits) - 1));
    key >>= layout.perm_bits;
  }
  s.round = static_cast<int>(key);
  const int hand_size = n_cards - s.round;
  for (int p = 0; p < 4; ++p) s.hands[p] = unrank_hand(ranks[p], hand_size, n_cards);
  return s;
}

std::vector<int> Game::deck_of(const Trajectory& traj) const {
  if (!deck.empty()) return deck;
  const GoofspielState s0 = decode_state(traj.states[0]);
  return unrank_permutation(static_cast<std::uint64_t>(s0.deck_rank), n_cards);
}

int Game::final_diff(const Trajectory& traj) const {
  const GoofspielState fin = decode_state(traj.states.back());
  return fin.agents_score - fin.opponents_score;
}

std::int64_t Game::cf_improvement(const Trajectory& actual, const Trajectory& cf) const {
  if (actual.states[0] != cf.states[0])
    throw std::invalid_argument("cf_improvement: deck mismatch between trajectories");
  return final_diff(cf) - final_diff(actual);
}

Game new_game(int n_cards, std::optional<std::vector<int>> deck_opt) {
  if (n_cards < kMinCards || n_cards > kMaxCards)
    throw std::invalid_argument("TeamGoofspiel: N must be in [3,13]");
  const bool uniform = !deck_opt.has_value();
  if (uniform && n_cards > kMaxUniformDeck)
    throw std::invalid_argument(
        "TeamGoofspiel: uniform deck distribution supported only for N <= 8; pass a deck");
  if (!uniform) {
    std::vector<int> sorted = *deck_opt;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n_cards; ++i)
      if (i >= static_cast<int>(sorted.size()) || sorted[i] != i + 1)
        throw std::invalid_argument("TeamGoofspiel: deck must be a permutation of 1..N");
  }

  auto game = std::make_shared<Game>();
  game->n_cards = n_cards;
  if (!uniform) game->deck = *deck_opt;

  const int n = n_cards;
  const Layout layout(n, uniform);
  const std::uint32_t full_hand = (n == 32) ? ~0u : ((1u << n) - 1u);
  const std::uint64_t obs_size = static_cast<std::uint64_t>(n + 1) * 2;

  DecPomdpModel model;
  model.name = "team-goofspiel-" + std::to_string(n);
  model.agent_count = 2;
  model.horizon = static_cast<std::uint64_t>(n) + 1;  // N rounds plus the outcome step
  model.state_space_size =
      1ull << (4 + layout.perm_bits + 4 * layout.hand_bits + 2 * layout.score_bits);
  model.obs_space_sizes = {obs_size, obs_size};
  model.joint_obs_space_size = obs_size * obs_size;
  model.action_space_sizes = {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n)};

  auto prize_of = [game](const GoofspielState& s) -> int {
    if (s.round >= game->n_cards) return 0;
    if (!game->deck.empty()) return game->deck[s.round];
    return unrank_permutation(static_cast<std::uint64_t>(s.deck_rank),
                              game->n_cards)[s.round];
  };

  if (uniform) {
    std::vector<std::pair<std::uint64_t, double>> support;
    const std::uint64_t perms = factorial(n);
    support.reserve(perms);
    const double p = 1.0 / static_cast<double>(perms);
    GoofspielState s0;
    s0.round = 0;
    s0.hands = {full_hand, full_hand, full_hand, full_hand};
    for (std::uint64_t r = 0; r < perms; ++r) {
      s0.deck_rank = static_cast<int>(r);
      support.emplace_back(game->encode_state(s0), p);
    }
    model.initial_dist = Categorical::from_pairs(std::move(support), "initial deck");
  } else {
    GoofspielState s0;
    s0.round = 0;
    s0.hands = {full_hand, full_hand, full_hand, full_hand};
    model.initial_dist = Categorical::point_mass(game->encode_state(s0));
  }

  model.transition = [game, prize_of](std::uint64_t state_key,
                                      std::span<const std::uint64_t> joint_action) {
    const GoofspielState s = game->decode_state(state_key);
    if (s.round >= game->n_cards) return Categorical::point_mass(state_key);  // terminal
    const int prize = prize_of(s);
    const bool opp_winning = s.opponents_score > s.agents_score;

    // Agents' bids; a bid without the card wastes the turn (it scores nothing
    // and discards the lowest card). The cause search never accepts such
    // worlds, this only keeps P total.
    int agents_sum = 0;
    std::array<std::uint32_t, 2> agent_hands = {s.hands[0], s.hands[1]};
    for (int i = 0; i < 2; ++i) {
      const int card = static_cast<int>(joint_action[i]) + 1;
      if (holds(agent_hands[i], card)) {
        agents_sum += card;
        agent_hands[i] &= ~(1u << (card - 1));
      } else {
        agent_hands[i] &= ~(1u << (lowest_card(agent_hands[i]) - 1));
      }
    }

    // Opponents randomize over qualifying cards.
    std::array<std::vector<int>, 2> choices;
    for (int k = 0; k < 2; ++k) {
      GoofspielInfoState oinfo;
      oinfo.hand = s.hands[2 + k];
      oinfo.prize = prize;
      oinfo.winning = opp_winning;
      const Categorical dist = opponent_policy(oinfo);
      for (const auto& entry : dist.support())
        choices[k].push_back(static_cast<int>(entry.key) + 1);
    }

    std::map<std::uint64_t, double> probs;
    const double p = 1.0 / (static_cast<double>(choices[0].size()) *
                            static_cast<double>(choices[1].size()));
    for (const int c2 : choices[0]) {
      for (const int c3 : choices[1]) {
        GoofspielState next = s;
        next.round = s.round + 1;
        next.hands[0] = agent_hands[0];
        next.hands[1] = agent_hands[1];
        next.hands[2] = s.hands[2] & ~(1u << (c2 - 1));
        next.hands[3] = s.hands[3] & ~(1u << (c3 - 1));
        const int opp_sum = c2 + c3;
        if (agents_sum > opp_sum) next.agents_score += prize;
        else if (opp_sum > agents_sum) next.opponents_score += prize;
        probs[game->encode_state(next)] += p;
      }
    }
    std::vector<std::pair<std::uint64_t, double>> support(probs.begin(), probs.end());
    return Categorical::from_pairs(std::move(support), "goofspiel transition");
  };

  model.observation = [game, prize_of, obs_size](std::uint64_t state_key) {
    const GoofspielState s = game->decode_state(state_key);
    const std::uint64_t o = encode_obs(prize_of(s), s.agents_score > s.opponents_score);
    return Categorical::point_mass(o * obs_size + o);
  };

  model.action_feasible = [game](std::uint64_t state_key, int agent, std::uint64_t action) {
    const GoofspielState s = game->decode_state(state_key);
    if (s.round >= game->n_cards) return true;  // terminal step: bids are ignored
    return holds(s.hands[agent], static_cast<int>(action) + 1);
  };

  model.state_label = [game, prize_of](std::uint64_t key) {
    const GoofspielState s = game->decode_state(key);
    std::ostringstream os;
    os << "r" << s.round << "|p" << prize_of(s) << "|h0:" << cards_str(s.hands[0])
       << "|h1:" << cards_str(s.hands[1]) << "|o0:" << cards_str(s.hands[2])
       << "|o1:" << cards_str(s.hands[3]) << "|s:" << s.agents_score << "-"
       << s.opponents_score;
    return os.str();
  };
  model.obs_label = [](int, std::uint64_t key) {
    return "p" + std::to_string(key / 2) + (key % 2 ? "|ahead" : "|not-ahead");
  };

  for (int i = 0; i < 2; ++i) {
    AgentModel agent;
    agent.info_space_size = 1ull << (n + 5);
    agent.action_space_size = static_cast<std::uint64_t>(n);
    agent.policy = [i](std::uint64_t info_key) {
      const GoofspielInfoState info = decode_info(info_key);
      if (info.hand == 0)  // terminal step: dummy bid
        return Categorical::point_mass(0);
      const int card = i == 0 ? ag0_policy(info) : ag1_policy(info);
      return Categorical::point_mass(static_cast<std::uint64_t>(card - 1));
    };
    agent.initial_info = [full_hand](std::uint64_t obs_key) {
      GoofspielInfoState info;
      info.hand = full_hand;
      info.prize = static_cast<int>(obs_key / 2);
      info.winning = obs_key % 2;
      return Categorical::point_mass(encode_info(info));
    };
    agent.info_update = [](std::uint64_t prev_key, std::uint64_t action,
                           std::uint64_t obs_key) {
      GoofspielInfoState info = decode_info(prev_key);
      const int card = static_cast<int>(action) + 1;
      if (holds(info.hand, card)) {
        info.hand &= ~(1u << (card - 1));
      } else if (info.hand) {
        info.hand &= ~(1u << (lowest_card(info.hand) - 1));
      }
      info.prize = static_cast<int>(obs_key / 2);
      info.winning = obs_key % 2;
      return Categorical::point_mass(encode_info(info));
    };
    agent.info_label = [](std::uint64_t key) {
      const GoofspielInfoState info = decode_info(key);
      return "h:" + cards_str(info.hand) + "|p" + std::to_string(info.prize) +
             (info.winning ? "|ahead" : "|not-ahead");
    };
    agent.action_label = [](std::uint64_t key) { return std::to_string(key + 1); };
    game->agents.push_back(std::move(agent));
  }

  Game out = *game;
  out.model = std::move(model);
  return out;
}

Event agents_do_not_win_event() { return Event::predicate("agents_do_not_win"); }

Engine make_engine(int n_cards, std::optional<std::vector<int>> deck) {
  Game game = new_game(n_cards, std::move(deck));
  auto shared = std::make_shared<Game>(game);

  Engine engine;
  engine.scm = build_scm(game.model, game.agents);
  engine.predicates.add("agents_do_not_win", [shared](const Trajectory& traj) {
    return shared->final_diff(traj) <= 0;
  });
  for (int t = 0; t < n_cards; ++t)
    for (std::int16_t i = 0; i < 2; ++i)
      engine.eligible_vars.push_back(VariableId::action(i, t));
  std::sort(engine.eligible_vars.begin(), engine.eligible_vars.end());
  engine.improvement = [shared](const Trajectory& actual, const Trajectory& cf) {
    return shared->cf_improvement(actual, cf);
  };
  return engine;
}

std::vector<int> sample_deck(int n_cards, std::uint64_t seed) {
  std::vector<int> deck(n_cards);
  for (int i = 0; i < n_cards; ++i) deck[i] = i + 1;
  std::uint64_t h = splitmix64(seed ^ 0x6f5902ac237024bdull);
  for (int i = n_cards - 1; i > 0; --i) {
    h = splitmix64(h);
    const int j = static_cast<int>(h % static_cast<std::uint64_t>(i + 1));
    std::swap(deck[i], deck[j]);
  }
  return deck;
}

}  // namespace causeway::goofspiel
