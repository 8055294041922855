#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causeway/cause_defs.hpp"
#include "causeway/goofspiel.hpp"
#include "causeway/properties.hpp"
#include "causeway/responsibility.hpp"

namespace causeway::experiments {

// Demo seed under which the descending-deck tables are locked as golden
// files (19 AC pairs, 19 BF pairs, 13 HP pairs).
inline constexpr std::uint64_t kGoldenDemoSeed = 1;

struct EnvSetup {
  std::string env_name;
  Engine engine;
  Context context;
  Event event;
  int agent_count = 0;
  std::optional<goofspiel::Game> game;
};

// env: "goofspiel", "bogus-single" or "bogus-duo". For Goofspiel a missing
// deck is sampled from the seed.
EnvSetup make_env(const std::string& env, int n_cards,
                  std::optional<std::vector<int>> deck, std::uint64_t seed);

struct DemoResult {
  int n_cards = 5;
  std::vector<int> deck;
  std::uint64_t seed = kGoldenDemoSeed;
  int max_size = kDefaultMaxSize;
  Trajectory actual;
  std::map<DefinitionTag, CauseSet> tables;
  std::map<DefinitionTag, std::map<RespMethod, ResponsibilityProfile>> responsibility;
};

DemoResult run_demo(int n_cards, std::vector<int> deck, std::uint64_t seed, int max_size,
                    const std::vector<DefinitionTag>& definitions, unsigned threads);
std::string demo_json(const EnvSetup& env, const DemoResult& demo);
std::string demo_csv(const EnvSetup& env, const DemoResult& demo);

struct ExperimentConfig {
  std::vector<int> n_values{4, 5, 6};
  int trajectories = 50;
  std::uint64_t seed = 1;
  std::vector<DefinitionTag> definitions{DefinitionTag::BF, DefinitionTag::HP,
                                         DefinitionTag::HP_MIN, DefinitionTag::AC};
  int max_size = kDefaultMaxSize;
  std::vector<RespMethod> methods{RespMethod::CH, RespMethod::AC, RespMethod::ACCS,
                                  RespMethod::ACW, RespMethod::ACW_I};
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Per (trajectory, definition) statistics feeding the plot CSVs.
struct TrajectoryRecord {
  int n = 0;
  std::uint64_t traj_seed = 0;
  DefinitionTag def = DefinitionTag::BF;
  std::size_t pair_count = 0;
  std::size_t distinct_causes = 0;
  std::vector<std::size_t> cause_sizes;      // one entry per distinct cause
  std::vector<std::int64_t> improvements;    // one entry per pair
  std::size_t ce_distinct_actions = 0;
  std::size_t acwm_groups_total = 0;
  std::size_t acwm_groups_violating = 0;
  std::map<RespMethod, Rational> p1_impact;
  std::map<RespMethod, Rational> p2_impact;
};

struct RunResult {
  ExperimentConfig config;
  std::vector<TrajectoryRecord> records;
  std::map<int, std::uint64_t> redraws;  // non-qualifying samples per N
};

// Samples qualifying trajectories (agents do not win; others are redrawn and
// counted), enumerates causes per definition and audits/corrects them.
RunResult run_analysis(const ExperimentConfig& config);

// N,seed,definition,prop,metric,value
std::string properties_csv(const RunResult& run);
// N,seed,definition,metric,value
std::string metrics_csv(const RunResult& run);

struct SimulateResult {
  std::vector<std::string> files;
  std::string manifest_json;
  std::uint64_t redraws = 0;
};

// Writes traj_<k>.json files plus manifest.json under out_dir.
SimulateResult simulate(const std::string& env, int n_cards,
                        std::optional<std::vector<int>> deck, std::uint64_t seed,
                        int count, const std::string& out_dir);

}  // namespace causeway::experiments
