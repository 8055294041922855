#include "causeway/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "causeway/json_io.hpp"
#include "causeway/micro_envs.hpp"
#include "causeway/prng.hpp"
#include "json.hpp"

namespace causeway::experiments {

using ordered_json = nlohmann::ordered_json;

EnvSetup make_env(const std::string& env, int n_cards,
                  std::optional<std::vector<int>> deck, std::uint64_t seed) {
  EnvSetup setup;
  if (env == "goofspiel") {
    std::vector<int> d = deck ? *deck : goofspiel::sample_deck(n_cards, seed);
    setup.game = goofspiel::new_game(n_cards, d);
    setup.engine = goofspiel::make_engine(n_cards, d);
    setup.event = goofspiel::agents_do_not_win_event();
    setup.env_name = "goofspiel";
    setup.agent_count = 2;
  } else if (env == "bogus-single" || env == "bogus_single") {
    micro::MicroEnv micro_env = micro::build_micro_env("bogus-single");
    setup.engine = std::move(micro_env.engine);
    setup.event = micro_env.victim_dies;
    setup.env_name = "bogus-single";
    setup.agent_count = 1;
  } else if (env == "bogus-duo" || env == "bogus_duo") {
    micro::MicroEnv micro_env = micro::build_micro_env("bogus-duo");
    setup.engine = std::move(micro_env.engine);
    setup.event = micro_env.victim_dies;
    setup.env_name = "bogus-duo";
    setup.agent_count = 2;
  } else {
    throw std::invalid_argument("unknown environment: " + env);
  }
  setup.context = sample_context(setup.engine.scm, seed);
  return setup;
}

DemoResult run_demo(int n_cards, std::vector<int> deck, std::uint64_t seed, int max_size,
                    const std::vector<DefinitionTag>& definitions, unsigned threads) {
  DemoResult demo;
  demo.n_cards = n_cards;
  demo.deck = deck;
  demo.seed = seed;
  demo.max_size = max_size;

  const Engine engine = goofspiel::make_engine(n_cards, deck);
  const Context ctx = sample_context(engine.scm, seed);
  const Event event = goofspiel::agents_do_not_win_event();

  demo.actual = rollout(engine.scm, ctx, {});
  demo.tables = enumerate_pairs_multi(engine, ctx, event, definitions, max_size, threads);
  for (const auto& [tag, set] : demo.tables) {
    for (const RespMethod m : {RespMethod::CH, RespMethod::AC, RespMethod::ACCS,
                               RespMethod::ACW, RespMethod::ACW_I})
      demo.responsibility[tag][m] = responsibility_profile(set, m, 2);
  }
  return demo;
}

std::string demo_json(const EnvSetup& env, const DemoResult& demo) {
  ordered_json j;
  j["env"] = "goofspiel";
  j["n"] = demo.n_cards;
  j["deck"] = demo.deck;
  j["seed"] = demo.seed;
  j["max_size"] = demo.max_size;
  j["trajectory"] = ordered_json::parse(io::trajectory_json(env.engine.scm, demo.actual));
  ordered_json tables;
  for (const auto& [tag, set] : demo.tables)
    tables[definition_name(tag)] =
        ordered_json::parse(io::causeset_json(env.engine, set));
  j["tables"] = tables;
  ordered_json resp;
  for (const auto& [tag, by_method] : demo.responsibility) {
    ordered_json per;
    for (const auto& [method, profile] : by_method)
      per[method_name(method)] = ordered_json::parse(io::profile_json(
          profile, io::causeset_hash(env.engine, demo.tables.at(tag))));
    resp[definition_name(tag)] = per;
  }
  j["responsibility"] = resp;
  return j.dump(2) + "\n";
}

std::string demo_csv(const EnvSetup& env, const DemoResult& demo) {
  std::ostringstream os;
  os << "definition,cause,cf_setting,contingency,improvement\n";
  for (const auto& [tag, set] : demo.tables) {
    std::istringstream in(io::causeset_csv(env.engine, set));
    std::string line;
    std::getline(in, line);  // skip header
    while (std::getline(in, line)) os << line << "\n";
  }
  return os.str();
}

namespace {

std::size_t distinct_cause_count(const CauseSet& set,
                                 std::vector<std::size_t>* sizes_out) {
  std::set<AssignmentConjunction> causes;
  for (const auto& pair : set.pairs) causes.insert(pair.cause);
  if (sizes_out) {
    sizes_out->clear();
    for (const auto& c : causes) sizes_out->push_back(c.size());
  }
  return causes.size();
}

std::vector<TrajectoryRecord> analyze_one(const ExperimentConfig& config, int n,
                                          std::uint64_t traj_seed) {
  const std::vector<int> deck = goofspiel::sample_deck(n, traj_seed);
  const Engine engine = goofspiel::make_engine(n, deck);
  const Context ctx = sample_context(engine.scm, traj_seed);
  const Event event = goofspiel::agents_do_not_win_event();

  auto tables =
      enumerate_pairs_multi(engine, ctx, event, config.definitions, config.max_size, 1);
  WorldCache cache(engine, ctx, event);

  std::vector<TrajectoryRecord> records;
  for (const auto& [tag, set] : tables) {
    TrajectoryRecord rec;
    rec.n = n;
    rec.traj_seed = traj_seed;
    rec.def = tag;
    rec.pair_count = set.pairs.size();
    rec.distinct_causes = distinct_cause_count(set, &rec.cause_sizes);
    for (const auto& pair : set.pairs)
      if (pair.improvement) rec.improvements.push_back(*pair.improvement);

    const ViolationReport ce = audit_property1(engine, ctx, event, set, &cache);
    rec.ce_distinct_actions = ce.distinct_violating_actions;
    const ViolationReport acwm = audit_property2(set);
    rec.acwm_groups_total = acwm.distinct_cause_contingency_total;
    rec.acwm_groups_violating = acwm.distinct_cause_contingency_violating;

    const CauseSet corrected1 = correct_property1(engine, ctx, event, set, &cache);
    const CauseSet corrected2 = correct_property2(set);
    for (const RespMethod m : config.methods) {
      const auto before = responsibility_profile(set, m, 2);
      rec.p1_impact[m] = impact(before, responsibility_profile(corrected1, m, 2));
      rec.p2_impact[m] = impact(before, responsibility_profile(corrected2, m, 2));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

RunResult run_analysis(const ExperimentConfig& config) {
  RunResult run;
  run.config = config;
  const unsigned threads =
      config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());

  for (const int n : config.n_values) {
    // Qualification pass: the analysis covers trajectories the agents did not
    // win; winning samples are redrawn and counted.
    std::vector<std::uint64_t> seeds;
    std::uint64_t redraws = 0;
    const std::uint64_t n_stream = mix_seed(config.seed, static_cast<std::uint64_t>(n));
    for (std::uint64_t k = 0; static_cast<int>(seeds.size()) < config.trajectories; ++k) {
      const std::uint64_t traj_seed = mix_seed(n_stream, k);
      const std::vector<int> deck = goofspiel::sample_deck(n, traj_seed);
      goofspiel::Game game = goofspiel::new_game(n, deck);
      const ScmInstance scm = build_scm(game.model, game.agents);
      const Trajectory traj = rollout(scm, sample_context(scm, traj_seed), {});
      if (game.final_diff(traj) > 0) {
        ++redraws;
        continue;
      }
      seeds.push_back(traj_seed);
    }
    run.redraws[n] = redraws;

    // Heavy analysis, parallel over trajectories, results in index order.
    std::vector<std::vector<TrajectoryRecord>> slots(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < seeds.size(); i = next.fetch_add(1))
        slots[i] = analyze_one(config, n, seeds[i]);
    };
    std::vector<std::thread> pool;
    const unsigned use = std::min<std::size_t>(threads, seeds.size());
    for (unsigned w = 0; w + 1 < use; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& slot : slots)
      for (auto& rec : slot) run.records.push_back(std::move(rec));
  }
  return run;
}

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

std::string properties_csv(const RunResult& run) {
  std::ostringstream os;
  os << "N,seed,definition,prop,metric,value\n";
  for (const auto& rec : run.records) {
    const std::string def = definition_name(rec.def);
    os << rec.n << "," << rec.traj_seed << "," << def << ",CE,violating_actions,"
       << rec.ce_distinct_actions << "\n";
    os << rec.n << "," << rec.traj_seed << "," << def << ",ACWM,cause_contingency_pairs,"
       << rec.acwm_groups_total << "\n";
    os << rec.n << "," << rec.traj_seed << "," << def << ",ACWM,non_minimal_pairs,"
       << rec.acwm_groups_violating << "\n";
    for (const auto& [m, v] : rec.p1_impact)
      os << rec.n << "," << rec.traj_seed << "," << def << ",CE,impact:" << method_name(m)
         << "," << v.to_double() << "\n";
    for (const auto& [m, v] : rec.p2_impact)
      os << rec.n << "," << rec.traj_seed << "," << def << ",ACWM,impact:" << method_name(m)
         << "," << v.to_double() << "\n";
  }
  // Per-N maxima over trajectories, one row per definition and method.
  for (const int n : run.config.n_values) {
    for (const DefinitionTag tag : run.config.definitions) {
      for (const RespMethod m : run.config.methods) {
        Rational max1(0), max2(0);
        for (const auto& rec : run.records) {
          if (rec.n != n || rec.def != tag) continue;
          if (rec.p1_impact.count(m) && rec.p1_impact.at(m) > max1)
            max1 = rec.p1_impact.at(m);
          if (rec.p2_impact.count(m) && rec.p2_impact.at(m) > max2)
            max2 = rec.p2_impact.at(m);
        }
        os << n << "," << run.config.seed << "," << definition_name(tag)
           << ",CE,max_impact:" << method_name(m) << "," << max1.to_double() << "\n";
        os << n << "," << run.config.seed << "," << definition_name(tag)
           << ",ACWM,max_impact:" << method_name(m) << "," << max2.to_double() << "\n";
      }
    }
    os << n << "," << run.config.seed << ",all,sampling,redraws," << run.redraws.at(n)
       << "\n";
  }
  return os.str();
}

std::string metrics_csv(const RunResult& run) {
  std::ostringstream os;
  os << "N,seed,definition,metric,value\n";
  for (const auto& rec : run.records) {
    const std::string def = definition_name(rec.def);
    os << rec.n << "," << rec.traj_seed << "," << def << ",distinct_causes,"
       << rec.distinct_causes << "\n";
    os << rec.n << "," << rec.traj_seed << "," << def << ",pairs," << rec.pair_count
       << "\n";
    for (const auto s : rec.cause_sizes)
      os << rec.n << "," << rec.traj_seed << "," << def << ",cause_size," << s << "\n";
    for (const auto imp : rec.improvements)
      os << rec.n << "," << rec.traj_seed << "," << def << ",improvement," << imp << "\n";
  }
  for (const int n : run.config.n_values) {
    for (const DefinitionTag tag : run.config.definitions) {
      std::vector<double> causes, sizes;
      for (const auto& rec : run.records) {
        if (rec.n != n || rec.def != tag) continue;
        causes.push_back(static_cast<double>(rec.distinct_causes));
        for (const auto s : rec.cause_sizes) sizes.push_back(static_cast<double>(s));
      }
      os << n << "," << run.config.seed << "," << definition_name(tag)
         << ",median_distinct_causes," << median_of(causes) << "\n";
      os << n << "," << run.config.seed << "," << definition_name(tag)
         << ",median_cause_size," << median_of(sizes) << "\n";
    }
  }
  return os.str();
}

SimulateResult simulate(const std::string& env, int n_cards,
                        std::optional<std::vector<int>> deck, std::uint64_t seed,
                        int count, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  SimulateResult result;
  ordered_json manifest;
  manifest["env"] = env;
  if (env == "goofspiel") manifest["n"] = n_cards;
  manifest["seed"] = seed;
  manifest["count"] = count;
  ordered_json files = ordered_json::array();

  for (int k = 0; k < count; ++k) {
    const std::uint64_t traj_seed = mix_seed(seed, static_cast<std::uint64_t>(k));
    EnvSetup setup = make_env(env, n_cards, deck, traj_seed);
    const Trajectory traj = rollout(setup.engine.scm, setup.context, {});
    char name[32];
    std::snprintf(name, sizeof(name), "traj_%03d.json", k);
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << io::trajectory_json(setup.engine.scm, traj);
    files.push_back(std::string(name));
    result.files.push_back(path.string());
  }
  manifest["files"] = files;
  result.manifest_json = manifest.dump(2) + "\n";
  std::ofstream mout(fs::path(out_dir) / "manifest.json");
  mout << result.manifest_json;
  return result;
}

}  // namespace causeway::experiments
