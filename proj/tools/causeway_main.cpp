// Command-line front end: simulate trajectories, reproduce the demonstration
// tables, enumerate causes, attribute responsibility and run the property /
// metric experiments.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "causeway/experiments.hpp"
#include "causeway/json_io.hpp"

namespace {

using namespace causeway;

constexpr int kExitConfig = 2;
constexpr int kExitEventNotRealized = 3;

std::vector<int> parse_deck(const std::string& spec) {
  std::vector<int> deck;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) deck.push_back(std::stoi(tok));
  return deck;
}

std::vector<DefinitionTag> parse_definitions(const std::vector<std::string>& names) {
  std::vector<DefinitionTag> defs;
  for (const auto& name : names) {
    const auto tag = definition_from_name(name);
    if (!tag) throw CLI::ValidationError("--definition", "unknown definition: " + name);
    defs.push_back(*tag);
  }
  return defs;
}

std::vector<RespMethod> parse_methods(const std::vector<std::string>& names) {
  std::vector<RespMethod> methods;
  for (const auto& name : names) {
    const auto m = method_from_name(name);
    if (!m) throw CLI::ValidationError("--method", "unknown method: " + name);
    methods.push_back(*m);
  }
  return methods;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

struct CommonOpts {
  std::string env = "goofspiel";
  int n = 5;
  std::string deck_spec;
  std::uint64_t seed = experiments::kGoldenDemoSeed;
  std::string out;
  std::string format = "json";
  int max_size = kDefaultMaxSize;
  unsigned threads = 0;

  std::optional<std::vector<int>> deck() const {
    if (deck_spec.empty()) return std::nullopt;
    return parse_deck(deck_spec);
  }
  unsigned thread_count() const {
    return threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_env = true) {
  if (with_env)
    cmd->add_option("--env", o.env, "Environment: goofspiel, bogus-single, bogus-duo");
  cmd->add_option("--n", o.n, "Goofspiel deck size N");
  cmd->add_option("--deck", o.deck_spec, "Explicit deck, e.g. 5,4,3,2,1");
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--out", o.out, "Output path (default: stdout)");
  cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--max-size", o.max_size, "Cause-witness size budget |A|+|W|");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
}

int run(int argc, char** argv) {
  CLI::App app{"Actual causality and responsibility attribution in multi-agent settings"};
  app.require_subcommand(1);

  // simulate
  CommonOpts sim;
  int sim_count = 1;
  std::string sim_out_dir = "trajectories";
  auto* simulate = app.add_subcommand("simulate", "Sample and store trajectories");
  add_common(simulate, sim);
  simulate->add_option("--trajectories", sim_count, "Number of trajectories");
  simulate->add_option("--out-dir", sim_out_dir, "Directory for trajectory files");

  // demo
  CommonOpts demo;
  std::vector<std::string> demo_defs = {"ac", "bf", "hp"};
  auto* demo_cmd = app.add_subcommand(
      "demo", "Descending-deck demonstration tables and responsibility bars");
  add_common(demo_cmd, demo, false);
  demo_cmd->add_option("--definition", demo_defs, "Definitions to tabulate");

  // causes
  CommonOpts causes;
  std::string causes_def = "ac";
  auto* causes_cmd = app.add_subcommand("causes", "Enumerate cause-witness pairs");
  add_common(causes_cmd, causes);
  causes_cmd->add_option("--definition", causes_def, "bf, hp, hp-min or ac");

  // responsibility
  CommonOpts resp;
  std::string resp_def = "ac";
  std::vector<std::string> resp_methods = {"ch", "ac", "accs", "acw", "acw-i"};
  auto* resp_cmd = app.add_subcommand("responsibility", "Per-agent responsibility degrees");
  add_common(resp_cmd, resp);
  resp_cmd->add_option("--definition", resp_def, "Cause definition for H_D");
  resp_cmd->add_option("--method", resp_methods, "ch, ac, accs, acw, acw-i");

  // properties
  CommonOpts props;
  std::vector<int> props_n = {4, 5, 6};
  int props_traj = 50;
  std::vector<std::string> props_defs = {"bf", "hp", "hp-min", "ac"};
  std::vector<std::string> props_methods = {"ch", "ac", "accs", "acw", "acw-i"};
  auto* props_cmd = app.add_subcommand(
      "properties", "Property violation statistics and responsibility impact");
  add_common(props_cmd, props);
  props_cmd->add_option("--n-list", props_n, "Deck sizes, e.g. --n-list 4 5 6");
  props_cmd->add_option("--trajectories", props_traj, "Trajectories per N");
  props_cmd->add_option("--definition", props_defs, "Definitions to audit");
  props_cmd->add_option("--method", props_methods, "Responsibility methods");

  // metrics
  CommonOpts metr;
  std::vector<int> metr_n = {4, 5, 6};
  int metr_traj = 50;
  std::vector<std::string> metr_defs = {"bf", "hp", "hp-min", "ac"};
  auto* metr_cmd =
      app.add_subcommand("metrics", "Cause count, size and improvement distributions");
  add_common(metr_cmd, metr);
  metr_cmd->add_option("--n-list", metr_n, "Deck sizes");
  metr_cmd->add_option("--trajectories", metr_traj, "Trajectories per N");
  metr_cmd->add_option("--definition", metr_defs, "Definitions to measure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (simulate->parsed()) {
    const auto result = experiments::simulate(sim.env, sim.n, sim.deck(), sim.seed,
                                              sim_count, sim_out_dir);
    std::cout << result.manifest_json;
    return 0;
  }

  if (demo_cmd->parsed()) {
    std::vector<int> deck = demo.deck().value_or([&] {
      std::vector<int> d(demo.n);
      for (int i = 0; i < demo.n; ++i) d[i] = demo.n - i;
      return d;
    }());
    const auto result = experiments::run_demo(demo.n, deck, demo.seed, demo.max_size,
                                              parse_definitions(demo_defs),
                                              demo.thread_count());
    const auto env = experiments::make_env("goofspiel", demo.n, deck, demo.seed);
    write_output(demo.out, demo.format == "csv" ? experiments::demo_csv(env, result)
                                                : experiments::demo_json(env, result));
    return 0;
  }

  if (causes_cmd->parsed()) {
    const auto tag = definition_from_name(causes_def);
    if (!tag) throw CLI::ValidationError("--definition", causes_def);
    auto env = experiments::make_env(causes.env, causes.n, causes.deck(), causes.seed);
    const CauseSet set = enumerate_pairs(env.engine, env.context, env.event, *tag,
                                         causes.max_size, causes.thread_count());
    write_output(causes.out, causes.format == "csv"
                                 ? io::causeset_csv(env.engine, set)
                                 : io::causeset_json(env.engine, set));
    return 0;
  }

  if (resp_cmd->parsed()) {
    const auto tag = definition_from_name(resp_def);
    if (!tag) throw CLI::ValidationError("--definition", resp_def);
    auto env = experiments::make_env(resp.env, resp.n, resp.deck(), resp.seed);
    const CauseSet set = enumerate_pairs(env.engine, env.context, env.event, *tag,
                                         resp.max_size, resp.thread_count());
    const std::uint64_t hash = io::causeset_hash(env.engine, set);
    std::ostringstream os;
    if (resp.format == "csv") {
      os << "method,agent,degree,degree_decimal\n";
      for (const RespMethod m : parse_methods(resp_methods)) {
        const auto profile = responsibility_profile(set, m, env.agent_count);
        for (std::size_t i = 0; i < profile.degrees.size(); ++i)
          os << method_name(m) << "," << i << "," << profile.degrees[i].str() << ","
             << profile.degrees[i].to_double() << "\n";
      }
    } else {
      os << "[\n";
      bool first = true;
      for (const RespMethod m : parse_methods(resp_methods)) {
        const auto profile = responsibility_profile(set, m, env.agent_count);
        if (!first) os << ",\n";
        first = false;
        std::string j = io::profile_json(profile, hash);
        if (!j.empty() && j.back() == '\n') j.pop_back();
        os << j;
      }
      os << "\n]\n";
    }
    write_output(resp.out, os.str());
    return 0;
  }

  if (props_cmd->parsed() || metr_cmd->parsed()) {
    const bool is_props = props_cmd->parsed();
    const CommonOpts& o = is_props ? props : metr;
    experiments::ExperimentConfig config;
    config.n_values = is_props ? props_n : metr_n;
    config.trajectories = is_props ? props_traj : metr_traj;
    config.seed = o.seed;
    config.definitions = parse_definitions(is_props ? props_defs : metr_defs);
    config.max_size = o.max_size;
    if (is_props) config.methods = parse_methods(props_methods);
    config.threads = o.thread_count();
    const auto run_result = experiments::run_analysis(config);
    write_output(o.out, is_props ? experiments::properties_csv(run_result)
                                 : experiments::metrics_csv(run_result));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const EventNotRealized& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEventNotRealized;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
