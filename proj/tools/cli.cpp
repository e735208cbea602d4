#include "cli.hpp"

#include "oco/acceptance.hpp"
#include "oco/config.hpp"
#include "oco/experiments.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>

namespace oco::cli {

namespace {

struct Flags {
  std::optional<long> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<int> seeds;
  std::optional<double> beta;
  std::optional<double> kappa;
  std::optional<double> gamma;
  std::optional<int> dim;
  std::optional<int> segments;
  std::optional<std::string> out;
  std::optional<std::string> demand;
  std::optional<std::string> algos;
  std::optional<int> jobs;
  std::optional<std::string> config;
};

const std::vector<std::string> kConfigKeys = {"horizon", "seed", "seeds", "beta",  "kappa", "gamma",
                                              "dim",     "segments", "out", "demand", "algos", "jobs"};

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  require(!in.fail() && (in >> std::ws).eof(), "config value for '" + key + "' is not valid: " + text);
  return value;
}

// Fills every flag that was not given on the command line from the config file.
void merge_config(Flags& f, const ConfigMap& config) {
  for (const auto& [key, value] : config) {
    require(std::find(kConfigKeys.begin(), kConfigKeys.end(), key) != kConfigKeys.end(),
            "unknown config key: " + key);
    if (key == "horizon" && !f.horizon) f.horizon = parse_value<long>(key, value);
    else if (key == "seed" && !f.seed) f.seed = parse_value<std::uint64_t>(key, value);
    else if (key == "seeds" && !f.seeds) f.seeds = parse_value<int>(key, value);
    else if (key == "beta" && !f.beta) f.beta = parse_value<double>(key, value);
    else if (key == "kappa" && !f.kappa) f.kappa = parse_value<double>(key, value);
    else if (key == "gamma" && !f.gamma) f.gamma = parse_value<double>(key, value);
    else if (key == "dim" && !f.dim) f.dim = parse_value<int>(key, value);
    else if (key == "segments" && !f.segments) f.segments = parse_value<int>(key, value);
    else if (key == "out" && !f.out) f.out = value;
    else if (key == "demand" && !f.demand) f.demand = value;
    else if (key == "algos" && !f.algos) f.algos = value;
    else if (key == "jobs" && !f.jobs) f.jobs = parse_value<int>(key, value);
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ExperimentConfig resolve(const std::string& experiment, Flags f) {
  if (f.config) merge_config(f, parse_config_file(*f.config));

  ExperimentConfig c = default_config(experiment);
  if (f.demand) {
    require(experiment == "dispatch", "--demand only applies to the dispatch experiment");
    try {
      c.demand = load_demand_csv(*f.demand);
    } catch (const InvalidArgument& e) {
      throw IoError(e.what());
    }
    if (!f.horizon) c.horizon = std::min<long>(c.horizon, static_cast<long>(c.demand.size()));
  }
  if (f.horizon) c.horizon = *f.horizon;
  const std::uint64_t seed = f.seed.value_or(1);
  const int count = f.seeds.value_or(1);
  require(count >= 1, "--seeds must be at least 1");
  c.seeds.clear();
  for (int i = 0; i < count; ++i) c.seeds.push_back(seed + static_cast<std::uint64_t>(i));
  if (f.beta) c.beta = *f.beta;
  if (f.kappa) c.kappa = *f.kappa;
  if (f.gamma) c.gamma = *f.gamma;
  if (f.dim) c.dim = *f.dim;
  if (f.segments) {
    require(experiment == "pca", "--segments only applies to the pca experiment");
    require(*f.segments >= 1, "--segments must be at least 1");
    c.pca_segments = *f.segments;
  }
  if (f.algos) c.algorithms = split_list(*f.algos);
  if (f.jobs) c.jobs = *f.jobs;
  c.out_dir = f.out.value_or("runs");
  c.validate();
  return c;
}

void add_experiment_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--horizon", f.horizon, "number of rounds T");
  sub.add_option("--seed", f.seed, "master seed (default 1)");
  sub.add_option("--seeds", f.seeds, "number of consecutive seeds starting at --seed");
  sub.add_option("--beta", f.beta, "step exponent of the clipped methods, in (0,1)");
  sub.add_option("--kappa", f.kappa, "penalty trade-off of the clipped methods, in (0,1)");
  sub.add_option("--gamma", f.gamma, "discount factor override, in (0,1]");
  sub.add_option("--dim", f.dim, "matrix size (dsm) or dimension (tracking)");
  sub.add_option("--segments", f.segments, "subspace segments of the pca stream (default 3)");
  sub.add_option("--out", f.out, "output directory (default runs)");
  sub.add_option("--demand", f.demand, "demand CSV with header t,demand (dispatch)");
  sub.add_option("--algos", f.algos, "comma-separated algorithm roster");
  sub.add_option("--jobs", f.jobs, "worker threads for (algorithm, seed) cells");
  sub.add_option("--config", f.config, "key = value configuration file");
}

int run_selftest(std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto results =
      run_acceptance(AcceptanceScale::Reduced, [&](const CriterionResult& r) { out << format_result(r) << std::endl; });
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  out << "selftest: " << passed << "/" << results.size() << " passed in " << seconds << " s" << std::endl;
  return passed == static_cast<long>(results.size()) ? kOk : kNumerical;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online convex optimization benchmarks"};
  app.require_subcommand(1, 1);
  Flags flags;
  std::vector<CLI::App*> experiments;
  for (const auto& id : experiment_ids()) {
    CLI::App* sub = app.add_subcommand(id, "run the " + id + " experiment");
    add_experiment_flags(*sub, flags);
    experiments.push_back(sub);
  }
  CLI::App* selftest = app.add_subcommand("selftest", "run the reduced acceptance suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << std::endl;
    return kUsage;
  }

  try {
    if (selftest->parsed()) return run_selftest(out);
    for (CLI::App* sub : experiments) {
      if (!sub->parsed()) continue;
      const ExperimentConfig config = resolve(sub->get_name(), flags);
      const ExperimentResult result = run_experiment(config);
      for (const auto& cell : result.cells)
        out << config.experiment << " " << cell.algorithm << " seed " << cell.seed
            << ": regret " << format_number(cell.regret) << ", clipped violation "
            << format_number(cell.clipped_sum) << std::endl;
      out << "wrote " << result.files.size() << " files to " << config.out_dir << std::endl;
      return kOk;
    }
  } catch (const IoError& e) {
    err << "io error: " << e.what() << std::endl;
    return kIo;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << std::endl;
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << std::endl;
    return kNumerical;
  }
  return kUsage;
}

}  // namespace oco::cli
