#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "carlab/cli/runner.hpp"
#include "carlab/errors.hpp"

namespace {

using carlab::cli::ConfigError;
using carlab::cli::Json;
using carlab::cli::Mode;
using carlab::cli::RunConfig;

struct Flags {
  std::string config_path;
  std::string instance;
  std::optional<std::uint64_t> seed;
  std::optional<long> dim;
  std::optional<int> count;
  std::optional<int> n_max;
  std::optional<int> jobs;
  std::optional<double> tol;
  std::string out;
  bool timing = false;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

RunConfig assemble(Mode mode, const Flags& f) {
  RunConfig cfg = f.config_path.empty() ? RunConfig{} : carlab::cli::parse_config(read_json_file(f.config_path));
  cfg.mode = mode;
  if (!f.instance.empty()) {
    cfg.builtin.clear();
    cfg.inline_instance.reset();
    if (std::filesystem::exists(f.instance)) {
      cfg.inline_instance = read_json_file(f.instance);
    } else {
      cfg.builtin = f.instance;
    }
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.dim) {
    if (*f.dim < 2 || *f.dim % 2 != 0) throw ConfigError("--dim must be even and at least 2");
    cfg.dim = *f.dim;
  }
  if (f.count) {
    if (*f.count < 1) throw ConfigError("--count must be positive");
    cfg.count = *f.count;
  }
  if (f.n_max) {
    if (*f.n_max < 0 || *f.n_max > 8) throw ConfigError("--n-max must lie in [0, 8]");
    cfg.n_max = *f.n_max;
  }
  if (f.jobs) {
    if (*f.jobs < 1) throw ConfigError("--jobs must be positive");
    cfg.jobs = *f.jobs;
  }
  if (f.tol) {
    if (!(*f.tol > 0.0)) throw ConfigError("--tol must be positive");
    cfg.tolerances.set_all(*f.tol);
  }
  if (!f.out.empty()) cfg.output_path = f.out;
  cfg.timing = cfg.timing || f.timing;
  return cfg;
}

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON config file");
  sub->add_option("--instance", f.instance, "built-in instance (E1, E2, E3) or instance JSON file");
  sub->add_option("--seed", f.seed, "seed of the random instance or first campaign seed");
  sub->add_option("--dim", f.dim, "dim h of random instances");
  sub->add_option("--out", f.out, "report path (default: stdout)");
  sub->add_option("--tol", f.tol, "override every tolerance");
  sub->add_option("--jobs", f.jobs, "campaign worker threads");
  sub->add_option("--count", f.count, "number of campaign instances");
  sub->add_option("--n-max", f.n_max, "largest n of the vacuum expansion checks");
  sub->add_flag("--timing", f.timing, "add wall-clock timings to the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for the self-dual CAR algebra on finite-dimensional Fock spaces"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, Mode> modes[] = {{"verify", Mode::kVerify},
                                                {"campaign", Mode::kCampaign},
                                                {"spectrum", Mode::kSpectrum},
                                                {"formel", Mode::kFormel}};
  const char* help[] = {"run the full verification suite on one instance",
                        "run the suite on consecutive seeds and aggregate",
                        "dump ||PQ|| and the spectrum of Delta_p",
                        "compare the vacuum expansion with the operator product"};
  std::vector<CLI::App*> subs;
  for (std::size_t k = 0; k < 4; ++k) {
    subs.push_back(app.add_subcommand(modes[k].first, help[k]));
    add_flags(subs.back(), flags);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  Mode mode = Mode::kVerify;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (subs[k]->parsed()) mode = modes[k].second;
  }
  try {
    const RunConfig cfg = assemble(mode, flags);
    const carlab::cli::CommandResult result = carlab::cli::run(cfg);
    const std::string text = result.report.dump(2) + "\n";
    if (cfg.output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output_path, std::ios::binary);
      if (!out) throw ConfigError("cannot write '" + cfg.output_path + "'");
      out << text;
    }
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "carlab: invalid config: " << e.what() << "\n";
    return 2;
  } catch (const carlab::FockCapExceeded& e) {
    std::cerr << "carlab: " << e.what() << "\n";
    return 2;
  } catch (const carlab::Error& e) {
    std::cerr << "carlab: " << e.what() << "\n";
    return 2;
  }
}
