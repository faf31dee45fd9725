#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "rmt/acceptance.hpp"
#include "rmt/errors.hpp"
#include "rmt/experiment.hpp"
#include "rmt/io.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

// Options shared by every experiment subcommand, keyed by config-file name.
struct RawOptions {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

void add_experiment_options(CLI::App* sub, RawOptions& raw, const std::vector<std::string>& keys) {
  static const std::map<std::string, std::pair<std::string, std::string>> flags = {
      {"ensemble", {"--ensemble", "preset: goe|gue|rademacher|rademacher_hermitian|uniform|uniform_hermitian"}},
      {"ensemble2", {"--ensemble2", "second preset for universality"}},
      {"symmetry", {"--symmetry", "real_symmetric|hermitian (with --law)"}},
      {"law", {"--law", "gaussian|rademacher|uniform|discrete"}},
      {"atoms", {"--atoms", "discrete law atoms v:p,v:p,..."}},
      {"n", {"--n", "matrix dimension or vertex count"}},
      {"replicas", {"--replicas", "number of replicas"}},
      {"seed", {"--seed", "experiment seed"}},
      {"k", {"--k", "number of top eigenvalues"}},
      {"t", {"--t", "comma-separated t values"}},
      {"smin", {"--smin", "table left end"}},
      {"smax", {"--smax", "table right end"}},
      {"step", {"--step", "table grid step"}},
      {"p", {"--p", "path length"}},
      {"c", {"--c", "toy-model constant"}},
      {"proposition", {"--proposition", "P1..P5"}},
      {"output", {"-o,--output", "output file (relative to RMTLAB_OUTPUT_DIR)"}},
      {"format", {"--format", "csv|json"}},
      {"workers", {"--workers", "worker threads (0 = all cores)"}},
  };
  for (const auto& key : keys) {
    const auto& [flag, help] = flags.at(key);
    raw.options[key] = sub->add_option(flag, raw.values[key], help);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-matrix edge laboratory"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file (command line wins)");

  const std::vector<std::string> common = {"seed", "output", "format", "workers"};
  auto with = [&](std::vector<std::string> extra) {
    extra.insert(extra.end(), common.begin(), common.end());
    return extra;
  };
  struct Sub {
    CLI::App* app;
    RawOptions raw;
  };
  std::map<std::string, Sub> subs;
  auto define = [&](const std::string& name, const std::string& help, std::vector<std::string> keys) {
    Sub& s = subs[name];
    s.app = app.add_subcommand(name, help);
    add_experiment_options(s.app, s.raw, with(std::move(keys)));
  };
  define("tw-table", "tabulate q, F1, F2 as CSV s,q,F1,F2", {"smin", "smax", "step"});
  define("sample-edge", "per-replica rescaled top eigenvalues and trace statistics",
         {"ensemble", "symmetry", "law", "atoms", "n", "replicas", "k", "t"});
  define("universality", "two-sample comparison of theta_1..theta_k between two ensembles",
         {"ensemble", "ensemble2", "symmetry", "law", "atoms", "n", "replicas", "k"});
  define("toy-paths", "uniform closed paths: proposition checks", {"n", "p", "c", "proposition", "replicas"});
  define("oracle", "exact trace moment and path census",
         {"ensemble", "symmetry", "law", "atoms", "n", "p"});
  define("semicircle", "empirical spectral distribution vs semicircle",
         {"ensemble", "symmetry", "law", "atoms", "n", "replicas"});

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::vector<std::string> only;
  std::string report = "acceptance_report.json";
  unsigned workers = 0;
  std::string cache_dir;
  verify->add_option("--only", only, "restrict to groups: combinatorics|spectra|kernels|toy|invariants");
  verify->add_option("--report", report, "JSON report path (relative to RMTLAB_OUTPUT_DIR)");
  verify->add_option("--workers", workers, "worker threads (0 = all cores)");
  verify->add_option("--cache-dir", cache_dir, "Tracy-Widom table cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) {
      rmt::AcceptanceOptions opts;
      opts.only.insert(only.begin(), only.end());
      opts.workers = workers;
      opts.cache_dir = cache_dir.empty() ? rmt::default_output_dir() : std::filesystem::path(cache_dir);
      const auto results = rmt::run_acceptance(opts, &std::cout);
      const rmt::Json doc = rmt::acceptance_report(results);
      const auto path = rmt::resolve_output(report);
      rmt::write_atomic(path, doc.dump(2) + "\n");
      std::size_t failed = 0;
      for (const auto& r : results) failed += r.passed ? 0 : 1;
      std::cout << "verify: " << results.size() - failed << "/" << results.size()
                << " criteria passed; report " << path.string() << "\n";
      return failed ? kCheckFailed : kOk;
    }

    for (auto& [name, sub] : subs) {
      if (!sub.app->parsed()) continue;
      rmt::ExperimentConfig config;
      if (!config_path.empty()) rmt::apply_config_file(config, config_path);
      for (const auto& [key, opt] : sub.raw.options)
        if (opt->count() > 0) rmt::apply_config_key(config, key, sub.raw.values[key]);
      config.command = name;
      const rmt::ExperimentResult result = rmt::run(config);
      std::cout << rmt::summary_line(result) << "\n";
      return kOk;
    }
  } catch (const rmt::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const rmt::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const rmt::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
