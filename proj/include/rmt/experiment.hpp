#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/io.hpp"

namespace rmt {

std::string version_tag();

/// Resolved settings of one CLI run. Fields irrelevant to a subcommand are
/// ignored by it but still echoed.
struct ExperimentConfig {
  std::string command;
  /// Preset name; replaced by (symmetry, law, atoms) when `law` is set.
  std::string ensemble = "goe";
  std::string symmetry = "real_symmetric";
  std::string law;
  std::string atoms;
  /// Second ensemble of a universality comparison.
  std::string ensemble2 = "goe";
  int n = 200;
  std::uint64_t replicas = 1000;
  std::uint64_t seed = 1;
  int k = 1;
  std::vector<double> t_values{1.0};
  double s_min = -10.0, s_max = 8.0, step = 0.01;
  /// Path length; 0 lets toy-paths derive it from c and the proposition.
  int p = 0;
  double c = 1.0;
  std::string proposition = "P3";
  std::string output;
  /// csv or json; empty picks json for oracle and csv otherwise.
  std::string format;
  unsigned workers = 0;
};

/// Sets one field from its config-file key. ConfigError names the key and
/// the offending value.
void apply_config_key(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Flat `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);

/// ConfigError listing every invalid field.
void validate(const ExperimentConfig& config);

std::string output_format(const ExperimentConfig& config);

Json to_json(const ExperimentConfig& config);

/// Spec of the first (or second) ensemble at dimension config.n.
EnsembleSpec resolve_ensemble(const ExperimentConfig& config, bool second = false);

/// Path length used by toy-paths: config.p, or floor(c sqrt n) for P1-P3,
/// floor(n^0.58) for P4, floor(c n^{2/3}) for P5.
int toy_path_length(const ExperimentConfig& config);

/// Observables of one sampled matrix.
struct ReplicaRecord {
  std::uint64_t seed = 0;
  std::vector<double> theta, tau;
  double trace_even = 0.0, trace_odd = 0.0;
  double s_upper = 0.0, s_lower = 0.0;
  double lambda_max = 0.0, lambda_min = 0.0;
  bool overflow = false;
};

/// Replica r uses seed replica_seed(seed, r). Records come back in replica
/// order whatever the worker count. t <= 0 skips the trace observables.
std::vector<ReplicaRecord> sample_edge_replicas(const EnsembleSpec& spec, std::uint64_t replicas,
                                                std::uint64_t seed, int k, double t,
                                                unsigned workers = 0);

struct ExperimentResult {
  Json config;
  CsvTable records;
  Json summary;
  double runtime_seconds = 0.0;
  std::string version;
  std::filesystem::path output;
};

/// Runs every subcommand except verify, writes the output atomically, and
/// returns the result.
ExperimentResult run(const ExperimentConfig& config);

/// One-line human summary.
std::string summary_line(const ExperimentResult& result);

}  // namespace rmt
