#include "rmt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "rmt/errors.hpp"
#include "rmt/mcstats.hpp"
#include "rmt/parallel.hpp"
#include "rmt/paths.hpp"
#include "rmt/spectra.hpp"
#include "rmt/toymodel.hpp"
#include "rmt/tracy_widom.hpp"

#ifndef RMT_VERSION
#define RMT_VERSION "0.0.0"
#endif

namespace rmt {

std::string version_tag() { return std::string("rmtlab ") + RMT_VERSION; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (!in || !(in >> std::ws).eof())
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "'");
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number<double>(key, item));
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void apply_config_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "ensemble") c.ensemble = value;
  else if (key == "ensemble2") c.ensemble2 = value;
  else if (key == "symmetry") c.symmetry = value;
  else if (key == "law") c.law = value;
  else if (key == "atoms") c.atoms = value;
  else if (key == "n") c.n = parse_number<int>(key, value);
  else if (key == "replicas") c.replicas = parse_number<std::uint64_t>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "k") c.k = parse_number<int>(key, value);
  else if (key == "t") c.t_values = parse_list(key, value);
  else if (key == "smin") c.s_min = parse_number<double>(key, value);
  else if (key == "smax") c.s_max = parse_number<double>(key, value);
  else if (key == "step") c.step = parse_number<double>(key, value);
  else if (key == "p") c.p = parse_number<int>(key, value);
  else if (key == "c") c.c = parse_number<double>(key, value);
  else if (key == "proposition") c.proposition = value;
  else if (key == "output") c.output = value;
  else if (key == "format") c.format = value;
  else if (key == "workers") c.workers = parse_number<unsigned>(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  for (const auto& [key, value] : parse_config_text(read_file(path)))
    apply_config_key(config, key, value);
}

void validate(const ExperimentConfig& c) {
  std::vector<std::string> bad;
  if (c.n < 1) bad.push_back("n must be >= 1");
  if (c.replicas < 1) bad.push_back("replicas must be >= 1");
  if (c.k < 1) bad.push_back("k must be >= 1");
  if (c.k > c.n) bad.push_back("k must not exceed n");
  if (c.t_values.empty()) bad.push_back("t needs at least one value");
  for (double t : c.t_values)
    if (!(t > 0.0)) bad.push_back("t values must be positive");
  if (!(c.step > 0.0) || !(c.s_min < c.s_max)) bad.push_back("need smin < smax and step > 0");
  if (c.s_min < -10.0 || c.s_max > 16.0) bad.push_back("table range must lie in [-10, 16]");
  if (c.p < 0) bad.push_back("p must be >= 0");
  if (!(c.c > 0.0)) bad.push_back("c must be positive");
  if (!c.format.empty() && c.format != "csv" && c.format != "json")
    bad.push_back("format must be csv or json");
  if (bad.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& b : bad) msg += "\n  " + b;
  throw ConfigError(msg);
}

std::string output_format(const ExperimentConfig& c) {
  if (!c.format.empty()) return c.format;
  return c.command == "oracle" ? "json" : "csv";
}

Json to_json(const ExperimentConfig& c) {
  return Json{{"command", c.command},   {"ensemble", c.ensemble}, {"symmetry", c.symmetry},
              {"law", c.law},           {"atoms", c.atoms},       {"ensemble2", c.ensemble2},
              {"n", c.n},               {"replicas", c.replicas}, {"seed", c.seed},
              {"k", c.k},               {"t", c.t_values},        {"smin", c.s_min},
              {"smax", c.s_max},        {"step", c.step},         {"p", c.p},
              {"c", c.c},               {"proposition", c.proposition},
              {"output", c.output},     {"format", output_format(c)},     {"workers", c.workers}};
}

EnsembleSpec resolve_ensemble(const ExperimentConfig& c, bool second) {
  if (second) return ensemble_by_name(c.ensemble2, c.n);
  if (!c.law.empty()) return ensemble_from_keys(c.symmetry, c.law, c.n, c.atoms);
  return ensemble_by_name(c.ensemble, c.n);
}

int toy_path_length(const ExperimentConfig& c) {
  if (c.p > 0) return c.p;
  const double n = c.n;
  switch (parse_proposition(c.proposition)) {
    case Proposition::P4:
      return std::max(1, int(std::floor(std::pow(n, 0.58))));
    case Proposition::P5:
      return std::max(1, int(std::floor(c.c * std::pow(n, 2.0 / 3.0) + 1e-9)));
    default:
      return std::max(1, int(std::floor(c.c * std::sqrt(n) + 1e-9)));
  }
}

std::vector<ReplicaRecord> sample_edge_replicas(const EnsembleSpec& spec, std::uint64_t replicas,
                                                std::uint64_t seed, int k, double t,
                                                unsigned workers) {
  spec.validate();
  if (k < 1 || k > spec.n) throw DomainError("sample_edge_replicas: need 1 <= k <= n");
  std::vector<ReplicaRecord> out(replicas);
  parallel_for(replicas, workers, [&](unsigned, std::size_t r) {
    ReplicaRecord& rec = out[r];
    rec.seed = replica_seed(seed, r);
    const Spectrum sp = eigenvalues(sample_matrix(spec, rec.seed), rec.seed);
    const EdgeSample edge = rescale_edges(sp, std::size_t(k));
    rec.theta = edge.theta;
    rec.tau = edge.tau;
    rec.lambda_max = sp.largest();
    rec.lambda_min = sp.smallest();
    if (t > 0.0) {
      const TraceLinear tl = trace_vs_linear(sp, t);
      rec.trace_even = tl.trace_even.value;
      rec.trace_odd = tl.trace_odd.value;
      rec.s_upper = tl.upper_stat;
      rec.s_lower = tl.lower_stat;
      rec.overflow = tl.overflow;
    }
  });
  return out;
}

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / double(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / double(v.size() - 1) / double(v.size()));
}

std::string default_name(const ExperimentConfig& c) {
  const std::string ext = output_format(c) == "json" ? ".json" : ".csv";
  return c.command + "_n" + std::to_string(c.n) + "_seed" + std::to_string(c.seed) + ext;
}

void run_tw_table(const ExperimentConfig& c, ExperimentResult& res) {
  const TWTable t = tw_table(c.s_min, c.s_max, c.step);
  res.records.header = {"s", "q", "F1", "F2"};
  for (std::size_t i = 0; i < t.s.size(); ++i)
    res.records.rows.push_back(
        {format_number(t.s[i]), format_number(t.q[i]), format_number(t.F1[i]), format_number(t.F2[i])});
  res.summary = {{"points", t.s.size()},
                 {"consistency_residual", tw_consistency_residual(t)},
                 {"painleve_residual", painleve_residual(t)},
                 {"F2_at_smax", t.F2.back()},
                 {"F2_at_smin", t.F2.front()}};
}

void run_sample_edge(const ExperimentConfig& c, ExperimentResult& res) {
  const EnsembleSpec spec = resolve_ensemble(c);
  const double t = c.t_values.front();
  const auto recs = sample_edge_replicas(spec, c.replicas, c.seed, c.k, c.n >= 8 ? t : 0.0, c.workers);
  auto& h = res.records.header;
  h = {"seed", "n", "ensemble", "beta"};
  for (int j = 1; j <= c.k; ++j) h.push_back("theta_" + std::to_string(j));
  for (const char* col : {"trace_even", "trace_odd", "S_upper", "S_lower"}) h.push_back(col);
  std::vector<double> theta1;
  for (const auto& r : recs) {
    std::vector<std::string> row{std::to_string(r.seed), std::to_string(c.n), spec.label,
                                 std::to_string(spec.beta())};
    for (double th : r.theta) row.push_back(format_number(th));
    for (double v : {r.trace_even, r.trace_odd, r.s_upper, r.s_lower}) row.push_back(format_number(v));
    res.records.rows.push_back(std::move(row));
    theta1.push_back(r.theta.front());
  }
  const TWTable table = cached_tw_table(default_output_dir());
  const int beta = spec.beta();
  res.summary = {{"theta1_mean", mean_of(theta1)},
                 {"theta1_stderr", stderr_of(theta1)},
                 {"ks_theta1_vs_tw", ks_distance(EmpiricalCDF(theta1),
                                                 [&](double x) { return table.cdf(beta, x); })},
                 {"beta", beta}};
}

void run_universality(const ExperimentConfig& c, ExperimentResult& res) {
  const EnsembleSpec a = resolve_ensemble(c), b = resolve_ensemble(c, true);
  const auto ra = sample_edge_replicas(a, c.replicas, c.seed, c.k, 0.0, c.workers);
  const auto rb = sample_edge_replicas(b, c.replicas, c.seed ^ 0x9e3779b97f4a7c15ULL, c.k, 0.0, c.workers);
  res.records.header = {"sample", "seed"};
  for (int j = 1; j <= c.k; ++j) res.records.header.push_back("theta_" + std::to_string(j));
  for (const auto* set : {&ra, &rb}) {
    const std::string label = set == &ra ? a.label : b.label;
    for (const auto& r : *set) {
      std::vector<std::string> row{label, std::to_string(r.seed)};
      for (double th : r.theta) row.push_back(format_number(th));
      res.records.rows.push_back(std::move(row));
    }
  }
  Json ks = Json::array();
  for (int j = 0; j < c.k; ++j) {
    std::vector<double> xa, xb;
    for (const auto& r : ra) xa.push_back(r.theta[j]);
    for (const auto& r : rb) xb.push_back(r.theta[j]);
    ks.push_back(ks_two_sample(EmpiricalCDF(xa), EmpiricalCDF(xb)));
  }
  res.summary = {{"first", a.label}, {"second", b.label}, {"ks_two_sample", ks}};
}

void run_toy_paths(const ExperimentConfig& c, ExperimentResult& res) {
  const Proposition which = parse_proposition(c.proposition);
  const int p = toy_path_length(c);
  const ToyReport r = proposition_check(c.n, p, c.replicas, which, c.seed, c.workers);
  res.summary = {{"n", r.n},
                 {"p", r.p},
                 {"replicas", r.replicas},
                 {"statistic", r.statistic},
                 {"estimate", r.estimate},
                 {"reference", r.reference},
                 {"distance", r.distance},
                 {"stderr", r.stderr_}};
  if (which == Proposition::P5) res.summary["higher_order_frequency"] = r.higher_order;
  res.records.header = {"statistic", "estimate", "reference", "distance", "stderr"};
  res.records.rows.push_back({r.statistic, format_number(r.estimate), format_number(r.reference),
                              format_number(r.distance), format_number(r.stderr_)});
}

void run_oracle(const ExperimentConfig& c, ExperimentResult& res) {
  const EnsembleSpec spec = resolve_ensemble(c);
  const int p = c.p > 0 ? c.p : 4;
  const Rational m = exact_trace_moment(c.n, p, spec);
  const std::uint64_t even = enumerate_even_paths(c.n, p);
  const std::uint64_t no_si = enumerate_even_paths(c.n, p, has_no_self_intersection);
  res.summary = {{"n", c.n},
                 {"p", p},
                 {"law", c.law.empty() ? spec.label : c.law},
                 {"moment", to_string(m)},
                 {"moment_value", to_double(m)},
                 {"even_count", even},
                 {"no_si_count", no_si}};
  res.records.header = {"n", "p", "law", "moment", "even_count", "no_si_count"};
  res.records.rows.push_back({std::to_string(c.n), std::to_string(p),
                              res.summary["law"].get<std::string>(), to_string(m),
                              std::to_string(even), std::to_string(no_si)});
}

void run_semicircle(const ExperimentConfig& c, ExperimentResult& res) {
  const EnsembleSpec spec = resolve_ensemble(c);
  constexpr int kPoints = 241;
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) grid[i] = -1.2 + 2.4 * i / (kPoints - 1);
  std::vector<std::vector<double>> esd(c.replicas);
  std::vector<double> ks(c.replicas);
  parallel_for(c.replicas, c.workers, [&](unsigned, std::size_t r) {
    const std::uint64_t s = replica_seed(c.seed, r);
    const Spectrum sp = eigenvalues(sample_matrix(spec, s), s);
    esd[r] = empirical_esd(sp, grid);
    ks[r] = semicircle_ks_distance(sp);
  });
  res.records.header = {"x", "empirical", "semicircle"};
  for (int i = 0; i < kPoints; ++i) {
    double avg = 0.0;
    for (const auto& e : esd) avg += e[i];
    avg /= double(esd.size());
    res.records.rows.push_back(
        {format_number(grid[i]), format_number(avg), format_number(semicircle_cdf(grid[i]))});
  }
  res.summary = {{"ks_mean", mean_of(ks)}, {"ks_max", *std::max_element(ks.begin(), ks.end())}};
}

}  // namespace

ExperimentResult run(const ExperimentConfig& c) {
  validate(c);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.config = to_json(c);
  res.version = version_tag();
  if (c.command == "tw-table") run_tw_table(c, res);
  else if (c.command == "sample-edge") run_sample_edge(c, res);
  else if (c.command == "universality") run_universality(c, res);
  else if (c.command == "toy-paths") run_toy_paths(c, res);
  else if (c.command == "oracle") run_oracle(c, res);
  else if (c.command == "semicircle") run_semicircle(c, res);
  else throw ConfigError("unknown command '" + c.command + "'");
  res.runtime_seconds = seconds_since(t0);

  res.output = resolve_output(c.output.empty() ? default_name(c) : c.output);
  const Json meta = {{"config", res.config},
                     {"version", res.version},
                     {"summary", res.summary},
                     {"runtime_seconds", res.runtime_seconds}};
  if (output_format(c) == "json") {
    Json doc = meta;
    Json rows = Json::array();
    for (const auto& row : res.records.rows) {
      Json obj;
      for (std::size_t i = 0; i < row.size(); ++i) obj[res.records.header[i]] = row[i];
      rows.push_back(std::move(obj));
    }
    doc["records"] = std::move(rows);
    write_atomic(res.output, doc.dump(2) + "\n");
  } else {
    write_csv(res.output, res.records, meta);
  }
  return res;
}

std::string summary_line(const ExperimentResult& r) {
  return r.config.value("command", std::string("run")) + ": " + std::to_string(r.records.rows.size()) +
         " records -> " + r.output.string() + " " + r.summary.dump() + " (" +
         format_number(r.runtime_seconds) + " s)";
}

}  // namespace rmt
