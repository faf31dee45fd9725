#include "rmt/toymodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmt/errors.hpp"
#include "rmt/parallel.hpp"
#include "rmt/rng.hpp"

namespace rmt {

namespace {

// Visit counts indexed by vertex, reset through the touched list so a
// worker can reuse one array of size n across replicas.
struct Scratch {
  std::vector<std::uint32_t> visits;
  std::vector<int> touched;
  std::vector<std::uint64_t> edges;
  std::vector<int> vertices;
};

SiCensus census_of(const int* v, int p, int n, Scratch& sc) {
  if (sc.visits.size() < std::size_t(n) + 1) sc.visits.assign(std::size_t(n) + 1, 0);
  sc.touched.clear();
  for (int t = 0; t < p; ++t)
    if (sc.visits[v[t]]++ == 0) sc.touched.push_back(v[t]);
  SiCensus c;
  for (int u : sc.touched) {
    const std::uint32_t k = sc.visits[u];
    if (k >= 2) {
      if (c.by_order.size() <= k) c.by_order.resize(k + 1, 0);
      ++c.by_order[k];
    }
  }
  // A repeated edge needs both endpoints visited at least twice.
  sc.edges.clear();
  for (int t = 1; t <= p; ++t) {
    const int a = v[t - 1], b = v[t % p];
    if (sc.visits[a] >= 2 && sc.visits[b] >= 2)
      sc.edges.push_back(std::uint64_t(std::min(a, b)) << 32 | std::uint64_t(std::max(a, b)));
  }
  std::sort(sc.edges.begin(), sc.edges.end());
  c.repeated_edge = std::adjacent_find(sc.edges.begin(), sc.edges.end()) != sc.edges.end();
  for (int u : sc.touched) sc.visits[u] = 0;
  return c;
}

void fill_path(int n, int p, std::uint64_t seed, std::vector<int>& out) {
  const CounterRng rng(seed);
  std::uint64_t counter = 0;
  out.resize(p);
  for (int t = 0; t < p; ++t) out[t] = 1 + int(rng.below(std::uint64_t(n), counter));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

ClosedPath sample_closed_path(int n, int p, std::uint64_t seed) {
  if (n < 1 || p < 1) throw DomainError("sample_closed_path: need n >= 1 and p >= 1");
  ClosedPath path;
  path.n = n;
  fill_path(n, p, seed, path.vertices);
  return path;
}

int SiCensus::at_least(int order) const {
  int total = 0;
  for (int k = std::max(order, 2); k < int(by_order.size()); ++k) total += by_order[k];
  return total;
}

SiCensus si_census(const ClosedPath& path) {
  path.validate();
  Scratch sc;
  return census_of(path.vertices.data(), int(path.p()), path.n, sc);
}

void ToyCensus::add(const SiCensus& c) {
  const std::size_t before = histogram.size();
  if (before < c.by_order.size()) {
    histogram.resize(c.by_order.size());
    for (std::size_t k = std::max<std::size_t>(before, 2); k < histogram.size(); ++k)
      histogram[k].assign(1, samples);
  }
  ++samples;
  for (std::size_t k = 2; k < histogram.size(); ++k) {
    const std::size_t m = std::size_t(c.count(int(k)));
    if (histogram[k].size() <= m) histogram[k].resize(m + 1, 0);
    ++histogram[k][m];
  }
  if (c.repeated_edge) ++repeated_edge;
  if (c.at_least(2) == 0) ++no_self_intersection;
  if (c.at_least(3) > 0) ++nonsimple;
  if (c.at_least(4) > 0) ++beyond_triple;
}

ToyCensus& ToyCensus::merge(const ToyCensus& other) {
  // Orders first seen in `other` had count 0 in every sample of *this.
  const std::size_t orders = std::max(histogram.size(), other.histogram.size());
  histogram.resize(orders);
  for (std::size_t k = 2; k < orders; ++k) {
    auto& mine = histogram[k];
    if (mine.empty() && samples > 0) mine.assign(1, samples);
    if (k < other.histogram.size() && !other.histogram[k].empty()) {
      const auto& theirs = other.histogram[k];
      if (mine.size() < theirs.size()) mine.resize(theirs.size(), 0);
      for (std::size_t m = 0; m < theirs.size(); ++m) mine[m] += theirs[m];
    } else if (other.samples > 0) {
      if (mine.empty()) mine.assign(1, 0);
      mine[0] += other.samples;
    }
  }
  samples += other.samples;
  repeated_edge += other.repeated_edge;
  no_self_intersection += other.no_self_intersection;
  nonsimple += other.nonsimple;
  beyond_triple += other.beyond_triple;
  return *this;
}

std::vector<double> ToyCensus::frequencies(int order) const {
  if (samples == 0) return {};
  if (order >= int(histogram.size()) || histogram[order].empty()) return {1.0};
  std::vector<double> f(histogram[order].size());
  for (std::size_t m = 0; m < f.size(); ++m) f[m] = double(histogram[order][m]) / double(samples);
  return f;
}

ToyCensus toy_census(int n, int p, std::uint64_t replicas, std::uint64_t seed, unsigned workers) {
  if (n < 1 || p < 1) throw DomainError("toy_census: need n >= 1 and p >= 1");
  if (workers == 0) workers = default_workers();
  std::vector<ToyCensus> shards(workers);
  std::vector<Scratch> scratch(workers);
  parallel_for(replicas, workers, [&](unsigned w, std::size_t r) {
    Scratch& sc = scratch[w];
    fill_path(n, p, replica_seed(seed, r), sc.vertices);
    shards[w].add(census_of(sc.vertices.data(), p, n, sc));
  });
  ToyCensus total;
  for (const auto& s : shards) total.merge(s);
  // Normalize: every order up to the largest seen gets an explicit histogram.
  for (std::size_t k = 2; k < total.histogram.size(); ++k)
    if (total.histogram[k].empty()) total.histogram[k].assign(1, total.samples);
  return total;
}

ToyExact toy_exact(int n, int p, double budget) {
  if (n < 1 || p < 1) throw DomainError("toy_exact: need n >= 1 and p >= 1");
  if (double(p) * std::log(double(n)) > std::log(budget))
    throw ResourceError("toy_exact: n^p exceeds the enumeration budget");
  std::vector<int> v(p, 1);
  Scratch sc;
  ToyExact ex;
  ToyCensus& all = ex.census;
  for (;;) {
    all.add(census_of(v.data(), p, n, sc));
    int t = p - 1;
    while (t >= 0 && v[t] == n) v[t--] = 1;
    if (t < 0) break;
    ++v[t];
  }
  for (std::size_t k = 2; k < all.histogram.size(); ++k)
    if (all.histogram[k].empty()) all.histogram[k].assign(1, all.samples);
  const auto total = std::int64_t(all.samples);
  ex.no_self_intersection = Rational(std::int64_t(all.no_self_intersection), total);
  ex.repeated_edge = Rational(std::int64_t(all.repeated_edge), total);
  if (all.histogram.size() > 2)
    for (auto s : all.histogram[2]) ex.simple_count.emplace_back(std::int64_t(s), total);
  else
    ex.simple_count.emplace_back(1);
  return ex;
}

std::vector<double> simple_count_pmf(int n, int p, int mmax) {
  if (n < 1 || p < 0 || mmax < 0) throw DomainError("simple_count_pmf: need n >= 1, p >= 0, mmax >= 0");
  // S_j = E binom(N, j) = binom(n, j) p! / (2^j (p-2j)!) n^{-2j} (1 - j/n)^{p-2j}.
  const int jmax = std::min(n, p / 2);
  std::vector<double> moment(jmax + 1);
  for (int j = 0; j <= jmax; ++j) {
    double log_s = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
                   std::lgamma(p + 1.0) - j * std::log(2.0) - std::lgamma(p - 2.0 * j + 1.0) -
                   2.0 * j * std::log(double(n));
    const double rest = 1.0 - double(j) / n;
    if (p - 2 * j > 0) {
      if (rest <= 0.0) continue;
      log_s += (p - 2 * j) * std::log(rest);
    }
    moment[j] = std::exp(log_s);
  }
  std::vector<double> pmf(mmax + 1, 0.0);
  for (int m = 0; m <= std::min(mmax, jmax); ++m) {
    double sum = 0.0;
    double binom = 1.0;  // binom(j, m)
    for (int j = m; j <= jmax; ++j) {
      if (j > m) binom *= double(j) / double(j - m);
      sum += ((j - m) % 2 ? -1.0 : 1.0) * binom * moment[j];
    }
    pmf[m] = std::max(sum, 0.0);
  }
  return pmf;
}

Rational no_self_intersection_probability(int n, int p) {
  Rational prod = 1;
  for (int k = 0; k < p; ++k) prod *= Rational(n - k, n);
  return p > n ? Rational(0) : prod;
}

std::vector<double> poisson_pmf(double mean, int kmax) {
  std::vector<double> pmf(std::max(kmax, 0) + 1);
  pmf[0] = std::exp(-mean);
  for (int k = 1; k <= kmax; ++k) pmf[k] = pmf[k - 1] * mean / k;
  return pmf;
}

double poisson_tv(const std::vector<double>& freq, double mean) {
  const std::vector<double> pmf = poisson_pmf(mean, int(freq.size()) - 1);
  double sum = 0.0, covered = 0.0;
  for (std::size_t k = 0; k < freq.size(); ++k) {
    sum += std::abs(freq[k] - pmf[k]);
    covered += pmf[k];
  }
  return 0.5 * (sum + std::max(0.0, 1.0 - covered));
}

Proposition parse_proposition(const std::string& name) {
  if (name == "P1" || name == "p1") return Proposition::P1;
  if (name == "P2" || name == "p2") return Proposition::P2;
  if (name == "P3" || name == "p3") return Proposition::P3;
  if (name == "P4" || name == "p4") return Proposition::P4;
  if (name == "P5" || name == "p5") return Proposition::P5;
  throw ConfigError("unknown proposition '" + name + "' (expected P1..P5)");
}

std::string to_string(Proposition which) {
  static const char* names[] = {"P1", "P2", "P3", "P4", "P5"};
  return names[int(which)];
}

namespace {

double histogram_mean(const std::vector<double>& f) {
  double mean = 0.0;
  for (std::size_t m = 0; m < f.size(); ++m) mean += double(m) * f[m];
  return mean;
}

double histogram_stderr(const std::vector<double>& f, double samples) {
  const double mean = histogram_mean(f);
  double var = 0.0;
  for (std::size_t m = 0; m < f.size(); ++m) var += (double(m) - mean) * (double(m) - mean) * f[m];
  return std::sqrt(var / samples);
}

}  // namespace

ToyReport proposition_report(int n, int p, const ToyCensus& census, Proposition which) {
  if (census.samples == 0) throw DomainError("proposition_report: empty census");
  ToyReport r;
  r.n = n;
  r.p = p;
  r.replicas = census.samples;
  const double R = double(census.samples);
  const double nn = double(n), pp = double(p);
  auto binomial = [&](std::uint64_t hits, double reference, const char* name) {
    r.statistic = name;
    r.estimate = double(hits) / R;
    r.reference = reference;
    r.distance = std::abs(r.estimate - reference);
    r.stderr_ = std::sqrt(std::max(r.estimate * (1 - r.estimate), 1.0 / R) / R);
  };
  switch (which) {
    case Proposition::P1:
      binomial(census.repeated_edge, 0.0, "repeated_edge_probability");
      break;
    case Proposition::P2:
      binomial(census.no_self_intersection, to_double(no_self_intersection_probability(n, p)),
               "no_self_intersection_probability");
      break;
    case Proposition::P3: {
      const std::vector<double> f = census.frequencies(2);
      r.statistic = "simple_self_intersection_count";
      r.estimate = histogram_mean(f);
      r.reference = pp * pp / (2 * nn);
      r.distance = poisson_tv(f, r.reference);
      r.stderr_ = histogram_stderr(f, R);
      break;
    }
    case Proposition::P4: {
      const std::vector<double> f = census.frequencies(2);
      const double mu = pp * pp / (2 * nn), sigma = pp / std::sqrt(2 * nn);
      r.statistic = "standardized_simple_count_ks";
      r.estimate = (histogram_mean(f) - mu) / sigma;
      r.reference = 0.0;
      double cdf = 0.0, ks = normal_cdf((-0.5 - mu) / sigma);
      for (std::size_t m = 0; m < f.size(); ++m) {
        cdf += f[m];
        ks = std::max(ks, std::abs(cdf - normal_cdf((double(m) + 0.5 - mu) / sigma)));
      }
      r.distance = ks;
      r.stderr_ = histogram_stderr(f, R) / sigma;
      break;
    }
    case Proposition::P5: {
      const std::vector<double> f = census.frequencies(3);
      r.statistic = "triple_self_intersection_count";
      r.estimate = histogram_mean(f);
      r.reference = pp * pp * pp / (6 * nn * nn);
      r.distance = poisson_tv(f, r.reference);
      r.stderr_ = histogram_stderr(f, R);
      r.higher_order = double(census.beyond_triple) / R;
      break;
    }
  }
  return r;
}

ToyReport proposition_check(int n, int p, std::uint64_t replicas, Proposition which,
                            std::uint64_t seed, unsigned workers) {
  if (replicas < 1000) throw DomainError("proposition_check: need at least 1000 replicas");
  return proposition_report(n, p, toy_census(n, p, replicas, seed, workers), which);
}

}  // namespace rmt
