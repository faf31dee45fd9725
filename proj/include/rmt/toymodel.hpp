#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmt/paths.hpp"
#include "rmt/rational.hpp"

namespace rmt {

/// Uniform closed path: each of the n^p sequences (i_0..i_{p-1}) has
/// probability n^{-p}. Pure function of (n, p, seed).
ClosedPath sample_closed_path(int n, int p, std::uint64_t seed);

/// Self-intersections counted over all instants 0..p-1.
struct SiCensus {
  /// by_order[k] = number of vertices visited exactly k times (k >= 2);
  /// entries 0 and 1 are left at zero.
  std::vector<int> by_order;
  /// Some nonoriented edge (closing step included) is passed more than once.
  bool repeated_edge = false;

  int count(int order) const { return order < int(by_order.size()) ? by_order[order] : 0; }
  /// Vertices of order >= `order`.
  int at_least(int order) const;
};

SiCensus si_census(const ClosedPath& path);

/// Mergeable census over many sampled paths.
struct ToyCensus {
  std::uint64_t samples = 0;
  /// histogram[k][m] = number of samples with exactly m vertices of order k.
  std::vector<std::vector<std::uint64_t>> histogram;
  std::uint64_t repeated_edge = 0;
  std::uint64_t no_self_intersection = 0;
  /// Samples with some vertex of order >= 3, resp. >= 4.
  std::uint64_t nonsimple = 0;
  std::uint64_t beyond_triple = 0;

  void add(const SiCensus& census);
  ToyCensus& merge(const ToyCensus& other);
  /// Histogram of the order-k count as frequencies (empty if never seen).
  std::vector<double> frequencies(int order) const;
  bool operator==(const ToyCensus&) const = default;
};

/// Census of `replicas` paths with seeds replica_seed(seed, r), using a
/// worker pool; the result does not depend on `workers`.
ToyCensus toy_census(int n, int p, std::uint64_t replicas, std::uint64_t seed,
                     unsigned workers = 0);

/// Exact distribution over all n^p sequences: probabilities of no
/// self-intersection, of a repeated edge, and of each order-2 count.
struct ToyExact {
  Rational no_self_intersection;
  Rational repeated_edge;
  std::vector<Rational> simple_count;  // P(#order-2 vertices = m)
  /// Census with one sample per sequence.
  ToyCensus census;
};

/// ResourceError if n^p exceeds `budget`.
ToyExact toy_exact(int n, int p, double budget = 1e7);

/// Exact law of the number of vertices visited exactly twice, m = 0..mmax,
/// by inclusion-exclusion over its binomial moments.
std::vector<double> simple_count_pmf(int n, int p, int mmax);

/// prod_{k<p} (1 - k/n), the probability of no self-intersection.
Rational no_self_intersection_probability(int n, int p);

/// Poisson(mean) probabilities for k = 0..kmax by exact recursion.
std::vector<double> poisson_pmf(double mean, int kmax);

/// Total variation between an empirical frequency vector and Poisson(mean),
/// including the Poisson mass beyond the histogram.
double poisson_tv(const std::vector<double>& freq, double mean);

enum class Proposition { P1, P2, P3, P4, P5 };

Proposition parse_proposition(const std::string& name);
std::string to_string(Proposition which);

struct ToyReport {
  int n = 0, p = 0;
  std::uint64_t replicas = 0;
  std::string statistic;
  double estimate = 0.0;
  double reference = 0.0;
  /// Total variation for distributions, KS for P4, |estimate - reference|
  /// for probabilities.
  double distance = 0.0;
  double stderr_ = 0.0;
  /// P5 only: frequency of a self-intersection of order >= 4.
  double higher_order = 0.0;
};

/// P1: repeated-edge frequency vs 0. P2: no-self-intersection frequency vs
/// the exact product. P3: simple-count histogram vs Poisson(p^2/2n).
/// P4: KS distance of the standardized simple count to N(0,1), with the
/// continuity correction at the lattice midpoints. P5: triple-count
/// histogram vs Poisson(p^3/6n^2).
/// DomainError if replicas < 1000.
ToyReport proposition_check(int n, int p, std::uint64_t replicas, Proposition which,
                            std::uint64_t seed = 1, unsigned workers = 0);

/// Report of the census-based checks without resampling.
ToyReport proposition_report(int n, int p, const ToyCensus& census, Proposition which);

}  // namespace rmt
