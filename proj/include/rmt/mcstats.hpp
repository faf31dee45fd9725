#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "rmt/spectra.hpp"

namespace rmt {

/// Right-continuous empirical distribution function of a sample.
class EmpiricalCDF {
 public:
  EmpiricalCDF() = default;
  explicit EmpiricalCDF(std::vector<double> samples);

  /// Fraction of samples <= x.
  double operator()(double x) const;
  /// Fraction of samples < x.
  double left_limit(double x) const;

  std::size_t count() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

  /// Union of the two samples.
  EmpiricalCDF& merge(const EmpiricalCDF& other);
  bool operator==(const EmpiricalCDF&) const = default;

 private:
  std::vector<double> sorted_;
};

/// sup_x |ecdf(x) - reference(x)| over sample points and their left limits.
/// DomainError for an empty ecdf.
double ks_distance(const EmpiricalCDF& ecdf, const std::function<double(double)>& reference);

/// sup_x |a(x) - b(x)|.
double ks_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b);

enum class EdgeSide { upper, lower };

/// Sum of exp(t x) over x in `points` with x < cutoff.
double truncated_exp_sum(std::span<const double> points, double t, double cutoff);

/// n^{1/6}, the truncation point in rescaled coordinates.
double truncation_cutoff(std::size_t n);

/// Sum of exp(t theta_j) over theta_j < n^{1/6} (tau_j on the lower side).
double linear_statistic(const EdgeSample& edge, double t, EdgeSide side = EdgeSide::upper);

/// Sum over ordered tuples of distinct indices j_1..j_k of
/// prod_m exp(t_m theta_{j_m}), truncated as in linear_statistic, from the
/// set-partition expansion in power sums. DomainError unless 1 <= k <= 4.
double product_statistic(const EdgeSample& edge, std::span<const double> t,
                         EdgeSide side = EdgeSide::upper);

/// Mean over replicas of nu (nu - 1) ... (nu - k + 1).
double factorial_moment(std::span<const std::int64_t> counts, int k);

/// Counts of points in fixed half-open intervals [a, b), kept as one
/// histogram of per-replica counts per interval.
class CountCollector {
 public:
  explicit CountCollector(std::vector<std::pair<double, double>> intervals = {});

  void add(std::span<const double> points);
  CountCollector& merge(const CountCollector& other);

  std::uint64_t replicas() const { return replicas_; }
  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
  /// histogram(i)[c] = replicas with exactly c points in interval i.
  const std::vector<std::uint64_t>& histogram(std::size_t interval) const { return hist_[interval]; }
  double factorial_moment(std::size_t interval, int k) const;
  bool operator==(const CountCollector&) const = default;

 private:
  std::vector<std::pair<double, double>> intervals_;
  std::vector<std::vector<std::uint64_t>> hist_;
  std::uint64_t replicas_ = 0;
};

struct TraceLinear {
  /// The power is 2 s with s = floor(t n^{2/3}).
  unsigned s = 0;
  TracePower trace_even, trace_odd;
  double upper_stat = 0.0, lower_stat = 0.0;
  /// trace_even - (upper + lower), trace_odd - (upper - lower).
  double residual_even = 0.0, residual_odd = 0.0;
  /// Half of (trace_even + trace_odd) over |lambda| < 1 + 1/(2 sqrt n),
  /// i.e. the positive part of the band sum.
  double band_upper = 0.0;
  bool overflow = false;
};

/// DomainError unless t > 0 and n >= 8.
TraceLinear trace_vs_linear(const Spectrum& spectrum, double t);

}  // namespace rmt
