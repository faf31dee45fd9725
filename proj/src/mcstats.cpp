#include "rmt/mcstats.hpp"

#include <algorithm>
#include <cmath>

#include "rmt/errors.hpp"

namespace rmt {

EmpiricalCDF::EmpiricalCDF(std::vector<double> samples) : sorted_(std::move(samples)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double x) const {
  if (sorted_.empty()) return 0.0;
  return double(std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin()) /
         double(sorted_.size());
}

double EmpiricalCDF::left_limit(double x) const {
  if (sorted_.empty()) return 0.0;
  return double(std::lower_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin()) /
         double(sorted_.size());
}

EmpiricalCDF& EmpiricalCDF::merge(const EmpiricalCDF& other) {
  std::vector<double> out;
  out.reserve(sorted_.size() + other.sorted_.size());
  std::merge(sorted_.begin(), sorted_.end(), other.sorted_.begin(), other.sorted_.end(),
             std::back_inserter(out));
  sorted_ = std::move(out);
  return *this;
}

double ks_distance(const EmpiricalCDF& ecdf, const std::function<double(double)>& reference) {
  const auto& x = ecdf.sorted();
  if (x.empty()) throw DomainError("ks_distance: empty sample");
  const double n = double(x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double f = reference(x[i]);
    worst = std::max({worst, std::abs(double(i) / n - f), std::abs(double(j) / n - f)});
    i = j;
  }
  return worst;
}

double ks_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b) {
  if (a.count() == 0 || b.count() == 0) throw DomainError("ks_two_sample: empty sample");
  const auto& x = a.sorted();
  const auto& y = b.sorted();
  const double na = double(x.size()), nb = double(y.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < x.size() || j < y.size()) {
    const double v = j == y.size() || (i < x.size() && x[i] <= y[j]) ? x[i] : y[j];
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    worst = std::max(worst, std::abs(double(i) / na - double(j) / nb));
  }
  return worst;
}

double truncated_exp_sum(std::span<const double> points, double t, double cutoff) {
  double sum = 0.0;
  for (double x : points)
    if (x < cutoff) sum += std::exp(t * x);
  return sum;
}

double truncation_cutoff(std::size_t n) { return std::pow(double(n), 1.0 / 6.0); }

namespace {

std::span<const double> side_of(const EdgeSample& edge, EdgeSide side) {
  return side == EdgeSide::upper ? std::span<const double>(edge.theta)
                                 : std::span<const double>(edge.tau);
}

// Calls visit(blocks) for every set partition of {0..k-1}.
template <typename Visit>
void for_each_partition(int k, Visit&& visit) {
  std::vector<int> label(k, 0);
  auto rec = [&](auto&& self, int i, int blocks) -> void {
    if (i == k) {
      std::vector<std::vector<int>> parts(blocks);
      for (int m = 0; m < k; ++m) parts[label[m]].push_back(m);
      visit(parts);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      label[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

double linear_statistic(const EdgeSample& edge, double t, EdgeSide side) {
  if (!(t > 0.0)) throw DomainError("linear_statistic: t must be positive");
  return truncated_exp_sum(side_of(edge, side), t, truncation_cutoff(edge.n));
}

double product_statistic(const EdgeSample& edge, std::span<const double> t, EdgeSide side) {
  const int k = int(t.size());
  if (k < 1 || k > 4) throw DomainError("product_statistic: need 1 <= k <= 4");
  const auto points = side_of(edge, side);
  const double cutoff = truncation_cutoff(edge.n);
  // Moebius function of the partition lattice: prod_B (-1)^{|B|-1} (|B|-1)!.
  static const double mu[] = {0.0, 1.0, -1.0, 2.0, -6.0};
  double total = 0.0;
  for_each_partition(k, [&](const std::vector<std::vector<int>>& parts) {
    double term = 1.0;
    for (const auto& block : parts) {
      double tb = 0.0;
      for (int m : block) tb += t[m];
      term *= mu[block.size()] * truncated_exp_sum(points, tb, cutoff);
    }
    total += term;
  });
  return total;
}

double factorial_moment(std::span<const std::int64_t> counts, int k) {
  if (k < 1) throw DomainError("factorial_moment: k must be >= 1");
  if (counts.empty()) throw DomainError("factorial_moment: no replicas");
  double sum = 0.0;
  for (std::int64_t c : counts) {
    double f = 1.0;
    for (int j = 0; j < k; ++j) f *= double(c - j);
    sum += f;
  }
  return sum / double(counts.size());
}

CountCollector::CountCollector(std::vector<std::pair<double, double>> intervals)
    : intervals_(std::move(intervals)), hist_(intervals_.size()) {}

void CountCollector::add(std::span<const double> points) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    std::size_t c = 0;
    for (double x : points)
      if (x >= intervals_[i].first && x < intervals_[i].second) ++c;
    if (hist_[i].size() <= c) hist_[i].resize(c + 1, 0);
    ++hist_[i][c];
  }
  ++replicas_;
}

CountCollector& CountCollector::merge(const CountCollector& other) {
  if (other.intervals_ != intervals_)
    throw DomainError("CountCollector::merge: interval sets differ");
  for (std::size_t i = 0; i < hist_.size(); ++i) {
    if (hist_[i].size() < other.hist_[i].size()) hist_[i].resize(other.hist_[i].size(), 0);
    for (std::size_t c = 0; c < other.hist_[i].size(); ++c) hist_[i][c] += other.hist_[i][c];
  }
  replicas_ += other.replicas_;
  return *this;
}

double CountCollector::factorial_moment(std::size_t interval, int k) const {
  if (k < 1) throw DomainError("factorial_moment: k must be >= 1");
  if (replicas_ == 0) throw DomainError("factorial_moment: no replicas");
  double sum = 0.0;
  const auto& h = hist_.at(interval);
  for (std::size_t c = 0; c < h.size(); ++c) {
    double f = 1.0;
    for (int j = 0; j < k; ++j) f *= double(c) - j;
    sum += f * double(h[c]);
  }
  return sum / double(replicas_);
}

TraceLinear trace_vs_linear(const Spectrum& spectrum, double t) {
  const std::size_t n = spectrum.n();
  if (!(t > 0.0)) throw DomainError("trace_vs_linear: t must be positive");
  if (n < 8) throw DomainError("trace_vs_linear: need n >= 8");
  TraceLinear r;
  r.s = unsigned(std::floor(t * std::pow(double(n), 2.0 / 3.0) + 1e-9));
  if (r.s == 0) throw DomainError("trace_vs_linear: t n^{2/3} < 1");
  r.trace_even = trace_power(spectrum, 2 * r.s);
  r.trace_odd = trace_power(spectrum, 2 * r.s + 1);
  r.overflow = r.trace_even.overflow || r.trace_odd.overflow;
  const EdgeSample edge = rescale_edges(spectrum, n);
  r.upper_stat = linear_statistic(edge, t, EdgeSide::upper);
  r.lower_stat = linear_statistic(edge, t, EdgeSide::lower);
  r.residual_even = r.trace_even.value - (r.upper_stat + r.lower_stat);
  r.residual_odd = r.trace_odd.value - (r.upper_stat - r.lower_stat);
  const double band = 1.0 + 0.5 / std::sqrt(double(n));
  for (double lambda : spectrum.values()) {
    if (std::abs(lambda) >= band) continue;
    const double even = std::pow(lambda, double(2 * r.s));
    r.band_upper += 0.5 * (even + even * lambda);
  }
  return r;
}

}  // namespace rmt
