#include "rmt/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "rmt/errors.hpp"

namespace rmt {

Eigen::VectorXd tridiagonal_eigenvalues(Tridiagonal t, std::optional<std::uint64_t> seed,
                                        int max_sweeps_per_eigenvalue) {
  const Eigen::Index n = t.diagonal.size();
  Eigen::VectorXd d = std::move(t.diagonal);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  if (n > 1) e.head(n - 1) = t.off_diagonal;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (Eigen::Index l = 0; l < n; ++l) {
    int sweeps = 0;
    Eigen::Index m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd) break;
      }
      if (m == l) break;
      if (sweeps++ == max_sweeps_per_eigenvalue) {
        throw NumericError("tridiagonal QL iteration did not converge at index " +
                               std::to_string(l),
                           seed);
      }
      // Wilkinson shift from the leading 2x2 block.
      double g = (d(l + 1) - d(l)) / (2.0 * e(l));
      double r = std::hypot(g, 1.0);
      g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      Eigen::Index i = m - 1;
      bool deflated = false;
      for (; i >= l; --i) {
        const double f = s * e(i);
        const double b = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == 0.0) {
          d(i + 1) -= p;
          e(m) = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + 2.0 * c * b;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d(l) -= p;
      e(l) = g;
      e(m) = 0.0;
    } while (m != l);
  }
  std::sort(d.data(), d.data() + n);
  return d;
}

Spectrum::Spectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
  for (double x : values_)
    if (!std::isfinite(x)) throw DomainError("Spectrum: non-finite eigenvalue");
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

Spectrum eigenvalues(const SampledMatrix& matrix, std::optional<std::uint64_t> seed) {
  return std::visit([&](const auto& m) { return eigenvalues(m, seed); }, matrix);
}

double edge_scale(std::size_t n) {
  return 2.0 * std::pow(static_cast<double>(n), 2.0 / 3.0);
}

EdgeSample rescale_edges(const Spectrum& spectrum, std::size_t k) {
  const std::size_t n = spectrum.n();
  if (k > n) throw DomainError("rescale_edges: k exceeds the spectrum size");
  const double scale = edge_scale(n);
  EdgeSample edge;
  edge.k = k;
  edge.n = n;
  edge.theta.reserve(k);
  edge.tau.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    edge.theta.push_back(scale * (spectrum[j] - 1.0));
    edge.tau.push_back(-scale * (spectrum[n - 1 - j] + 1.0));
  }
  return edge;
}

TracePower trace_power(std::span<const double> eigenvalues, unsigned p) {
  if (p == 0) throw DomainError("trace_power: p must be >= 1");
  TracePower out;
  double max_log = -std::numeric_limits<double>::infinity();
  for (double x : eigenvalues)
    if (x != 0.0) max_log = std::max(max_log, p * std::log(std::abs(x)));
  if (max_log < 700.0) {
    double sum = 0.0;
    for (double x : eigenvalues) sum += std::pow(x, static_cast<double>(p));
    out.value = sum;
    out.log_abs = sum == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(sum));
    return out;
  }
  // log-sum-exp with signs
  double scaled = 0.0;
  for (double x : eigenvalues) {
    if (x == 0.0) continue;
    const double sign = (x < 0.0 && p % 2 == 1) ? -1.0 : 1.0;
    scaled += sign * std::exp(p * std::log(std::abs(x)) - max_log);
  }
  out.overflow = true;
  out.log_abs = max_log + std::log(std::abs(scaled));
  out.value = out.log_abs < 709.0 ? std::copysign(std::exp(out.log_abs), scaled)
                                  : std::copysign(std::numeric_limits<double>::infinity(), scaled);
  return out;
}

TracePower trace_power(const Spectrum& spectrum, unsigned p) {
  return trace_power(std::span<const double>(spectrum.values()), p);
}

TracePower trace_power(const SampledMatrix& matrix, unsigned p) {
  if (p == 0) throw DomainError("trace_power: p must be >= 1");
  if (p <= 3) {
    const auto traces =
        std::visit([&](const auto& m) { return trace_powers_by_multiplication(m, p); }, matrix);
    TracePower out;
    out.value = traces[p - 1];
    out.log_abs = std::log(std::abs(out.value));
    return out;
  }
  return trace_power(eigenvalues(matrix), p);
}

std::vector<double> empirical_esd(const Spectrum& spectrum, std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw DomainError("empirical_esd: grid must be sorted ascending");
  std::vector<double> ascending(spectrum.values().rbegin(), spectrum.values().rend());
  std::vector<double> out;
  out.reserve(grid.size());
  const double n = static_cast<double>(ascending.size());
  for (double x : grid) {
    const auto count = std::upper_bound(ascending.begin(), ascending.end(), x) - ascending.begin();
    out.push_back(static_cast<double>(count) / n);
  }
  return out;
}

double semicircle_density(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return 2.0 / std::numbers::pi * std::sqrt(1.0 - u * u);
}

double semicircle_cdf(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / std::numbers::pi;
}

double semicircle_ks_distance(const Spectrum& spectrum) {
  std::vector<double> ascending(spectrum.values().rbegin(), spectrum.values().rend());
  const double n = static_cast<double>(ascending.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    const double f = semicircle_cdf(ascending[i]);
    worst = std::max({worst, std::abs(static_cast<double>(i + 1) / n - f),
                      std::abs(static_cast<double>(i) / n - f)});
  }
  return worst;
}

}  // namespace rmt
