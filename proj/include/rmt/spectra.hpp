#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/tridiagonal.hpp"

namespace rmt {

/// Eigenvalues sorted descending: lambda_1 >= ... >= lambda_n.
class Spectrum {
 public:
  Spectrum() = default;
  /// Sorts the values descending. Throws DomainError on non-finite input.
  explicit Spectrum(std::vector<double> eigenvalues);

  std::size_t n() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  double largest() const { return values_.front(); }
  double smallest() const { return values_.back(); }

 private:
  std::vector<double> values_;
};

/// Eigenvalues of a symmetric/hermitian matrix (lower triangle is read).
/// NumericError (carrying `seed` if given) when QL iteration stalls.
template <typename Derived>
Spectrum eigenvalues(const Eigen::MatrixBase<Derived>& matrix,
                     std::optional<std::uint64_t> seed = std::nullopt) {
  const Eigen::VectorXd ascending =
      tridiagonal_eigenvalues(householder_tridiagonalize(matrix), seed);
  return Spectrum(std::vector<double>(ascending.data(), ascending.data() + ascending.size()));
}

Spectrum eigenvalues(const SampledMatrix& matrix,
                     std::optional<std::uint64_t> seed = std::nullopt);

/// Top-k eigenvalues rescaled at the right edge, bottom-k at the left edge:
///   theta_j = 2 n^{2/3} (lambda_j - 1),
///   tau_j   = -2 n^{2/3} (lambda_{n+1-j} + 1).
struct EdgeSample {
  std::vector<double> theta;
  std::vector<double> tau;
  std::size_t k = 0;
  std::size_t n = 0;
};

/// DomainError if k > n.
EdgeSample rescale_edges(const Spectrum& spectrum, std::size_t k);

/// The scale factor 2 n^{2/3}.
double edge_scale(std::size_t n);

/// sum_j lambda_j^p. When the largest term leaves the double range the sum
/// is carried in log-magnitude form: `value` becomes +-inf, `log_abs` holds
/// log|sum| and `overflow` is set.
struct TracePower {
  double value = 0.0;
  double log_abs = 0.0;
  bool overflow = false;
};

TracePower trace_power(std::span<const double> eigenvalues, unsigned p);
TracePower trace_power(const Spectrum& spectrum, unsigned p);

/// Matrix route: p <= 3 is evaluated from entries directly, larger p goes
/// through the spectrum.
TracePower trace_power(const SampledMatrix& matrix, unsigned p);

/// Tr A^1 .. Tr A^p_max by repeated multiplication, using
/// Tr A^(2m) = ||A^m||_F^2 and Tr A^(2m+1) = <A^m, A^(m+1)>_F. This is the
/// O(n^3)-per-power cross-check route; result[p-1] = Tr A^p.
template <typename Derived>
std::vector<double> trace_powers_by_multiplication(const Eigen::MatrixBase<Derived>& a,
                                                   unsigned p_max) {
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  std::vector<double> traces(p_max, 0.0);
  if (p_max == 0) return traces;
  const unsigned m_max = (p_max + 1) / 2;
  std::vector<Matrix> powers;
  powers.reserve(m_max + 1);
  powers.emplace_back(a);
  for (unsigned m = 2; m <= m_max; ++m) {
    Matrix next;
    next.noalias() = powers.back() * a;
    powers.push_back(std::move(next));
  }
  traces[0] = std::real(a.trace());
  for (unsigned p = 2; p <= p_max; ++p) {
    const unsigned m = p / 2;
    if (p % 2 == 0) {
      traces[p - 1] = powers[m - 1].squaredNorm();
    } else {
      traces[p - 1] = std::real(powers[m - 1].cwiseProduct(powers[m].conjugate()).sum());
    }
  }
  return traces;
}

/// N_n(x) = #{lambda_j <= x} / n at each grid point (right-continuous).
/// DomainError if the grid is not sorted ascending.
std::vector<double> empirical_esd(const Spectrum& spectrum, std::span<const double> grid);

/// Semicircle density (2/pi) sqrt(1 - u^2) on [-1, 1].
double semicircle_density(double u);
/// Its distribution function.
double semicircle_cdf(double x);

/// sup over the spectrum's jump points of |N_n - N|.
double semicircle_ks_distance(const Spectrum& spectrum);

}  // namespace rmt
