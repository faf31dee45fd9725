#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <type_traits>

#include "rmt/errors.hpp"

namespace rmt {

/// Real symmetric tridiagonal matrix: diagonal d (size n), off-diagonal e
/// (size n-1).
struct Tridiagonal {
  Eigen::VectorXd diagonal;
  Eigen::VectorXd off_diagonal;
};

namespace detail {

template <typename Scalar>
double real_part(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, double>) return x;
  else return x.real();
}

}  // namespace detail

/// Householder reduction of a real symmetric or complex hermitian matrix to
/// real symmetric tridiagonal form with the same eigenvalues. Only the lower
/// triangle of `a` is read. Unitary reflections carry the hermitian case;
/// the resulting complex subdiagonal is replaced by its modulus, which is a
/// diagonal unitary similarity.
template <typename Derived>
Tridiagonal householder_tridiagonalize(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const Eigen::Index n = input.rows();
  Matrix a = input;
  Tridiagonal t{Eigen::VectorXd(n), Eigen::VectorXd(n > 0 ? n - 1 : 0)};
  Vector v(n), p(n);

  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    auto x = a.col(k).tail(m);
    const double sigma = x.norm();
    t.diagonal(k) = detail::real_part(a(k, k));
    t.off_diagonal(k) = sigma;
    if (m == 1 || sigma == 0.0) {
      continue;
    }
    // v = x - alpha e1 with alpha = -phase(x0) * |x|, scaled so v0 = 1.
    const Scalar x0 = x(0);
    const double abs_x0 = std::abs(x0);
    const Scalar phase = abs_x0 == 0.0 ? Scalar(1) : x0 / abs_x0;
    const Scalar alpha = -phase * sigma;
    auto vv = v.head(m);
    vv = x;
    vv(0) -= alpha;
    const double vnorm2 = vv.squaredNorm();
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;

    auto trailing = a.bottomRightCorner(m, m);
    auto pp = p.head(m);
    pp.noalias() = tau * (trailing.template selfadjointView<Eigen::Lower>() * vv);
    const Scalar half_k = Scalar(0.5 * tau) * vv.dot(pp);  // v^* p, real for hermitian A
    pp -= half_k * vv;
    trailing.template selfadjointView<Eigen::Lower>().rankUpdate(vv, pp, Scalar(-1));
  }
  if (n > 0) t.diagonal(n - 1) = detail::real_part(a(n - 1, n - 1));
  return t;
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts. Returns them in ascending order.
Eigen::VectorXd tridiagonal_eigenvalues(Tridiagonal t,
                                        std::optional<std::uint64_t> seed = std::nullopt,
                                        int max_sweeps_per_eigenvalue = 60);

}  // namespace rmt
