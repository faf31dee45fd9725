#include <doctest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "rmt/airy.hpp"
#include "rmt/airy_kernel.hpp"
#include "rmt/errors.hpp"
#include "rmt/hermite.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/rng.hpp"

using namespace rmt;

TEST_CASE("airy at zero") {
  const AiryPair z = airy(0.0);
  CHECK(z.ai == doctest::Approx(1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0))).epsilon(1e-14));
  CHECK(z.aip == doctest::Approx(-1.0 / (std::pow(3.0, 1.0 / 3.0) * std::tgamma(1.0 / 3.0))).epsilon(1e-14));
  CHECK(z.ai == doctest::Approx(0.3550280539).epsilon(1e-9));
  CHECK(z.aip == doctest::Approx(-0.2588194038).epsilon(1e-9));
}

TEST_CASE("airy against boost") {
  for (int i = 0; i <= 400; ++i) {
    const double x = -30.0 + 0.1 * i + 0.013;
    const AiryPair a = airy(x);
    const double ai = boost::math::airy_ai(x), aip = boost::math::airy_ai_prime(x);
    INFO("x = " << x);
    CHECK(std::abs(a.ai - ai) <= 1e-10 * std::max(1.0, std::abs(ai)) + 1e-13);
    CHECK(std::abs(a.aip - aip) <= 1e-10 * std::max(1.0, std::abs(aip)) + 1e-13);
  }
  for (double x : {12.0, 25.0, 60.0}) {
    CHECK(airy(x).ai == doctest::Approx(boost::math::airy_ai(x)).epsilon(1e-10));
  }
}

TEST_CASE("airy asymptotics and signs") {
  const double x = 10.0;
  const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
  const double lead = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
  CHECK(std::abs(airy(x).ai / lead - (1.0 - 5.0 / (72.0 * zeta) + 385.0 / (10368.0 * zeta * zeta))) < 1e-5);
  for (double y = 0.0; y <= 50.0; y += 0.5) {
    const AiryPair a = airy(y);
    CHECK(a.ai > 0.0);
    CHECK(a.aip < 0.0);
  }
  CHECK(airy(100.0).ai < 1e-280);
  CHECK_THROWS_AS(airy(201.0), DomainError);
  CHECK_THROWS_AS(airy(-201.0), DomainError);
}

TEST_CASE("airy ode residual by finite differences") {
  const double h = 1e-3;
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -5.0 + 0.01 * i;
    const double d2 = (airy(x + h).ai - 2.0 * airy(x).ai + airy(x - h).ai) / (h * h);
    worst = std::max(worst, std::abs(d2 - x * airy(x).ai));
  }
  CHECK(worst < 1e-6);
  const auto d = airy_derivatives(1.5, 5);
  CHECK(d[2] == doctest::Approx(1.5 * d[0]));
  CHECK(d[3] == doctest::Approx(d[0] + 1.5 * d[1]));
}

TEST_CASE("long double evaluation agrees") {
  for (double x : {-7.3, -1.0, 0.0, 2.2, 9.0}) {
    const AiryPairLong l = airy_long(x);
    CHECK(double(l.ai) == doctest::Approx(airy(x).ai).epsilon(1e-13));
  }
}

TEST_CASE("airy cumulative") {
  CHECK(airy_cumulative(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(airy_cumulative(30.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double q = integrate([](double t) { return airy(t).ai; }, -8.0, 1.0, 1e-13);
  CHECK(airy_cumulative(1.0) - airy_cumulative(-8.0) == doctest::Approx(q).epsilon(1e-10));
  CHECK_THROWS_AS(airy_cumulative(250.0), DomainError);
}

TEST_CASE("hermite functions") {
  for (long l : {0L, 1L, 5L, 40L}) {
    const double norm = integrate([&](double x) { return std::pow(hermite_psi(l, x), 2); }, -15.0, 15.0, 1e-13);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(hermite_psi(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)));
  const double mass = integrate([](double x) { return gue_finite_density(10, x); }, -3.0, 3.0, 1e-11, 0.25);
  CHECK(mass == doctest::Approx(10.0).epsilon(1e-6));
  for (long n : {50L, 200L}) CHECK(gue_finite_density(n, 0.0) / n == doctest::Approx(2.0 / std::numbers::pi).epsilon(0.02));
}

TEST_CASE("hermite edge profile approaches the Airy limit at theta = 0 and 2") {
  for (double theta : {0.0, 2.0}) {
    const double limit = std::pow(2.0, 0.25) * airy(theta).ai;
    double prev = 1e300;
    for (long n : {100L, 400L, 1600L}) {
      const double err = std::abs(hermite_edge_profile(n, theta) - limit);
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("hermite edge profile at theta = -1 changes sign of the error") {
  const double limit = std::pow(2.0, 0.25) * airy(-1.0).ai;
  const double e100 = hermite_edge_profile(100, -1.0) - limit;
  const double e400 = hermite_edge_profile(400, -1.0) - limit;
  const double e1600 = hermite_edge_profile(1600, -1.0) - limit;
  CHECK(e100 == doctest::Approx(-1.02854e-3).epsilon(1e-4));
  CHECK(e400 == doctest::Approx(-9.1423e-5).epsilon(1e-3));
  CHECK(e1600 == doctest::Approx(1.57996e-4).epsilon(1e-4));
}

TEST_CASE("airy kernel") {
  const double k00 = airy_kernel(0.0, 0.0);
  CHECK(k00 == doctest::Approx(0.0669875).epsilon(1e-6));
  CHECK(edge_density(2, 0.0) == doctest::Approx(k00));
  for (double x : {-2.5, 0.3, 1.7})
    CHECK(airy_kernel(x, x) == doctest::Approx(std::pow(airy(x).aip, 2) - x * std::pow(airy(x).ai, 2)).epsilon(1e-12));
  const double h = 5e-5;
  CHECK(std::abs(0.5 * (airy_kernel(0.5, 0.5 + h) + airy_kernel(0.5, 0.5 - h)) - airy_kernel(0.5, 0.5)) < 1e-8);
  CHECK(airy_kernel(1.0, -2.0) == doctest::Approx(airy_kernel(-2.0, 1.0)).epsilon(1e-14));
  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double x = -3.0 + 6.0 * i / 9.0, y = -3.0 + 6.0 * j / 9.0;
      worst = std::max(worst, std::abs(airy_kernel(x, y) - airy_kernel_quadrature(x, y)));
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("edge correlations") {
  const std::vector<double> same{0.4, 0.4};
  CHECK(std::abs(edge_correlation(2, same)) < 1e-12);
  const std::vector<double> one{-1.2};
  CHECK(edge_correlation(2, one) == doctest::Approx(airy_kernel(-1.2, -1.2)));
  Stream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> pts(1 + trial % 4);
    for (double& v : pts) v = -4.0 + 6.0 * rng.uniform();
    CHECK(edge_correlation(2, pts) >= 0.0);
    CHECK(edge_correlation(1, pts) >= 0.0);
  }
  const std::vector<double> too_many(7, 0.0);
  CHECK_THROWS(edge_correlation(2, too_many));
}

TEST_CASE("goe block at coincident points has nonnegative determinant") {
  for (double y : {-3.0, -1.0, 0.0, 1.5}) {
    const GoeKernelBlock b = goe_kernel_block(y, y);
    CHECK(b.s * b.s_transpose - b.d * b.i >= -1e-10);
    CHECK(airy_kernel_jk(y, y) == doctest::Approx(-integrate([&](double t) { return airy_kernel(t, y); }, y, 40.0, 1e-13)).epsilon(1e-8));
  }
  CHECK(edge_density(1, 0.0) > 0.0);
}

TEST_CASE("laplace transform of the edge density") {
  const double t = 0.05;
  const double ratio = 2.0 * edge_laplace(2, t) / (std::pow(std::numbers::pi, -0.5) * std::pow(t, -1.5));
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);
  const double direct = integrate([](double x) { return std::exp(x) * edge_density(2, x); }, -60.0, 30.0, 1e-12, 0.5);
  CHECK(edge_laplace(2, 1.0) == doctest::Approx(direct).epsilon(1e-4));
}
