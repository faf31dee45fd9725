#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rmt/ensembles.hpp"
#include "rmt/errors.hpp"
#include "rmt/mcstats.hpp"
#include "rmt/rng.hpp"
#include "rmt/spectra.hpp"

using namespace rmt;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

EdgeSample edge_of(std::vector<double> theta, std::size_t n) {
  EdgeSample e;
  e.theta = std::move(theta);
  e.tau = e.theta;
  e.k = e.theta.size();
  e.n = n;
  return e;
}

}  // namespace

TEST_CASE("empirical cdf") {
  const EmpiricalCDF f({3.0, 1.0, 2.0, 2.0});
  CHECK(f.sorted() == std::vector<double>{1, 2, 2, 3});
  CHECK(f(0.5) == 0.0);
  CHECK(f(2.0) == 0.75);
  CHECK(f.left_limit(2.0) == 0.25);
  CHECK(f(3.0) == 1.0);
  CHECK(EmpiricalCDF().count() == 0);
}

TEST_CASE("ks distance") {
  const EmpiricalCDF single({0.5});
  CHECK(ks_distance(single, [](double x) { return std::clamp(x, 0.0, 1.0); }) == doctest::Approx(0.5));

  Stream rng(9);
  std::vector<double> s(10000);
  for (double& v : s) v = rng.normal();
  const EmpiricalCDF f(s);
  CHECK(ks_distance(f, normal_cdf) < 0.02);
  CHECK(ks_distance(f, [&](double x) { return f(x); }) <= 1.0 / s.size() + 1e-15);
  CHECK(ks_distance(f, [](double x) { return normal_cdf(x - 0.2); }) > 0.05);

  std::vector<double> t(8000);
  for (double& v : t) v = rng.normal();
  CHECK(ks_two_sample(f, EmpiricalCDF(t)) < 0.03);
  CHECK(ks_two_sample(f, f) == 0.0);
  CHECK(ks_two_sample(EmpiricalCDF({0.0}), EmpiricalCDF({1.0})) == 1.0);
}

TEST_CASE("merge is order independent") {
  EmpiricalCDF a({1, 5}), b({2}), c({0, 9, 3});
  EmpiricalCDF abc = a, cba = c, bc = b;
  abc.merge(b).merge(c);
  cba.merge(b).merge(a);
  bc.merge(c);
  EmpiricalCDF a_bc = a;
  a_bc.merge(bc);
  CHECK(abc == cba);
  CHECK(abc == a_bc);
  CHECK(std::is_sorted(abc.sorted().begin(), abc.sorted().end()));
}

TEST_CASE("linear statistic") {
  CHECK(linear_statistic(edge_of({0.0}, 100), 1.0) == doctest::Approx(1.0));
  const double t = 0.7;
  CHECK(linear_statistic(edge_of({0.0, -std::log(2.0) / t}, 100), t) == doctest::Approx(1.5));
  const double cut = truncation_cutoff(64);
  CHECK(cut == doctest::Approx(2.0));
  CHECK(linear_statistic(edge_of({0.0, 2.0, 5.0}, 64), 1.0) == doctest::Approx(1.0));
  CHECK(linear_statistic(edge_of({1.9, -10.0}, 64), 1.0, EdgeSide::lower) ==
        doctest::Approx(std::exp(1.9) + std::exp(-10.0)));
  const std::vector<double> pts{-1.0, 0.5, 3.0};
  CHECK(truncated_exp_sum(pts, 2.0, 1.0) == doctest::Approx(std::exp(-2.0) + std::exp(1.0)));
}

TEST_CASE("product statistic") {
  const EdgeSample e = edge_of({0.3, -0.4, -1.1}, 500);
  const std::vector<double> one{0.8};
  CHECK(product_statistic(e, one) == doctest::Approx(linear_statistic(e, 0.8)));
  const std::vector<double> two{0.8, 0.5};
  double distinct = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) distinct += std::exp(0.8 * e.theta[i] + 0.5 * e.theta[j]);
  CHECK(product_statistic(e, two) == doctest::Approx(distinct));
  const std::vector<double> three{0.2, 0.4, 0.6};
  double triples = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        if (i != j && j != k && i != k) triples += std::exp(0.2 * e.theta[i] + 0.4 * e.theta[j] + 0.6 * e.theta[k]);
  CHECK(product_statistic(e, three) == doctest::Approx(triples));
  CHECK(product_statistic(edge_of({0.1}, 500), two) == doctest::Approx(0.0).scale(1.0));
  const std::vector<double> five(5, 0.1);
  CHECK_THROWS_AS(product_statistic(e, five), DomainError);
}

TEST_CASE("factorial moments") {
  const std::vector<std::int64_t> ones{1, 1, 1};
  CHECK(factorial_moment(ones, 1) == 1.0);
  CHECK(factorial_moment(ones, 2) == 0.0);
  const std::vector<std::int64_t> twos{2, 2};
  CHECK(factorial_moment(twos, 2) == 2.0);

  Stream rng(17);
  const double lambda = 1.7;
  std::vector<std::int64_t> counts(200000);
  for (auto& c : counts) c = std::int64_t(rng.poisson(lambda));
  double s = 0.0, s2 = 0.0;
  for (auto c : counts) {
    const double v = double(c) * double(c - 1);
    s += v;
    s2 += v * v;
  }
  const double mean = s / counts.size(), se = std::sqrt((s2 / counts.size() - mean * mean) / counts.size());
  CHECK(std::abs(factorial_moment(counts, 2) - lambda * lambda) < 5 * se);
}

TEST_CASE("count collector") {
  CountCollector c({{0.0, 1.0}, {1.0, 3.0}});
  const std::vector<double> a{0.5, 0.9, 1.0, 2.5, 4.0}, b{};
  c.add(a);
  c.add(b);
  CHECK(c.replicas() == 2);
  CHECK(c.histogram(0) == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(c.histogram(1) == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(c.factorial_moment(0, 2) == 1.0);
  CountCollector d({{0.0, 1.0}, {1.0, 3.0}});
  d.add(std::vector<double>{0.1});
  CountCollector cd = c, dc = d;
  cd.merge(d);
  dc.merge(c);
  CHECK(cd == dc);
  CHECK(cd.replicas() == 3);
  CountCollector other({{0.0, 2.0}});
  CHECK_THROWS_AS(cd.merge(other), DomainError);
}

TEST_CASE("trace versus linear statistics") {
  const Spectrum s = eigenvalues(sample_matrix(goe(400), 21));
  const TraceLinear tl = trace_vs_linear(s, 1.0);
  CHECK(tl.s == unsigned(std::floor(std::pow(400.0, 2.0 / 3.0))));
  CHECK_FALSE(tl.overflow);
  const double scale = tl.upper_stat + tl.lower_stat;
  CHECK(std::abs(tl.residual_even) < 0.2 * scale);
  CHECK(tl.trace_even.value == doctest::Approx(trace_power(s, 2 * tl.s).value));
  CHECK_THROWS_AS(trace_vs_linear(Spectrum(std::vector<double>{0.1, 0.2}), 1.0), DomainError);
}

TEST_CASE("upper and lower statistics have the same law") {
  const EnsembleSpec spec = goe(50);
  std::vector<double> up, low;
  for (std::uint64_t r = 0; r < 10000; ++r) {
    const EdgeSample e = rescale_edges(eigenvalues(sample_matrix(spec, replica_seed(77, r))), 50);
    up.push_back(linear_statistic(e, 1.0, EdgeSide::upper));
    low.push_back(linear_statistic(e, 1.0, EdgeSide::lower));
  }
  CHECK(ks_two_sample(EmpiricalCDF(up), EmpiricalCDF(low)) < 0.03);
}
