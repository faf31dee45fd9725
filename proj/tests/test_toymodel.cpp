#include <doctest.h>

#include <cmath>
#include <map>

#include "rmt/errors.hpp"
#include "rmt/toymodel.hpp"

using namespace rmt;

TEST_CASE("sampler") {
  const ClosedPath one = sample_closed_path(1, 5, 3);
  CHECK(one.vertices == std::vector<int>(5, 1));
  CHECK(sample_closed_path(7, 9, 42).vertices == sample_closed_path(7, 9, 42).vertices);
  CHECK(sample_closed_path(7, 9, 42).vertices != sample_closed_path(7, 9, 43).vertices);
  CHECK_THROWS_AS(sample_closed_path(0, 3, 1), DomainError);

  std::map<std::vector<int>, int> freq;
  const int reps = 100000;
  for (int s = 0; s < reps; ++s) ++freq[sample_closed_path(3, 2, s).vertices];
  CHECK(freq.size() == 9);
  for (const auto& [seq, k] : freq) CHECK(std::abs(double(k) / reps - 1.0 / 9.0) < 0.005);
}

TEST_CASE("self-intersection census") {
  CHECK(si_census(ClosedPath{{1, 2, 3}, 3}).at_least(2) == 0);
  const SiCensus a = si_census(ClosedPath{{1, 2, 1}, 3});
  CHECK(a.count(2) == 1);
  CHECK(a.at_least(2) == 1);
  const SiCensus b = si_census(ClosedPath{{1, 2, 1, 2}, 2});
  CHECK(b.count(2) == 2);
  CHECK(b.repeated_edge);
  const SiCensus c = si_census(ClosedPath{{4, 4, 4}, 5});
  CHECK(c.count(3) == 1);
  CHECK(c.count(2) == 0);
  CHECK_FALSE(si_census(ClosedPath{{1, 2, 1, 3}, 3}).repeated_edge);
}

TEST_CASE("exact small cases") {
  const ToyExact ex = toy_exact(3, 2);
  CHECK(ex.no_self_intersection == Rational(2, 3));
  CHECK(no_self_intersection_probability(3, 2) == Rational(2, 3));
  CHECK(1 - (1 - no_self_intersection_probability(3, 2)) == Rational(2, 3));
  CHECK(ex.census.samples == 9);
  CHECK(no_self_intersection_probability(3, 4) == 0);
  for (int n = 1; n <= 5; ++n)
    for (int p = 1; p <= 4; ++p) {
      const ToyExact e = toy_exact(n, p);
      CHECK(e.no_self_intersection == no_self_intersection_probability(n, p));
      Rational total = 0;
      for (const auto& q : e.simple_count) total += q;
      CHECK(total == 1);
    }
  CHECK_THROWS_AS(toy_exact(100, 10), ResourceError);
}

TEST_CASE("exact law of the simple count") {
  for (int n = 2; n <= 5; ++n)
    for (int p = 1; p <= 5; ++p) {
      const ToyExact e = toy_exact(n, p);
      const auto pmf = simple_count_pmf(n, p, 4);
      for (std::size_t m = 0; m < pmf.size(); ++m) {
        const double exact = m < e.simple_count.size() ? to_double(e.simple_count[m]) : 0.0;
        CHECK(pmf[m] == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
      }
    }
}

TEST_CASE("monte carlo census agrees with exhaustive census") {
  for (int n = 2; n <= 4; ++n)
    for (int p = 2; p <= 4; ++p) {
      const ToyCensus exact = toy_exact(n, p).census;
      const ToyCensus mc = toy_census(n, p, 100000, 7 * n + p);
      const double reps = double(mc.samples), total = double(exact.samples);
      auto close = [&](double e, double m) {
        const double f = e / total, g = m / reps;
        const double se = std::sqrt(f * (1 - f) / reps);
        return se == 0.0 ? f == g : std::abs(f - g) < 5 * se;
      };
      CHECK(close(double(exact.no_self_intersection), double(mc.no_self_intersection)));
      CHECK(close(double(exact.repeated_edge), double(mc.repeated_edge)));
      CHECK(close(double(exact.nonsimple), double(mc.nonsimple)));
      const auto fe = exact.frequencies(2), fm = mc.frequencies(2);
      for (std::size_t m = 0; m < fe.size(); ++m)
        CHECK(close(fe[m] * total, m < fm.size() ? fm[m] * reps : 0.0));
    }
}

TEST_CASE("census merge and worker independence") {
  const ToyCensus a = toy_census(40, 10, 700, 1, 1), b = toy_census(40, 10, 300, 2, 1);
  ToyCensus ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  CHECK(ab == ba);
  CHECK(ab.samples == 1000);
  for (std::size_t k = 2; k < ab.histogram.size(); ++k) {
    std::uint64_t mass = 0;
    for (auto c : ab.histogram[k]) mass += c;
    CHECK(mass == ab.samples);
  }
  CHECK(toy_census(40, 10, 999, 5, 1) == toy_census(40, 10, 999, 5, 4));
}

TEST_CASE("poisson helpers") {
  const auto pmf = poisson_pmf(0.5, 3);
  CHECK(pmf[0] == doctest::Approx(std::exp(-0.5)));
  CHECK(pmf[2] == doctest::Approx(std::exp(-0.5) * 0.125));
  CHECK(poisson_tv(poisson_pmf(1.3, 60), 1.3) < 1e-12);
  CHECK(poisson_tv({1.0}, 0.5) == doctest::Approx(1.0 - std::exp(-0.5)));
}

TEST_CASE("propositions") {
  CHECK(parse_proposition("P4") == Proposition::P4);
  CHECK(to_string(Proposition::P5) == "P5");
  CHECK_THROWS_AS(parse_proposition("P7"), ConfigError);
  CHECK_THROWS_AS(proposition_check(100, 10, 10, Proposition::P3), DomainError);

  const ToyReport p1 = proposition_check(10000, 100, 20000, Proposition::P1, 3);
  CHECK(p1.estimate < 0.01);
  const ToyReport p2 = proposition_check(10000, 100, 20000, Proposition::P2, 3);
  CHECK(p2.distance < 5 * p2.stderr_ + 1e-12);
  const ToyReport p3 = proposition_check(10000, 100, 100000, Proposition::P3, 4);
  CHECK(p3.distance < 0.05);
  const ToyReport p5 = proposition_check(4096, 256, 100000, Proposition::P5, 5);
  CHECK(p5.distance < 0.05);
  CHECK(p5.higher_order < 0.01);
}

TEST_CASE("simple count is asymptotically normal") {
  const int n = 1000000;
  const int p = int(std::floor(std::pow(double(n), 0.58)));
  const ToyReport p4 = proposition_check(n, p, 20000, Proposition::P4, 6);
  CHECK(p4.distance < 0.05);
}

TEST_CASE("poisson limit approached along doubling n") {
  double prev = 1.0;
  for (int n : {10000, 20000, 40000}) {
    const int p = int(std::floor(std::sqrt(double(n))));
    const double tv = poisson_tv(simple_count_pmf(n, p, 40), double(p) * p / (2.0 * n));
    CHECK(tv < prev);
    prev = tv;
  }
}
