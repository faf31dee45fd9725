#include <doctest.h>

#include <cmath>
#include <complex>

#include "rmt/ensembles.hpp"
#include "rmt/errors.hpp"
#include "rmt/quadrature.hpp"

using namespace rmt;

TEST_CASE("goe n=1 entry has variance 1/2") {
  const EnsembleSpec spec = goe(1);
  double sum = 0.0, sum2 = 0.0;
  const int reps = 200000;
  for (int s = 0; s < reps; ++s) {
    const double a = sample_real_symmetric(spec, s)(0, 0);
    sum += a;
    sum2 += a * a;
  }
  const double mean = sum / reps, var = sum2 / reps - mean * mean;
  CHECK(std::abs(mean) < 5.0 * std::sqrt(0.5 / reps));
  CHECK(var == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("rademacher n=2 off-diagonal entries are +-1/(2 sqrt 2)") {
  const EnsembleSpec spec = rademacher_ensemble(2);
  const double v = 1.0 / (2.0 * std::sqrt(2.0));
  bool seen_plus = false, seen_minus = false;
  for (std::uint64_t s = 0; s < 64; ++s) {
    const RealMatrix a = sample_real_symmetric(spec, s);
    CHECK(std::abs(std::abs(a(0, 1)) - v) < 1e-15);
    CHECK(std::abs(std::abs(a(0, 0)) - v) < 1e-15);
    seen_plus = seen_plus || a(0, 1) > 0;
    seen_minus = seen_minus || a(0, 1) < 0;
  }
  CHECK(seen_plus);
  CHECK(seen_minus);
}

TEST_CASE("goe n=2 mean of Trace A^2 is 3/4") {
  const EnsembleSpec spec = goe(2);
  double sum = 0.0;
  const int reps = 1000000;
  for (int s = 0; s < reps; ++s) sum += sample_real_symmetric(spec, s).squaredNorm();
  CHECK(std::abs(sum / reps - 0.75) < 0.01);
}

TEST_CASE("entry moments") {
  CHECK(entry_moment(EntryLaw::rademacher(Rational(1, 4)), 2) == Rational(1, 4));
  CHECK(entry_moment(EntryLaw::rademacher(Rational(1, 4)), 4) == Rational(1, 16));
  for (const EntryLaw& law : {EntryLaw::gaussian(Rational(1, 4)), EntryLaw::rademacher(Rational(1, 4)),
                              EntryLaw::uniform_symmetric(Rational(1, 4))})
    CHECK(entry_moment(law, 3) == 0);
  const EntryLaw g = EntryLaw::gaussian(Rational(1, 4));
  CHECK(entry_moment(g, 4) == Rational(3, 16));
  const double sigma = 0.5;
  const double numeric = integrate(
      [&](double x) { return std::pow(x, 4) * std::exp(-x * x / (2 * sigma * sigma)) / (sigma * std::sqrt(2 * M_PI)); },
      -10.0, 10.0);
  CHECK(numeric == doctest::Approx(3.0 / 16.0).epsilon(1e-10));
  // Uniform on [-a, a] with a^2/3 = 1/4: fourth moment a^4/5.
  CHECK(entry_moment(EntryLaw::uniform_symmetric(Rational(1, 4)), 4) == Rational(9, 80));
}

TEST_CASE("discrete laws") {
  const EntryLaw law = EntryLaw::discrete({{Rational(1, 2), Rational(1, 2)}, {Rational(-1, 2), Rational(1, 2)}});
  CHECK(law.moment(2) == Rational(1, 4));
  CHECK_THROWS_AS(EntryLaw::discrete({{Rational(1), Rational(1)}}), ConfigError);
  CHECK_THROWS_AS(EntryLaw::discrete({{Rational(1), Rational(1, 3)}, {Rational(-1), Rational(1, 3)}}),
                  ConfigError);
}

TEST_CASE("spec validation") {
  EnsembleSpec spec = goe(4);
  CHECK_NOTHROW(spec.validate());
  spec.off_diagonal = EntryLaw::gaussian(Rational(1, 3));
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = gue(4);
  spec.off_diagonal = EntryLaw::gaussian(Rational(1, 4));
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = goe(0);
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  CHECK_THROWS_AS(ensemble_by_name("wishart", 4), ConfigError);
  CHECK(required_off_diagonal_variance(Symmetry::real_symmetric) == Rational(1, 4));
  CHECK(required_off_diagonal_variance(Symmetry::hermitian) == Rational(1, 8));
}

TEST_CASE("presets and keys") {
  for (const char* name : {"goe", "gue", "rademacher", "rademacher_hermitian", "uniform", "uniform_hermitian"}) {
    const EnsembleSpec spec = ensemble_by_name(name, 5);
    CHECK_NOTHROW(spec.validate());
    CHECK(spec.n == 5);
  }
  CHECK(gue(3).beta() == 2);
  CHECK(goe(3).beta() == 1);
  const EnsembleSpec d = ensemble_from_keys("real_symmetric", "discrete", 3, "0.5:0.5,-0.5:0.5");
  CHECK_NOTHROW(d.validate());
  CHECK_THROWS_AS(ensemble_from_keys("skew", "gaussian", 3), ConfigError);
}

TEST_CASE("sampled matrices are exactly symmetric and deterministic") {
  for (const char* name : {"goe", "gue", "rademacher", "rademacher_hermitian", "uniform", "uniform_hermitian"}) {
    const EnsembleSpec spec = ensemble_by_name(name, 17);
    for (std::uint64_t s : {0ull, 1ull, 99ull}) {
      const SampledMatrix m = sample_matrix(spec, s), again = sample_matrix(spec, s);
      std::visit(
          [&](const auto& a) {
            using M = std::decay_t<decltype(a)>;
            CHECK((a.array() == a.adjoint().array()).all());
            CHECK((a.array() == std::get<M>(again).array()).all());
          },
          m);
    }
  }
  const RealMatrix a = sample_real_symmetric(goe(8), 1), b = sample_real_symmetric(goe(8), 2);
  CHECK((a.array() != b.array()).any());
}

TEST_CASE("entry second moments over 1e5 samples") {
  for (const char* name : {"goe", "gue", "rademacher", "uniform"}) {
    const EnsembleSpec spec = ensemble_by_name(name, 50);
    const double n = spec.n;
    double s = 0.0, s2 = 0.0;
    std::uint64_t count = 0;
    for (std::uint64_t r = 0; r < 90; ++r) {
      std::visit(
          [&](const auto& a) {
            for (int j = 1; j < a.cols(); ++j)
              for (int i = 0; i < j; ++i) {
                const double v = std::norm(std::complex<double>(a(i, j))) * n;
                s += v;
                s2 += v * v;
                ++count;
              }
          },
          sample_matrix(spec, 500 + r));
    }
    REQUIRE(count >= 100000);
    const double mean = s / count, se = std::sqrt((s2 / count - mean * mean) / count);
    INFO(name);
    CHECK(std::abs(mean - 0.25) <= 5.0 * se + 1e-12);
  }
}
