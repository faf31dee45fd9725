#include <doctest.h>

#include <cmath>

#include "rmt/ensembles.hpp"
#include "rmt/errors.hpp"
#include "rmt/spectra.hpp"

using namespace rmt;

TEST_CASE("eigenvalues of small matrices") {
  Eigen::Matrix3d d = Eigen::Vector3d(3, 1, 2).asDiagonal();
  const Spectrum s = eigenvalues(d);
  CHECK(s.values() == std::vector<double>{3, 2, 1});

  Eigen::Matrix2d b;
  b << 0, -0.7, -0.7, 0;
  const Spectrum t = eigenvalues(b);
  CHECK(t[0] == doctest::Approx(0.7));
  CHECK(t[1] == doctest::Approx(-0.7));
}

TEST_CASE("eigenvalues agree with Eigen's solver") {
  for (const char* name : {"goe", "gue", "rademacher"}) {
    const EnsembleSpec spec = ensemble_by_name(name, 60);
    const SampledMatrix m = sample_matrix(spec, 3);
    const Spectrum ours = eigenvalues(m, 3);
    std::visit(
        [&](const auto& a) {
          using M = std::decay_t<decltype(a)>;
          Eigen::SelfAdjointEigenSolver<M> solver(a, Eigen::EigenvaluesOnly);
          const Eigen::VectorXd ref = solver.eigenvalues();
          for (int j = 0; j < ref.size(); ++j) CHECK(std::abs(ours[j] - ref(ref.size() - 1 - j)) < 1e-12);
        },
        m);
  }
}

TEST_CASE("spectrum is sorted and finite") {
  const Spectrum s(std::vector<double>{0.5, -1.0, 2.0});
  CHECK(s.largest() == 2.0);
  CHECK(s.smallest() == -1.0);
  CHECK_THROWS_AS(Spectrum(std::vector<double>{1.0, NAN}), DomainError);
}

TEST_CASE("edge rescaling") {
  for (std::size_t n : {4ul, 50ul, 1000ul}) {
    std::vector<double> v(n, 0.0);
    v[0] = 1.0;
    CHECK(rescale_edges(Spectrum(v), 1).theta[0] == 0.0);
    const double s = -1.75;
    v[0] = 1.0 + s / (2.0 * std::pow(double(n), 2.0 / 3.0));
    CHECK(rescale_edges(Spectrum(v), 1).theta[0] == doctest::Approx(s).epsilon(1e-12));
  }
  std::vector<double> v(64, 0.0);
  v.back() = -1.0 - 1.0 / 32.0;
  CHECK(rescale_edges(Spectrum(v), 1).tau[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(rescale_edges(Spectrum(v), 65), DomainError);

  const Spectrum sp = eigenvalues(sample_matrix(goe(40), 5));
  const EdgeSample e = rescale_edges(sp, 5);
  CHECK(std::is_sorted(e.theta.rbegin(), e.theta.rend()));
  CHECK(std::is_sorted(e.tau.rbegin(), e.tau.rend()));
}

TEST_CASE("trace powers") {
  const Spectrum id(std::vector<double>{1, 1, 1});
  CHECK(trace_power(id, 5).value == 3.0);
  const Spectrum pm(std::vector<double>{1, -1});
  CHECK(trace_power(pm, 2).value == 2.0);
  CHECK(trace_power(pm, 3).value == 0.0);

  const std::vector<double> big{4.0, 3.0};
  const TracePower huge = trace_power(big, 1000);
  CHECK(huge.overflow);
  CHECK(huge.log_abs == doctest::Approx(1000 * std::log(4.0)).epsilon(1e-12));

  const RealMatrix a = sample_real_symmetric(goe(30), 11);
  const auto by_mult = trace_powers_by_multiplication(a, 8);
  const Spectrum s = eigenvalues(a);
  for (unsigned p = 1; p <= 8; ++p)
    CHECK(trace_power(s, p).value == doctest::Approx(by_mult[p - 1]).epsilon(1e-9).scale(1.0));
  for (unsigned p = 1; p <= 3; ++p)
    CHECK(trace_power(SampledMatrix(a), p).value == doctest::Approx(by_mult[p - 1]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("goe n=2 mean of Trace A^2 via spectra") {
  double sum = 0.0;
  const int reps = 1000000;
  const EnsembleSpec spec = goe(2);
  for (int r = 0; r < reps; ++r) sum += trace_power(eigenvalues(sample_matrix(spec, r)), 2).value;
  CHECK(std::abs(sum / reps - 0.75) < 0.01);
}

TEST_CASE("trace identities") {
  for (const char* name : {"goe", "gue", "uniform_hermitian"}) {
    const SampledMatrix m = sample_matrix(ensemble_by_name(name, 70), 2);
    const Spectrum s = eigenvalues(m);
    std::visit(
        [&](const auto& a) {
          double sum = 0.0, sq = 0.0;
          for (double l : s.values()) {
            sum += l;
            sq += l * l;
          }
          CHECK(sum == doctest::Approx(std::real(a.trace())).epsilon(1e-8).scale(1.0));
          CHECK(sq == doctest::Approx(a.squaredNorm()).epsilon(1e-8));
        },
        m);
  }
}

TEST_CASE("empirical spectral distribution") {
  const Spectrum s(std::vector<double>{1, -1});
  const std::vector<double> g{0.0, 1.0, 2.0};
  const auto f = empirical_esd(s, g);
  CHECK(f[0] == 0.5);
  CHECK(f[1] == 1.0);
  CHECK(f[2] == 1.0);
  const std::vector<double> bad{1.0, 0.0};
  CHECK_THROWS_AS(empirical_esd(s, bad), DomainError);
  CHECK(semicircle_cdf(0.0) == doctest::Approx(0.5));
  CHECK(semicircle_cdf(1.0) == doctest::Approx(1.0));
  CHECK(semicircle_density(0.0) == doctest::Approx(2.0 / M_PI));
  CHECK(semicircle_ks_distance(eigenvalues(sample_matrix(goe(1000), 1))) < 0.02);
}

TEST_CASE("edge location and spectral symmetry") {
  const EnsembleSpec spec = goe(200);
  double top = 0.0, bottom = 0.0;
  for (int r = 0; r < 50; ++r) {
    const Spectrum s = eigenvalues(sample_matrix(spec, r));
    top += s.largest() / 50;
    bottom += s.smallest() / 50;
  }
  CHECK(top > 0.9);
  CHECK(top < 1.1);
  CHECK(bottom < -0.9);
  CHECK(bottom > -1.1);
}
