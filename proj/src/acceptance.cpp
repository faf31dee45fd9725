#include "rmt/acceptance.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <chrono>
#include <cmath>
#include <functional>
#include <filesystem>
#include <numbers>
#include <set>
#include <ostream>
#include <sstream>
#include <variant>

#include "rmt/airy.hpp"
#include "rmt/airy_kernel.hpp"
#include "rmt/errors.hpp"
#include "rmt/experiment.hpp"
#include "rmt/hermite.hpp"
#include "rmt/mcstats.hpp"
#include "rmt/parallel.hpp"
#include "rmt/paths.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/rng.hpp"
#include "rmt/spectra.hpp"
#include "rmt/toymodel.hpp"
#include "rmt/tracy_widom.hpp"

namespace rmt {

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* group;
  const char* name;
  double budget;
  std::function<Outcome(const AcceptanceOptions&)> check;
};

std::string num(double x) { return format_number(x); }

// Collects named sub-checks into one outcome.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      passed_ = false;
      failures_ += (failures_.empty() ? "" : "; ") + what;
    } else if (notes_.size() < 4000) {
      notes_ += (notes_.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { notes_ += (notes_.empty() ? "" : "; ") + what; }
  Outcome outcome() const {
    return {passed_, passed_ ? notes_ : "FAILED: " + failures_ + (notes_.empty() ? "" : " | " + notes_)};
  }

 private:
  bool passed_ = true;
  std::string failures_, notes_;
};

// ---- combinatorics -------------------------------------------------------

Outcome wigner_count_check(const AcceptanceOptions&) {
  Checks c;
  int literal_ok = 0, literal_bad = 0, corrected_ok = 0, total = 0;
  std::string first_bad;
  for (int n = 1; n <= 6; ++n) {
    for (unsigned s = 1; s <= 4; ++s) {
      const auto count = enumerate_even_paths(
          n, int(2 * s), [](const ClosedPath& p) { return !has_loop(p) && has_no_self_intersection(p); });
      BigInt stated = catalan(s);
      for (unsigned k = 0; k < s; ++k) stated *= std::max(n - int(k), 0);
      ++total;
      if (BigInt(count) == stated) {
        ++literal_ok;
      } else {
        ++literal_bad;
        if (first_bad.empty())
          first_bad = "n=" + std::to_string(n) + ",s=" + std::to_string(s) + ": enumerated " +
                      std::to_string(count) + " vs stated " + stated.str();
      }
      if (BigInt(count) == wigner_count(n, s)) ++corrected_ok;
    }
  }
  c.expect(literal_bad == 0, "n(n-1)...(n-s+1) C_s matches " + std::to_string(literal_ok) + "/" +
                                 std::to_string(total) + " cases (first mismatch " + first_bad + ")");
  c.note("enumeration equals n(n-1)...(n-s) C_s in " + std::to_string(corrected_ok) + "/" +
         std::to_string(total) + " cases");
  return c.outcome();
}

// E Trace A^p over all sign assignments of {xi_ij}_{i<=j}, xi = +-1/2.
Rational brute_force_rademacher(int n, int p) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) slots.emplace_back(i, j);
  const std::uint64_t patterns = std::uint64_t(1) << slots.size();
  BigInt sum = 0;
  std::vector<long long> s(n * n), power(n * n), next(n * n);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const long long v = (mask >> k) & 1 ? 1 : -1;
      s[slots[k].first * n + slots[k].second] = s[slots[k].second * n + slots[k].first] = v;
    }
    power = s;
    for (int step = 1; step < p; ++step) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          long long acc = 0;
          for (int m = 0; m < n; ++m) acc += power[i * n + m] * s[m * n + j];
          next[i * n + j] = acc;
        }
      std::swap(power, next);
    }
    long long trace = 0;
    for (int i = 0; i < n; ++i) trace += power[i * n + i];
    sum += trace;
  }
  if (p % 2 != 0) {
    if (sum != 0) throw InvariantError("brute force: odd moment did not vanish");
    return 0;
  }
  BigInt denom = BigInt(patterns);
  for (int k = 0; k < p; ++k) denom *= 2;
  for (int k = 0; k < p / 2; ++k) denom *= n;
  return Rational(sum, denom);
}

Outcome trace_oracle_check(const AcceptanceOptions&) {
  Checks c;
  int agree = 0, total = 0;
  for (int n = 1; n <= 3; ++n) {
    const EnsembleSpec spec = rademacher_ensemble(n);
    for (int p = 1; p <= 6; ++p) {
      const Rational exact = exact_trace_moment(n, p, spec);
      const Rational brute = brute_force_rademacher(n, p);
      ++total;
      if (exact == brute) ++agree;
      c.expect(exact == brute, "n=" + std::to_string(n) + " p=" + std::to_string(p) + ": " +
                                   to_string(exact) + " vs " + to_string(brute));
      if (p % 2) c.expect(exact == 0, "odd p=" + std::to_string(p) + " gives 0");
    }
  }
  Checks summary;
  const Outcome detail = c.outcome();
  if (!detail.passed) return detail;
  summary.note(std::to_string(agree) + "/" + std::to_string(total) +
               " exact rational equalities, odd moments 0; n=3 p=4: " +
               to_string(exact_trace_moment(3, 4, rademacher_ensemble(3))));
  return summary.outcome();
}

// ---- spectra -------------------------------------------------------------

Outcome semicircle_moments_check(const AcceptanceOptions& o) {
  constexpr int n = 2000;
  constexpr std::uint64_t replicas = 200;
  const EnsembleSpec spec = goe(n);
  std::vector<std::array<double, 3>> traces(replicas);
  parallel_for(replicas, o.workers, [&](unsigned, std::size_t r) {
    const std::uint64_t seed = replica_seed(o.seed + 3, r);
    const Spectrum sp = eigenvalues(sample_matrix(spec, seed), seed);
    for (unsigned s = 1; s <= 3; ++s) traces[r][s - 1] = trace_power(sp, 2 * s).value;
  });
  Checks c;
  for (unsigned s = 1; s <= 3; ++s) {
    double mean = 0.0;
    for (const auto& t : traces) mean += t[s - 1];
    mean /= double(replicas) * n;
    const double ref = to_double(semicircle_moment(s));
    const double rel = std::abs(mean / ref - 1.0);
    c.expect(rel < 0.03, "s=" + std::to_string(s) + ": " + num(mean) + " vs " + num(ref) +
                             " (rel " + num(rel) + " < 0.03)");
  }
  return c.outcome();
}

std::vector<double> column(const std::vector<ReplicaRecord>& recs, int j) {
  std::vector<double> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(r.theta[j]);
  return out;
}

const TWTable& shared_table(const AcceptanceOptions& o) {
  static const TWTable table = cached_tw_table(o.cache_dir);
  return table;
}

Outcome edge_law_check(const AcceptanceOptions& o) {
  const TWTable& table = shared_table(o);
  Checks c;
  for (const auto& spec : {gue(200), goe(200)}) {
    const auto recs = sample_edge_replicas(spec, 2000, o.seed + 6 + spec.beta(), 1, 0.0, o.workers);
    const int beta = spec.beta();
    const double ks =
        ks_distance(EmpiricalCDF(column(recs, 0)), [&](double x) { return table.cdf(beta, x); });
    c.expect(ks < 0.06, spec.label + " KS(theta_1, F" + std::to_string(beta) + ") = " + num(ks) + " < 0.06");
  }
  return c.outcome();
}

Outcome universality_check(const AcceptanceOptions& o) {
  const auto rad = sample_edge_replicas(rademacher_ensemble(200), 2000, o.seed + 7, 2, 0.0, o.workers);
  const auto gauss = sample_edge_replicas(goe(200), 2000, o.seed + 77, 2, 0.0, o.workers);
  Checks c;
  for (int j = 0; j < 2; ++j) {
    const double ks = ks_two_sample(EmpiricalCDF(column(rad, j)), EmpiricalCDF(column(gauss, j)));
    c.expect(ks < 0.05, "theta_" + std::to_string(j + 1) + " two-sample KS = " + num(ks) + " < 0.05");
  }
  return c.outcome();
}

Outcome linear_statistic_check(const AcceptanceOptions& o) {
  constexpr int n = 400;
  constexpr std::uint64_t replicas = 1000;
  const double t = 1.0;
  const auto recs = sample_edge_replicas(gue(n), replicas, o.seed + 8, 1, t, o.workers);
  std::vector<double> traces;
  for (const auto& r : recs) traces.push_back(r.trace_even);
  double mean = 0.0, ss = 0.0;
  for (double x : traces) mean += x;
  mean /= double(replicas);
  for (double x : traces) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / double(replicas - 1) / double(replicas));
  const double limit = 2.0 * edge_laplace(2, t);
  const unsigned s = unsigned(std::floor(t * std::pow(double(n), 2.0 / 3.0) + 1e-9));
  const double exact = to_double(gue_moment_exact(n, s));
  Checks c;
  const double rel = std::abs(mean / limit - 1.0);
  c.expect(rel < 0.10, "MC mean Trace A^" + std::to_string(2 * s) + " = " + num(mean) + " +- " +
                           num(se) + " vs 2 int e^{t theta} R = " + num(limit) + " (rel " +
                           num(rel) + " < 0.1)");
  c.note("exact finite-n mean " + num(exact));
  return c.outcome();
}

Outcome tail_check(const AcceptanceOptions& o) {
  constexpr int n = 400;
  const auto recs = sample_edge_replicas(goe(n), 2000, o.seed + 11, 1, 0.0, o.workers);
  const double edge = 1.0 + 0.5 / std::sqrt(double(n));
  std::size_t hits = 0;
  for (const auto& r : recs) hits += r.lambda_max > edge ? 1 : 0;
  const double freq = double(hits) / double(recs.size());
  Checks c;
  c.expect(freq < 0.05, "P(lambda_1 > 1 + 1/(2 sqrt n)) = " + num(freq) + " < 0.05");
  return c.outcome();
}

// ---- kernels -------------------------------------------------------------

Outcome kernel_identity_check(const AcceptanceOptions&) {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double x = -3.0 + 6.0 * i / 9.0, y = -3.0 + 6.0 * j / 9.0;
      worst = std::max(worst, std::abs(airy_kernel(x, y) - airy_kernel_quadrature(x, y)));
    }
  Checks c;
  c.expect(worst < 1e-8, "max |integrable - quadrature| = " + num(worst) + " < 1e-8");
  return c.outcome();
}

Outcome painleve_check(const AcceptanceOptions& o) {
  Checks c;
  const std::vector<double> at6{6.0};
  const double q6 = painleve_q(at6).q.front();
  const double ai6 = airy(6.0).ai;
  c.expect(std::abs(q6 / ai6 - 1.0) < 1e-6, "q(6)/Ai(6) - 1 = " + num(q6 / ai6 - 1.0));

  const TWTable& t = shared_table(o);
  const double resid = tw_consistency_residual(t);
  c.expect(resid < 1e-6, "F1^2 = F2 exp(-int q) residual " + num(resid));
  bool monotone = true, bounded = true;
  for (std::size_t i = 0; i < t.s.size(); ++i) {
    bounded = bounded && t.F2[i] >= 0.0 && t.F2[i] <= 1.0 && t.F1[i] >= 0.0 && t.F1[i] <= 1.0;
    if (i) monotone = monotone && t.F2[i] >= t.F2[i - 1] && t.F1[i] >= t.F1[i - 1];
  }
  for (int i = 0; i <= 1800; ++i) {
    const double x = -10.0 + 0.01 * i + 0.003;
    bounded = bounded && t.cdf(2, x) >= 0.0 && t.cdf(2, x) <= 1.0;
    if (i) monotone = monotone && t.cdf(2, x) >= t.cdf(2, x - 0.01);
  }
  c.expect(monotone && bounded, "F1, F2 monotone in [0, 1]");
  c.expect(t.F2.back() > 1.0 - 1e-6 && t.F2.front() < 1e-3, "F2(smax) > 1 - 1e-6, F2(smin) < 1e-3");

  const TWTable fine = tw_table(-10.0, 8.0, 0.005);
  double worst = 0.0;
  for (int i = 0; i < 1800; ++i) {
    const double s = -10.0 + 0.01 * i + 0.0037;
    for (int beta : {1, 2}) worst = std::max(worst, std::abs(t.cdf(beta, s) - fine.cdf(beta, s)));
  }
  c.expect(worst < 1e-6, "step 0.01 vs 0.005 max difference " + num(worst));
  c.note("ODE residual " + num(painleve_residual(t)));
  return c.outcome();
}

Outcome small_t_check(const AcceptanceOptions&) {
  const double t = 0.05;
  const double value = 2.0 * edge_laplace(2, t);
  const double ref = std::pow(std::numbers::pi, -0.5) * std::pow(t, -1.5);
  Checks c;
  c.expect(std::abs(value / ref - 1.0) < 0.10,
           "2 int e^{t theta} R_{2,1} = " + num(value) + " vs pi^{-1/2} t^{-3/2} = " + num(ref));
  return c.outcome();
}

// ---- toy -----------------------------------------------------------------

Outcome toy_check(const AcceptanceOptions& o) {
  Checks c;
  const ToyReport p3 = proposition_check(10000, 100, 100000, Proposition::P3, o.seed + 10, o.workers);
  c.expect(p3.distance < 0.05, "P3 TV vs Poisson(1/2) = " + num(p3.distance));
  const int p5len = int(std::floor(std::pow(4096.0, 2.0 / 3.0) + 1e-9));
  const ToyReport p5 = proposition_check(4096, p5len, 100000, Proposition::P5, o.seed + 11, o.workers);
  c.expect(p5.distance < 0.05, "P5 triple TV vs Poisson(1/6) = " + num(p5.distance));
  c.expect(p5.higher_order < 0.01, "P5 order >= 4 frequency " + num(p5.higher_order));
  const ToyExact ex = toy_exact(3, 2);
  c.expect(ex.no_self_intersection == Rational(2, 3) &&
               no_self_intersection_probability(3, 2) == Rational(2, 3),
           "P2 exhaustive n=3 p=2: " + to_string(ex.no_self_intersection));
  return c.outcome();
}

// ---- invariants ----------------------------------------------------------

Outcome invariants_check(const AcceptanceOptions& o) {
  Checks c;
  // Marked balance, Dyck nonnegativity, type identities over every even path.
  std::uint64_t paths = 0, violations = 0;
  for (int n = 2; n <= 4; ++n)
    for (int p = 2; p <= 8; p += 2) {
      if (n == 4 && p == 8) continue;
      enumerate_even_paths(n, p, {}, [&](const ClosedPath& path) {
        ++paths;
        try {
          const PathProfile prof = self_intersection_profile(path);
          int sum = 0, weighted = 0;
          for (std::size_t k = 0; k < prof.type_vector.size(); ++k) {
            sum += prof.type_vector[k];
            weighted += int(k) * prof.type_vector[k];
          }
          const bool ok = int(prof.marked.size()) == p / 2 && sum == n && weighted == p / 2 &&
                          prof.dyck.front() == 0 && prof.dyck.back() == 0 &&
                          *std::min_element(prof.dyck.begin(), prof.dyck.end()) >= 0;
          if (!ok) ++violations;
        } catch (const Error&) {
          ++violations;
        }
      });
    }
  c.expect(violations == 0, std::to_string(paths) + " even paths: marked balance, Dyck, type-vector sums");

  // Merge algebra.
  const ToyCensus a = toy_census(50, 12, 3000, o.seed, 1), b = toy_census(50, 12, 2000, o.seed + 1, 1),
                  d = toy_census(50, 12, 1000, o.seed + 2, 1);
  ToyCensus ab_d = a, a_bd = a, bd = b, db_a = d;
  ab_d.merge(b).merge(d);
  bd.merge(d);
  a_bd.merge(bd);
  db_a.merge(b).merge(a);
  c.expect(ab_d == a_bd && ab_d == db_a, "ToyCensus merge associative and commutative");
  CountCollector x({{-2.0, 0.0}, {0.0, 2.0}}), y = x, z = x;
  x.add(std::vector<double>{-1.0, 0.5, 1.5});
  y.add(std::vector<double>{0.1});
  z.add(std::vector<double>{-3.0, -0.5, -0.25});
  CountCollector xy_z = x, zy_x = z;
  xy_z.merge(y).merge(z);
  zy_x.merge(y).merge(x);
  c.expect(xy_z == zy_x, "CountCollector merge order-independent");
  EmpiricalCDF e1({3.0, 1.0}), e2({2.0}), e3({0.5, 2.0});
  EmpiricalCDF e12_3 = e1, e3_21 = e3;
  e12_3.merge(e2).merge(e3);
  e3_21.merge(e2).merge(e1);
  c.expect(e12_3 == e3_21, "EmpiricalCDF merge order-independent");

  // Determinism and exact symmetry.
  bool symmetric = true, deterministic = true, traces = true;
  for (const char* name : {"goe", "gue", "rademacher", "uniform_hermitian"}) {
    const EnsembleSpec spec = ensemble_by_name(name, 40);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const SampledMatrix m = sample_matrix(spec, s), m2 = sample_matrix(spec, s);
      std::visit(
          [&](const auto& a) {
            using M = std::decay_t<decltype(a)>;
            const M& again = std::get<M>(m2);
            deterministic = deterministic && (a.array() == again.array()).all();
            symmetric = symmetric && (a.array() == a.adjoint().array()).all();
            const Spectrum sp = eigenvalues(a, s);
            double sum = 0.0, sq = 0.0;
            for (double l : sp.values()) {
              sum += l;
              sq += l * l;
            }
            const double scale = 1e-10 * 40 * std::max(1.0, a.norm());
            traces = traces && std::abs(sum - std::real(a.trace())) < scale &&
                     std::abs(sq - a.squaredNorm()) < scale * std::max(1.0, a.norm());
          },
          m);
    }
  }
  c.expect(deterministic, "sample_matrix bit-identical per (spec, seed)");
  c.expect(symmetric, "sampled matrices exactly (conjugate) symmetric");
  c.expect(traces, "sum lambda = Trace A and sum lambda^2 = ||A||_F^2");
  const auto r1 = sample_edge_replicas(goe(30), 40, o.seed, 2, 1.0, 1);
  const auto r3 = sample_edge_replicas(goe(30), 40, o.seed, 2, 1.0, 3);
  bool same = r1.size() == r3.size();
  for (std::size_t i = 0; same && i < r1.size(); ++i)
    same = r1[i].theta == r3[i].theta && r1[i].trace_even == r3[i].trace_even;
  c.expect(same && toy_census(30, 8, 500, o.seed, 1) == toy_census(30, 8, 500, o.seed, 3),
           "results independent of worker count");

  // Kernel positivity and TW laws.
  bool positive = true;
  Stream rng(o.seed);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> pts(2 + trial % 3);
    for (double& v : pts) v = -3.0 + 6.0 * rng.uniform();
    positive = positive && edge_correlation(2, pts) >= 0.0;
  }
  c.expect(positive, "det K(theta_i, theta_j) >= 0 on random point sets");
  bool hermite = true;
  std::string profile;
  for (double theta : {-1.0, 0.0, 2.0}) {
    double prev = 1e300;
    profile += (profile.empty() ? "" : ", ") + std::string("theta=") + num(theta) + ":";
    for (long n : {100L, 400L, 1600L}) {
      const double err = std::abs(hermite_edge_profile(n, theta) - std::pow(2.0, 0.25) * airy(theta).ai);
      hermite = hermite && err < prev;
      prev = err;
      profile += " " + num(err);
    }
  }
  c.expect(hermite, "Hermite edge profile error decreasing along n = 100, 400, 1600 (" + profile + ")");
  const double mass = integrate([](double x) { return gue_finite_density(10, x); }, -3.0, 3.0, 1e-11, 0.25);
  c.expect(std::abs(mass / 10.0 - 1.0) < 1e-6, "integral of rho_{10} = " + num(mass));
  c.expect(kernel_identity_check(o).passed, "kernel identity on [-3, 3]^2");
  {
    const TWTable& t = shared_table(o);
    bool laws = tw_consistency_residual(t) < 1e-6;
    for (int i = 0; i <= 3600; ++i) {
      const double x = -10.5 + 0.005 * i;
      for (int beta : {1, 2}) {
        const double f = t.cdf(beta, x);
        laws = laws && f >= 0.0 && f <= 1.0 && (i == 0 || f >= t.cdf(beta, x - 0.005));
      }
    }
    c.expect(laws, "TW CDFs monotone, bounded, F1/F2 consistent");
  }

  // Path module.
  c.expect(wigner_count_check(o).passed, "Catalan law n(n-1)...(n-s+1) C_s for n <= 6, s <= 4");
  bool injective = true;
  for (int n = 2; n <= 5; ++n)
    for (int p = 2; p <= 8; p += 2) {
      if (double(p) * std::log(double(n)) > std::log(2e6)) continue;
      std::set<std::vector<int>> keys;
      std::uint64_t count = 0;
      enumerate_even_paths(
          n, p, [](const ClosedPath& path) { return has_no_self_intersection(path); },
          [&](const ClosedPath& path) {
            ++count;
            std::vector<int> key{path.at(0)};
            for (int t : marked_instants(path)) {
              key.push_back(t);
              key.push_back(path.at(t));
            }
            keys.insert(std::move(key));
          });
      injective = injective && keys.size() == count && BigInt(count) == wigner_count(n, unsigned(p / 2));
    }
  c.expect(injective, "no-self-intersection paths determined by origin, marked instants and their vertices");
  c.expect(trace_oracle_check(o).passed, "exact_trace_moment equals brute force expectation");
  bool approach = true;
  std::string moments;
  for (unsigned s = 1; s <= 2; ++s) {
    Rational prev_gap = -1;
    for (int n = 3; n <= 6; ++n) {
      const Rational value = exact_trace_moment(n, int(2 * s), rademacher_ensemble(n)) / n;
      Rational gap = value - semicircle_moment(s);
      if (gap < 0) gap = -gap;
      approach = approach && (prev_gap < 0 || gap <= prev_gap);
      prev_gap = gap;
      moments += (moments.empty() ? "" : " ") + to_string(value);
    }
  }
  c.expect(approach, "(1/n) E Tr A^{2s} approaches C_s 4^{-s} along n = 3..6 (" + moments + ")");

  // Toy model.
  bool agree = true;
  double worst_z = 0.0;
  for (int n = 2; n <= 4; ++n)
    for (int p = 1; p <= 4; ++p) {
      const ToyCensus exact = toy_exact(n, p).census;
      const ToyCensus mc = toy_census(n, p, 100000, o.seed + 31 + 10 * n + p, o.workers);
      const double total = double(exact.samples), reps = double(mc.samples);
      auto compare = [&](double exact_count, double mc_count) {
        const double f = exact_count / total, g = mc_count / reps;
        const double se = std::sqrt(f * (1.0 - f) / reps);
        if (se == 0.0) {
          agree = agree && f == g;
        } else {
          worst_z = std::max(worst_z, std::abs(g - f) / se);
        }
      };
      compare(double(exact.no_self_intersection), double(mc.no_self_intersection));
      compare(double(exact.repeated_edge), double(mc.repeated_edge));
      compare(double(exact.nonsimple), double(mc.nonsimple));
      compare(double(exact.beyond_triple), double(mc.beyond_triple));
      for (std::size_t k = 2; k < std::max(exact.histogram.size(), mc.histogram.size()); ++k) {
        const std::size_t len = std::max(k < exact.histogram.size() ? exact.histogram[k].size() : 1,
                                         k < mc.histogram.size() ? mc.histogram[k].size() : 1);
        for (std::size_t m = 0; m < len; ++m) {
          auto at = [&](const ToyCensus& cs) {
            if (k >= cs.histogram.size() || cs.histogram[k].empty()) return m == 0 ? double(cs.samples) : 0.0;
            return m < cs.histogram[k].size() ? double(cs.histogram[k][m]) : 0.0;
          };
          compare(at(exact), at(mc));
        }
      }
    }
  c.expect(agree && worst_z < 5.0, "toy census vs exhaustive n <= 4, p <= 4: max z = " + num(worst_z));
  bool counting = true;
  for (int n = 1; n <= 5; ++n)
    for (int p = 1; p <= 4; ++p) {
      std::uint64_t falling = 1;
      for (int k = 0; k < p; ++k) falling *= std::uint64_t(std::max(n - k, 0));
      counting = counting && toy_exact(n, p).census.no_self_intersection == falling;
    }
  c.expect(counting, "sequences without self-intersection = n(n-1)...(n-p+1), n <= 5, p <= 4");
  {
    std::vector<double> tv;
    for (int n : {10000, 20000, 40000}) {
      const int p = int(std::floor(std::sqrt(double(n)) + 1e-9));
      tv.push_back(poisson_tv(simple_count_pmf(n, p, 40), double(p) * p / (2.0 * n)));
    }
    c.expect(tv[1] < tv[0] && tv[2] < tv[1], "simple-count TV to Poisson decreasing along n = 1e4, 2e4, 4e4: " +
                                                 num(tv[0]) + " " + num(tv[1]) + " " + num(tv[2]));
  }

  // Statistical properties of the spectra and edge statistics.
  {
    bool entries = true;
    for (const char* name : {"goe", "rademacher", "uniform", "gue"}) {
      const EnsembleSpec spec = ensemble_by_name(name, 60);
      const double n = spec.n;
      double off = 0.0, off4 = 0.0, diag = 0.0, diag4 = 0.0;
      std::uint64_t n_off = 0, n_diag = 0;
      for (std::uint64_t r = 0; r < 60; ++r) {
        const SampledMatrix m = sample_matrix(spec, o.seed + 1000 + r);
        std::visit(
            [&](const auto& a) {
              for (int j = 0; j < a.cols(); ++j)
                for (int i = 0; i <= j; ++i) {
                  const double v = std::norm(std::complex<double>(a(i, j))) * n;
                  (i == j ? diag : off) += v;
                  (i == j ? diag4 : off4) += v * v;
                  ++(i == j ? n_diag : n_off);
                }
            },
            m);
      }
      const double off_expected = spec.beta() == 1 ? to_double(spec.off_diagonal.variance)
                                                   : 2.0 * to_double(spec.off_diagonal.variance);
      const double diag_expected = to_double(spec.diagonal.variance);
      auto within = [](double sum, double sum2, std::uint64_t count, double expected) {
        const double mean = sum / double(count);
        const double se = std::sqrt(std::max(sum2 / double(count) - mean * mean, 0.0) / double(count));
        return std::abs(mean - expected) <= 5.0 * se + 1e-15;
      };
      entries = entries && n_off >= 100000 && within(off, off4, n_off, off_expected) &&
                within(diag, diag4, n_diag, diag_expected);
    }
    c.expect(entries, "entry second moments within 5 standard errors over >= 1e5 entries");
  }
  {
    std::string sym;
    bool spectral = true, statistic = true;
    for (const char* name : {"goe", "rademacher"}) {
      const auto recs = sample_edge_replicas(ensemble_by_name(name, 60), 10000, o.seed + 41, 1, 1.0, o.workers);
      std::vector<double> top, bottom, up, low;
      for (const auto& r : recs) {
        top.push_back(r.lambda_max);
        bottom.push_back(-r.lambda_min);
        up.push_back(r.s_upper);
        low.push_back(r.s_lower);
      }
      const double d1 = ks_two_sample(EmpiricalCDF(top), EmpiricalCDF(bottom));
      const double d2 = ks_two_sample(EmpiricalCDF(up), EmpiricalCDF(low));
      spectral = spectral && d1 < 0.02;
      statistic = statistic && d2 < 0.03;
      sym += std::string(sym.empty() ? "" : ", ") + name + " " + num(d1) + "/" + num(d2);
    }
    c.expect(spectral, "lambda_1 vs -lambda_n two-sample KS < 0.02 at 1e4 replicas (" + sym + ")");
    c.expect(statistic, "upper vs lower edge statistic two-sample KS < 0.03");
  }
  {
    const auto recs = sample_edge_replicas(goe(200), 200, o.seed + 43, 1, 0.0, o.workers);
    double mean = 0.0;
    for (const auto& r : recs) mean += r.lambda_max / double(recs.size());
    c.expect(mean > 0.9 && mean < 1.1, "mean lambda_1 at n = 200: " + num(mean));
  }
  {
    constexpr int n = 400;
    const auto recs = sample_edge_replicas(goe(n), 500, o.seed + 47, 1, 0.2, o.workers);
    double mean = 0.0;
    std::size_t outside = 0;
    for (const auto& r : recs) {
      mean += r.s_upper / double(recs.size());
      outside += r.lambda_max > 1.0 + 0.5 / std::sqrt(double(n)) ? 1 : 0;
    }
    const double bound = 0.5 / std::sqrt(std::numbers::pi) * std::pow(0.2, -1.5);
    c.expect(mean > 0.5 * bound && mean < 2.0 * bound,
             "mean truncated sum at t = 0.2: " + num(mean) + " vs " + num(bound) + " within factor 2");
    const double freq = double(outside) / double(recs.size());
    c.expect(freq < 0.05, "tail frequency at n = 400: " + num(freq));
  }

  // Experiment runner: determinism, config echo, atomic output.
  {
    const auto dir = o.cache_dir / "invariant_runs";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    ExperimentConfig cfg;
    cfg.command = "sample-edge";
    cfg.n = 30;
    cfg.replicas = 50;
    cfg.seed = o.seed;
    cfg.k = 2;
    cfg.workers = o.workers;
    cfg.format = "json";
    cfg.output = (dir / "a.json").string();
    run(cfg);
    cfg.output = (dir / "b.json").string();
    run(cfg);
    const Json a = Json::parse(read_file(dir / "a.json")), b = Json::parse(read_file(dir / "b.json"));
    c.expect(a.at("records") == b.at("records"), "rerun reproduces records bit-identically");
    c.expect(a.contains("config") && a.contains("version") && a.at("config").at("n") == 30,
             "outputs embed resolved config and version");
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) files += entry.is_regular_file();
    c.expect(files == 2, "no stray temporary files next to outputs");
    std::filesystem::remove_all(dir);
  }
  return c.outcome();
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "combinatorics", "Catalan/Wigner count", 60, wigner_count_check},
      {2, "combinatorics", "trace-moment oracle", 120, trace_oracle_check},
      {3, "spectra", "semicircle moments", 600, semicircle_moments_check},
      {4, "kernels", "Airy kernel identity", 10, kernel_identity_check},
      {5, "kernels", "Painleve/Tracy-Widom self-consistency", 30, painleve_check},
      {6, "spectra", "edge law, Gaussian case", 1200, edge_law_check},
      {7, "spectra", "edge universality", 1200, universality_check},
      {8, "spectra", "linear-statistic limit", 600, linear_statistic_check},
      {9, "kernels", "small-t asymptotics", 5, small_t_check},
      {10, "toy", "toy-model Poisson limits", 300, toy_check},
      {11, "spectra", "large-deviation smallness", 600, tail_check},
      {12, "invariants", "invariant suites", 120, invariants_check},
  };
  return all;
}

}  // namespace

std::vector<std::string> acceptance_groups() {
  return {"combinatorics", "spectra", "kernels", "toy", "invariants"};
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream out;
  out << "criterion " << r.id << " [" << r.group << "] " << r.name << ": "
      << (r.passed ? "PASS" : "FAIL") << " (" << format_number(r.seconds) << " s of "
      << format_number(r.budget_seconds) << " s) " << r.detail;
  return out.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream* log) {
  for (const auto& g : options.only) {
    const auto groups = acceptance_groups();
    if (std::find(groups.begin(), groups.end(), g) == groups.end())
      throw ConfigError("unknown acceptance group '" + g + "'");
  }
  std::vector<CriterionResult> results;
  for (const Criterion& cr : criteria()) {
    if (!options.only.empty() && !options.only.count(cr.group)) continue;
    CriterionResult r{cr.id, cr.group, cr.name, false, 0.0, cr.budget, {}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome out = cr.check(options);
      r.passed = out.passed;
      r.detail = out.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("FAILED: exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += " [runtime budget exceeded]";
    }
    if (log) *log << format_result_line(r) << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

Json acceptance_report(const std::vector<CriterionResult>& results) {
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    list.push_back({{"id", r.id},
                    {"group", r.group},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"seconds", r.seconds},
                    {"budget_seconds", r.budget_seconds},
                    {"detail", r.detail}});
  }
  return {{"version", version_tag()}, {"passed", all}, {"criteria", list}};
}

}  // namespace rmt
