#include <doctest.h>

#include <set>
#include <vector>

#include "rmt/errors.hpp"
#include "rmt/paths.hpp"

using namespace rmt;

namespace {

ClosedPath path(std::vector<int> v, int n) { return ClosedPath{std::move(v), n}; }

// Calls f on every sequence in {1..n}^p.
template <typename F>
void for_all_sequences(int n, int p, F&& f) {
  std::vector<int> v(p, 1);
  for (;;) {
    f(path(v, n));
    int t = p - 1;
    while (t >= 0 && v[t] == n) v[t--] = 1;
    if (t < 0) return;
    ++v[t];
  }
}

// E Trace A^p for A = X / sqrt(n), X symmetric with entries +-1/2, averaged
// over all sign assignments of the upper triangle.
Rational rademacher_by_signs(int n, int p) {
  const int cells = n * (n + 1) / 2;
  Rational total = 0;
  for (int mask = 0; mask < (1 << cells); ++mask) {
    std::vector<std::vector<Rational>> x(n, std::vector<Rational>(n));
    int bit = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++bit) x[i][j] = x[j][i] = (mask >> bit & 1) ? Rational(1, 2) : Rational(-1, 2);
    auto power = x;
    for (int k = 1; k < p; ++k) {
      std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) next[i][j] += power[i][l] * x[l][j];
      power = std::move(next);
    }
    for (int i = 0; i < n; ++i) total += power[i][i];
  }
  // Trace (X/sqrt n)^p = Trace X^p / n^{p/2}; p is even here.
  Rational half = 1;
  for (int k = 0; k < p / 2; ++k) half *= n;
  return total / Rational(1 << cells) / half;
}

}  // namespace

TEST_CASE("edge multiplicities") {
  const auto m = edge_multiplicities(path({1, 2}, 2));
  CHECK(m.size() == 1);
  CHECK(m.at(make_edge(2, 1)) == 2);
  const auto loop = edge_multiplicities(path({1, 1}, 1));
  CHECK(loop.at(make_edge(1, 1)) == 2);
  CHECK(has_loop(path({1, 1}, 1)));
  CHECK_FALSE(has_loop(path({1, 2}, 2)));
  const ClosedPath fig1 = path({1, 5, 3, 5, 2, 4, 2, 5}, 5);
  for (const auto& [e, k] : edge_multiplicities(fig1)) CHECK(k == 2);
  CHECK(is_even(fig1));
  CHECK_FALSE(is_even(path({1, 2, 3}, 3)));
}

TEST_CASE("path validation") {
  CHECK_THROWS_AS(path({1, 4}, 3).validate(), DomainError);
  CHECK_THROWS_AS(path({}, 3).validate(), DomainError);
  CHECK_THROWS_AS(path({0, 1}, 3).validate(), DomainError);
  CHECK(path({1, 2, 3}, 3).at(3) == 1);
}

TEST_CASE("marked instants") {
  CHECK(marked_instants(path({1, 2, 1, 2}, 2)) == std::vector<int>{1, 3});
  CHECK(marked_instants(path({1, 5, 3, 5, 2, 4, 2, 5}, 5)) == std::vector<int>{1, 2, 4, 5});
  CHECK(marked_instants(path({1, 5, 3, 2, 5, 4, 5, 3, 2, 5}, 5)) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK_THROWS_AS(marked_instants(path({1, 2, 3}, 3)), DomainError);
}

TEST_CASE("dyck trajectory") {
  CHECK(dyck_trajectory(path({1, 2}, 2)) == std::vector<int>{0, 1, 0});
  CHECK(dyck_trajectory(path({1, 2, 1, 2}, 2)) == std::vector<int>{0, 1, 0, 1, 0});
}

TEST_CASE("self-intersections") {
  CHECK(has_no_self_intersection(path({1, 5, 3, 5, 2, 4, 2, 5}, 5)));
  CHECK_FALSE(has_no_self_intersection(path({1, 5, 3, 2, 5, 4, 5, 3, 2, 5}, 5)));
  CHECK(self_intersection_profile(path({1, 5, 3, 5, 2, 4, 2, 5}, 5)).type_vector[2] == 0);
}

TEST_CASE("closed simple self-intersection") {
  const PathProfile prof = self_intersection_profile(path({1, 2, 3, 4, 3, 2, 5, 3, 6, 3, 5, 2}, 6));
  CHECK(prof.type_vector == std::vector<int>{1, 4, 1, 0, 0, 0, 0});
  REQUIRE(prof.simple.size() == 1);
  CHECK(prof.simple[0].vertex == 3);
  CHECK(prof.simple[0].closed);
  CHECK(prof.simple_closed == 1);
  CHECK(prof.simple_nonclosed == 0);
}

TEST_CASE("nonclosed simple self-intersection") {
  const PathProfile prof = self_intersection_profile(path({1, 2, 3, 4, 2, 5, 2, 3, 4, 2}, 5));
  CHECK(prof.type_vector == std::vector<int>{1, 3, 1, 0, 0, 0});
  REQUIRE(prof.simple.size() == 1);
  CHECK(prof.simple[0].vertex == 2);
  CHECK_FALSE(prof.simple[0].closed);
  CHECK(prof.simple_nonclosed == 1);
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_even_paths(2, 2, [](const ClosedPath& q) { return !has_loop(q); }) == 2);
  CHECK(enumerate_even_paths(3, 4, [](const ClosedPath& q) { return has_no_self_intersection(q); }) == 12);
  std::uint64_t brute = 0;
  for_all_sequences(3, 4, [&](const ClosedPath& q) { brute += is_even(q) ? 1 : 0; });
  CHECK(enumerate_even_paths(3, 4) == brute);
  CHECK(brute == 45);
  for (int n = 1; n <= 4; ++n)
    for (int p = 1; p <= 6; ++p) {
      std::uint64_t even = 0;
      for_all_sequences(n, p, [&](const ClosedPath& q) { even += is_even(q) ? 1 : 0; });
      CHECK(enumerate_even_paths(n, p) == even);
    }
  CHECK_THROWS_AS(enumerate_even_paths(50, 20), ResourceError);
}

TEST_CASE("no-self-intersection count equals n(n-1)...(n-s) C_s") {
  for (int n = 1; n <= 6; ++n)
    for (unsigned s = 1; s <= 4; ++s) {
      const std::uint64_t got = enumerate_even_paths(
          n, int(2 * s), [](const ClosedPath& q) { return has_no_self_intersection(q); });
      BigInt expected = catalan(s);
      for (unsigned k = 0; k <= s; ++k) expected *= std::max(n - int(k), 0);
      CHECK(BigInt(got) == expected);
      CHECK(wigner_count(n, s) == expected);
    }
  CHECK(wigner_count(2, 1) == 2);
  CHECK(wigner_count(3, 2) == 12);
}

TEST_CASE("catalan and semicircle moments") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(3) == 5);
  CHECK(catalan(10) == 16796);
  CHECK(semicircle_moment(1) == Rational(1, 4));
  CHECK(semicircle_moment(2) == Rational(1, 8));
  CHECK(semicircle_moment(3) == Rational(5, 64));
}

TEST_CASE("exact trace moments") {
  CHECK(exact_trace_moment(2, 2, goe(2)) == Rational(3, 4));
  CHECK(exact_trace_moment(2, 2, rademacher_ensemble(2)) == Rational(1, 2));
  for (const EnsembleSpec& spec : {goe(2), gue(2), rademacher_ensemble(2), uniform_ensemble(2)})
    CHECK(exact_trace_moment(2, 3, spec) == 0);
  CHECK(exact_trace_moment(3, 4, rademacher_ensemble(3)) == rademacher_by_signs(3, 4));
  CHECK(exact_trace_moment(3, 4, rademacher_ensemble(3)) == Rational(5, 16));
  for (int n = 1; n <= 3; ++n)
    for (int p = 2; p <= 6; p += 2) CHECK(exact_trace_moment(n, p, rademacher_ensemble(n)) == rademacher_by_signs(n, p));
  CHECK_THROWS_AS(exact_trace_moment(40, 30, goe(40)), ResourceError);
}

TEST_CASE("gue moments follow the Harer-Zagier recursion") {
  CHECK(exact_trace_moment(2, 2, gue(2)) == Rational(1, 2));
  for (int n = 1; n <= 4; ++n)
    for (unsigned s = 1; s <= 3; ++s) {
      if (n == 4 && s == 3) continue;
      CHECK(exact_trace_moment(n, int(2 * s), gue(n)) == gue_moment_exact(n, s));
    }
  // (2n^3 + n) / (16 n^2) at s = 2.
  CHECK(gue_moment_exact(3, 2) == Rational(19, 48));
  CHECK(exact_trace_moment(3, 4, gue(3)) == Rational(19, 48));
  CHECK(to_double(gue_moment_exact(400, 3)) / 400 == doctest::Approx(5.0 / 64).epsilon(1e-3));
}

TEST_CASE("normalized moments approach the semicircle") {
  Rational prev = 1;
  for (int n = 3; n <= 6; ++n) {
    Rational gap = exact_trace_moment(n, 4, rademacher_ensemble(n)) / n - semicircle_moment(2);
    if (gap < 0) gap = -gap;
    CHECK(gap <= prev);
    prev = gap;
  }
}

TEST_CASE("invariants over all even paths") {
  for (int n = 2; n <= 4; ++n)
    for (int p = 2; p <= 6; p += 2)
      enumerate_even_paths(n, p, {}, [&](const ClosedPath& q) {
        const PathProfile prof = self_intersection_profile(q);
        CHECK(int(prof.marked.size()) == p / 2);
        CHECK(*std::min_element(prof.dyck.begin(), prof.dyck.end()) >= 0);
        int sum = 0, weighted = 0;
        for (std::size_t k = 0; k < prof.type_vector.size(); ++k) {
          sum += prof.type_vector[k];
          weighted += int(k) * prof.type_vector[k];
        }
        CHECK(sum == n);
        CHECK(weighted == p / 2);
      });
}

TEST_CASE("paths without self-intersection are fixed by marked instants and their vertices") {
  std::set<std::vector<int>> keys;
  const std::uint64_t count = enumerate_even_paths(
      5, 6, [](const ClosedPath& q) { return has_no_self_intersection(q); },
      [&](const ClosedPath& q) {
        std::vector<int> key{q.at(0)};
        for (int t : marked_instants(q)) {
          key.push_back(t);
          key.push_back(q.at(t));
        }
        keys.insert(key);
      });
  CHECK(keys.size() == count);
}

TEST_CASE("clusters") {
  const auto apart = cluster_partition({path({1, 2}, 6), path({3, 4}, 6)});
  CHECK(apart.size() == 2);
  const auto shared = cluster_partition({path({1, 2}, 6), path({2, 1}, 6)});
  CHECK(shared.size() == 1);
  const auto chain = cluster_partition({path({1, 2}, 6), path({2, 1, 3, 4}, 6), path({4, 3, 5, 6}, 6)});
  REQUIRE(chain.size() == 1);
  CHECK(chain[0].size() == 3);
  // Sharing a vertex without an edge does not join.
  CHECK(cluster_partition({path({1, 2}, 6), path({2, 3}, 6)}).size() == 2);
  CHECK_THROWS_AS(cluster_partition({path({1, 2}, 6), path({1, 2}, 5)}), DomainError);
}
