#include "rmt/paths.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "rmt/errors.hpp"

namespace rmt {

void ClosedPath::validate() const {
  if (n < 1) throw DomainError("ClosedPath: n must be positive");
  if (vertices.empty()) throw DomainError("ClosedPath: empty vertex sequence");
  for (int v : vertices)
    if (v < 1 || v > n)
      throw DomainError("ClosedPath: vertex " + std::to_string(v) + " outside 1.." +
                        std::to_string(n));
}

Edge make_edge(int a, int b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

std::map<Edge, int> edge_multiplicities(const ClosedPath& path) {
  path.validate();
  std::map<Edge, int> counts;
  for (std::size_t t = 1; t <= path.p(); ++t) ++counts[make_edge(path.at(t - 1), path.at(t))];
  return counts;
}

bool is_even(const ClosedPath& path) {
  for (const auto& [edge, count] : edge_multiplicities(path))
    if (count % 2 != 0) return false;
  return true;
}

bool has_loop(const ClosedPath& path) {
  for (std::size_t t = 1; t <= path.p(); ++t)
    if (path.at(t - 1) == path.at(t)) return true;
  return false;
}

std::vector<int> marked_instants(const ClosedPath& path) {
  if (!is_even(path)) throw DomainError("marked_instants: path is not even");
  std::map<Edge, int> running;
  std::vector<int> marked;
  for (std::size_t t = 1; t <= path.p(); ++t)
    if (++running[make_edge(path.at(t - 1), path.at(t))] % 2 == 1) marked.push_back(int(t));
  return marked;
}

std::vector<int> dyck_trajectory(const ClosedPath& path) {
  const std::vector<int> marked = marked_instants(path);
  std::vector<int> x(path.p() + 1, 0);
  std::size_t next = 0;
  for (std::size_t t = 1; t <= path.p(); ++t) {
    const bool up = next < marked.size() && marked[next] == int(t);
    if (up) ++next;
    x[t] = x[t - 1] + (up ? 1 : -1);
    if (x[t] < 0) throw InvariantError("dyck_trajectory: walk went negative");
  }
  if (x.back() != 0) throw InvariantError("dyck_trajectory: walk does not return to 0");
  return x;
}

bool has_no_self_intersection(const ClosedPath& path) {
  if (!is_even(path)) return false;
  std::set<int> seen{path.at(0)};
  for (int t : marked_instants(path))
    if (!seen.insert(path.at(t)).second) return false;
  return true;
}

PathProfile self_intersection_profile(const ClosedPath& path) {
  PathProfile prof;
  prof.marked = marked_instants(path);
  prof.dyck = dyck_trajectory(path);
  const std::size_t p = path.p();
  const int s = int(p / 2);
  std::vector<char> is_marked(p + 1, 0);
  for (int t : prof.marked) is_marked[t] = 1;

  std::map<int, std::vector<int>> arrivals;  // vertex -> marked arrival instants
  std::map<int, std::set<int>> targets;      // vertex -> marked step destinations
  for (int t : prof.marked) {
    arrivals[path.at(t)].push_back(t);
    targets[path.at(t - 1)].insert(path.at(t));
  }
  prof.type_vector.assign(s + 1, 0);
  int visited = 0;
  for (const auto& [v, times] : arrivals) {
    ++prof.type_vector[times.size()];
    ++visited;
  }
  prof.type_vector[0] = path.n - visited;
  for (const auto& [v, dest] : targets) prof.nu_max = std::max(prof.nu_max, int(dest.size()));

  for (const auto& [v, times] : arrivals) {
    if (times.size() != 2) continue;
    SimpleSelfIntersection si;
    si.vertex = v;
    const int first = times[0], second = times[1];
    si.first_arrival = make_edge(path.at(first - 1), v);
    si.first_departure = make_edge(v, path.at(first + 1));
    si.second_arrival = make_edge(path.at(second - 1), v);
    si.same_edge = *si.first_arrival == *si.second_arrival;

    std::map<Edge, int> running;
    for (int t = 1; t <= int(p); ++t) {
      const int from = path.at(t - 1);
      if (t > second && from == v && !is_marked[t]) {
        for (const auto& [edge, count] : running)
          if ((edge.first == v || edge.second == v) && count % 2 == 1) ++si.open_edges;
        break;
      }
      ++running[make_edge(from, path.at(t))];
    }
    // A vertex never left along a returning edge has no ambiguity to resolve.
    si.closed = si.open_edges <= 1;
    if (si.closed)
      ++prof.simple_closed;
    else
      ++prof.simple_nonclosed;
    if (si.same_edge) ++prof.same_edge_simple;
    prof.simple.push_back(si);
  }
  return prof;
}

namespace {

class EvenPathSearch {
 public:
  EvenPathSearch(int n, int p, const PathFilter& filter, const PathVisitor& visitor)
      : n_(n), p_(p), filter_(filter), visitor_(visitor), counts_(std::size_t(n) * n, 0) {
    path_.n = n;
    path_.vertices.assign(p, 0);
  }

  std::uint64_t run() {
    for (int origin = 1; origin <= n_; ++origin) {
      path_.vertices[0] = origin;
      descend(1);
    }
    return accepted_;
  }

 private:
  int& count(int a, int b) {
    if (a > b) std::swap(a, b);
    return counts_[std::size_t(a - 1) * n_ + (b - 1)];
  }

  void toggle(int a, int b, int delta) {
    int& c = count(a, b);
    c += delta;
    odd_ += (c % 2 != 0) ? 1 : -1;
  }

  void descend(int t) {
    const int prev = path_.vertices[t - 1];
    if (t == p_) {
      toggle(prev, path_.vertices[0], 1);
      if (odd_ == 0 && (!filter_ || filter_(path_))) {
        ++accepted_;
        if (visitor_) visitor_(path_);
      }
      toggle(prev, path_.vertices[0], -1);
      return;
    }
    for (int v = 1; v <= n_; ++v) {
      toggle(prev, v, 1);
      if (odd_ <= p_ - t) {
        path_.vertices[t] = v;
        descend(t + 1);
      }
      toggle(prev, v, -1);
    }
  }

  int n_, p_;
  const PathFilter& filter_;
  const PathVisitor& visitor_;
  std::vector<int> counts_;
  int odd_ = 0;
  std::uint64_t accepted_ = 0;
  ClosedPath path_;
};

void check_budget(int n, int p, double budget) {
  if (n < 1 || p < 1) throw DomainError("enumerate_even_paths: need n >= 1 and p >= 1");
  if (double(p) * std::log(double(n)) > std::log(budget))
    throw ResourceError("enumerate_even_paths: n^p = " + std::to_string(n) + "^" +
                        std::to_string(p) + " exceeds the enumeration budget");
}

// E[(xi + i eta)^k (xi - i eta)^l] for independent xi, eta with law `law`.
Rational hermitian_moment(const EntryLaw& law, unsigned k, unsigned l) {
  // Expand and keep the real part; i^m cycles through 1, i, -1, -i.
  Rational real = 0;
  std::vector<BigInt> ck(k + 1), cl(l + 1);
  ck[0] = cl[0] = 1;
  for (unsigned a = 1; a <= k; ++a) ck[a] = ck[a - 1] * (k - a + 1) / a;
  for (unsigned b = 1; b <= l; ++b) cl[b] = cl[b - 1] * (l - b + 1) / b;
  for (unsigned a = 0; a <= k; ++a) {
    for (unsigned b = 0; b <= l; ++b) {
      const unsigned ip = k - a, im = l - b;  // powers of (i eta) and (-i eta)
      const unsigned eta = ip + im;
      if (eta % 2 != 0 || (a + b) % 2 != 0) continue;
      // i^ip (-i)^im = i^(ip+im) (-1)^im
      int sign = ((eta / 2) % 2 == 0) ? 1 : -1;
      if (im % 2 != 0) sign = -sign;
      real += Rational(ck[a] * cl[b] * sign) * law.moment(a + b) * law.moment(eta);
    }
  }
  return real;
}

}  // namespace

std::uint64_t enumerate_even_paths(int n, int p, const PathFilter& filter,
                                   const PathVisitor& visitor, double budget) {
  check_budget(n, p, budget);
  return EvenPathSearch(n, p, filter, visitor).run();
}

Rational exact_trace_moment(int n, int p, const EnsembleSpec& spec, double budget) {
  check_budget(n, p, budget);
  if (p % 2 != 0) return 0;
  const bool hermitian = spec.symmetry == Symmetry::hermitian;
  // Path weights depend only on the multiset of per-edge traversal patterns.
  std::map<std::vector<int>, Rational> cache;
  Rational total = 0;
  enumerate_even_paths(n, p, {}, [&](const ClosedPath& path) {
    std::map<Edge, std::pair<int, int>> orient;  // (low->high, high->low)
    for (std::size_t t = 1; t <= path.p(); ++t) {
      const int a = path.at(t - 1), b = path.at(t);
      auto& o = orient[make_edge(a, b)];
      (a <= b ? o.first : o.second) += 1;
    }
    std::vector<int> key;
    for (const auto& [edge, o] : orient) {
      const bool loop = edge.first == edge.second;
      key.push_back(loop ? -(o.first + o.second) : (hermitian ? o.first * 1000 + o.second
                                                              : o.first + o.second));
    }
    std::sort(key.begin(), key.end());
    auto it = cache.find(key);
    if (it == cache.end()) {
      Rational w = 1;
      for (const auto& [edge, o] : orient) {
        const unsigned m = unsigned(o.first + o.second);
        if (edge.first == edge.second)
          w *= spec.diagonal.moment(m);
        else if (hermitian)
          w *= hermitian_moment(spec.off_diagonal, unsigned(o.first), unsigned(o.second));
        else
          w *= spec.off_diagonal.moment(m);
        if (w == 0) break;
      }
      it = cache.emplace(std::move(key), w).first;
    }
    total += it->second;
  }, budget);
  BigInt scale = 1;
  for (int i = 0; i < p / 2; ++i) scale *= n;
  return total / Rational(scale);
}

BigInt catalan(unsigned s) {
  BigInt c = 1;
  for (unsigned k = 0; k < s; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

Rational semicircle_moment(unsigned s) {
  BigInt four = 1;
  for (unsigned k = 0; k < s; ++k) four *= 4;
  return Rational(catalan(s), four);
}

BigInt wigner_count(int n, unsigned s) {
  if (n < int(s) + 1) return 0;
  BigInt falling = 1;
  for (unsigned k = 0; k <= s; ++k) falling *= (n - int(k));
  return falling * catalan(s);
}

Rational gue_moment_exact(int n, unsigned s) {
  if (n < 1) throw DomainError("gue_moment_exact: n must be positive");
  // c_k = E Trace H^{2k} for unit-variance entries:
  // (k+2) c_{k+1} = (4k+2) n c_k + k (4k^2-1) c_{k-1}.
  std::vector<BigInt> c{BigInt(n), BigInt(n) * n};
  for (unsigned k = 1; k < s; ++k) {
    const BigInt kk = k;
    c.push_back(((4 * kk + 2) * n * c[k] + kk * (4 * kk * kk - 1) * c[k - 1]) / (kk + 2));
  }
  BigInt scale = 1;
  for (unsigned k = 0; k < s; ++k) scale *= 4 * BigInt(n);
  return Rational(c[s], scale);
}

std::vector<std::vector<std::size_t>> cluster_partition(const std::vector<ClosedPath>& paths) {
  for (const auto& path : paths) {
    path.validate();
    if (path.n != paths.front().n) throw DomainError("cluster_partition: paths disagree on n");
  }
  std::vector<std::size_t> parent(paths.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<Edge, std::size_t> owner;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t t = 1; t <= paths[i].p(); ++t) {
      const Edge e = make_edge(paths[i].at(t - 1), paths[i].at(t));
      auto [it, fresh] = owner.emplace(e, i);
      if (!fresh) {
        const std::size_t a = find(it->second), b = find(i);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<std::size_t, std::size_t> slot;
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    auto [it, fresh] = slot.emplace(find(i), clusters.size());
    if (fresh) clusters.emplace_back();
    clusters[it->second].push_back(i);
  }
  return clusters;
}

}  // namespace rmt
