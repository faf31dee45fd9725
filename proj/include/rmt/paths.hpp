#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/rational.hpp"

namespace rmt {

/// Closed walk i_0 -> i_1 -> ... -> i_{p-1} -> i_0 on the complete graph with
/// loops on vertices 1..n. Step t (1 <= t <= p) traverses {i_{t-1}, i_t}
/// where i_p = i_0.
struct ClosedPath {
  std::vector<int> vertices;
  int n = 0;

  std::size_t p() const { return vertices.size(); }
  int at(std::size_t instant) const { return vertices[instant % vertices.size()]; }
  /// DomainError unless 1 <= i_t <= n and the path is nonempty.
  void validate() const;
};

/// Unordered edge {a, b} stored with a <= b; a == b is a loop.
using Edge = std::pair<int, int>;
Edge make_edge(int a, int b);

std::map<Edge, int> edge_multiplicities(const ClosedPath& path);

/// Every edge traversed an even number of times.
bool is_even(const ClosedPath& path);
bool has_loop(const ClosedPath& path);

/// Instants t in 1..p at which the traversed edge has odd cumulative count.
/// DomainError for a path that is not even.
std::vector<int> marked_instants(const ClosedPath& path);

/// x(0..p), up at marked instants, down otherwise. InvariantError if it
/// goes negative or does not return to 0.
std::vector<int> dyck_trajectory(const ClosedPath& path);

/// Even path whose marked-instant vertices, together with i_0 at instant 0,
/// are pairwise distinct.
bool has_no_self_intersection(const ClosedPath& path);

/// Simple self-intersection vertex and the three candidate return edges:
/// (a) first arrival edge, (b) edge leaving right after the first arrival,
/// (c) edge of the second marked arrival.
struct SimpleSelfIntersection {
  int vertex = 0;
  bool closed = true;
  bool same_edge = false;
  /// Edges at the vertex with odd count at its first unmarked departure
  /// after the second marked arrival.
  int open_edges = 0;
  std::optional<Edge> first_arrival, first_departure, second_arrival;
};

struct PathProfile {
  std::vector<int> marked;
  /// n_k = number of vertices reached at exactly k marked instants
  /// (the instant-0 visit of i_0 is not counted); size s+1.
  std::vector<int> type_vector;
  int simple_closed = 0;
  int simple_nonclosed = 0;   // r
  int same_edge_simple = 0;   // q
  int nu_max = 0;
  std::vector<int> dyck;
  std::vector<SimpleSelfIntersection> simple;
};

PathProfile self_intersection_profile(const ClosedPath& path);

using PathFilter = std::function<bool(const ClosedPath&)>;
using PathVisitor = std::function<void(const ClosedPath&)>;

/// Exhaustive depth-first enumeration of even closed paths of length p on n
/// vertices (every origin), pruning branches whose odd-edge count exceeds
/// the remaining steps. Counts paths accepted by `filter` (all even paths if
/// empty) and passes each to `visitor`. ResourceError if n^p > budget.
std::uint64_t enumerate_even_paths(int n, int p, const PathFilter& filter = {},
                                   const PathVisitor& visitor = {},
                                   double budget = 1e9);

/// E Trace A^p for the Wigner matrix of `spec` at its dimension n, summed
/// over even closed paths with exact entry moments and the n^{-p/2} scale.
Rational exact_trace_moment(int n, int p, const EnsembleSpec& spec, double budget = 1e9);

BigInt catalan(unsigned s);
/// C_s / 4^s.
Rational semicircle_moment(unsigned s);
/// n (n-1) ... (n-s) C_s: even paths of length 2s without self-intersections
/// (origin plus s distinct discovered vertices).
BigInt wigner_count(int n, unsigned s);

/// Exact E Trace A^{2s} for GUE(n) from the Harer-Zagier recursion.
Rational gue_moment_exact(int n, unsigned s);

/// Connected components of the shares-an-edge relation, as index lists in
/// order of first member. DomainError if the paths disagree on n.
std::vector<std::vector<std::size_t>> cluster_partition(const std::vector<ClosedPath>& paths);

}  // namespace rmt
