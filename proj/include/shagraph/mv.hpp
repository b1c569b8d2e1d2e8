#ifndef SHAGRAPH_MV_HPP
#define SHAGRAPH_MV_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shagraph/common.hpp"
#include "shagraph/graph.hpp"
#include "shagraph/groups.hpp"
#include "shagraph/sha.hpp"

namespace shagraph {

// ---------------------------------------------------------------------------
// FactorizationSystem
//
// Finite model of the Mayer-Vietoris coboundary: a connected oriented
// bipartite multigraph, one ambient finite group G shared by all edges, and
// one subgroup of G per vertex (the full group by default).  Edge tuples
// (one element of G per edge, in global edge order) are acted on by vertex
// elements via
//
//     g_e  ->  u_right^{-1} · g_e · u_left
//
// where left is the point side and right is the component side of the
// default orientation.  Orbits of this action are the double cosets; the
// pointed orbit is the orbit of the all-identity tuple.

using EdgeTuple = std::vector<int>;

class FactorizationSystem {
public:
  FactorizationSystem(const ReductionGraph& g, const GaugeData& gauge, FiniteGroup group)
      : FactorizationSystem(g, gauge, std::move(group), {}) {}

  /// `vertex_groups` may name a subgroup for any subset of vertices (indices
  /// follow the graph convention: points first, then components); vertices
  /// not named carry the full group.
  FactorizationSystem(const ReductionGraph& g, const GaugeData& gauge, FiniteGroup group,
                      std::vector<std::pair<int, Subgroup>> vertex_groups)
      : group_(std::move(group)),
        vertex_count_(g.vertex_count()),
        root_(gauge.root),
        parent_edge_(gauge.parent_edge),
        bfs_order_(gauge.bfs_order),
        cotree_edges_(gauge.cotree_edges),
        graph_fingerprint_(g.fingerprint()) {
    for (int e = 0; e < g.edge_count(); ++e)
      edges_.push_back({g.left_vertex(e), g.right_vertex(e)});
    vertex_groups_.assign(static_cast<std::size_t>(vertex_count_), full_subgroup(group_));
    for (auto& [v, s] : vertex_groups) {
      if (v < 0 || v >= vertex_count_) fail("bad-vertex", "vertex index out of range");
      if (!is_subgroup(group_, s.elements))
        fail("bad-subgroup", "vertex group is not a subgroup of the ambient group");
      vertex_groups_[static_cast<std::size_t>(v)] = s;
    }
  }

  const FiniteGroup& group() const { return group_; }
  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int left(int e) const { return edges_[static_cast<std::size_t>(e)].first; }
  int right(int e) const { return edges_[static_cast<std::size_t>(e)].second; }
  const Subgroup& vertex_group(int v) const {
    return vertex_groups_[static_cast<std::size_t>(v)];
  }

  /// Same system with one edge's left/right labels swapped.  Orbit structure
  /// is preserved when the corresponding tuple coordinate is inverted.
  FactorizationSystem with_reversed_edge(int e) const {
    FactorizationSystem sys = *this;
    std::swap(sys.edges_[static_cast<std::size_t>(e)].first,
              sys.edges_[static_cast<std::size_t>(e)].second);
    return sys;
  }

  /// Same shape and orientation over another group (used for quotient
  /// systems); vertex groups are supplied per vertex.
  FactorizationSystem with_group(FiniteGroup group, std::vector<Subgroup> vertex_groups) const {
    FactorizationSystem sys = *this;
    sys.group_ = std::move(group);
    sys.vertex_groups_ = std::move(vertex_groups);
    for (const auto& s : sys.vertex_groups_)
      if (!is_subgroup(sys.group_, s.elements))
        fail("bad-subgroup", "vertex group is not a subgroup of the ambient group");
    return sys;
  }

  std::uint64_t fingerprint() const {
    std::string buf = hex64(graph_fingerprint_) + "|" + group_.spec();
    for (const auto& [l, r] : edges_) buf += ";" + std::to_string(l) + "," + std::to_string(r);
    for (const auto& s : vertex_groups_) {
      buf += "|";
      for (int e : s.elements) buf += std::to_string(e) + ",";
    }
    return fnv1a64(buf);
  }

  std::uint64_t tuple_count(std::uint64_t state_cap) const {
    return detail::checked_power(static_cast<std::uint64_t>(group_.order()), edge_count(),
                                 state_cap, "edge tuple space");
  }

  EdgeTuple identity_tuple() const {
    return EdgeTuple(static_cast<std::size_t>(edge_count()), 0);
  }

  // spanning-tree traversal, shared by the factorization searches
  int root() const { return root_; }
  const std::vector<int>& parent_edge() const { return parent_edge_; }
  const std::vector<int>& bfs_order() const { return bfs_order_; }
  const std::vector<int>& cotree_edges() const { return cotree_edges_; }

private:
  FiniteGroup group_;
  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> edges_; // (left, right) vertex indices
  std::vector<Subgroup> vertex_groups_;
  int root_ = 0;
  std::vector<int> parent_edge_;
  std::vector<int> bfs_order_;
  std::vector<int> cotree_edges_;
  std::uint64_t graph_fingerprint_ = 0;
};

// ---------------------------------------------------------------------------
// Orbit partition of the full edge-tuple space.  Breadth-first from the
// least unvisited tuple, moving by vertex-subgroup generators; orbits are
// listed by least member, so orbit 0 is the pointed orbit.

struct OrbitPartition {
  std::uint64_t tuple_count = 0;
  std::vector<std::uint32_t> orbit_of;     // per tuple index
  std::vector<EdgeTuple> representatives;  // least tuple per orbit, ascending
  std::vector<std::uint64_t> orbit_sizes;

  std::size_t orbit_count() const { return representatives.size(); }
  std::uint64_t pointed_orbit_size() const { return orbit_sizes.empty() ? 0 : orbit_sizes[0]; }
};

inline OrbitPartition coboundary_orbits(const FactorizationSystem& sys,
                                        std::uint64_t state_cap = kDefaultStateCap) {
  const int n = sys.group().order();
  const int E = sys.edge_count();
  const std::uint64_t total = sys.tuple_count(state_cap);

  // moves: one vertex, one subgroup generator
  struct Move {
    int vertex;
    int u;
  };
  std::vector<Move> moves;
  for (int v = 0; v < sys.vertex_count(); ++v)
    for (int u : sys.vertex_group(v).generators) moves.push_back({v, u});

  // incidences per vertex
  std::vector<std::vector<int>> left_of(static_cast<std::size_t>(sys.vertex_count()));
  std::vector<std::vector<int>> right_of(static_cast<std::size_t>(sys.vertex_count()));
  for (int e = 0; e < E; ++e) {
    left_of[static_cast<std::size_t>(sys.left(e))].push_back(e);
    right_of[static_cast<std::size_t>(sys.right(e))].push_back(e);
  }

  const FiniteGroup& G = sys.group();
  OrbitPartition part;
  part.tuple_count = total;
  part.orbit_of.assign(total, 0);
  std::vector<bool> visited(total, false);

  for (std::uint64_t start = 0; start < total; ++start) {
    if (visited[start]) continue;
    const std::uint32_t orbit = static_cast<std::uint32_t>(part.representatives.size());
    std::uint64_t size = 0;
    visited[start] = true;
    std::vector<std::uint64_t> stack{start};
    while (!stack.empty()) {
      std::uint64_t cur = stack.back();
      stack.pop_back();
      part.orbit_of[cur] = orbit;
      ++size;
      EdgeTuple t = detail::decode_tuple(cur, E, n);
      for (const Move& m : moves) {
        EdgeTuple next = t;
        for (int e : left_of[static_cast<std::size_t>(m.vertex)])
          next[static_cast<std::size_t>(e)] = G.mul(next[static_cast<std::size_t>(e)], m.u);
        for (int e : right_of[static_cast<std::size_t>(m.vertex)])
          next[static_cast<std::size_t>(e)] = G.mul(G.inv(m.u), next[static_cast<std::size_t>(e)]);
        std::uint64_t ni = detail::encode_tuple(next, n);
        if (!visited[ni]) {
          visited[ni] = true;
          stack.push_back(ni);
        }
      }
    }
    part.representatives.push_back(detail::decode_tuple(start, E, n));
    part.orbit_sizes.push_back(size);
  }
  return part;
}

// ---------------------------------------------------------------------------
// Direct factorization search: does the tuple lie in the pointed orbit,
// i.e. are there u_v in the vertex groups with t_e = u_right^{-1} u_left?
// A solution is determined by its value at the root: propagate along the
// spanning tree, check memberships and the cotree equations.

namespace detail {

inline std::optional<std::vector<int>> fiber_witness(const FactorizationSystem& sys,
                                                     const EdgeTuple& t, const EdgeTuple& target) {
  const FiniteGroup& G = sys.group();
  const int E = sys.edge_count();
  if (static_cast<int>(t.size()) != E || static_cast<int>(target.size()) != E)
    fail("bad-tuple", "edge tuple length must equal the edge count");
  for (int v : t)
    if (v < 0 || v >= G.order()) fail("bad-tuple", "tuple entry out of range");
  for (int v : target)
    if (v < 0 || v >= G.order()) fail("bad-tuple", "tuple entry out of range");

  std::vector<int> u(static_cast<std::size_t>(sys.vertex_count()), -1);
  for (int u0 : sys.vertex_group(sys.root()).elements) {
    u[static_cast<std::size_t>(sys.root())] = u0;
    bool ok = true;
    // solve t_e = u_r^{-1} target_e u_l along tree edges
    for (int v : sys.bfs_order()) {
      int e = sys.parent_edge()[static_cast<std::size_t>(v)];
      if (e < 0) continue;
      int l = sys.left(e), r = sys.right(e);
      int val;
      if (v == r)
        val = G.mul(G.mul(target[static_cast<std::size_t>(e)], u[static_cast<std::size_t>(l)]),
                    G.inv(t[static_cast<std::size_t>(e)]));
      else
        val = G.mul(G.mul(G.inv(target[static_cast<std::size_t>(e)]), u[static_cast<std::size_t>(r)]),
                    t[static_cast<std::size_t>(e)]);
      if (!sys.vertex_group(v).contains(val)) {
        ok = false;
        break;
      }
      u[static_cast<std::size_t>(v)] = val;
    }
    if (!ok) continue;
    for (int e : sys.cotree_edges()) {
      int l = sys.left(e), r = sys.right(e);
      if (t[static_cast<std::size_t>(e)] !=
          G.mul(G.mul(G.inv(u[static_cast<std::size_t>(r)]), target[static_cast<std::size_t>(e)]),
                u[static_cast<std::size_t>(l)])) {
        ok = false;
        break;
      }
    }
    if (ok) return u;
  }
  return std::nullopt;
}

} // namespace detail

/// Per-vertex witness for simultaneous factorization of `t`, or absence.
inline std::optional<std::vector<int>> factorization_witness(const FactorizationSystem& sys,
                                                             const EdgeTuple& t) {
  return detail::fiber_witness(sys, t, sys.identity_tuple());
}

inline bool factorizes(const FactorizationSystem& sys, const EdgeTuple& t) {
  return factorization_witness(sys, t).has_value();
}

/// Do t and t_tilde have the same image under the coboundary, i.e. are there
/// vertex elements with t_e = u_r^{-1} t_tilde_e u_l for every edge?
inline bool same_fiber(const FactorizationSystem& sys, const EdgeTuple& t,
                       const EdgeTuple& t_tilde) {
  return detail::fiber_witness(sys, t, t_tilde).has_value();
}

// ---------------------------------------------------------------------------
// Equivalence check for the transversal factorization criterion: the induced
// map on double cosets is a bijection exactly when every pair of tuples with
// equal image mod N lies in one fiber.  Both sides are evaluated
// independently and must agree; a disagreement is a bug, not data.

struct TransFactorReport {
  std::size_t orbits_total = 0;    // double cosets over G
  std::size_t orbits_quotient = 0; // double cosets over G/N
  bool side_map_bijective = false; // (i)
  bool side_pairs_factor = false;  // (ii)

  std::optional<std::pair<EdgeTuple, EdgeTuple>> map_counterexample;  // reps with equal image orbit
  std::optional<std::pair<EdgeTuple, EdgeTuple>> pair_counterexample; // equal image, different fiber

  bool agree() const { return side_map_bijective == side_pairs_factor; }
};

inline TransFactorReport trans_factor_check(const FactorizationSystem& sys, const Subgroup& N,
                                            std::uint64_t state_cap = kDefaultStateCap) {
  const FiniteGroup& G = sys.group();
  if (!N.is_normal) fail("not-normal", "trans-factor check needs a normal subgroup");
  if (!is_subgroup(G, N.elements)) fail("bad-subgroup", "not a subgroup of the ambient group");

  const int E = sys.edge_count();
  const QuotientResult quot = quotient(G, N);

  // quotient system: same shape, vertex groups replaced by their images
  std::vector<Subgroup> qgroups;
  for (int v = 0; v < sys.vertex_count(); ++v) {
    std::vector<int> gens;
    for (int g : sys.vertex_group(v).generators)
      gens.push_back(quot.projection[static_cast<std::size_t>(g)]);
    qgroups.push_back(subgroup(quot.group, gens));
  }
  const FactorizationSystem qsys = sys.with_group(quot.group, std::move(qgroups));

  TransFactorReport rep;

  // (i) compute both partitions and the induced map on orbits
  const OrbitPartition part = coboundary_orbits(sys, state_cap);
  const OrbitPartition qpart = coboundary_orbits(qsys, state_cap);
  rep.orbits_total = part.orbit_count();
  rep.orbits_quotient = qpart.orbit_count();
  {
    std::vector<int> hit(qpart.orbit_count(), -1);
    bool injective = true;
    for (std::size_t i = 0; i < part.representatives.size() && injective; ++i) {
      EdgeTuple proj(static_cast<std::size_t>(E));
      for (int e = 0; e < E; ++e)
        proj[static_cast<std::size_t>(e)] = quot.projection[static_cast<std::size_t>(
            part.representatives[i][static_cast<std::size_t>(e)])];
      std::uint32_t qo = qpart.orbit_of[detail::encode_tuple(proj, quot.group.order())];
      if (hit[qo] >= 0) {
        injective = false;
        rep.map_counterexample = {part.representatives[static_cast<std::size_t>(hit[qo])],
                                  part.representatives[i]};
      } else {
        hit[qo] = static_cast<int>(i);
      }
    }
    bool surjective = std::all_of(hit.begin(), hit.end(), [](int h) { return h >= 0; });
    rep.side_map_bijective = injective && surjective;
  }

  // (ii) exhaustive search over pairs with equal image mod N, checked by the
  // independent tree-propagation fiber search
  {
    const std::uint64_t tuples = sys.tuple_count(state_cap);
    const std::uint64_t shifts = detail::checked_power(
        static_cast<std::uint64_t>(N.order()), E, state_cap, "shift space");
    if (shifts != 0 && tuples > state_cap / shifts)
      fail("state-cap-exceeded",
           "pair space exceeds the state cap of " + std::to_string(state_cap));
    rep.side_pairs_factor = true;
    const int n = G.order();
    for (std::uint64_t ti = 0; ti < tuples && rep.side_pairs_factor; ++ti) {
      EdgeTuple t = detail::decode_tuple(ti, E, n);
      // enumerate t_tilde with t_tilde_e in t_e N
      for (std::uint64_t c = 0; c < shifts; ++c) {
        EdgeTuple tt(static_cast<std::size_t>(E));
        std::uint64_t rest = c;
        for (int e = E - 1; e >= 0; --e) {
          int h = N.elements[static_cast<std::size_t>(rest % static_cast<std::uint64_t>(N.order()))];
          rest /= static_cast<std::uint64_t>(N.order());
          tt[static_cast<std::size_t>(e)] = G.mul(t[static_cast<std::size_t>(e)], h);
        }
        if (!same_fiber(sys, t, tt)) {
          rep.side_pairs_factor = false;
          rep.pair_counterexample = {t, tt};
          break;
        }
      }
    }
  }
  return rep;
}

} // namespace shagraph

#endif
