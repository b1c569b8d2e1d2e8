#ifndef SHAGRAPH_GRAPH_HPP
#define SHAGRAPH_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "shagraph/common.hpp"
#include "shagraph/model.hpp"

namespace shagraph {

// ---------------------------------------------------------------------------
// ReductionGraph
//
// Connected bipartite multigraph: one vertex per marked point, one per
// component, and one edge per branch.  Every edge is globally oriented with
// the point vertex on the left and the component vertex on the right; that
// orientation is what downstream transition and coset conventions refer to.
//
// Vertex indexing: points are 0..P-1, components are P..P+C-1.

struct GraphEdge {
  int point = 0;     // index into point_ids
  int component = 0; // index into component_ids
  int branch = 0;    // 0-based branch index within the (point, component) pair
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct ReductionGraph {
  std::vector<std::string> point_ids;
  std::vector<std::string> component_ids;
  std::vector<GraphEdge> edges; // point declaration order, then entry order, then branch

  int point_count() const { return static_cast<int>(point_ids.size()); }
  int component_count() const { return static_cast<int>(component_ids.size()); }
  int vertex_count() const { return point_count() + component_count(); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  int point_vertex(int p) const { return p; }
  int component_vertex(int c) const { return point_count() + c; }
  bool is_point_vertex(int v) const { return v < point_count(); }

  int left_vertex(int e) const { return edges[static_cast<std::size_t>(e)].point; }
  int right_vertex(int e) const {
    return component_vertex(edges[static_cast<std::size_t>(e)].component);
  }

  const std::string& vertex_id(int v) const {
    return is_point_vertex(v) ? point_ids[static_cast<std::size_t>(v)]
                              : component_ids[static_cast<std::size_t>(v - point_count())];
  }

  /// Structural hash of the vertex counts and edge list; stable across
  /// platforms.  Used to keep monodromy data from mixing between graphs.
  std::uint64_t fingerprint() const {
    std::string buf = std::to_string(point_count()) + "|" + std::to_string(component_count());
    for (const auto& e : edges)
      buf += ";" + std::to_string(e.point) + "," + std::to_string(e.component) + "," +
             std::to_string(e.branch);
    return fnv1a64(buf);
  }
};

inline ReductionGraph from_model(const ClosedFiberModel& m) {
  if (has_errors(validate(m)))
    fail("invalid-model", "model fails validation; run validate() for diagnostics");
  ReductionGraph g;
  for (const auto& c : m.components) g.component_ids.push_back(c);
  for (std::size_t q = 0; q < m.points.size(); ++q) {
    g.point_ids.push_back(m.points[q].id);
    for (const auto& b : m.points[q].branches)
      for (int k = 0; k < b.count; ++k)
        g.edges.push_back({static_cast<int>(q), b.component, k});
  }
  return g;
}

/// |E| - |V| + 1 for a connected graph; the rank of its free fundamental
/// group.  Zero exactly on trees.
inline int cycle_rank(const ReductionGraph& g) {
  return g.edge_count() - g.vertex_count() + 1;
}

inline bool is_tree(const ReductionGraph& g) { return cycle_rank(g) == 0; }

// ---------------------------------------------------------------------------
// Spanning-tree gauge.  Breadth-first from the first point vertex, scanning
// edges in global order, so the cotree — the free generating set of the
// fundamental group — is reproducible.

struct GaugeData {
  int root = 0;
  std::vector<int> tree_edges;   // ascending edge indices
  std::vector<int> cotree_edges; // ascending edge indices; size == cycle_rank
  // traversal data, used by gauge-fixing consumers
  std::vector<int> parent_edge;  // per vertex; -1 at root
  std::vector<int> bfs_order;    // vertices in discovery order

  int rank() const { return static_cast<int>(cotree_edges.size()); }
};

inline GaugeData spanning_gauge(const ReductionGraph& g) {
  const int V = g.vertex_count();
  GaugeData gauge;
  gauge.root = 0; // first point vertex
  gauge.parent_edge.assign(static_cast<std::size_t>(V), -1);
  std::vector<bool> seen(static_cast<std::size_t>(V), false);
  std::vector<bool> in_tree(g.edges.size(), false);

  // adjacency in global edge order
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(V));
  for (int e = 0; e < g.edge_count(); ++e) {
    incident[static_cast<std::size_t>(g.left_vertex(e))].push_back(e);
    incident[static_cast<std::size_t>(g.right_vertex(e))].push_back(e);
  }

  std::vector<int> queue{gauge.root};
  seen[static_cast<std::size_t>(gauge.root)] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    gauge.bfs_order.push_back(v);
    for (int e : incident[static_cast<std::size_t>(v)]) {
      int w = g.left_vertex(e) == v ? g.right_vertex(e) : g.left_vertex(e);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        in_tree[static_cast<std::size_t>(e)] = true;
        gauge.parent_edge[static_cast<std::size_t>(w)] = e;
        queue.push_back(w);
      }
    }
  }
  if (static_cast<int>(queue.size()) != V)
    fail("disconnected-graph", "spanning_gauge requires a connected graph");

  for (int e = 0; e < g.edge_count(); ++e)
    (in_tree[static_cast<std::size_t>(e)] ? gauge.tree_edges : gauge.cotree_edges).push_back(e);
  return gauge;
}

// ---------------------------------------------------------------------------
// Classical reduction graph of a nodal model: components become vertices and
// the double points become edges.  Our bipartite graph is its barycentric
// subdivision, so the two must have equal cycle rank; the bool reports that
// check.

struct ClassicalGraph {
  std::vector<std::string> vertices; // component ids
  struct CEdge {
    int a = 0, b = 0; // component indices; a == b for a self-node
    std::string point_id;
  };
  std::vector<CEdge> edges;
};

struct ClassicalResult {
  ClassicalGraph graph;
  bool homotopy_check = false; // cycle ranks agree
};

inline ClassicalResult classical_graph(const ClosedFiberModel& m) {
  for (std::size_t q = 0; q < m.points.size(); ++q)
    if (m.total_branches(static_cast<int>(q)) != 2)
      fail("not-nodal", "point '" + m.points[q].id + "' is not an ordinary double point");

  ClassicalResult res;
  res.graph.vertices = m.components;
  for (const auto& p : m.points) {
    if (p.branches.size() == 1)
      res.graph.edges.push_back({p.branches[0].component, p.branches[0].component, p.id});
    else
      res.graph.edges.push_back({p.branches[0].component, p.branches[1].component, p.id});
  }

  // rank = E - V + #components (self-loops included)
  const int V = static_cast<int>(res.graph.vertices.size());
  std::vector<int> parent(static_cast<std::size_t>(V));
  for (int i = 0; i < V; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int comps = V;
  for (const auto& e : res.graph.edges) {
    int ra = find(e.a), rb = find(e.b);
    if (ra != rb) {
      parent[static_cast<std::size_t>(ra)] = rb;
      --comps;
    }
  }
  int classical_rank = static_cast<int>(res.graph.edges.size()) - V + comps;
  res.homotopy_check = classical_rank == cycle_rank(from_model(m));
  return res;
}

// ---------------------------------------------------------------------------
// DOT export.  Deterministic: node statements (points as circles, components
// as boxes) in declaration order, then one statement per edge in global
// order.

inline std::string to_dot(const ReductionGraph& g) {
  std::string out = "graph reduction {\n";
  for (const auto& id : g.point_ids) out += "  \"" + id + "\" [shape=circle];\n";
  for (const auto& id : g.component_ids) out += "  \"" + id + "\" [shape=box];\n";
  for (const auto& e : g.edges)
    out += "  \"" + g.point_ids[static_cast<std::size_t>(e.point)] + "\" -- \"" +
           g.component_ids[static_cast<std::size_t>(e.component)] + "\";\n";
  out += "}\n";
  return out;
}

} // namespace shagraph

#endif
