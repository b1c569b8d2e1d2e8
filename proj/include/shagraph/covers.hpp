#ifndef SHAGRAPH_COVERS_HPP
#define SHAGRAPH_COVERS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "shagraph/common.hpp"
#include "shagraph/graph.hpp"
#include "shagraph/groups.hpp"
#include "shagraph/perm.hpp"

namespace shagraph {

// ---------------------------------------------------------------------------
// Split covers of the reduction graph as permutation data.
//
// A degree-n cover assigns to each incident (vertex, edge) pair a
// permutation of the n sheets.  Here sigma maps vertex-side sheet labels to
// edge sheet labels, and relabeling sheets independently over each vertex
// (tau_v) and each edge (tau_e) replaces sigma_{v,e} by tau_e^{-1} ∘
// sigma_{v,e} ∘ tau_v.  The per-edge transition
//
//     w_e = sigma_{comp,e}^{-1} ∘ sigma_{point,e}
//
// (point side to component side, in the fixed orientation) kills the edge
// relabelings and transforms as w_e -> tau_comp^{-1} ∘ w_e ∘ tau_point.
// Fixing a spanning tree gauge makes every tree transition the identity;
// what remains is one permutation per cotree edge, well defined up to
// simultaneous conjugation.

struct RawCoverData {
  int degree = 1;
  std::vector<Perm> sigma_point; // per edge, global edge order
  std::vector<Perm> sigma_comp;  // per edge
};

inline RawCoverData identity_raw_cover(const ReductionGraph& g, int degree) {
  RawCoverData raw;
  raw.degree = degree;
  raw.sigma_point.assign(g.edges.size(), identity_perm(degree));
  raw.sigma_comp.assign(g.edges.size(), identity_perm(degree));
  return raw;
}

struct MonodromyTuple {
  int degree = 1;
  std::uint64_t graph_fingerprint = 0;
  std::vector<Perm> images; // one per cotree edge, in global edge order

  int rank() const { return static_cast<int>(images.size()); }
  friend bool operator==(const MonodromyTuple&, const MonodromyTuple&) = default;
};

namespace detail {

inline void require_same_gauge(const MonodromyTuple& a, const MonodromyTuple& b) {
  if (a.graph_fingerprint != b.graph_fingerprint)
    fail("graph-mismatch", "monodromy tuples live over different graphs");
}

} // namespace detail

/// Lexicographically least tuple in the simultaneous-conjugation orbit,
/// found by minimizing over all n! conjugators.
inline std::vector<Perm> canonical_tuple(const std::vector<Perm>& t, int degree) {
  std::vector<Perm> best = t;
  Perm tau = identity_perm(degree);
  while (std::next_permutation(tau.begin(), tau.end())) {
    std::vector<Perm> cand;
    cand.reserve(t.size());
    for (const Perm& g : t) cand.push_back(conjugate(g, tau));
    if (cand < best) best = cand;
  }
  return best;
}

/// Gauge-fix raw cover data to a monodromy tuple.  The output depends only
/// on the relabeling class of the input: tree transitions are normalized to
/// the identity by a breadth-first sweep, and the residual simultaneous
/// conjugation freedom is removed by taking the canonical representative.
inline MonodromyTuple normalize(const ReductionGraph& g, const GaugeData& gauge,
                                const RawCoverData& raw) {
  const int n = raw.degree;
  const std::size_t E = g.edges.size();
  if (raw.sigma_point.size() != E || raw.sigma_comp.size() != E)
    fail("degree-mismatch", "raw cover data must carry one pair of permutations per edge");
  for (std::size_t e = 0; e < E; ++e)
    if (static_cast<int>(raw.sigma_point[e].size()) != n ||
        static_cast<int>(raw.sigma_comp[e].size()) != n)
      fail("degree-mismatch", "all permutations must have the cover degree");

  std::vector<Perm> w(E);
  for (std::size_t e = 0; e < E; ++e)
    w[e] = compose(inverse(raw.sigma_comp[e]), raw.sigma_point[e]);

  // h_v per vertex; h_root = id; tree edge e from point P to component U
  // forces h_U = w_e ∘ h_P so that the gauged transition is the identity.
  std::vector<Perm> h(static_cast<std::size_t>(g.vertex_count()));
  h[static_cast<std::size_t>(gauge.root)] = identity_perm(n);
  for (int v : gauge.bfs_order) {
    int e = gauge.parent_edge[static_cast<std::size_t>(v)];
    if (e < 0) continue;
    int l = g.left_vertex(e), r = g.right_vertex(e);
    if (v == r)
      h[static_cast<std::size_t>(r)] = compose(w[static_cast<std::size_t>(e)],
                                               h[static_cast<std::size_t>(l)]);
    else
      h[static_cast<std::size_t>(l)] = compose(inverse(w[static_cast<std::size_t>(e)]),
                                               h[static_cast<std::size_t>(r)]);
  }

  std::vector<Perm> images;
  images.reserve(gauge.cotree_edges.size());
  for (int e : gauge.cotree_edges) {
    int l = g.left_vertex(e), r = g.right_vertex(e);
    images.push_back(compose(inverse(h[static_cast<std::size_t>(r)]),
                             compose(w[static_cast<std::size_t>(e)],
                                     h[static_cast<std::size_t>(l)])));
  }
  return MonodromyTuple{n, g.fingerprint(), canonical_tuple(images, n)};
}

/// Connected exactly when the monodromy images act transitively.
inline bool is_connected(const MonodromyTuple& c) {
  return is_transitive(c.images, c.degree);
}

// ---------------------------------------------------------------------------
// Isomorphism: tau with tau g_i tau^{-1} = h_i for all i, by backtracking
// over sheet images with constraint propagation.

namespace detail {

class IsoSearch {
public:
  IsoSearch(const std::vector<Perm>& a, const std::vector<Perm>& b, int n)
      : a_(a), b_(b), n_(n), to_(static_cast<std::size_t>(n), -1),
        used_(static_cast<std::size_t>(n), false) {
    for (const Perm& g : a_) a_inv_.push_back(inverse(g));
    for (const Perm& g : b_) b_inv_.push_back(inverse(g));
  }

  std::optional<Perm> run() {
    if (solve(0)) return Perm(to_.begin(), to_.end());
    return std::nullopt;
  }

private:
  bool solve(int from) {
    while (from < n_ && to_[static_cast<std::size_t>(from)] >= 0) ++from;
    if (from == n_) return true;
    for (int v = 0; v < n_; ++v) {
      if (used_[static_cast<std::size_t>(v)]) continue;
      std::vector<int> trail;
      if (assign(from, v, trail) && solve(from)) return true;
      for (int x : trail) {
        used_[static_cast<std::size_t>(to_[static_cast<std::size_t>(x)])] = false;
        to_[static_cast<std::size_t>(x)] = -1;
      }
    }
    return false;
  }

  // propagate tau(g_i(x)) = h_i(tau(x)) in both directions from (x -> v)
  bool assign(int x0, int v0, std::vector<int>& trail) {
    std::vector<std::pair<int, int>> queue{{x0, v0}};
    while (!queue.empty()) {
      auto [x, v] = queue.back();
      queue.pop_back();
      int cur = to_[static_cast<std::size_t>(x)];
      if (cur >= 0) {
        if (cur != v) return false;
        continue;
      }
      if (used_[static_cast<std::size_t>(v)]) return false;
      to_[static_cast<std::size_t>(x)] = v;
      used_[static_cast<std::size_t>(v)] = true;
      trail.push_back(x);
      for (std::size_t i = 0; i < a_.size(); ++i) {
        queue.push_back({a_[i][static_cast<std::size_t>(x)], b_[i][static_cast<std::size_t>(v)]});
        queue.push_back({a_inv_[i][static_cast<std::size_t>(x)], b_inv_[i][static_cast<std::size_t>(v)]});
      }
    }
    return true;
  }

  const std::vector<Perm>& a_;
  const std::vector<Perm>& b_;
  std::vector<Perm> a_inv_, b_inv_;
  int n_;
  std::vector<int> to_;
  std::vector<bool> used_;
};

} // namespace detail

/// A sheet relabeling carrying one cover to the other, or absence.
inline std::optional<Perm> are_isomorphic(const MonodromyTuple& a, const MonodromyTuple& b) {
  detail::require_same_gauge(a, b);
  if (a.degree != b.degree || a.images.size() != b.images.size()) return std::nullopt;
  return detail::IsoSearch(a.images, b.images, a.degree).run();
}

// ---------------------------------------------------------------------------
// Domination: an equivariant balanced map phi from the sheets of `upper`
// onto the sheets of `lower`.  phi is seeded on one sheet per orbit of the
// upper monodromy and propagated; fiber balance is checked at the end.

inline std::optional<std::vector<int>> dominates(const MonodromyTuple& upper,
                                                 const MonodromyTuple& lower) {
  detail::require_same_gauge(upper, lower);
  if (upper.images.size() != lower.images.size()) return std::nullopt;
  const int n = upper.degree, m = lower.degree;
  if (m < 1 || n % m != 0) return std::nullopt;

  std::vector<Perm> up_inv, low_inv;
  for (const Perm& g : upper.images) up_inv.push_back(inverse(g));
  for (const Perm& g : lower.images) low_inv.push_back(inverse(g));

  // orbit seeds of the upper action, ascending
  std::vector<int> seed;
  {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int x = 0; x < n; ++x) {
      if (seen[static_cast<std::size_t>(x)]) continue;
      seed.push_back(x);
      for (int y : perm_orbit(x, upper.images, n)) seen[static_cast<std::size_t>(y)] = true;
    }
  }

  std::vector<int> phi(static_cast<std::size_t>(n), -1);

  // propagate phi(g_i(x)) = h_i(phi(x)) across one orbit
  auto propagate = [&](int x0, int v0, std::vector<int>& trail) -> bool {
    std::vector<std::pair<int, int>> queue{{x0, v0}};
    while (!queue.empty()) {
      auto [x, v] = queue.back();
      queue.pop_back();
      int cur = phi[static_cast<std::size_t>(x)];
      if (cur >= 0) {
        if (cur != v) return false;
        continue;
      }
      phi[static_cast<std::size_t>(x)] = v;
      trail.push_back(x);
      for (std::size_t i = 0; i < upper.images.size(); ++i) {
        queue.push_back({upper.images[i][static_cast<std::size_t>(x)],
                         lower.images[i][static_cast<std::size_t>(v)]});
        queue.push_back({up_inv[i][static_cast<std::size_t>(x)],
                         low_inv[i][static_cast<std::size_t>(v)]});
      }
    }
    return true;
  };

  std::vector<std::vector<int>> trails(seed.size());
  std::size_t k = 0;
  std::vector<int> choice(seed.size(), 0);
  while (true) {
    if (k == seed.size()) {
      std::vector<int> fiber(static_cast<std::size_t>(m), 0);
      for (int x = 0; x < n; ++x) ++fiber[static_cast<std::size_t>(phi[static_cast<std::size_t>(x)])];
      if (std::all_of(fiber.begin(), fiber.end(), [&](int f) { return f == n / m; }))
        return phi;
      --k; // unbalanced: backtrack into the last orbit
      for (int x : trails[k]) phi[static_cast<std::size_t>(x)] = -1;
      trails[k].clear();
      ++choice[k];
    }
    while (true) {
      if (choice[k] == m) {
        choice[k] = 0;
        if (k == 0) return std::nullopt;
        --k;
        for (int x : trails[k]) phi[static_cast<std::size_t>(x)] = -1;
        trails[k].clear();
        ++choice[k];
        continue;
      }
      if (propagate(seed[k], choice[k], trails[k])) {
        ++k;
        break;
      }
      for (int x : trails[k]) phi[static_cast<std::size_t>(x)] = -1;
      trails[k].clear();
      ++choice[k];
    }
  }
}

// ---------------------------------------------------------------------------

/// Product cover on sheet pairs (x, y) -> x*m + y; dominates both factors
/// via the coordinate projections.
inline MonodromyTuple fiber_product(const MonodromyTuple& a, const MonodromyTuple& b) {
  detail::require_same_gauge(a, b);
  if (a.images.size() != b.images.size())
    fail("rank-mismatch", "fiber product needs tuples over the same gauge");
  const int n = a.degree, m = b.degree;
  MonodromyTuple out;
  out.degree = n * m;
  out.graph_fingerprint = a.graph_fingerprint;
  for (std::size_t i = 0; i < a.images.size(); ++i) {
    Perm p(static_cast<std::size_t>(n * m));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < m; ++y)
        p[static_cast<std::size_t>(x * m + y)] =
            a.images[i][static_cast<std::size_t>(x)] * m + b.images[i][static_cast<std::size_t>(y)];
    out.images.push_back(std::move(p));
  }
  return out;
}

/// Orbit decomposition; each component keeps the ascending order of its
/// original sheets and is relabeled 0..|orbit|-1.  Ordered by least sheet.
inline std::vector<MonodromyTuple> connected_components(const MonodromyTuple& c) {
  const int n = c.degree;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<MonodromyTuple> out;
  for (int x = 0; x < n; ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    std::vector<int> orbit = perm_orbit(x, c.images, n);
    for (int y : orbit) seen[static_cast<std::size_t>(y)] = true;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      pos[static_cast<std::size_t>(orbit[i])] = static_cast<int>(i);
    MonodromyTuple comp;
    comp.degree = static_cast<int>(orbit.size());
    comp.graph_fingerprint = c.graph_fingerprint;
    for (const Perm& g : c.images) {
      Perm p(orbit.size());
      for (std::size_t i = 0; i < orbit.size(); ++i)
        p[i] = pos[static_cast<std::size_t>(g[static_cast<std::size_t>(orbit[i])])];
      comp.images.push_back(std::move(p));
    }
    out.push_back(std::move(comp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pointed G-covers from homomorphism data: one group element per free
// generator, acting on |G| sheets by right multiplication.  Connected
// exactly when the images generate G.

inline MonodromyTuple from_hom(const ReductionGraph& g, const GaugeData& gauge,
                               const FiniteGroup& G, const std::vector<int>& images) {
  if (static_cast<int>(images.size()) != gauge.rank())
    fail("rank-mismatch", "need one image per free generator");
  for (int v : images)
    if (v < 0 || v >= G.order()) fail("bad-element", "image index out of range");
  MonodromyTuple out;
  out.degree = G.order();
  out.graph_fingerprint = g.fingerprint();
  for (int v : images) {
    Perm p(static_cast<std::size_t>(G.order()));
    for (int x = 0; x < G.order(); ++x)
      p[static_cast<std::size_t>(x)] = G.mul(x, v);
    out.images.push_back(std::move(p));
  }
  return out;
}

/// Deck group of a connected cover, present exactly when the monodromy image
/// acts freely (equivalently, regularly: image order equals the degree).
inline std::optional<FiniteGroup> is_galois(const MonodromyTuple& c) {
  if (!is_connected(c)) fail("not-connected", "is_galois needs a connected cover");
  const int n = c.degree;
  if (n == 1 || c.images.empty())
    return FiniteGroup::cyclic(1);
  // closure size check with early exit: free + transitive forces order == n
  std::map<Perm, int> seen;
  std::vector<Perm> work{identity_perm(n)};
  seen.emplace(work[0], 0);
  for (std::size_t head = 0; head < work.size(); ++head) {
    for (const Perm& g : c.images) {
      Perm next = compose(g, work[head]);
      if (seen.emplace(next, static_cast<int>(work.size())).second) {
        work.push_back(std::move(next));
        if (static_cast<int>(work.size()) > n) return std::nullopt;
      }
    }
  }
  if (static_cast<int>(work.size()) != n) return std::nullopt;
  return FiniteGroup::from_permutations(c.images, static_cast<std::uint64_t>(n) + 1, "deck");
}

// ---------------------------------------------------------------------------
// Enumeration of all degree-n covers up to isomorphism: one canonical
// representative (lexicographically least tuple) per simultaneous-conjugation
// orbit of S_n tuples, in ascending order.

inline std::vector<MonodromyTuple> enumerate_covers(const ReductionGraph& g,
                                                    const GaugeData& gauge, int n,
                                                    bool connected_only,
                                                    std::uint64_t state_cap = kDefaultStateCap) {
  if (n < 1) fail("bad-degree", "cover degree must be >= 1");
  if (n > 20)
    fail("state-cap-exceeded", "degree " + std::to_string(n) + " tuple space is not enumerable");
  const int r = gauge.rank();
  const std::uint64_t nf = factorial(n);
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) {
    if (total > state_cap / (nf ? nf : 1))
      fail("state-cap-exceeded", "tuple space exceeds the state cap of " + std::to_string(state_cap));
    total *= nf;
  }
  if (total > state_cap)
    fail("state-cap-exceeded", "tuple space exceeds the state cap of " + std::to_string(state_cap));

  auto decode = [&](std::uint64_t idx) {
    std::vector<Perm> t(static_cast<std::size_t>(r));
    for (int i = r - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = perm_unrank(n, idx % nf);
      idx /= nf;
    }
    return t;
  };
  auto encode = [&](const std::vector<Perm>& t) {
    std::uint64_t idx = 0;
    for (const Perm& p : t) idx = idx * nf + perm_rank(p);
    return idx;
  };

  // conjugation by adjacent transpositions generates the relabeling action
  std::vector<Perm> moves;
  for (int i = 0; i + 1 < n; ++i) {
    Perm t = identity_perm(n);
    std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i + 1)]);
    moves.push_back(std::move(t));
  }

  const std::uint64_t fp = g.fingerprint();
  std::vector<bool> visited(total, false);
  std::vector<MonodromyTuple> out;
  for (std::uint64_t start = 0; start < total; ++start) {
    if (visited[start]) continue;
    visited[start] = true;
    std::vector<std::uint64_t> stack{start};
    while (!stack.empty()) {
      std::uint64_t cur = stack.back();
      stack.pop_back();
      std::vector<Perm> t = decode(cur);
      for (const Perm& m : moves) {
        std::vector<Perm> conj;
        conj.reserve(t.size());
        for (const Perm& p : t) conj.push_back(conjugate(p, m));
        std::uint64_t nxt = encode(conj);
        if (!visited[nxt]) {
          visited[nxt] = true;
          stack.push_back(nxt);
        }
      }
    }
    MonodromyTuple rep{n, fp, decode(start)};
    if (!connected_only || is_connected(rep)) out.push_back(std::move(rep));
  }
  return out;
}

} // namespace shagraph

#endif
