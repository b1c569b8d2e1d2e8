#ifndef SHAGRAPH_SHA_HPP
#define SHAGRAPH_SHA_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shagraph/common.hpp"
#include "shagraph/graph.hpp"
#include "shagraph/groups.hpp"

namespace shagraph {

// ---------------------------------------------------------------------------
// The obstruction set for a graph and a finite component group: tuples of
// group elements, one per free generator of the fundamental group, up to
// simultaneous conjugation.  A pointed set; the base point is the class of
// the all-identity tuple.

struct ShaSet {
  std::uint64_t graph_fingerprint = 0;
  std::string group_spec;
  int rank = 0;
  bool abelian = false;
  std::vector<std::vector<int>> representatives; // lex-least per orbit, ascending

  std::size_t size() const { return representatives.size(); }
  int pointed_index() const { return 0; }
};

namespace detail {

inline std::vector<int> decode_tuple(std::uint64_t idx, int rank, int base) {
  std::vector<int> t(static_cast<std::size_t>(rank));
  for (int i = rank - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::uint64_t>(base));
    idx /= static_cast<std::uint64_t>(base);
  }
  return t;
}

inline std::uint64_t encode_tuple(const std::vector<int>& t, int base) {
  std::uint64_t idx = 0;
  for (int v : t) idx = idx * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(v);
  return idx;
}

inline std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t cap,
                                   const char* what) {
  std::uint64_t total = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && total > cap / base)
      fail("state-cap-exceeded",
           std::string(what) + " exceeds the state cap of " + std::to_string(cap));
    total *= base;
  }
  if (total > cap)
    fail("state-cap-exceeded",
         std::string(what) + " exceeds the state cap of " + std::to_string(cap));
  return total;
}

} // namespace detail

/// Lexicographically least tuple in the simultaneous-conjugation orbit.
inline std::vector<int> canonical_group_tuple(const FiniteGroup& G, const std::vector<int>& t) {
  std::vector<int> best = t;
  std::vector<int> cand(t.size());
  for (int h = 1; h < G.order(); ++h) {
    for (std::size_t i = 0; i < t.size(); ++i) cand[i] = G.conj(t[i], h);
    if (cand < best) best = cand;
  }
  return best;
}

inline ShaSet compute_sha(const ReductionGraph& g, const GaugeData& gauge,
                          const FiniteGroup& Gbar,
                          std::uint64_t state_cap = kDefaultStateCap) {
  const int r = gauge.rank();
  const int n = Gbar.order();
  const std::uint64_t total =
      detail::checked_power(static_cast<std::uint64_t>(n), r, state_cap, "tuple space");

  const std::vector<int> gens = full_subgroup(Gbar).generators;
  std::vector<bool> visited(total, false);
  ShaSet sha;
  sha.graph_fingerprint = g.fingerprint();
  sha.group_spec = Gbar.spec();
  sha.rank = r;
  sha.abelian = Gbar.is_abelian();

  for (std::uint64_t start = 0; start < total; ++start) {
    if (visited[start]) continue;
    visited[start] = true;
    std::vector<std::uint64_t> stack{start};
    while (!stack.empty()) {
      std::uint64_t cur = stack.back();
      stack.pop_back();
      std::vector<int> t = detail::decode_tuple(cur, r, n);
      std::vector<int> conj(t.size());
      for (int h : gens) {
        for (std::size_t i = 0; i < t.size(); ++i) conj[i] = Gbar.conj(t[i], h);
        std::uint64_t nxt = detail::encode_tuple(conj, n);
        if (!visited[nxt]) {
          visited[nxt] = true;
          stack.push_back(nxt);
        }
      }
    }
    sha.representatives.push_back(detail::decode_tuple(start, r, n));
  }
  return sha;
}

/// Componentwise product of two representatives; only defined when the group
/// is commutative, where orbits are singletons and the set is a group.
inline int sha_abelian_product(const ShaSet& sha, const FiniteGroup& Gbar, int i, int j) {
  if (!sha.abelian) fail("not-abelian", "the obstruction set is a group only for abelian groups");
  const auto& a = sha.representatives[static_cast<std::size_t>(i)];
  const auto& b = sha.representatives[static_cast<std::size_t>(j)];
  std::vector<int> prod(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) prod[k] = Gbar.mul(a[k], b[k]);
  auto it = std::lower_bound(sha.representatives.begin(), sha.representatives.end(), prod);
  if (it == sha.representatives.end() || *it != prod)
    fail("internal-error", "abelian product fell outside the representative list");
  return static_cast<int>(it - sha.representatives.begin());
}

/// Independent counting oracle: the number of conjugation orbits on G^r is
/// (1/|G|) * sum over g of |centralizer(g)|^r.
inline std::uint64_t sha_count_burnside(const ReductionGraph&, const GaugeData& gauge,
                                        const FiniteGroup& Gbar) {
  const int r = gauge.rank();
  std::uint64_t sum = 0;
  for (int g = 0; g < Gbar.order(); ++g) {
    std::uint64_t c = static_cast<std::uint64_t>(centralizer(Gbar, g).order());
    std::uint64_t p = 1;
    for (int i = 0; i < r; ++i) p *= c;
    sum += p;
  }
  if (sum % static_cast<std::uint64_t>(Gbar.order()) != 0)
    fail("internal-error", "Burnside sum not divisible by the group order");
  return sum / static_cast<std::uint64_t>(Gbar.order());
}

/// The local-global obstruction vanishes exactly when the group is trivial
/// (the connected case) or the graph is a tree.
inline bool is_lgp_trivial(const ReductionGraph&, const GaugeData& gauge,
                           const FiniteGroup& Gbar) {
  return Gbar.order() == 1 || gauge.rank() == 0;
}

// ---------------------------------------------------------------------------
// Witt-group kernel of the local-global map: an elementary abelian 2-group
// of rank equal to the cycle rank.  Each element is represented by a
// quadratic form of dimension two; that fact is carried as a report note,
// not modeled.

struct WittKernelReport {
  int rank = 0;
  std::uint64_t order = 1; // 2^rank
  std::vector<std::vector<int>> representatives; // all {0,1} tuples, ascending;
                                                 // empty if order exceeds the cap
};

inline WittKernelReport witt_kernel(const ReductionGraph&, const GaugeData& gauge,
                                    std::uint64_t state_cap = kDefaultStateCap) {
  const int r = gauge.rank();
  if (r >= 63)
    fail("state-cap-exceeded", "kernel order 2^" + std::to_string(r) + " is not representable");
  WittKernelReport rep;
  rep.rank = r;
  rep.order = 1ull << r;
  if (rep.order <= state_cap)
    for (std::uint64_t i = 0; i < rep.order; ++i)
      rep.representatives.push_back(detail::decode_tuple(i, r, 2));
  return rep;
}

// ---------------------------------------------------------------------------
// Pointed exactness of 1 -> Sha(N) -> Sha(G) -> Sha(G/N) -> 1, checked
// literally: trivial kernel of the first map, image of the first map equal
// to the kernel of the second, surjectivity of the second.  Exactness is
// weaker than injectivity, which can genuinely fail for pointed sets.

struct ExactnessReport {
  std::size_t sub_size = 0, total_size = 0, quotient_size = 0;
  bool kernel_trivial = false;
  bool image_equals_kernel = false;
  bool surjective = false;

  std::vector<int> image_in_total;    // sorted Sha(G) indices hit from Sha(N)
  std::vector<int> kernel_in_total;   // sorted Sha(G) indices mapping to the base point
  std::vector<int> quotient_preimage; // per Sha(G/N) index: one preimage, or -1

  // first counterexample, when an assertion fails
  std::optional<int> nontrivial_kernel_rep;  // Sha(N) index
  std::optional<int> mismatch_rep;           // Sha(G) index in the symmetric difference
  std::optional<int> unreached_quotient_rep; // Sha(G/N) index

  bool exact() const { return kernel_trivial && image_equals_kernel && surjective; }
};

inline ExactnessReport quotient_sequence_check(const ReductionGraph& g, const GaugeData& gauge,
                                               const FiniteGroup& G, const Subgroup& N,
                                               std::uint64_t state_cap = kDefaultStateCap) {
  if (!N.is_normal) fail("not-normal", "quotient sequence needs a normal subgroup");

  std::vector<int> embed;
  const FiniteGroup sub = subgroup_as_group(G, N, &embed);
  const QuotientResult quot = quotient(G, N);

  const ShaSet sha_sub = compute_sha(g, gauge, sub, state_cap);
  const ShaSet sha_g = compute_sha(g, gauge, G, state_cap);
  const ShaSet sha_q = compute_sha(g, gauge, quot.group, state_cap);

  auto index_of = [](const ShaSet& sha, const std::vector<int>& canonical) {
    auto it = std::lower_bound(sha.representatives.begin(), sha.representatives.end(), canonical);
    if (it == sha.representatives.end() || *it != canonical)
      fail("internal-error", "canonical tuple missing from representative list");
    return static_cast<int>(it - sha.representatives.begin());
  };

  ExactnessReport rep;
  rep.sub_size = sha_sub.size();
  rep.total_size = sha_g.size();
  rep.quotient_size = sha_q.size();

  // Sha(N) -> Sha(G), induced by inclusion
  std::vector<int> into_total;
  for (const auto& t : sha_sub.representatives) {
    std::vector<int> lifted(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      lifted[i] = embed[static_cast<std::size_t>(t[i])];
    into_total.push_back(index_of(sha_g, canonical_group_tuple(G, lifted)));
  }
  rep.kernel_trivial = true;
  for (std::size_t i = 1; i < into_total.size(); ++i)
    if (into_total[i] == 0) {
      rep.kernel_trivial = false;
      if (!rep.nontrivial_kernel_rep) rep.nontrivial_kernel_rep = static_cast<int>(i);
    }
  rep.image_in_total = into_total;
  std::sort(rep.image_in_total.begin(), rep.image_in_total.end());
  rep.image_in_total.erase(std::unique(rep.image_in_total.begin(), rep.image_in_total.end()),
                           rep.image_in_total.end());

  // Sha(G) -> Sha(G/N), induced by the projection
  rep.quotient_preimage.assign(sha_q.size(), -1);
  for (std::size_t i = 0; i < sha_g.representatives.size(); ++i) {
    const auto& t = sha_g.representatives[i];
    std::vector<int> proj(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
      proj[k] = quot.projection[static_cast<std::size_t>(t[k])];
    int qi = index_of(sha_q, canonical_group_tuple(quot.group, proj));
    if (qi == 0) rep.kernel_in_total.push_back(static_cast<int>(i));
    if (rep.quotient_preimage[static_cast<std::size_t>(qi)] < 0)
      rep.quotient_preimage[static_cast<std::size_t>(qi)] = static_cast<int>(i);
  }

  rep.image_equals_kernel = rep.image_in_total == rep.kernel_in_total;
  if (!rep.image_equals_kernel) {
    std::vector<int> diff;
    std::set_symmetric_difference(rep.image_in_total.begin(), rep.image_in_total.end(),
                                  rep.kernel_in_total.begin(), rep.kernel_in_total.end(),
                                  std::back_inserter(diff));
    if (!diff.empty()) rep.mismatch_rep = diff.front();
  }

  rep.surjective = true;
  for (std::size_t q = 0; q < rep.quotient_preimage.size(); ++q)
    if (rep.quotient_preimage[q] < 0) {
      rep.surjective = false;
      if (!rep.unreached_quotient_rep) rep.unreached_quotient_rep = static_cast<int>(q);
    }
  return rep;
}

} // namespace shagraph

#endif
