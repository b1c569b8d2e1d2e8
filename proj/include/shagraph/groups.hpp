#ifndef SHAGRAPH_GROUPS_HPP
#define SHAGRAPH_GROUPS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shagraph/common.hpp"
#include "shagraph/perm.hpp"

namespace shagraph {

// ---------------------------------------------------------------------------
// FiniteGroup
//
// Dense multiplication table over element indices 0..n-1 with 0 the
// identity.  Element indices are the common currency across modules, so
// each construction family fixes a documented canonical ordering:
//
//   C<n>      exponents 0..n-1 of the generator
//   S<n>      all permutations in lexicographic one-line order
//   D<n>      rotations r^0..r^{n-1}, then reflections s, sr, .., sr^{n-1}
//   AxB       pairs ordered lexicographically by factor index
//   perm:...  breadth-first closure from the identity in generator order
//   table:... the given row order
//
// Products read left to right: mul(a, b) is "apply a, then b" when the
// elements are permutations.

class FiniteGroup {
public:
  static FiniteGroup from_table(std::vector<std::vector<int>> table,
                                std::vector<std::string> labels = {},
                                std::string spec = "table") {
    FiniteGroup g;
    g.table_ = std::move(table);
    g.labels_ = std::move(labels);
    g.spec_ = std::move(spec);
    g.finalize();
    return g;
  }

  static FiniteGroup cyclic(int n) {
    if (n < 1) fail("bad-group-spec", "cyclic group needs order >= 1");
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) {
      labels.push_back(a == 0 ? "e" : a == 1 ? "g" : "g^" + std::to_string(a));
      for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    }
    return from_table(std::move(t), std::move(labels), "C" + std::to_string(n));
  }

  static FiniteGroup symmetric(int n) {
    if (n < 1) fail("bad-group-spec", "symmetric group needs degree >= 1");
    if (factorial(n) > kDefaultOrderCap)
      fail("order-cap-exceeded", "S" + std::to_string(n) + " exceeds the order cap");
    const int ord = static_cast<int>(factorial(n));
    std::vector<Perm> perms;
    perms.reserve(static_cast<std::size_t>(ord));
    for (int i = 0; i < ord; ++i) perms.push_back(perm_unrank(n, static_cast<std::uint64_t>(i)));
    std::vector<std::vector<int>> t(static_cast<std::size_t>(ord),
                                    std::vector<int>(static_cast<std::size_t>(ord)));
    std::vector<std::string> labels;
    for (int a = 0; a < ord; ++a) {
      labels.push_back(cycle_string(perms[static_cast<std::size_t>(a)]));
      for (int b = 0; b < ord; ++b) {
        // "a then b" = b ∘ a
        Perm prod = compose(perms[static_cast<std::size_t>(b)], perms[static_cast<std::size_t>(a)]);
        t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = static_cast<int>(perm_rank(prod));
      }
    }
    return from_table(std::move(t), std::move(labels), "S" + std::to_string(n));
  }

  /// Dihedral group of order 2n: index k is r^k, index n+k is s r^k,
  /// with s^2 = 1 and s r s = r^{-1}.
  static FiniteGroup dihedral(int n) {
    if (n < 1) fail("bad-group-spec", "dihedral group needs n >= 1");
    const int ord = 2 * n;
    auto code = [&](int eps, int i) { return eps * n + ((i % n) + n) % n; };
    std::vector<std::vector<int>> t(static_cast<std::size_t>(ord),
                                    std::vector<int>(static_cast<std::size_t>(ord)));
    std::vector<std::string> labels;
    for (int a = 0; a < ord; ++a) {
      int e1 = a / n, i1 = a % n;
      labels.push_back(e1 == 0 ? (i1 == 0 ? "e" : "r^" + std::to_string(i1))
                               : (i1 == 0 ? "s" : "s·r^" + std::to_string(i1)));
      for (int b = 0; b < ord; ++b) {
        int e2 = b / n, i2 = b % n;
        // (s^e1 r^i1)(s^e2 r^i2) = s^{e1+e2} r^{i1 (-1)^{e2} + i2}
        int i = (e2 == 1 ? -i1 : i1) + i2;
        t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = code((e1 + e2) % 2, i);
      }
    }
    return from_table(std::move(t), std::move(labels), "D" + std::to_string(n));
  }

  static FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    const int na = A.order(), nb = B.order(), ord = na * nb;
    std::vector<std::vector<int>> t(static_cast<std::size_t>(ord),
                                    std::vector<int>(static_cast<std::size_t>(ord)));
    std::vector<std::string> labels;
    for (int x = 0; x < ord; ++x) {
      int a1 = x / nb, b1 = x % nb;
      labels.push_back("(" + A.label(a1) + "," + B.label(b1) + ")");
      for (int y = 0; y < ord; ++y) {
        int a2 = y / nb, b2 = y % nb;
        t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
            A.mul(a1, a2) * nb + B.mul(b1, b2);
      }
    }
    return from_table(std::move(t), std::move(labels), A.spec() + "x" + B.spec());
  }

  /// Closure of permutation generators, breadth-first from the identity in
  /// generator order (right multiplication).
  static FiniteGroup from_permutations(const std::vector<Perm>& gens,
                                       std::uint64_t order_cap = kDefaultOrderCap,
                                       std::string spec = "perm") {
    std::size_t deg = 1;
    for (const auto& g : gens) deg = std::max(deg, g.size());
    std::vector<Perm> padded;
    for (auto g : gens) {
      while (g.size() < deg) g.push_back(static_cast<int>(g.size()));
      padded.push_back(std::move(g));
    }
    std::vector<Perm> elems{identity_perm(static_cast<int>(deg))};
    std::map<Perm, int> index{{elems[0], 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& g : padded) {
        Perm next = compose(g, elems[head]); // elems[head] then g
        if (index.emplace(next, static_cast<int>(elems.size())).second) {
          elems.push_back(next);
          if (elems.size() > order_cap)
            fail("order-cap-exceeded",
                 "permutation closure exceeds the order cap of " + std::to_string(order_cap));
        }
      }
    }
    const int ord = static_cast<int>(elems.size());
    std::vector<std::vector<int>> t(static_cast<std::size_t>(ord),
                                    std::vector<int>(static_cast<std::size_t>(ord)));
    std::vector<std::string> labels;
    for (int a = 0; a < ord; ++a) {
      labels.push_back(cycle_string(elems[static_cast<std::size_t>(a)]));
      for (int b = 0; b < ord; ++b)
        t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            index.at(compose(elems[static_cast<std::size_t>(b)], elems[static_cast<std::size_t>(a)]));
    }
    return from_table(std::move(t), std::move(labels), std::move(spec));
  }

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const {
    return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  /// h g h^{-1}
  int conj(int g, int h) const { return mul(mul(h, g), inv(h)); }

  bool is_abelian() const {
    for (int a = 0; a < order(); ++a)
      for (int b = a + 1; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  const std::string& label(int g) const { return labels_[static_cast<std::size_t>(g)]; }
  const std::string& spec() const { return spec_; }

private:
  FiniteGroup() = default;

  void finalize() {
    const int n = order();
    if (n == 0) fail("bad-group-table", "empty table");
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(table_[static_cast<std::size_t>(a)].size()) != n)
        fail("bad-group-table", "table is not square");
      for (int b = 0; b < n; ++b) {
        int v = mul(a, b);
        if (v < 0 || v >= n) fail("bad-group-table", "table entry out of range");
      }
    }
    for (int a = 0; a < n; ++a)
      if (mul(0, a) != a || mul(a, 0) != a)
        fail("bad-group-table", "element 0 is not a two-sided identity");
    inv_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        if (mul(a, b) == 0 && mul(b, a) == 0) {
          inv_[static_cast<std::size_t>(a)] = b;
          break;
        }
      if (inv_[static_cast<std::size_t>(a)] < 0)
        fail("bad-group-table", "element " + std::to_string(a) + " has no inverse");
    }
    // associativity: exhaustive up to order 64, deterministically sampled above
    if (n <= 64) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              fail("bad-group-table", "multiplication is not associative");
    } else {
      std::uint64_t s = 0x9e3779b97f4a7c15ull;
      auto next = [&s]() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
      };
      for (int i = 0; i < 200000; ++i) {
        int a = static_cast<int>(next() % static_cast<std::uint64_t>(n));
        int b = static_cast<int>(next() % static_cast<std::uint64_t>(n));
        int c = static_cast<int>(next() % static_cast<std::uint64_t>(n));
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          fail("bad-group-table", "multiplication is not associative");
      }
    }
    if (labels_.empty())
      for (int a = 0; a < n; ++a) labels_.push_back(std::to_string(a));
    if (static_cast<int>(labels_.size()) != n)
      fail("bad-group-table", "label count does not match order");
  }

  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::string spec_;
};

// ---------------------------------------------------------------------------
// Group-spec grammar:  C<n> | S<n> | D<n> | <atom>x<atom>x... |
//                      perm:<cycles>,<cycles>,... | table:<rows>
// table rows are semicolon-separated, comma-delimited index lists.

namespace detail {

inline FiniteGroup build_family_atom(const std::string& atom) {
  if (atom.size() < 2) fail("bad-group-spec", "unknown group spec '" + atom + "'");
  char fam = atom[0];
  const std::string num = atom.substr(1);
  if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    fail("bad-group-spec", "unknown group spec '" + atom + "'");
  int n = std::stoi(num);
  switch (fam) {
    case 'C': return FiniteGroup::cyclic(n);
    case 'S': return FiniteGroup::symmetric(n);
    case 'D': return FiniteGroup::dihedral(n);
    default: fail("bad-group-spec", "unknown family '" + std::string(1, fam) + "'");
  }
}

} // namespace detail

inline FiniteGroup build_group(const std::string& spec,
                               std::uint64_t order_cap = kDefaultOrderCap) {
  if (spec.rfind("perm:", 0) == 0) {
    std::string body = spec.substr(5);
    std::vector<Perm> gens;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i < body.size() && body[i] == '(') ++depth;
      if (i < body.size() && body[i] == ')') --depth;
      if (i == body.size() || (body[i] == ',' && depth == 0)) {
        std::string part = body.substr(start, i - start);
        if (!part.empty()) gens.push_back(parse_cycles(part));
        start = i + 1;
      }
    }
    if (gens.empty()) fail("bad-group-spec", "perm spec needs at least one generator");
    std::size_t deg = 1;
    for (const auto& g : gens) deg = std::max(deg, g.size());
    for (auto& g : gens)
      while (g.size() < deg) g.push_back(static_cast<int>(g.size()));
    return FiniteGroup::from_permutations(gens, order_cap, spec);
  }
  if (spec.rfind("table:", 0) == 0) {
    std::string body = spec.substr(6);
    std::vector<std::vector<int>> table;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || body[i] == ';') {
        std::string row = body.substr(start, i - start);
        start = i + 1;
        if (row.empty()) continue;
        std::vector<int> r;
        std::size_t s2 = 0;
        for (std::size_t j = 0; j <= row.size(); ++j) {
          if (j == row.size() || row[j] == ',') {
            std::string cell = row.substr(s2, j - s2);
            s2 = j + 1;
            if (cell.empty() || !std::all_of(cell.begin(), cell.end(), [](char c) {
                  return std::isdigit(static_cast<unsigned char>(c));
                }))
              fail("bad-group-spec", "bad table cell '" + cell + "'");
            r.push_back(std::stoi(cell));
          }
        }
        table.push_back(std::move(r));
      }
    }
    return FiniteGroup::from_table(std::move(table), {}, spec);
  }
  // product of family atoms
  std::vector<std::string> atoms;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i) {
    if (i == spec.size() || spec[i] == 'x') {
      atoms.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  }
  if (atoms.empty()) fail("bad-group-spec", "empty group spec");
  FiniteGroup g = detail::build_family_atom(atoms[0]);
  for (std::size_t i = 1; i < atoms.size(); ++i)
    g = FiniteGroup::direct_product(g, detail::build_family_atom(atoms[i]));
  return g;
}

// ---------------------------------------------------------------------------
// Conjugacy machinery

/// Conjugacy classes as sorted element lists, ordered by least element;
/// the identity class {0} comes first.
inline std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& G) {
  const int n = G.order();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < n; ++g) {
    if (seen[static_cast<std::size_t>(g)]) continue;
    std::vector<int> cls;
    for (int h = 0; h < n; ++h) {
      int c = G.conj(g, h);
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Subgroups

struct Subgroup {
  std::vector<int> elements;   // sorted, always contains 0
  std::vector<int> generators; // a small deterministic generating set
  bool is_normal = false;

  bool contains(int g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
  }
  int order() const { return static_cast<int>(elements.size()); }
};

namespace detail {

/// Subgroup generated by `gens`: breadth-first right multiplication from the
/// identity.  Positive words suffice in a finite group, since every inverse
/// is a power.
inline std::vector<int> close_under(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<bool> in(static_cast<std::size_t>(G.order()), false);
  std::vector<int> work{0};
  in[0] = true;
  for (std::size_t head = 0; head < work.size(); ++head)
    for (int g : gens) {
      int v = G.mul(work[head], g);
      if (!in[static_cast<std::size_t>(v)]) {
        in[static_cast<std::size_t>(v)] = true;
        work.push_back(v);
      }
    }
  std::sort(work.begin(), work.end());
  return work;
}

inline bool compute_normal(const FiniteGroup& G, const std::vector<int>& elems) {
  std::vector<bool> in(static_cast<std::size_t>(G.order()), false);
  for (int e : elems) in[static_cast<std::size_t>(e)] = true;
  for (int h = 0; h < G.order(); ++h)
    for (int e : elems)
      if (!in[static_cast<std::size_t>(G.conj(e, h))]) return false;
  return true;
}

/// Greedy generating set: scan elements in order, keep those that enlarge
/// the closure.  Deterministic and small; used as BFS moves elsewhere.
inline std::vector<int> greedy_generators(const FiniteGroup& G, const std::vector<int>& elems) {
  std::vector<int> gens;
  std::vector<int> closed{0};
  for (int e : elems) {
    if (std::binary_search(closed.begin(), closed.end(), e)) continue;
    gens.push_back(e);
    closed = close_under(G, gens);
    if (closed.size() == elems.size()) break;
  }
  return gens;
}

} // namespace detail

inline Subgroup subgroup(const FiniteGroup& G, const std::vector<int>& gens) {
  for (int g : gens)
    if (g < 0 || g >= G.order()) fail("bad-element", "generator index out of range");
  Subgroup s;
  s.elements = detail::close_under(G, gens);
  s.generators = detail::greedy_generators(G, s.elements);
  s.is_normal = detail::compute_normal(G, s.elements);
  return s;
}

inline Subgroup full_subgroup(const FiniteGroup& G) {
  std::vector<int> all(static_cast<std::size_t>(G.order()));
  for (int i = 0; i < G.order(); ++i) all[static_cast<std::size_t>(i)] = i;
  Subgroup s;
  s.elements = all;
  s.generators = detail::greedy_generators(G, all);
  s.is_normal = true;
  return s;
}

inline Subgroup trivial_subgroup(const FiniteGroup&) {
  return Subgroup{{0}, {}, true};
}

/// Verify that `elements` really is a subgroup of G (closure, identity,
/// inverses).  Used where subgroup data crosses a module boundary.
inline bool is_subgroup(const FiniteGroup& G, const std::vector<int>& elements) {
  if (elements.empty() || elements[0] != 0) return false;
  if (!std::is_sorted(elements.begin(), elements.end())) return false;
  auto has = [&](int v) { return std::binary_search(elements.begin(), elements.end(), v); };
  for (int a : elements) {
    if (a < 0 || a >= G.order() || !has(G.inv(a))) return false;
    for (int b : elements)
      if (!has(G.mul(a, b))) return false;
  }
  return true;
}

inline Subgroup centralizer(const FiniteGroup& G, int g) {
  if (g < 0 || g >= G.order()) fail("bad-element", "element index out of range");
  std::vector<int> elems;
  for (int h = 0; h < G.order(); ++h)
    if (G.mul(h, g) == G.mul(g, h)) elems.push_back(h);
  Subgroup s;
  s.elements = std::move(elems);
  s.generators = detail::greedy_generators(G, s.elements);
  s.is_normal = detail::compute_normal(G, s.elements);
  return s;
}

// ---------------------------------------------------------------------------
// Quotients

struct QuotientResult {
  FiniteGroup group;           // cosets, ordered by least member
  std::vector<int> projection; // parent element -> quotient element
};

inline QuotientResult quotient(const FiniteGroup& G, const Subgroup& N) {
  if (!N.is_normal) fail("not-normal", "quotient needs a normal subgroup");
  if (!is_subgroup(G, N.elements)) fail("bad-subgroup", "not a subgroup of this group");

  const int n = G.order();
  std::vector<int> coset_of(static_cast<std::size_t>(n), -1);
  std::vector<int> reps; // least member per coset, in ascending order
  for (int g = 0; g < n; ++g) {
    if (coset_of[static_cast<std::size_t>(g)] >= 0) continue;
    int idx = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int h : N.elements) coset_of[static_cast<std::size_t>(G.mul(g, h))] = idx;
  }
  const int q = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(static_cast<std::size_t>(q),
                                      std::vector<int>(static_cast<std::size_t>(q)));
  std::vector<std::string> labels;
  for (int a = 0; a < q; ++a) {
    labels.push_back("[" + G.label(reps[static_cast<std::size_t>(a)]) + "]");
    for (int b = 0; b < q; ++b)
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          coset_of[static_cast<std::size_t>(
              G.mul(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]))];
  }
  QuotientResult res{FiniteGroup::from_table(std::move(table), std::move(labels),
                                             G.spec() + "/N" + std::to_string(N.order())),
                     std::move(coset_of)};
  // verified surjective homomorphism
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (res.projection[static_cast<std::size_t>(G.mul(a, b))] !=
          res.group.mul(res.projection[static_cast<std::size_t>(a)],
                        res.projection[static_cast<std::size_t>(b)]))
        fail("bad-quotient", "projection is not a homomorphism");
  return res;
}

/// The subgroup as a standalone group.  `embedding[i]` is the parent index
/// of the i-th subgroup element; element 0 stays the identity.
inline FiniteGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& S,
                                     std::vector<int>* embedding = nullptr) {
  if (!is_subgroup(G, S.elements)) fail("bad-subgroup", "not a subgroup of this group");
  const int m = S.order();
  std::vector<int> back(static_cast<std::size_t>(G.order()), -1);
  for (int i = 0; i < m; ++i)
    back[static_cast<std::size_t>(S.elements[static_cast<std::size_t>(i)])] = i;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(m),
                                      std::vector<int>(static_cast<std::size_t>(m)));
  std::vector<std::string> labels;
  for (int a = 0; a < m; ++a) {
    labels.push_back(G.label(S.elements[static_cast<std::size_t>(a)]));
    for (int b = 0; b < m; ++b)
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          back[static_cast<std::size_t>(G.mul(S.elements[static_cast<std::size_t>(a)],
                                              S.elements[static_cast<std::size_t>(b)]))];
  }
  if (embedding) *embedding = S.elements;
  return FiniteGroup::from_table(std::move(table), std::move(labels),
                                 G.spec() + ".sub" + std::to_string(m));
}

} // namespace shagraph

#endif
