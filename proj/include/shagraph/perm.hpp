#ifndef SHAGRAPH_PERM_HPP
#define SHAGRAPH_PERM_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "shagraph/common.hpp"

namespace shagraph {

/// A permutation of {0..n-1} in one-line form: p[i] is the image of i.
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

/// compose(a, b): apply b first, then a.
inline Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

inline Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

/// g p g^{-1}
inline Perm conjugate(const Perm& p, const Perm& g) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[static_cast<std::size_t>(g[i])] = g[static_cast<std::size_t>(p[i])];
  return r;
}

/// Lexicographic rank of p among all permutations of its degree.
inline std::uint64_t perm_rank(const Perm& p) {
  const int n = static_cast<int>(p.size());
  std::uint64_t rank = 0;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::uint64_t fact = 1;
  for (int i = 2; i < n; ++i) fact *= static_cast<std::uint64_t>(i);
  if (n < 2) fact = 1;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int v = 0; v < p[static_cast<std::size_t>(i)]; ++v)
      if (!used[static_cast<std::size_t>(v)]) ++smaller;
    rank += static_cast<std::uint64_t>(smaller) * fact;
    used[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = true;
    if (n - 1 - i > 0) fact /= static_cast<std::uint64_t>(n - 1 - i);
  }
  return rank;
}

inline Perm perm_unrank(int n, std::uint64_t rank) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::uint64_t fact = 1;
  for (int i = 2; i < n; ++i) fact *= static_cast<std::uint64_t>(i);
  if (n < 2) fact = 1;
  Perm p;
  p.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::uint64_t idx = (fact == 0) ? 0 : rank / fact;
    rank %= fact == 0 ? 1 : fact;
    p.push_back(pool[static_cast<std::size_t>(idx)]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    if (n - 1 - i > 0) fact /= static_cast<std::uint64_t>(n - 1 - i);
  }
  return p;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// Orbit of `start` under a set of permutations (as generators).
inline std::vector<int> perm_orbit(int start, const std::vector<Perm>& gens, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> orbit{start}, stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const Perm& g : gens) {
      int y = g[static_cast<std::size_t>(x)];
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        orbit.push_back(y);
        stack.push_back(y);
      }
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

inline bool is_transitive(const std::vector<Perm>& gens, int n) {
  if (n <= 1) return true;
  if (gens.empty()) return false;
  return static_cast<int>(perm_orbit(0, gens, n).size()) == n;
}

/// One-line notation, 1-based: "3 1 2".
inline std::string one_line(const Perm& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i] + 1);
  }
  return s;
}

/// Cycle notation, 1-based; "()" for the identity.
inline std::string cycle_string(const Perm& p) {
  std::string s;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) s += ' ';
      s += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    s += ')';
  }
  if (s.empty()) s = "()";
  return s;
}

/// Parse disjoint-or-not cycles like "(1 2)(3 4)"; points are 1-based.
/// Degree is max(point, min_degree).  Throws Error("bad-cycles") on junk.
inline Perm parse_cycles(const std::string& text, int min_degree = 0) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  int max_pt = min_degree;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
    if (text[i] != '(') fail("bad-cycles", "expected '(' in cycle notation: " + text);
    ++i;
    std::vector<int> cyc;
    while (i < text.size() && text[i] != ')') {
      if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') { ++i; continue; }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        fail("bad-cycles", "expected point in cycle notation: " + text);
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1) fail("bad-cycles", "points are 1-based: " + text);
      cyc.push_back(v - 1);
      max_pt = std::max(max_pt, v);
    }
    if (i >= text.size()) fail("bad-cycles", "unclosed cycle: " + text);
    ++i; // ')'
    if (cyc.size() > 1) cycles.push_back(std::move(cyc));
  }
  Perm p = identity_perm(max_pt);
  // cycles apply left to right within one string, matching p = c1∘c2∘... read as maps
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    Perm c = identity_perm(max_pt);
    const auto& cyc = *it;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      std::size_t from = static_cast<std::size_t>(cyc[k]);
      if (c[from] != static_cast<int>(from) && c[from] != cyc[(k + 1) % cyc.size()])
        fail("bad-cycles", "repeated point in cycle: " + text);
      c[from] = cyc[(k + 1) % cyc.size()];
    }
    p = compose(p, c);
  }
  return p;
}

} // namespace shagraph

#endif
