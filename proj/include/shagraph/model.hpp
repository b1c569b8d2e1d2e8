#ifndef SHAGRAPH_MODEL_HPP
#define SHAGRAPH_MODEL_HPP

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shagraph/common.hpp"

namespace shagraph {

// ---------------------------------------------------------------------------
// Diagnostics

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  int line = 0; // 1-based; 0 = not tied to source text
  int col = 0;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_errors(const Diagnostics& ds) {
  return std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::error;
  });
}

// ---------------------------------------------------------------------------
// ClosedFiberModel
//
// Combinatorial description of the closed fiber of a normal model of a
// curve: irreducible components, marked points, and per-(point, component)
// branch counts.  Components double as the open patches (the complement of
// the marked points in one component is a single patch).

struct BranchEntry {
  int component = 0; // index into components
  int count = 0;     // number of branches of the point on that component
  friend bool operator==(const BranchEntry&, const BranchEntry&) = default;
};

struct PointRecord {
  std::string id;
  std::vector<BranchEntry> branches; // source order
  friend bool operator==(const PointRecord&, const PointRecord&) = default;
};

struct ClosedFiberModel {
  std::vector<std::string> components; // declaration order
  std::vector<PointRecord> points;     // declaration order

  friend bool operator==(const ClosedFiberModel&, const ClosedFiberModel&) = default;

  std::optional<int> component_index(const std::string& id) const {
    for (std::size_t i = 0; i < components.size(); ++i)
      if (components[i] == id) return static_cast<int>(i);
    return std::nullopt;
  }

  std::optional<int> point_index(const std::string& id) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].id == id) return static_cast<int>(i);
    return std::nullopt;
  }

  int branch_count(int point, int component) const {
    for (const auto& b : points[static_cast<std::size_t>(point)].branches)
      if (b.component == component) return b.count;
    return 0;
  }

  int total_branches(int point) const {
    int t = 0;
    for (const auto& b : points[static_cast<std::size_t>(point)].branches) t += b.count;
    return t;
  }

  bool id_in_use(const std::string& id) const {
    return component_index(id).has_value() || point_index(id).has_value();
  }
};

// ---------------------------------------------------------------------------
// DSL front end.  Line oriented, UTF-8, '#' starts a comment:
//
//   component <ident>
//   point <ident> on <comp>:<count> [<comp>:<count> ...]
//
// Identifiers match [A-Za-z_][A-Za-z0-9_']*; counts are positive decimal
// integers.  Points and components share one namespace.

struct ParseResult {
  std::optional<ClosedFiberModel> model; // present iff no errors
  Diagnostics diagnostics;
};

namespace detail {

inline bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

struct Token {
  std::string text;
  int col = 0; // 1-based
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

} // namespace detail

inline ParseResult parse_model(const std::string& text) {
  ParseResult result;
  ClosedFiberModel model;
  auto err = [&](const std::string& code, const std::string& msg, int line, int col) {
    result.diagnostics.push_back({Diagnostic::Severity::error, code, msg, line, col});
  };

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;

    if (toks[0].text == "component") {
      if (toks.size() != 2) {
        err("syntax-error", "expected: component <ident>", lineno, toks[0].col);
        continue;
      }
      const std::string& id = toks[1].text;
      if (!detail::valid_ident(id)) {
        err("syntax-error", "invalid identifier '" + id + "'", lineno, toks[1].col);
        continue;
      }
      if (model.id_in_use(id)) {
        err("duplicate-identifier", "identifier '" + id + "' already declared", lineno, toks[1].col);
        continue;
      }
      model.components.push_back(id);
    } else if (toks[0].text == "point") {
      if (toks.size() < 4 || toks[2].text != "on") {
        err("syntax-error", "expected: point <ident> on <comp>:<count> ...", lineno, toks[0].col);
        continue;
      }
      const std::string& id = toks[1].text;
      if (!detail::valid_ident(id)) {
        err("syntax-error", "invalid identifier '" + id + "'", lineno, toks[1].col);
        continue;
      }
      if (model.id_in_use(id)) {
        err("duplicate-identifier", "identifier '" + id + "' already declared", lineno, toks[1].col);
        continue;
      }
      PointRecord rec;
      rec.id = id;
      bool bad = false;
      for (std::size_t t = 3; t < toks.size(); ++t) {
        const std::string& pair = toks[t].text;
        auto colon = pair.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= pair.size() ||
            pair.find(':', colon + 1) != std::string::npos) {
          err("syntax-error", "expected <comp>:<count>, got '" + pair + "'", lineno, toks[t].col);
          bad = true;
          continue;
        }
        std::string comp = pair.substr(0, colon);
        std::string num = pair.substr(colon + 1);
        if (!detail::valid_ident(comp)) {
          err("syntax-error", "invalid identifier '" + comp + "'", lineno, toks[t].col);
          bad = true;
          continue;
        }
        bool digits = !num.empty() &&
                      std::all_of(num.begin(), num.end(), [](char c) {
                        return std::isdigit(static_cast<unsigned char>(c));
                      });
        if (!digits) {
          err("syntax-error", "branch count must be a decimal integer: '" + num + "'", lineno, toks[t].col);
          bad = true;
          continue;
        }
        long count = std::stol(num);
        if (count <= 0) {
          err("nonpositive-branch-count", "branch count must be positive: '" + pair + "'", lineno, toks[t].col);
          bad = true;
          continue;
        }
        auto ci = model.component_index(comp);
        if (!ci) {
          err("undeclared-component", "component '" + comp + "' not declared", lineno, toks[t].col);
          bad = true;
          continue;
        }
        for (const auto& b : rec.branches)
          if (b.component == *ci) {
            err("duplicate-branch-entry", "component '" + comp + "' listed twice for point '" + id + "'",
                lineno, toks[t].col);
            bad = true;
          }
        if (!bad) rec.branches.push_back({*ci, static_cast<int>(count)});
      }
      if (!bad && !rec.branches.empty()) model.points.push_back(std::move(rec));
    } else {
      err("syntax-error", "unknown directive '" + toks[0].text + "'", lineno, toks[0].col);
    }
  }

  if (!has_errors(result.diagnostics)) result.model = std::move(model);
  return result;
}

/// Canonical source form: components first in declaration order, then points.
inline std::string serialize_model(const ClosedFiberModel& m) {
  std::string out;
  for (const auto& c : m.components) out += "component " + c + "\n";
  for (const auto& p : m.points) {
    out += "point " + p.id + " on";
    for (const auto& b : p.branches)
      out += " " + m.components[static_cast<std::size_t>(b.component)] + ":" + std::to_string(b.count);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation.  Structural invariants only: the assumption that the marked
// points include every non-unibranched point of the fiber cannot be checked
// from this data, so every run carries the `hyp-unverifiable` warning.

inline Diagnostics validate(const ClosedFiberModel& m) {
  Diagnostics ds;
  ds.push_back({Diagnostic::Severity::warning, "hyp-unverifiable",
                "completeness of the marked point set (all non-unibranched points listed) "
                "is assumed, not checked",
                0, 0});

  if (m.points.empty() || m.components.empty()) {
    ds.push_back({Diagnostic::Severity::error, "empty-model",
                  "model needs at least one component and one marked point", 0, 0});
    return ds;
  }

  for (std::size_t q = 0; q < m.points.size(); ++q)
    if (m.total_branches(static_cast<int>(q)) < 1)
      ds.push_back({Diagnostic::Severity::error, "point-without-branch",
                    "point '" + m.points[q].id + "' has no branch", 0, 0});

  std::vector<bool> touched(m.components.size(), false);
  for (const auto& p : m.points)
    for (const auto& b : p.branches)
      if (b.count >= 1) touched[static_cast<std::size_t>(b.component)] = true;
  for (std::size_t c = 0; c < m.components.size(); ++c)
    if (!touched[c])
      ds.push_back({Diagnostic::Severity::error, "component-without-point",
                    "component '" + m.components[c] + "' carries no marked point", 0, 0});

  // connectivity of the bipartite incidence graph
  const std::size_t P = m.points.size(), C = m.components.size();
  std::vector<bool> seen(P + C, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    if (v < P) {
      for (const auto& b : m.points[v].branches)
        if (std::size_t w = P + static_cast<std::size_t>(b.component); !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    } else {
      for (std::size_t q = 0; q < P; ++q)
        if (!seen[q] && m.branch_count(static_cast<int>(q), static_cast<int>(v - P)) > 0) {
          seen[q] = true;
          stack.push_back(q);
        }
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    ds.push_back({Diagnostic::Severity::error, "disconnected-fiber",
                  "the incidence graph of points and components is not connected", 0, 0});
  return ds;
}

// ---------------------------------------------------------------------------
// Model surgery.  Both operations return new models and leave the cycle rank
// of the associated reduction graph unchanged.

namespace detail {

inline std::string fresh_primed(const ClosedFiberModel& m, std::string base) {
  std::string cand = base + "'";
  while (m.id_in_use(cand)) cand += "'";
  return cand;
}

inline std::string fresh_numbered(const ClosedFiberModel& m, const std::string& base, int& k) {
  for (;; ++k) {
    std::string cand = base + std::to_string(k);
    if (!m.id_in_use(cand)) {
      ++k;
      return cand;
    }
  }
}

} // namespace detail

/// Add one fresh unibranched smooth point on `component` (enlarging the
/// marked point set).  The fresh point is named after the component's first
/// marked point, with primes appended.
inline ClosedFiberModel refine(const ClosedFiberModel& m, const std::string& component) {
  auto ci = m.component_index(component);
  if (!ci) fail("unknown-component", "no component '" + component + "'");
  std::string base = component;
  for (std::size_t q = 0; q < m.points.size(); ++q)
    if (m.branch_count(static_cast<int>(q), *ci) > 0) {
      base = m.points[q].id;
      break;
    }
  ClosedFiberModel out = m;
  out.points.push_back({detail::fresh_primed(m, base), {{*ci, 1}}});
  return out;
}

/// Blow up the model at `point`.  Supported shapes:
///   (a) smooth point (one branch): the point moves onto the intersection of
///       its component with the new exceptional component;
///   (b) normal crossing (two branches, on one component or two): the two
///       branches separate, each meeting the exceptional component in one
///       new point.
/// Any other branch configuration is rejected with `unsupported-singularity`.
inline ClosedFiberModel blowup(const ClosedFiberModel& m, const std::string& point) {
  auto qi = m.point_index(point);
  if (!qi) fail("unknown-point", "no point '" + point + "'");
  const PointRecord& rec = m.points[static_cast<std::size_t>(*qi)];
  const int total = m.total_branches(*qi);

  ClosedFiberModel out = m;
  out.points.erase(out.points.begin() + *qi);

  int k = 1;
  std::string exceptional = detail::fresh_numbered(out, "E", k);
  out.components.push_back(exceptional);
  const int ei = static_cast<int>(out.components.size()) - 1;

  if (total == 1) {
    std::string fresh = detail::fresh_primed(out, point);
    out.points.push_back({fresh, {{rec.branches[0].component, 1}, {ei, 1}}});
    return out;
  }
  if (total == 2) {
    int carrier1, carrier2;
    if (rec.branches.size() == 1) {
      carrier1 = carrier2 = rec.branches[0].component;
    } else {
      carrier1 = rec.branches[0].component;
      carrier2 = rec.branches[1].component;
    }
    int suffix = 1;
    std::string q1 = detail::fresh_numbered(out, point, suffix);
    out.points.push_back({q1, {{carrier1, 1}, {ei, 1}}});
    std::string q2 = detail::fresh_numbered(out, point, suffix);
    out.points.push_back({q2, {{carrier2, 1}, {ei, 1}}});
    return out;
  }
  fail("unsupported-singularity",
       "point '" + point + "' has " + std::to_string(total) +
           " branches; only smooth (1) and normal crossing (2) points have a "
           "determined blow-up");
}

/// True when `point` has a shape blowup() accepts.
inline bool blowup_supported(const ClosedFiberModel& m, int point) {
  return m.total_branches(point) <= 2;
}

} // namespace shagraph

#endif
