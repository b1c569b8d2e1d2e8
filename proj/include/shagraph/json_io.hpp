#ifndef SHAGRAPH_JSON_IO_HPP
#define SHAGRAPH_JSON_IO_HPP

#include <json.hpp>

#include "shagraph/covers.hpp"
#include "shagraph/graph.hpp"
#include "shagraph/groups.hpp"
#include "shagraph/model.hpp"
#include "shagraph/mv.hpp"
#include "shagraph/sha.hpp"

namespace shagraph {

// Report builders for the CLI.  nlohmann::json keeps object keys sorted, so
// serialized reports are byte-identical across runs for identical inputs.

using json = nlohmann::json;

inline json graph_report(const ReductionGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({e.point, e.component, e.branch});
  return json{{"points", g.point_ids},
              {"components", g.component_ids},
              {"edges", edges},
              {"fingerprint", hex64(g.fingerprint())}};
}

inline json pi1_report(const ReductionGraph& g, const GaugeData& gauge) {
  return json{{"fingerprint", hex64(g.fingerprint())},
              {"rank", gauge.rank()},
              {"is_tree", gauge.rank() == 0},
              {"root", g.vertex_id(gauge.root)},
              {"tree_edges", gauge.tree_edges},
              {"cotree_edges", gauge.cotree_edges}};
}

inline json tuple_report(const MonodromyTuple& c) {
  json images = json::array();
  for (const Perm& p : c.images) {
    json ol = json::array();
    for (int v : p) ol.push_back(v + 1);
    images.push_back(ol);
  }
  return json{{"degree", c.degree},
              {"images", images},
              {"fingerprint", hex64(c.graph_fingerprint)}};
}

inline json covers_report(const ReductionGraph& g, int degree, bool connected_only,
                          const std::vector<MonodromyTuple>& classes) {
  json arr = json::array();
  for (const auto& c : classes) {
    json t = tuple_report(c);
    t["connected"] = is_connected(c);
    arr.push_back(t);
  }
  return json{{"fingerprint", hex64(g.fingerprint())},
              {"degree", degree},
              {"connected_only", connected_only},
              {"count", classes.size()},
              {"classes", arr}};
}

inline json sha_report(const ShaSet& sha, std::uint64_t oracle_count, bool trivial) {
  json reps = json::array();
  for (const auto& t : sha.representatives) reps.push_back(t);
  return json{{"graph_fingerprint", hex64(sha.graph_fingerprint)},
              {"group_spec", sha.group_spec},
              {"rank", sha.rank},
              {"size", sha.size()},
              {"representatives", reps},
              {"pointed_index", sha.pointed_index()},
              {"oracle_count", oracle_count},
              {"criteria", json{{"trivial", trivial}}}};
}

inline json witt_report(const ReductionGraph& g, const WittKernelReport& w) {
  json reps = json::array();
  for (const auto& t : w.representatives) reps.push_back(t);
  return json{{"graph_fingerprint", hex64(g.fingerprint())},
              {"rank", w.rank},
              {"order", w.order},
              {"representatives", reps},
              {"note", "each nontrivial kernel element is represented by a quadratic "
                       "form of dimension two"}};
}

inline json mv_report(const FactorizationSystem& sys, const OrbitPartition& part,
                      std::size_t orbit_list_cap = 64) {
  json r{{"system_fingerprint", hex64(sys.fingerprint())},
         {"group_order", sys.group().order()},
         {"edge_count", sys.edge_count()},
         {"orbit_count", part.orbit_count()},
         {"pointed_orbit_size", part.pointed_orbit_size()}};
  if (part.orbit_count() <= orbit_list_cap) {
    json orbits = json::array();
    for (std::size_t i = 0; i < part.representatives.size(); ++i)
      orbits.push_back(json{{"representative", part.representatives[i]},
                            {"size", part.orbit_sizes[i]}});
    r["orbits"] = orbits;
  }
  return r;
}

inline json model_report(const ClosedFiberModel& m) {
  json points = json::array();
  for (const auto& p : m.points) {
    json branches = json::array();
    for (const auto& b : p.branches)
      branches.push_back(json{{"component", m.components[static_cast<std::size_t>(b.component)]},
                              {"count", b.count}});
    points.push_back(json{{"id", p.id}, {"branches", branches}});
  }
  return json{{"components", m.components},
              {"points", points},
              {"source", serialize_model(m)}};
}

inline json exactness_report(const ExactnessReport& rep) {
  json r{{"sizes", json{{"sub", rep.sub_size}, {"total", rep.total_size},
                        {"quotient", rep.quotient_size}}},
         {"kernel_trivial", rep.kernel_trivial},
         {"image_equals_kernel", rep.image_equals_kernel},
         {"surjective", rep.surjective},
         {"exact", rep.exact()},
         {"image_in_total", rep.image_in_total},
         {"kernel_in_total", rep.kernel_in_total},
         {"quotient_preimage", rep.quotient_preimage}};
  if (rep.nontrivial_kernel_rep) r["nontrivial_kernel_rep"] = *rep.nontrivial_kernel_rep;
  if (rep.mismatch_rep) r["mismatch_rep"] = *rep.mismatch_rep;
  if (rep.unreached_quotient_rep) r["unreached_quotient_rep"] = *rep.unreached_quotient_rep;
  return r;
}

inline json trans_factor_report(const TransFactorReport& rep) {
  json r{{"orbits_total", rep.orbits_total},
         {"orbits_quotient", rep.orbits_quotient},
         {"side_map_bijective", rep.side_map_bijective},
         {"side_pairs_factor", rep.side_pairs_factor},
         {"agree", rep.agree()}};
  if (rep.map_counterexample)
    r["map_counterexample"] = json::array({rep.map_counterexample->first,
                                           rep.map_counterexample->second});
  if (rep.pair_counterexample)
    r["pair_counterexample"] = json::array({rep.pair_counterexample->first,
                                            rep.pair_counterexample->second});
  return r;
}

} // namespace shagraph

#endif
