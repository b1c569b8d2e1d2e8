// shagraph — command-line front end.
//
// Subcommands: graph, pi1, covers, sha, witt-kernel, blowup, refine,
// verify {double-coset, quotient-exactness, trans-factor, homotopy}.
//
// Exit status: 0 success, 1 domain error or failed verification, 2 usage.
// Reports are byte-identical across runs for identical inputs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "shagraph/json_io.hpp"

namespace {

using namespace shagraph;

struct CommonOpts {
  std::string model_path;
  std::string model_inline;
  std::string format = "json";
  std::uint64_t max_states = 0; // 0 = unset
  std::uint64_t max_order = 0;
};

void add_model_opts(CLI::App* cmd, CommonOpts& opts, bool with_dot = false) {
  auto* path = cmd->add_option("--model", opts.model_path, "model file (.sg)");
  auto* inl = cmd->add_option("--model-inline", opts.model_inline, "model source inline");
  path->excludes(inl);
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember(with_dot ? std::vector<std::string>{"json", "text", "dot"}
                                     : std::vector<std::string>{"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--max-states", opts.max_states,
                  "override the enumeration state cap (beats SHAGRAPH_MAX_STATES)");
  cmd->add_option("--max-order", opts.max_order, "override the group order cap");
}

std::uint64_t state_cap(const CommonOpts& opts) {
  if (opts.max_states > 0) return opts.max_states;
  if (const char* env = std::getenv("SHAGRAPH_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultStateCap;
}

std::uint64_t order_cap(const CommonOpts& opts) {
  return opts.max_order > 0 ? opts.max_order : kDefaultOrderCap;
}

void print_diagnostics(const Diagnostics& ds) {
  for (const auto& d : ds) {
    std::cerr << (d.severity == Diagnostic::Severity::error ? "error[" : "warning[") << d.code
              << "]";
    if (d.line > 0) std::cerr << " " << d.line << ":" << d.col;
    std::cerr << " " << d.message << "\n";
  }
}

ClosedFiberModel load_model(const CommonOpts& opts) {
  std::string text;
  if (!opts.model_path.empty()) {
    std::ifstream in(opts.model_path, std::ios::binary);
    if (!in) fail("io-error", "cannot read model file '" + opts.model_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else if (!opts.model_inline.empty()) {
    text = opts.model_inline;
  } else {
    fail("usage", "one of --model or --model-inline is required");
  }
  auto parsed = parse_model(text);
  if (!parsed.model) {
    print_diagnostics(parsed.diagnostics);
    fail("parse-error", "model source is not well formed");
  }
  auto ds = validate(*parsed.model);
  if (has_errors(ds)) {
    print_diagnostics(ds);
    fail("invalid-model", "model fails validation");
  }
  return *parsed.model;
}

// "key: value" per top-level field, nested values as compact JSON
void emit(const json& report, const std::string& format) {
  if (format == "text") {
    for (const auto& [key, value] : report.items()) {
      if (value.is_string())
        std::cout << key << ": " << value.get<std::string>() << "\n";
      else
        std::cout << key << ": " << value.dump() << "\n";
    }
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      std::string cell = text.substr(start, i - start);
      start = i + 1;
      if (cell.empty()) continue;
      try {
        out.push_back(std::stoi(cell));
      } catch (...) {
        fail("usage", "bad element index '" + cell + "'");
      }
    }
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"reduction graphs of arithmetic curve models: covers, obstruction sets, "
               "double cosets, Witt kernel"};
  app.require_subcommand(1);

  CommonOpts opts;
  int degree = 2;
  bool connected_only = false;
  std::string group_spec;
  std::string normal_list;
  std::string target;

  auto* graph_cmd = app.add_subcommand("graph", "build the reduction graph");
  add_model_opts(graph_cmd, opts, /*with_dot=*/true);

  auto* pi1_cmd = app.add_subcommand("pi1", "spanning-tree gauge and fundamental group rank");
  add_model_opts(pi1_cmd, opts);

  auto* covers_cmd = app.add_subcommand("covers", "enumerate cover classes of a given degree");
  add_model_opts(covers_cmd, opts);
  covers_cmd->add_option("--degree", degree, "cover degree")->required();
  covers_cmd->add_flag("--connected", connected_only, "connected classes only");

  auto* sha_cmd = app.add_subcommand("sha", "obstruction set for a component group");
  add_model_opts(sha_cmd, opts);
  sha_cmd->add_option("--group", group_spec, "component group spec")->required();

  auto* witt_cmd = app.add_subcommand("witt-kernel", "kernel of the Witt local-global map");
  add_model_opts(witt_cmd, opts);

  auto* blowup_cmd = app.add_subcommand("blowup", "blow up the model at a point");
  add_model_opts(blowup_cmd, opts);
  blowup_cmd->add_option("--point", target, "point to blow up")->required();

  auto* refine_cmd = app.add_subcommand("refine", "add a fresh smooth marked point");
  add_model_opts(refine_cmd, opts);
  refine_cmd->add_option("--component", target, "component receiving the point")->required();

  auto* verify_cmd = app.add_subcommand("verify", "cross-check two independent computations");
  verify_cmd->require_subcommand(1);

  auto* vdc = verify_cmd->add_subcommand(
      "double-coset", "orbit count of the coboundary action vs the obstruction set");
  add_model_opts(vdc, opts);
  vdc->add_option("--group", group_spec, "group spec")->required();

  auto* vqe = verify_cmd->add_subcommand("quotient-exactness",
                                         "pointed exactness of the quotient sequence");
  add_model_opts(vqe, opts);
  vqe->add_option("--group", group_spec, "group spec")->required();
  vqe->add_option("--normal", normal_list, "generators of the normal subgroup (element indices)")
      ->required();

  auto* vtf = verify_cmd->add_subcommand("trans-factor",
                                         "bijectivity criterion vs pairwise factorization");
  add_model_opts(vtf, opts);
  vtf->add_option("--group", group_spec, "group spec")->required();
  vtf->add_option("--normal", normal_list, "generators of the normal subgroup (element indices)")
      ->required();

  auto* vh = verify_cmd->add_subcommand(
      "homotopy", "rank and obstruction size invariance under refine and blow-up");
  add_model_opts(vh, opts);
  vh->add_option("--group", group_spec, "group spec (default C2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (graph_cmd->parsed()) {
    auto m = load_model(opts);
    auto g = from_model(m);
    if (opts.format == "dot") {
      std::cout << to_dot(g);
    } else {
      emit(graph_report(g), opts.format);
    }
    return 0;
  }

  if (pi1_cmd->parsed()) {
    auto m = load_model(opts);
    auto g = from_model(m);
    emit(pi1_report(g, spanning_gauge(g)), opts.format);
    return 0;
  }

  if (covers_cmd->parsed()) {
    auto m = load_model(opts);
    auto g = from_model(m);
    auto gauge = spanning_gauge(g);
    auto classes = enumerate_covers(g, gauge, degree, connected_only, state_cap(opts));
    emit(covers_report(g, degree, connected_only, classes), opts.format);
    return 0;
  }

  if (sha_cmd->parsed()) {
    auto m = load_model(opts);
    auto g = from_model(m);
    auto gauge = spanning_gauge(g);
    auto G = build_group(group_spec, order_cap(opts));
    auto sha = compute_sha(g, gauge, G, state_cap(opts));
    emit(sha_report(sha, sha_count_burnside(g, gauge, G), is_lgp_trivial(g, gauge, G)),
         opts.format);
    return 0;
  }

  if (witt_cmd->parsed()) {
    auto m = load_model(opts);
    auto g = from_model(m);
    emit(witt_report(g, witt_kernel(g, spanning_gauge(g), state_cap(opts))), opts.format);
    return 0;
  }

  if (blowup_cmd->parsed() || refine_cmd->parsed()) {
    auto m = load_model(opts);
    auto out = blowup_cmd->parsed() ? blowup(m, target) : refine(m, target);
    if (opts.format == "text")
      std::cout << serialize_model(out);
    else
      emit(model_report(out), opts.format);
    return 0;
  }

  if (vdc->parsed()) {
    auto m = load_model(opts);
    auto g = from_model(m);
    auto gauge = spanning_gauge(g);
    auto G = build_group(group_spec, order_cap(opts));
    auto sha = compute_sha(g, gauge, G, state_cap(opts));
    auto oracle = sha_count_burnside(g, gauge, G);
    FactorizationSystem sys(g, gauge, G);
    auto part = coboundary_orbits(sys, state_cap(opts));
    bool ok = part.orbit_count() == sha.size() && oracle == sha.size();
    json report{{"agreement", ok},
                {"sha_size", sha.size()},
                {"burnside_count", oracle},
                {"double_coset", mv_report(sys, part)},
                {"graph_fingerprint", hex64(g.fingerprint())},
                {"group_spec", G.spec()}};
    emit(report, opts.format);
    return ok ? 0 : 1;
  }

  if (vqe->parsed()) {
    auto m = load_model(opts);
    auto g = from_model(m);
    auto gauge = spanning_gauge(g);
    auto G = build_group(group_spec, order_cap(opts));
    auto N = subgroup(G, parse_index_list(normal_list));
    auto rep = quotient_sequence_check(g, gauge, G, N, state_cap(opts));
    emit(exactness_report(rep), opts.format);
    return rep.exact() ? 0 : 1;
  }

  if (vtf->parsed()) {
    auto m = load_model(opts);
    auto g = from_model(m);
    auto gauge = spanning_gauge(g);
    auto G = build_group(group_spec, order_cap(opts));
    auto N = subgroup(G, parse_index_list(normal_list));
    FactorizationSystem sys(g, gauge, G);
    auto rep = trans_factor_check(sys, N, state_cap(opts));
    emit(trans_factor_report(rep), opts.format);
    return rep.agree() ? 0 : 1;
  }

  if (vh->parsed()) {
    auto m = load_model(opts);
    auto G = build_group(group_spec.empty() ? "C2" : group_spec, order_cap(opts));
    auto g0 = from_model(m);
    auto gauge0 = spanning_gauge(g0);
    const int rank0 = cycle_rank(g0);
    const std::size_t sha0 = compute_sha(g0, gauge0, G, state_cap(opts)).size();

    json checks = json::array();
    bool all_ok = true;
    auto check = [&](const std::string& op, const std::string& tgt, const ClosedFiberModel& mm) {
      auto gg = from_model(mm);
      auto gg_gauge = spanning_gauge(gg);
      int rank1 = cycle_rank(gg);
      std::size_t sha1 = compute_sha(gg, gg_gauge, G, state_cap(opts)).size();
      bool ok = rank1 == rank0 && sha1 == sha0;
      all_ok = all_ok && ok;
      checks.push_back(json{{"op", op},
                            {"target", tgt},
                            {"rank", rank1},
                            {"sha_size", sha1},
                            {"ok", ok}});
    };
    for (const auto& c : m.components) check("refine", c, refine(m, c));
    for (std::size_t q = 0; q < m.points.size(); ++q)
      if (blowup_supported(m, static_cast<int>(q)))
        check("blowup", m.points[q].id, blowup(m, m.points[q].id));

    json report{{"all_ok", all_ok},
                {"baseline", json{{"rank", rank0}, {"sha_size", sha0}}},
                {"checks", checks},
                {"group_spec", G.spec()}};
    emit(report, opts.format);
    return all_ok ? 0 : 1;
  }

  return 2;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const shagraph::Error& e) {
    std::cerr << "error[" << e.code() << "] " << e.what() << "\n";
    return e.code() == "usage" ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
