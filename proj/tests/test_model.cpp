#include "support.hpp"

using namespace shagraph;
using testsupport::Rng;

static bool has_code(const Diagnostics& ds, const std::string& code) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

TEST_CASE("parse: nodal model") {
  auto r = parse_model("component C\npoint Q on C:2\n");
  REQUIRE(r.model.has_value());
  CHECK(r.diagnostics.empty());
  CHECK(r.model->components == std::vector<std::string>{"C"});
  REQUIRE(r.model->points.size() == 1);
  CHECK(r.model->points[0].id == "Q");
  CHECK(r.model->branch_count(0, 0) == 2);
}

TEST_CASE("parse: point joining two components") {
  auto r = parse_model("component C1\ncomponent C2\npoint Q on C1:1 C2:1\n");
  REQUIRE(r.model.has_value());
  CHECK(r.model->components.size() == 2);
  CHECK(r.model->branch_count(0, 0) == 1);
  CHECK(r.model->branch_count(0, 1) == 1);
  CHECK(r.model->total_branches(0) == 2);
}

TEST_CASE("parse: undeclared component carries position") {
  auto r = parse_model("point Q on C:1\n");
  CHECK_FALSE(r.model.has_value());
  REQUIRE(has_code(r.diagnostics, "undeclared-component"));
  auto it = std::find_if(r.diagnostics.begin(), r.diagnostics.end(),
                         [](const Diagnostic& d) { return d.code == "undeclared-component"; });
  CHECK(it->line == 1);
  CHECK(it->col == 12);
}

TEST_CASE("parse: error codes") {
  CHECK(has_code(parse_model("component C\ncomponent C\n").diagnostics, "duplicate-identifier"));
  CHECK(has_code(parse_model("component C\npoint C on C:1\n").diagnostics,
                 "duplicate-identifier"));
  CHECK(has_code(parse_model("component C\npoint Q on C:0\n").diagnostics,
                 "nonpositive-branch-count"));
  CHECK(has_code(parse_model("component C\npoint Q on C\n").diagnostics, "syntax-error"));
  CHECK(has_code(parse_model("component C\npoint Q on C:x\n").diagnostics, "syntax-error"));
  CHECK(has_code(parse_model("component C\npoint Q on C:1:2\n").diagnostics, "syntax-error"));
  CHECK(has_code(parse_model("frobnicate X\n").diagnostics, "syntax-error"));
  CHECK(has_code(parse_model("component C\npoint Q on C:1 C:1\n").diagnostics,
                 "duplicate-branch-entry"));
}

TEST_CASE("parse: comments and blank lines") {
  auto r = parse_model("# header\n\ncomponent C  # trailing\n  point Q on C:2\n");
  REQUIRE(r.model.has_value());
  CHECK(r.model->points.size() == 1);
}

TEST_CASE("serialize round-trips") {
  const std::string canonical = "component C1\ncomponent C2\npoint Q on C1:1 C2:1\n";
  auto r = parse_model(canonical);
  REQUIRE(r.model.has_value());
  CHECK(serialize_model(*r.model) == canonical);

  Rng rng(testsupport::seed);
  for (int i = 0; i < 50; ++i) {
    auto m = testsupport::random_model(rng);
    auto back = parse_model(serialize_model(m));
    REQUIRE(back.model.has_value());
    CHECK(*back.model == m);
  }
}

TEST_CASE("validate: nodal model is clean with one standing warning") {
  auto ds = validate(testsupport::nodal_model());
  CHECK_FALSE(has_errors(ds));
  CHECK(std::count_if(ds.begin(), ds.end(), [](const Diagnostic& d) {
          return d.code == "hyp-unverifiable";
        }) == 1);
}

TEST_CASE("validate: structural errors") {
  auto isolated = parse_model("component C\ncomponent D\npoint Q on C:2\n");
  REQUIRE(isolated.model.has_value());
  CHECK(has_code(validate(*isolated.model), "component-without-point"));

  auto split = parse_model("component C1\ncomponent C2\npoint Q1 on C1:1\npoint Q2 on C2:1\n");
  REQUIRE(split.model.has_value());
  CHECK(has_code(validate(*split.model), "disconnected-fiber"));

  auto empty = parse_model("# nothing\n");
  REQUIRE(empty.model.has_value());
  CHECK(has_code(validate(*empty.model), "empty-model"));
}

TEST_CASE("refine adds a fresh leaf point") {
  auto m = testsupport::nodal_model();
  auto m2 = refine(m, "C");
  REQUIRE(m2.points.size() == 2);
  CHECK(m2.points[1].id == "Q'");
  CHECK(m2.branch_count(1, 0) == 1);

  auto m3 = refine(m2, "C");
  REQUIRE(m3.points.size() == 3);
  CHECK(m3.points[2].id == "Q''");
  CHECK(m3.points[1].id != m3.points[2].id);

  CHECK_THROWS_AS(refine(m, "missing"), Error);
}

TEST_CASE("refine and blowup preserve validity and cycle rank") {
  Rng rng(testsupport::seed + 1);
  for (int i = 0; i < 50; ++i) {
    auto m = testsupport::random_model(rng);
    int rank = cycle_rank(from_model(m));

    auto comp = m.components[static_cast<std::size_t>(rng.below(
        static_cast<int>(m.components.size())))];
    auto refined = refine(m, comp);
    CHECK_FALSE(has_errors(validate(refined)));
    CHECK(cycle_rank(from_model(refined)) == rank);

    int q = testsupport::pick_supported_point(m, rng);
    REQUIRE(q >= 0);
    auto blown = blowup(m, m.points[static_cast<std::size_t>(q)].id);
    CHECK_FALSE(has_errors(validate(blown)));
    CHECK(cycle_rank(from_model(blown)) == rank);
  }
}

TEST_CASE("blowup: self-node") {
  auto m = testsupport::nodal_model(); // b(Q, C) = 2, rank 1
  auto b = blowup(m, "Q");
  CHECK(b.components == std::vector<std::string>{"C", "E1"});
  REQUIRE(b.points.size() == 2);
  CHECK(b.points[0].id == "Q1");
  CHECK(b.points[1].id == "Q2");
  for (int q = 0; q < 2; ++q) {
    CHECK(b.branch_count(q, 0) == 1);
    CHECK(b.branch_count(q, 1) == 1);
  }
  CHECK(cycle_rank(from_model(b)) == 1); // 4 - 4 + 1
}

TEST_CASE("blowup: smooth point") {
  auto m = testsupport::parse_or_die("component C\npoint Q on C:1\n");
  auto b = blowup(m, "Q");
  CHECK(b.components == std::vector<std::string>{"C", "E1"});
  REQUIRE(b.points.size() == 1);
  CHECK(b.points[0].id == "Q'");
  CHECK(b.branch_count(0, 0) == 1);
  CHECK(b.branch_count(0, 1) == 1);
  CHECK(cycle_rank(from_model(b)) == 0);
}

TEST_CASE("blowup: two-component node keeps the rank fixed") {
  auto m = testsupport::chain_model(2); // C1 - Q1 - C2, one point, two edges
  auto g0 = from_model(m);
  CHECK(g0.edge_count() == 2);
  auto b = blowup(m, "Q1");
  auto g1 = from_model(b);
  CHECK(b.points.size() == 2);               // one point became two
  CHECK(g1.edge_count() == 4);               // two edges became four
  CHECK(b.components.size() == m.components.size() + 1);
  CHECK(cycle_rank(g1) == cycle_rank(g0));
}

TEST_CASE("blowup: rejections") {
  auto m = testsupport::theta_model(); // 3 branches
  try {
    blowup(m, "Q");
    FAIL("expected unsupported-singularity");
  } catch (const Error& e) {
    CHECK(e.code() == "unsupported-singularity");
  }
  try {
    blowup(m, "nope");
    FAIL("expected unknown-point");
  } catch (const Error& e) {
    CHECK(e.code() == "unknown-point");
  }
}

TEST_CASE("blowup: exceptional component names avoid collisions") {
  auto m = testsupport::parse_or_die("component E1\npoint Q on E1:2\n");
  auto b = blowup(m, "Q");
  CHECK(b.components == std::vector<std::string>{"E1", "E2"});
}
