#include "support.hpp"

using namespace shagraph;

TEST_CASE("cyclic groups") {
  auto c2 = build_group("C2");
  CHECK(c2.order() == 2);
  CHECK(c2.mul(1, 1) == 0);

  auto c4 = build_group("C4");
  CHECK(c4.order() == 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(c4.mul(a, b) == (a + b) % 4);
  CHECK(conjugacy_classes(c4).size() == 4); // abelian: singletons
}

TEST_CASE("symmetric group S3") {
  auto s3 = build_group("S3");
  CHECK(s3.order() == 6);
  CHECK(s3.label(0) == "()"); // identity first in lex one-line order

  // brute-force conjugation oracle, frozen sizes 1, 3, 2
  auto oracle = testsupport::brute_classes(s3);
  std::vector<std::size_t> sizes;
  for (const auto& c : oracle) sizes.push_back(c.size());
  CHECK(sizes == std::vector<std::size_t>{1, 3, 2});
  CHECK(conjugacy_classes(s3) == oracle);
}

TEST_CASE("dihedral group D4") {
  auto d4 = build_group("D4");
  CHECK(d4.order() == 8);
  auto oracle = testsupport::brute_classes(d4);
  CHECK(oracle.size() == 5);
  CHECK(conjugacy_classes(d4) == oracle);
}

TEST_CASE("group axioms hold for every construction family") {
  for (const std::string spec :
       {"C1", "C2", "C6", "S3", "S4", "D4", "C2xC2", "C2xS3", "perm:(1 2 3),(1 2)"}) {
    auto G = build_group(spec);
    for (int a = 0; a < G.order(); ++a) {
      CHECK(G.mul(0, a) == a);
      CHECK(G.mul(a, 0) == a);
      CHECK(G.mul(a, G.inv(a)) == 0);
      for (int b = 0; b < G.order(); ++b)
        for (int c = 0; c < G.order(); ++c)
          REQUIRE(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
    }
  }
}

TEST_CASE("perm closure matches an independent fixed-point closure") {
  auto G = build_group("perm:(1 2)(3 4),(1 3)");

  // oracle: saturate the generated set by pairwise products
  std::vector<Perm> gens{parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)", 4)};
  std::vector<Perm> elems{identity_perm(4)};
  for (const auto& g : gens) elems.push_back(g);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j) {
        Perm p = compose(elems[i], elems[j]);
        if (std::find(elems.begin(), elems.end(), p) == elems.end()) {
          elems.push_back(p);
          grew = true;
        }
      }
  }
  CHECK(G.order() == static_cast<int>(elems.size()));
  CHECK(G.order() == 8);
}

TEST_CASE("named permutation groups") {
  auto a4 = build_group("perm:(1 2 3),(1 2)(3 4)");
  CHECK(a4.order() == 12);

  auto q8 = build_group("perm:(1 2 3 4)(5 6 7 8),(1 5 3 7)(2 8 4 6)");
  CHECK(q8.order() == 8);
  CHECK_FALSE(q8.is_abelian());
  for (const auto& s : testsupport::all_subgroups(q8))
    CHECK(s.is_normal); // the quaternion signature
}

TEST_CASE("order cap on permutation closure") {
  try {
    build_group("perm:(1 2),(1 2 3 4 5 6 7)", 100);
    FAIL("expected order-cap-exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == "order-cap-exceeded");
  }
}

TEST_CASE("centralizers") {
  auto s3 = build_group("S3");
  CHECK(centralizer(s3, 0).order() == 6);
  // index 1 = (2 3), a transposition; index 3 = (1 2 3)
  CHECK(s3.label(1) == "(2 3)");
  CHECK(centralizer(s3, 1).order() == 2);
  CHECK(s3.label(3) == "(1 2 3)");
  CHECK(centralizer(s3, 3).order() == 3);
}

TEST_CASE("class equation |class| * |centralizer| = |G|") {
  for (const std::string spec : {"C4", "S3", "S4", "D4", "C2xS3"}) {
    auto G = build_group(spec);
    auto classes = conjugacy_classes(G);
    for (const auto& cls : classes)
      for (int g : cls)
        CHECK(cls.size() * static_cast<std::size_t>(centralizer(G, g).order()) ==
              static_cast<std::size_t>(G.order()));
  }
}

TEST_CASE("subgroups") {
  auto s3 = build_group("S3");
  auto a3 = subgroup(s3, {3}); // generated by a 3-cycle
  CHECK(a3.order() == 3);
  CHECK(a3.is_normal);

  auto t = subgroup(s3, {1}); // generated by a transposition
  CHECK(t.order() == 2);
  CHECK_FALSE(t.is_normal);

  auto triv = subgroup(s3, {});
  CHECK(triv.order() == 1);
  CHECK(triv.is_normal);

  CHECK(is_subgroup(s3, a3.elements));
  CHECK_FALSE(is_subgroup(s3, std::vector<int>{0, 1, 3}));
}

TEST_CASE("quotients") {
  auto s3 = build_group("S3");
  auto a3 = subgroup(s3, {3});
  auto q = quotient(s3, a3);
  CHECK(q.group.order() == 2);
  CHECK(q.projection[0] == 0);
  CHECK(q.projection[3] == 0); // 3-cycles land in the identity coset
  CHECK(q.projection[4] == 0);
  CHECK(q.projection[1] == 1);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      CHECK(q.projection[static_cast<std::size_t>(s3.mul(a, b))] ==
            q.group.mul(q.projection[static_cast<std::size_t>(a)],
                        q.projection[static_cast<std::size_t>(b)]));

  auto c4 = build_group("C4");
  auto c2 = subgroup(c4, {2});
  CHECK(quotient(c4, c2).group.order() == 2);

  CHECK(quotient(s3, full_subgroup(s3)).group.order() == 1);

  try {
    quotient(s3, subgroup(s3, {1}));
    FAIL("expected not-normal");
  } catch (const Error& e) {
    CHECK(e.code() == "not-normal");
  }
}

TEST_CASE("subgroup_as_group embeds back into the parent") {
  auto s3 = build_group("S3");
  auto a3 = subgroup(s3, {3});
  std::vector<int> embed;
  auto sub = subgroup_as_group(s3, a3, &embed);
  CHECK(sub.order() == 3);
  CHECK(embed == a3.elements);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(embed[static_cast<std::size_t>(sub.mul(a, b))] ==
            s3.mul(embed[static_cast<std::size_t>(a)], embed[static_cast<std::size_t>(b)]));
}

TEST_CASE("direct products") {
  auto v4 = build_group("C2xC2");
  CHECK(v4.order() == 4);
  CHECK(v4.is_abelian());
  for (int a = 1; a < 4; ++a) CHECK(v4.mul(a, a) == 0);

  CHECK(build_group("C2xS3").order() == 12);
  CHECK(build_group("C2xC2xC2").order() == 8);
}

TEST_CASE("table specs") {
  auto c2 = build_group("table:0,1;1,0");
  CHECK(c2.order() == 2);
  try {
    build_group("table:0,1;1,1");
    FAIL("expected bad-group-table");
  } catch (const Error& e) {
    CHECK(e.code() == "bad-group-table");
  }
  CHECK_THROWS_AS(build_group("Z5"), Error);
  CHECK_THROWS_AS(build_group(""), Error);
}
