#include "support.hpp"
#include "shagraph/sha.hpp"

using namespace shagraph;
using testsupport::Rng;

TEST_CASE("compute_sha pinned sizes") {
  auto tree = testsupport::gauged(testsupport::chain_model(4));
  for (const std::string spec : {"C2", "S3", "D4"})
    CHECK(compute_sha(tree.graph, tree.gauge, build_group(spec)).size() == 1);

  auto nodal = testsupport::gauged(testsupport::nodal_model());
  CHECK(compute_sha(nodal.graph, nodal.gauge, build_group("C2")).size() == 2);
  CHECK(compute_sha(nodal.graph, nodal.gauge, build_group("S3")).size() == 3);

  auto theta = testsupport::gauged(testsupport::theta_model());
  CHECK(compute_sha(theta.graph, theta.gauge, build_group("S3")).size() == 11);
}

TEST_CASE("compute_sha representatives are canonical, pointed, pairwise non-conjugate") {
  auto nodal = testsupport::gauged(testsupport::nodal_model());
  auto s3 = build_group("S3");
  auto sha = compute_sha(nodal.graph, nodal.gauge, s3);
  REQUIRE(sha.size() == 3);
  CHECK(sha.representatives[0] == std::vector<int>{0}); // pointed element first
  CHECK(sha.pointed_index() == 0);

  for (const auto& rep : sha.representatives)
    CHECK(rep == canonical_group_tuple(s3, rep));

  // brute-force pairwise non-conjugacy
  for (std::size_t i = 0; i < sha.size(); ++i)
    for (std::size_t j = i + 1; j < sha.size(); ++j) {
      bool conj = false;
      for (int h = 0; h < s3.order(); ++h) {
        std::vector<int> c;
        for (int v : sha.representatives[i]) c.push_back(s3.conj(v, h));
        if (c == sha.representatives[j]) conj = true;
      }
      CHECK_FALSE(conj);
    }
}

TEST_CASE("sha_count_burnside pinned values and oracle agreement") {
  auto nodal = testsupport::gauged(testsupport::nodal_model());
  auto s3 = build_group("S3");
  CHECK(sha_count_burnside(nodal.graph, nodal.gauge, s3) == 3); // (6 + 3*2 + 2*3)/6

  auto theta = testsupport::gauged(testsupport::theta_model());
  CHECK(sha_count_burnside(theta.graph, theta.gauge, s3) == 11); // (36 + 3*4 + 2*9)/6

  // rank r with C2: 2^r
  for (int b = 1; b <= 5; ++b) {
    auto gg = testsupport::gauged(testsupport::bouquet_model(b));
    CHECK(sha_count_burnside(gg.graph, gg.gauge, build_group("C2")) ==
          (1ull << (b - 1)));
  }

  // rank 0
  auto tree = testsupport::gauged(testsupport::chain_model(3));
  CHECK(sha_count_burnside(tree.graph, tree.gauge, s3) == 1);
}

TEST_CASE("compute_sha size equals the Burnside count (random instances)") {
  Rng rng(testsupport::seed + 20);
  const std::vector<std::string> groups{"C2", "C3", "C4", "C2xC2", "S3", "D4"};
  for (int i = 0; i < 25; ++i) {
    auto gg = testsupport::gauged(testsupport::random_model(rng));
    auto G = build_group(groups[static_cast<std::size_t>(rng.below(static_cast<int>(groups.size())))]);
    auto sha = compute_sha(gg.graph, gg.gauge, G);
    CHECK(sha.size() == sha_count_burnside(gg.graph, gg.gauge, G));
    CHECK(sha.size() == testsupport::burnside_orbit_count(G, gg.gauge.rank()));
  }
}

TEST_CASE("is_lgp_trivial criterion") {
  auto tree = testsupport::gauged(testsupport::chain_model(3));
  auto nodal = testsupport::gauged(testsupport::nodal_model());
  auto s3 = build_group("S3");
  auto c1 = build_group("C1");
  auto c2 = build_group("C2");

  CHECK(is_lgp_trivial(tree.graph, tree.gauge, s3));
  CHECK(is_lgp_trivial(nodal.graph, nodal.gauge, c1));
  CHECK_FALSE(is_lgp_trivial(nodal.graph, nodal.gauge, c2));

  Rng rng(testsupport::seed + 21);
  const std::vector<std::string> groups{"C1", "C2", "C3", "S3", "D4"};
  for (int i = 0; i < 40; ++i) {
    auto gg = testsupport::gauged(testsupport::random_model(rng));
    auto G = build_group(groups[static_cast<std::size_t>(rng.below(static_cast<int>(groups.size())))]);
    CHECK(is_lgp_trivial(gg.graph, gg.gauge, G) ==
          (compute_sha(gg.graph, gg.gauge, G).size() == 1));
  }
}

TEST_CASE("witt_kernel structure") {
  auto tree = testsupport::gauged(testsupport::chain_model(3));
  CHECK(witt_kernel(tree.graph, tree.gauge).order == 1);

  auto nodal = testsupport::gauged(testsupport::nodal_model());
  CHECK(witt_kernel(nodal.graph, nodal.gauge).order == 2);

  auto rank3 = testsupport::gauged(testsupport::bouquet_model(4));
  CHECK(witt_kernel(rank3.graph, rank3.gauge).order == 8);

  // representatives biject with the C2 obstruction set, element for element
  auto c2 = build_group("C2");
  for (int b = 1; b <= 5; ++b) {
    auto gg = testsupport::gauged(testsupport::bouquet_model(b));
    auto w = witt_kernel(gg.graph, gg.gauge);
    auto sha = compute_sha(gg.graph, gg.gauge, c2);
    CHECK(w.rank == gg.gauge.rank());
    CHECK(w.order == (1ull << w.rank));
    REQUIRE(w.representatives.size() == sha.size());
    CHECK(w.representatives == sha.representatives);
  }
}

TEST_CASE("abelian obstruction sets carry the componentwise product") {
  auto theta = testsupport::gauged(testsupport::theta_model());
  auto v4 = build_group("C2xC2");
  auto sha = compute_sha(theta.graph, theta.gauge, v4);
  REQUIRE(sha.abelian);
  CHECK(sha.size() == 16);
  for (int i = 0; i < 16; ++i) {
    CHECK(sha_abelian_product(sha, v4, 0, i) == i); // pointed element is neutral
    CHECK(sha_abelian_product(sha, v4, i, i) == 0); // exponent two
  }

  auto s3 = build_group("S3");
  auto sha_s3 = compute_sha(theta.graph, theta.gauge, s3);
  CHECK_FALSE(sha_s3.abelian);
  CHECK_THROWS_AS(sha_abelian_product(sha_s3, s3, 0, 1), Error);
}

TEST_CASE("state cap raises instead of truncating") {
  auto big = testsupport::gauged(testsupport::bouquet_model(31)); // rank 30
  try {
    compute_sha(big.graph, big.gauge, build_group("C2"));
    FAIL("expected state-cap-exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == "state-cap-exceeded");
  }
}

TEST_CASE("obstruction size is a homotopy invariant (refine and blowup)") {
  Rng rng(testsupport::seed + 22);
  auto c2 = build_group("C2");
  auto s3 = build_group("S3");
  for (int i = 0; i < 15; ++i) {
    auto m = testsupport::random_model(rng);
    auto base = testsupport::gauged(m);
    for (const auto* G : {&c2, &s3}) {
      auto size0 = compute_sha(base.graph, base.gauge, *G).size();

      auto refined = testsupport::gauged(
          refine(m, m.components[static_cast<std::size_t>(rng.below(
                        static_cast<int>(m.components.size())))]));
      CHECK(compute_sha(refined.graph, refined.gauge, *G).size() == size0);

      int q = testsupport::pick_supported_point(m, rng);
      REQUIRE(q >= 0);
      auto blown = testsupport::gauged(blowup(m, m.points[static_cast<std::size_t>(q)].id));
      CHECK(compute_sha(blown.graph, blown.gauge, *G).size() == size0);
    }
  }
}

TEST_CASE("surjective classes correspond to connected Galois covers") {
  auto count_epi_classes = [](const testsupport::Gauged& gg, const FiniteGroup& G) {
    auto sha = compute_sha(gg.graph, gg.gauge, G);
    std::size_t with_surjective_image = 0;
    for (const auto& rep : sha.representatives)
      if (subgroup(G, rep).order() == G.order()) ++with_surjective_image;
    return with_surjective_image;
  };

  // Two regular covers carry the same G-structure when some sheet bijection
  // intertwines the monodromies AND commutes with every deck translation
  // (left multiplication).  Searching all sheet bijections keeps this
  // independent of the conjugation canonicalization it cross-checks.
  auto equivalent_g_covers = [](const FiniteGroup& G, const MonodromyTuple& a,
                                const MonodromyTuple& b) {
    const int n = a.degree;
    auto phis = testsupport::all_perms(n);
    for (const Perm& phi : phis) {
      bool ok = true;
      for (int g = 0; g < G.order() && ok; ++g)
        for (int x = 0; x < n && ok; ++x)
          if (phi[static_cast<std::size_t>(G.mul(g, x))] !=
              G.mul(g, phi[static_cast<std::size_t>(x)]))
            ok = false;
      for (std::size_t i = 0; i < a.images.size() && ok; ++i)
        for (int x = 0; x < n && ok; ++x)
          if (phi[static_cast<std::size_t>(a.images[i][static_cast<std::size_t>(x)])] !=
              b.images[i][static_cast<std::size_t>(phi[static_cast<std::size_t>(x)])])
            ok = false;
      if (ok) return true;
    }
    return false;
  };

  auto count_connected_regular_classes = [&](const testsupport::Gauged& gg,
                                             const FiniteGroup& G) {
    const int r = gg.gauge.rank();
    std::vector<MonodromyTuple> reps;
    std::vector<int> t(static_cast<std::size_t>(r), 0);
    while (true) {
      if (subgroup(G, t).order() == G.order()) {
        auto cover = from_hom(gg.graph, gg.gauge, G, t);
        REQUIRE(is_connected(cover));
        bool fresh = true;
        for (const auto& rep : reps)
          if (equivalent_g_covers(G, rep, cover)) {
            fresh = false;
            break;
          }
        if (fresh) reps.push_back(std::move(cover));
      }
      int pos = r - 1;
      while (pos >= 0) {
        if (++t[static_cast<std::size_t>(pos)] < G.order()) break;
        t[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    return reps.size();
  };

  auto nodal = testsupport::gauged(testsupport::nodal_model());
  auto theta = testsupport::gauged(testsupport::theta_model());
  for (const std::string spec : {"C2", "C3", "C2xC2", "S3"}) {
    auto G = build_group(spec);
    CHECK(count_epi_classes(nodal, G) == count_connected_regular_classes(nodal, G));
    CHECK(count_epi_classes(theta, G) == count_connected_regular_classes(theta, G));
  }
  // pinned: three connected S3-Galois cover classes over the theta graph,
  // none over the nodal graph
  CHECK(count_epi_classes(theta, build_group("S3")) == 3);
  CHECK(count_epi_classes(nodal, build_group("S3")) == 0);
}

TEST_CASE("quotient sequence: (S3, A3) at rank 1 with sizes 3 -> 3 -> 2") {
  auto nodal = testsupport::gauged(testsupport::nodal_model());
  auto s3 = build_group("S3");
  auto a3 = subgroup(s3, {3});
  auto rep = quotient_sequence_check(nodal.graph, nodal.gauge, s3, a3);
  CHECK(rep.sub_size == 3);
  CHECK(rep.total_size == 3);
  CHECK(rep.quotient_size == 2);
  CHECK(rep.exact());
  CHECK(rep.kernel_trivial);
  CHECK(rep.image_equals_kernel);
  CHECK(rep.surjective);
  // kernel = {identity class, 3-cycle class}; the map from the subgroup side
  // is 2-to-1 onto it
  CHECK(rep.kernel_in_total.size() == 2);
  CHECK(rep.image_in_total == rep.kernel_in_total);
}

TEST_CASE("quotient sequence: trees are trivially exact") {
  auto tree = testsupport::gauged(testsupport::chain_model(3));
  auto s3 = build_group("S3");
  auto rep = quotient_sequence_check(tree.graph, tree.gauge, s3, subgroup(s3, {3}));
  CHECK(rep.sub_size == 1);
  CHECK(rep.total_size == 1);
  CHECK(rep.quotient_size == 1);
  CHECK(rep.exact());
}

TEST_CASE("quotient sequence: (C4, C2) with sizes 2, 4, 2") {
  auto nodal = testsupport::gauged(testsupport::nodal_model());
  auto c4 = build_group("C4");
  auto rep = quotient_sequence_check(nodal.graph, nodal.gauge, c4, subgroup(c4, {2}));
  CHECK(rep.sub_size == 2);
  CHECK(rep.total_size == 4);
  CHECK(rep.quotient_size == 2);
  CHECK(rep.exact());
}

TEST_CASE("quotient sequence rejects non-normal subgroups") {
  auto nodal = testsupport::gauged(testsupport::nodal_model());
  auto s3 = build_group("S3");
  try {
    quotient_sequence_check(nodal.graph, nodal.gauge, s3, subgroup(s3, {1}));
    FAIL("expected not-normal");
  } catch (const Error& e) {
    CHECK(e.code() == "not-normal");
  }
}
