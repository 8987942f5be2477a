#include <gtest/gtest.h>

#include "support/testing.hpp"

namespace qclock {
namespace {

using testing::load_data_presentation;
using testing::make_presentation;
using testing::Rng;

Path arrow_path(const Quiver& q, std::string_view name) {
  return Path::arrow(q, *q.find_arrow(name));
}

TEST(ComposePaths, NonRelationPairSurvives) {
  auto pres = load_data_presentation("fourteen_gon.quiver");
  const Quiver& q = pres->quiver();
  PathVector v = compose_paths(arrow_path(q, "alpha1"), arrow_path(q, "alpha2"), *pres);
  ASSERT_EQ(v.size(), 1u);
  const Path& p = v.terms().begin()->first;
  EXPECT_EQ(render_path(q, p), "alpha1 alpha2");
  EXPECT_EQ(render_product(q, p), "alpha2alpha1");
  EXPECT_EQ(v.terms().begin()->second, Scalar(1));
}

TEST(ComposePaths, TrivialPathIsIdentity) {
  auto pres = load_data_presentation("fourteen_gon.quiver");
  const Quiver& q = pres->quiver();
  Path alpha = arrow_path(q, "alpha1");
  EXPECT_EQ(compose_paths(Path::trivial(alpha.source()), alpha, *pres),
            PathVector::single(*pres, alpha));
  EXPECT_EQ(compose_paths(alpha, Path::trivial(alpha.target()), *pres),
            PathVector::single(*pres, alpha));
}

TEST(ComposePaths, RelationGivesZero) {
  auto pres = load_data_presentation("fourteen_gon.quiver");
  const Quiver& q = pres->quiver();
  EXPECT_TRUE(compose_paths(arrow_path(q, "alpha2"), arrow_path(q, "alpha3"), *pres).is_zero());
}

TEST(ComposePaths, NonComposableThrows) {
  auto pres = load_data_presentation("fourteen_gon.quiver");
  const Quiver& q = pres->quiver();
  try {
    compose_paths(arrow_path(q, "alpha1"), arrow_path(q, "gamma"), *pres);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("non-composable"), std::string::npos);
  }
}

TEST(Presentation, RelationsNormaliseToAntichain) {
  // path a1 a2 a3 with relations {a1 a2 a3, a2 a3, a2 a3}: only a2 a3 survives
  auto pres = make_presentation(4, {{0, 1}, {1, 2}, {2, 3}}, {{0, 1, 2}, {1, 2}, {1, 2}});
  ASSERT_EQ(pres.relations().size(), 1u);
  EXPECT_EQ(render_path(pres.quiver(), pres.relations()[0]), "a2 a3");
}

TEST(Presentation, ShortRelationRejected) {
  Quiver q;
  q.add_vertex("1");
  q.add_arrow("a", 0, 0);
  EXPECT_THROW(MonomialPresentation("x", q, {Path::arrow(q, 0)}), Error);
}

TEST(NonzeroPaths, LinearA2) {
  auto pres = make_presentation(2, {{0, 1}}, {});
  auto basis = nonzero_paths(pres);
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_TRUE(basis[0].is_trivial());
  EXPECT_TRUE(basis[1].is_trivial());
  EXPECT_EQ(basis[0].source(), 0u);
  EXPECT_EQ(basis[1].source(), 1u);
  EXPECT_EQ(basis[2].length(), 1u);
}

TEST(NonzeroPaths, LoopKilledBySquare) {
  auto pres = make_presentation(1, {{0, 0}}, {{0, 0}});
  auto basis = nonzero_paths(pres);
  ASSERT_EQ(basis.size(), 2u);
  EXPECT_TRUE(basis[0].is_trivial());
  EXPECT_EQ(basis[1].length(), 1u);
}

TEST(NonzeroPaths, ContractedTriangle) {
  // 1 -> 3 -> 4 and 1 -> 4 with every length-2 path a relation: the only
  // length-2 path is (1->3, 3->4), so 3 trivial + 3 arrows remain.
  auto pres = testing::rsz_closure(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(nonzero_paths(pres).size(), 6u);
}

TEST(NonzeroPaths, InfiniteThrows) {
  auto pres = make_presentation(2, {{0, 1}, {1, 0}}, {});
  EXPECT_THROW(nonzero_paths(pres), Error);
}

TEST(FiniteDimensional, OrientedTwoCycleWithBothRelations) {
  EXPECT_TRUE(is_finite_dimensional(make_presentation(2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}})).finite);
}

TEST(FiniteDimensional, OrientedTwoCycleWithoutRelations) {
  auto fd = is_finite_dimensional(make_presentation(2, {{0, 1}, {1, 0}}, {}));
  EXPECT_FALSE(fd.finite);
  std::vector<ArrowId> w = fd.pumping_cycle;
  std::sort(w.begin(), w.end());
  EXPECT_EQ(w, (std::vector<ArrowId>{0, 1}));
}

TEST(FiniteDimensional, FourteenGon) {
  EXPECT_TRUE(is_finite_dimensional(*load_data_presentation("fourteen_gon.quiver")).finite);
}

TEST(FiniteDimensional, PumpingCycleReallyPumps) {
  // one relation a1 a2 on a 3-cycle leaves a2 a3 a1 a2 ... only partly alive
  auto pres = make_presentation(3, {{0, 1}, {1, 2}, {2, 0}, {0, 0}}, {{0, 1}});
  auto fd = is_finite_dimensional(pres);
  ASSERT_FALSE(fd.finite);
  std::vector<ArrowId> word;
  for (int k = 0; k < 4; ++k) word.insert(word.end(), fd.pumping_cycle.begin(), fd.pumping_cycle.end());
  EXPECT_FALSE(testing::naive_vanishes(pres, word));
}

TEST(PathVectorOps, RelationProductVanishes) {
  auto pres = make_presentation(3, {{0, 1}, {1, 2}}, {{0, 1}});
  const Quiver& q = pres.quiver();
  auto a = PathVector::single(pres, Path::arrow(q, 0));
  auto b = PathVector::single(pres, Path::arrow(q, 1));
  EXPECT_TRUE(multiply(a, b, pres).is_zero());
}

TEST(PathVectorOps, Bilinearity) {
  auto pres = load_data_presentation("fourteen_gon.quiver");
  const Quiver& q = pres->quiver();
  auto a = PathVector::single(*pres, arrow_path(q, "alpha1"), Scalar(2));
  auto b = PathVector::single(*pres, arrow_path(q, "alpha2"), Scalar(3));
  PathVector prod = multiply(a, b, *pres);
  ASSERT_EQ(prod.size(), 1u);
  EXPECT_EQ(render_terms(q, prod), "6 alpha1 alpha2");
}

TEST(PathVectorOps, AdditionCancels) {
  auto pres = make_presentation(2, {{0, 1}}, {});
  auto a = PathVector::single(pres, Path::arrow(pres.quiver(), 0), Scalar(3, 2));
  EXPECT_TRUE((a + Scalar(-1) * a).is_zero());
  EXPECT_EQ((a + a).coefficient(Path::arrow(pres.quiver(), 0)), Scalar(3));
  EXPECT_TRUE((Scalar(0) * a).is_zero());
}

TEST(PathVectorOps, WitnessDifferentialSquaresToZero) {
  auto dm = load_diffmod(testing::read_file(testing::data_path("fourteen_gon_witness.dm")));
  EXPECT_FALSE(dm.eps().is_zero());
  EXPECT_TRUE(compose(dm.eps(), dm.eps(), dm.presentation()).is_zero());
}

TEST(PathVectorOps, NonComposableTermsContributeZero) {
  auto pres = make_presentation(3, {{0, 1}, {1, 2}}, {});
  const Quiver& q = pres.quiver();
  auto a = PathVector::single(pres, Path::arrow(q, 0));
  EXPECT_TRUE(multiply(a, a, pres).is_zero());
}

// --- properties -------------------------------------------------------------

TEST(QuiverProperties, MultiplicationIsAssociative) {
  Rng rng(11);
  int checked = 0;
  for (int iter = 0; iter < 300; ++iter) {
    auto pres = testing::random_presentation(rng, 4, 4, 0.4, 0.3, false);
    if (!is_finite_dimensional(pres).finite) continue;
    auto basis = nonzero_paths(pres);
    for (int t = 0; t < 20; ++t) {
      const Path& p = basis[testing::uniform(rng, 0, basis.size() - 1)];
      std::vector<const Path*> qs, rs;
      for (const Path& x : basis)
        if (x.source() == p.target()) qs.push_back(&x);
      const Path& q = *qs[testing::uniform(rng, 0, qs.size() - 1)];
      for (const Path& x : basis)
        if (x.source() == q.target()) rs.push_back(&x);
      const Path& r = *rs[testing::uniform(rng, 0, rs.size() - 1)];
      auto P = PathVector::single(pres, p), Q = PathVector::single(pres, q),
           R = PathVector::single(pres, r);
      EXPECT_EQ(multiply(multiply(P, Q, pres), R, pres), multiply(P, multiply(Q, R, pres), pres));
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(QuiverProperties, ReductionMatchesSubstringScan) {
  Rng rng(12);
  for (int iter = 0; iter < 400; ++iter) {
    auto pres = testing::random_presentation(rng, 4, 5, 0.3, 0.3);
    const Quiver& q = pres.quiver();
    if (q.arrow_count() == 0) continue;
    for (int t = 0; t < 20; ++t) {
      // random walk of length 1..7
      VertexId v = testing::uniform(rng, 0, q.vertex_count() - 1);
      std::vector<ArrowId> word;
      std::size_t len = testing::uniform(rng, 1, 7);
      while (word.size() < len && !q.outgoing(v).empty()) {
        auto out = q.outgoing(v);
        ArrowId a = out[testing::uniform(rng, 0, out.size() - 1)];
        word.push_back(a);
        v = q.arrow(a).target;
      }
      if (word.empty()) continue;
      EXPECT_EQ(pres.is_zero(Path::of(q, word)), testing::naive_vanishes(pres, word));
    }
  }
}

TEST(QuiverProperties, RadicalSquareZeroBasisIsVerticesAndArrows) {
  Rng rng(13);
  for (int iter = 0; iter < 300; ++iter) {
    auto shape = testing::random_shape(rng, 5, 5);
    auto pres = testing::rsz_closure(shape.vertices, shape.arrows);
    auto basis = nonzero_paths(pres);
    ASSERT_EQ(basis.size(), pres.quiver().vertex_count() + pres.quiver().arrow_count());
    for (const Path& p : basis) EXPECT_LE(p.length(), 1u);
  }
}

TEST(QuiverProperties, FiniteDimensionalityAgreesWithBruteForce) {
  Rng rng(14);
  std::size_t cases = 0, infinite = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = 0; m <= 4; ++m)
      testing::for_each_quiver(n, m, false, [&](const auto& arrows) {
        auto bare = make_presentation(n, arrows, {});
        auto pairs = testing::composable_pairs(bare.quiver());
        auto triples = testing::composable_triples(bare.quiver());
        for (int variant = 0; variant < 3; ++variant) {
          std::vector<std::vector<ArrowId>> rels;
          double p = variant == 0 ? 0.0 : (variant == 1 ? 0.5 : 0.3);
          for (auto& pr : pairs)
            if (testing::coin(rng, p)) rels.push_back(pr);
          if (variant == 2)
            for (auto& tr : triples)
              if (testing::coin(rng, 0.5)) rels.push_back(tr);
          auto pres = make_presentation(n, arrows, rels);
          bool fast = is_finite_dimensional(pres).finite;
          ASSERT_EQ(fast, testing::brute_force_finite(pres)) << render_presentation(pres);
          ++cases;
          infinite += !fast;
        }
      });
  EXPECT_GT(cases, 10000u);
  EXPECT_GT(infinite, 100u);
}

}  // namespace
}  // namespace qclock
