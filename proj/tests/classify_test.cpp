#include <gtest/gtest.h>

#include "support/testing.hpp"

namespace qclock {
namespace {

using testing::load_data_presentation;
using testing::make_presentation;
using testing::Rng;

std::vector<std::string> relation_names(const MonomialPresentation& pres,
                                        const std::vector<Embedding>& es) {
  std::vector<std::string> out;
  for (const Embedding& e : es) out.push_back(render_path(pres.quiver(), pres.relations()[e.relation]));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(SimpleCycles, TreeHasNone) {
  auto pres = make_presentation(4, {{0, 1}, {2, 1}, {1, 3}}, {});
  EXPECT_TRUE(simple_cycles(pres.quiver()).empty());
}

TEST(SimpleCycles, FourteenGonHasOneCycleThroughAllVertices) {
  auto pres = load_data_presentation("fourteen_gon.quiver");
  auto cycles = simple_cycles(pres->quiver());
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].size(), 14u);
  EXPECT_TRUE(cycles[0].is_simple_cycle(pres->quiver()));
  const Quiver& q = pres->quiver();
  EXPECT_EQ(cycles[0].steps().front(), (Step{*q.find_arrow("alpha1"), Direction::forward}));
  EXPECT_EQ(arrow_tally(cycles[0]).clockwise, 8u);
  EXPECT_EQ(arrow_tally(cycles[0]).counterclockwise, 6u);
}

TEST(SimpleCycles, KroneckerGivesOneTwoCycle) {
  auto pres = make_presentation(2, {{0, 1}, {0, 1}}, {});
  auto cycles = simple_cycles(pres.quiver());
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0], CycleWalk({{0, Direction::forward}, {1, Direction::backward}}));
}

TEST(SimpleCycles, LoopIsAOneCycle) {
  auto pres = make_presentation(1, {{0, 0}}, {});
  auto cycles = simple_cycles(pres.quiver());
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0], CycleWalk({{0, Direction::forward}}));
}

TEST(SimpleCycles, ThetaGraphHasThree) {
  auto pres = make_presentation(2, {{0, 1}, {0, 1}, {1, 0}}, {});
  EXPECT_EQ(simple_cycles(pres.quiver()).size(), 3u);
}

TEST(SimpleCycles, CapRaisesGuardError) {
  auto pres = make_presentation(2, {{0, 1}, {0, 1}, {1, 0}}, {});
  try {
    simple_cycles(pres.quiver(), 2);
    FAIL() << "expected a guard error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::guard);
    EXPECT_NE(std::string(e.what()).find("--cycle-cap"), std::string::npos);
  }
}

TEST(SimpleCycles, RenderFollowsTraversal) {
  auto pres = make_presentation(3, {{0, 1}, {1, 2}, {0, 2}}, {});
  auto cycles = simple_cycles(pres.quiver());
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(render_cycle(pres.quiver(), cycles[0]), "1 -a1> 2 -a2> 3 <a3- 1");
}

TEST(Chords, FourteenGon) {
  auto pres = load_data_presentation("fourteen_gon.quiver");
  const Quiver& q = pres->quiver();
  auto cs = chords(simple_cycles(q)[0]);
  ASSERT_EQ(cs.size(), 4u);
  auto names = [&](const Chord& c) {
    std::string s;
    for (ArrowId a : c.arrows) s += (s.empty() ? "" : " ") + q.arrow(a).name;
    return s;
  };
  EXPECT_EQ(names(cs[0]), "alpha1 alpha2 alpha3 alpha4 alpha5 alpha6");
  EXPECT_EQ(cs[0].direction, Direction::forward);
  EXPECT_EQ(names(cs[1]), "gamma");
  EXPECT_EQ(cs[1].direction, Direction::backward);
  EXPECT_EQ(names(cs[2]), "delta1 delta2");
  EXPECT_EQ(names(cs[3]), "beta1 beta2 beta3 beta4 beta5");
  EXPECT_EQ(cs[3].direction, Direction::backward);
  EXPECT_EQ(q.vertex_name(cs[3].source(q)), "1");
  EXPECT_EQ(q.vertex_name(cs[3].target(q)), "10");
  for (const Chord& c : cs) EXPECT_FALSE(c.cyclic);
}

TEST(Chords, OrientedCycleIsOneWrapAroundChord) {
  auto pres = make_presentation(3, {{0, 1}, {1, 2}, {2, 0}}, {});
  auto cs = chords(simple_cycles(pres.quiver())[0]);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_TRUE(cs[0].cyclic);
  EXPECT_EQ(cs[0].arrows.size(), 3u);
}

TEST(Chords, MaximalityOnRandomCycles) {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    auto pres = testing::random_presentation(rng, 6, 4, 0.0);
    for (const CycleWalk& c : simple_cycles(pres.quiver())) {
      auto cs = chords(c);
      std::size_t total = 0;
      for (std::size_t k = 0; k < cs.size(); ++k) {
        total += cs[k].steps.size();
        if (cs.size() > 1) {
          EXPECT_NE(cs[k].direction, cs[(k + 1) % cs.size()].direction);
        }
        // the directed path really is a path
        for (std::size_t j = 0; j + 1 < cs[k].arrows.size(); ++j)
          EXPECT_EQ(pres.quiver().arrow(cs[k].arrows[j]).target,
                    pres.quiver().arrow(cs[k].arrows[j + 1]).source);
      }
      EXPECT_EQ(total, c.size());
      EXPECT_EQ(cs.size() == 1, c.count(Direction::forward) == c.size() ||
                                    c.count(Direction::backward) == c.size());
    }
  }
}

TEST(ClockTally, FourteenGonIsThreeVersusTwo) {
  auto pres = load_data_presentation("fourteen_gon.quiver");
  auto t = clock_tally(*pres, simple_cycles(pres->quiver())[0]);
  EXPECT_EQ(t.clockwise_count(), 3u);
  EXPECT_EQ(t.counterclockwise_count(), 2u);
  EXPECT_EQ(relation_names(*pres, t.clockwise),
            (std::vector<std::string>{"alpha2 alpha3", "alpha3 alpha4", "alpha5 alpha6"}));
  EXPECT_EQ(relation_names(*pres, t.counterclockwise),
            (std::vector<std::string>{"beta1 beta2", "beta3 beta4"}));
  EXPECT_EQ(t.imbalance(), 1);
}

TEST(ClockTally, RelationFreeIsBalanced) {
  auto pres = make_presentation(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {});
  auto t = clock_tally(pres, simple_cycles(pres.quiver())[0]);
  EXPECT_EQ(t.clockwise_count(), 0u);
  EXPECT_EQ(t.counterclockwise_count(), 0u);
}

TEST(ClockTally, RszCommutativeSquareIsOneVersusOne) {
  auto pres = load_data_presentation("rsz_square.quiver");
  ASSERT_TRUE(is_radical_square_zero(*pres));
  auto t = clock_tally(*pres, simple_cycles(pres->quiver())[0]);
  EXPECT_EQ(t.clockwise_count(), 1u);
  EXPECT_EQ(t.counterclockwise_count(), 1u);
}

TEST(ClockTally, OrientedRszTriangleCountsCyclically) {
  auto pres = testing::rsz_closure(3, {{0, 1}, {1, 2}, {2, 0}});
  auto t = clock_tally(pres, simple_cycles(pres.quiver())[0]);
  EXPECT_EQ(t.clockwise_count(), 3u);
  EXPECT_EQ(t.counterclockwise_count(), 0u);
}

TEST(ClockTally, LoopSquareCountsOnce) {
  auto pres = make_presentation(1, {{0, 0}}, {{0, 0}});
  auto t = clock_tally(pres, simple_cycles(pres.quiver())[0]);
  EXPECT_EQ(t.clockwise_count(), 1u);
}

TEST(ClockTally, LongRelationMustFitInsideAChord) {
  auto pres = load_data_presentation("hexagon_long_relation.quiver");
  auto t = clock_tally(*pres, simple_cycles(pres->quiver())[0]);
  EXPECT_EQ(t.clockwise_count() + t.counterclockwise_count(), 1u);
  EXPECT_EQ(std::abs(t.imbalance()), 1);
}

TEST(SatisfiesClock, Examples) {
  auto gon = load_data_presentation("fourteen_gon.quiver");
  auto v = satisfies_clock(*gon);
  EXPECT_FALSE(v.satisfied);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, 0u);
  EXPECT_EQ(v.tallies[0].clockwise_count(), 3u);

  auto acyclic = make_presentation(3, {{0, 1}, {1, 2}}, {{0, 1}});
  EXPECT_TRUE(satisfies_clock(acyclic).satisfied);
  EXPECT_TRUE(satisfies_clock(acyclic).tallies.empty());

  auto tri = testing::rsz_closure(3, {{0, 1}, {1, 2}, {2, 0}});
  auto vt = satisfies_clock(tri);
  EXPECT_FALSE(vt.satisfied);
  EXPECT_EQ(vt.tallies[0].clockwise_count(), 3u);
}

TEST(SatisfiesClock, FirstViolatingCycleIsReported) {
  // theta graph: the cycle of the parallel pair comes first and is
  // balanced; only the oriented cycle a1 a3 carries a relation
  auto pres = make_presentation(2, {{0, 1}, {0, 1}, {1, 0}}, {{0, 2}});
  auto v = satisfies_clock(pres);
  EXPECT_FALSE(v.satisfied);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(v.tallies[0].balanced());
  EXPECT_FALSE(v.tallies[*v.witness].balanced());
  for (std::size_t i = 0; i < *v.witness; ++i) EXPECT_TRUE(v.tallies[i].balanced());
}

TEST(AlgebraClasses, QuadraticAndRsz) {
  auto gon = load_data_presentation("fourteen_gon.quiver");
  EXPECT_TRUE(is_quadratic(*gon));
  EXPECT_FALSE(is_radical_square_zero(*gon));
  auto hex = load_data_presentation("hexagon_long_relation.quiver");
  EXPECT_FALSE(is_quadratic(*hex));
  EXPECT_TRUE(is_radical_square_zero(*load_data_presentation("rsz_square.quiver")));
  EXPECT_TRUE(is_radical_square_zero(make_presentation(2, {{0, 1}}, {})));
}

TEST(Gentle, LinearAn) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> arrows;
    for (std::size_t i = 0; i + 1 < n; ++i) arrows.push_back({i, i + 1});
    EXPECT_TRUE(is_gentle(make_presentation(n, arrows, {})).gentle);
  }
}

TEST(Gentle, ThreeArrowStarViolatesDegree) {
  auto g = is_gentle(make_presentation(4, {{0, 1}, {0, 2}, {0, 3}}, {}));
  EXPECT_FALSE(g.gentle);
  EXPECT_EQ(g.violated, GentleClause::degree);
  EXPECT_STREQ(to_string(g.violated), "clause-1");
}

TEST(Gentle, OrientedTwoCycleWithBothRelations) {
  EXPECT_TRUE(is_gentle(make_presentation(2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}})).gentle);
}

TEST(Gentle, PairingClauses) {
  auto two_rel = make_presentation(4, {{0, 1}, {1, 2}, {1, 3}}, {{0, 1}, {0, 2}});
  EXPECT_EQ(is_gentle(two_rel).violated, GentleClause::relation_pairing);
  auto no_rel = make_presentation(4, {{0, 1}, {1, 2}, {1, 3}}, {});
  EXPECT_EQ(is_gentle(no_rel).violated, GentleClause::nonrelation_pairing);
  auto ok = make_presentation(4, {{0, 1}, {1, 2}, {1, 3}}, {{0, 1}});
  EXPECT_TRUE(is_gentle(ok).gentle);
  auto incoming = make_presentation(4, {{0, 2}, {1, 2}, {2, 3}}, {});
  EXPECT_EQ(is_gentle(incoming).violated, GentleClause::nonrelation_pairing);
}

TEST(Gentle, LongRelationIsNotQuadratic) {
  auto g = is_gentle(*load_data_presentation("hexagon_long_relation.quiver"));
  EXPECT_EQ(g.violated, GentleClause::not_quadratic);
}

TEST(Gentle, FourteenGonIsGentle) {
  EXPECT_TRUE(is_gentle(*load_data_presentation("fourteen_gon.quiver")).gentle);
}

TEST(OneCycle, Examples) {
  auto gon = is_one_cycle(load_data_presentation("fourteen_gon.quiver")->quiver());
  EXPECT_TRUE(gon.one_cycle);
  EXPECT_EQ(gon.betti, 1);
  auto tree = is_one_cycle(make_presentation(3, {{0, 1}, {2, 1}}, {}).quiver());
  EXPECT_FALSE(tree.one_cycle);
  EXPECT_EQ(tree.betti, 0);
  auto theta = make_presentation(2, {{0, 1}, {0, 1}, {0, 1}}, {});
  auto v = is_one_cycle(theta.quiver());
  EXPECT_FALSE(v.one_cycle);
  EXPECT_EQ(v.betti, 2);
  EXPECT_EQ(simple_cycles(theta.quiver()).size(), 3u);
}

TEST(VertexPotential, Examples) {
  auto a3 = vertex_potential(make_presentation(3, {{0, 1}, {1, 2}}, {}).quiver());
  ASSERT_TRUE(a3.labels);
  EXPECT_EQ(*a3.labels, (std::vector<std::int64_t>{0, 1, 2}));
  auto kron = vertex_potential(make_presentation(2, {{0, 1}, {0, 1}}, {}).quiver());
  ASSERT_TRUE(kron.labels);
  EXPECT_EQ(*kron.labels, (std::vector<std::int64_t>{0, 1}));
  auto two = make_presentation(2, {{0, 1}, {1, 0}}, {});
  auto v = vertex_potential(two.quiver());
  EXPECT_FALSE(v.labels);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(v.witness->is_simple_cycle(two.quiver()));
  EXPECT_EQ(v.witness->size(), 2u);
}

TEST(VertexPotential, RootsEachComponentAtZero) {
  auto pres = make_presentation(4, {{1, 0}, {3, 2}}, {});
  auto v = vertex_potential(pres.quiver());
  ASSERT_TRUE(v.labels);
  EXPECT_EQ(*v.labels, (std::vector<std::int64_t>{0, -1, 0, -1}));
}

// --- properties -------------------------------------------------------------

std::set<ArrowId> arrow_set(const CycleWalk& c) {
  std::set<ArrowId> out;
  for (const Step& s : c.steps()) out.insert(s.arrow);
  return out;
}

TEST(ClassifyProperties, SimpleCyclesMatchBruteForce) {
  Rng rng(32);
  for (int i = 0; i < 600; ++i) {
    auto pres = testing::random_presentation(rng, 6, 4, 0.0);
    const Quiver& q = pres.quiver();
    auto cycles = simple_cycles(q);
    std::set<std::set<ArrowId>> fast;
    for (const CycleWalk& c : cycles) {
      EXPECT_TRUE(c.is_simple_cycle(q));
      EXPECT_EQ(canonical(c), c);
      fast.insert(arrow_set(c));
    }
    EXPECT_EQ(fast.size(), cycles.size());
    EXPECT_TRUE(std::is_sorted(cycles.begin(), cycles.end()));
    EXPECT_EQ(fast, testing::brute_force_cycle_sets(q));
  }
}

TEST(ClassifyProperties, TallyRotationInvariantReflectionSwaps) {
  Rng rng(33);
  for (int i = 0; i < 400; ++i) {
    auto pres = testing::random_presentation(rng, 6, 3, 0.5, 0.3);
    for (const CycleWalk& c : simple_cycles(pres.quiver())) {
      auto base = clock_tally(pres, c);
      auto k = testing::uniform(rng, 0, c.size() - 1);
      auto rot = clock_tally(pres, rotated(c, k));
      EXPECT_EQ(rot.clockwise_count(), base.clockwise_count());
      EXPECT_EQ(rot.counterclockwise_count(), base.counterclockwise_count());
      auto refl = clock_tally(pres, reflected(rotated(c, k)));
      EXPECT_EQ(refl.clockwise_count(), base.counterclockwise_count());
      EXPECT_EQ(refl.counterclockwise_count(), base.clockwise_count());
      EXPECT_EQ(canonical(reflected(rotated(c, k))), c);
    }
  }
}

TEST(ClassifyProperties, PotentialLabelsAreConsistent) {
  Rng rng(34);
  for (int i = 0; i < 500; ++i) {
    auto pres = testing::random_presentation(rng, 7, 3, 0.0);
    const Quiver& q = pres.quiver();
    auto v = vertex_potential(q);
    bool balanced = true;
    for (const CycleWalk& c : simple_cycles(q))
      balanced = balanced && c.count(Direction::forward) == c.count(Direction::backward);
    EXPECT_EQ(v.labels.has_value(), balanced);
    if (v.labels) {
      for (const Arrow& a : q.arrows()) EXPECT_EQ((*v.labels)[a.target], (*v.labels)[a.source] + 1);
    } else {
      ASSERT_TRUE(v.witness);
      EXPECT_TRUE(v.witness->is_simple_cycle(q));
      EXPECT_NE(v.witness->count(Direction::forward), v.witness->count(Direction::backward));
    }
  }
}

}  // namespace
}  // namespace qclock
