#include <gtest/gtest.h>

#include <chrono>

#include "support/invariants.hpp"

namespace qclock {
namespace {

using testing::Rng;

struct Agreement {
  std::size_t instances = 0;
  std::size_t satisfied = 0;
  std::size_t disagreements = 0;
};

Agreement rsz_triple(std::size_t max_vertices, std::size_t max_arrows) {
  Agreement a;
  for (std::size_t n = 1; n <= max_vertices; ++n)
    for (std::size_t m = 0; m <= max_arrows; ++m)
      testing::for_each_quiver(n, m, false, [&](const auto& arrows) {
        auto pres = share(testing::rsz_closure(n, arrows));
        const bool clock = satisfies_clock(*pres).satisfied;
        const bool potential = vertex_potential(pres->quiver()).labels.has_value();
        const bool graded =
            strict_grading(regular_diffmod(pres, generic_element(*pres))).assignment.has_value();
        ++a.instances;
        a.satisfied += clock;
        a.disagreements += !(clock == potential && potential == graded);
      });
  return a;
}

TEST(RszProperties, ClockPotentialAndGradingAgreeExhaustively) {
  auto start = std::chrono::steady_clock::now();
  Agreement a = rsz_triple(5, 6);
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(a.disagreements, 0u);
  EXPECT_GT(a.satisfied, 0u);
  EXPECT_LT(a.satisfied, a.instances);
  RecordProperty("instances", static_cast<int>(a.instances));
  std::cout << a.instances << " rsz presentations in " << secs << " s\n";
}

TEST(ClockProperties, TallyInvariantUnderRotationAndSwappedByReflection) {
  Rng rng(71);
  for (int i = 0; i < 500; ++i) {
    auto pres = testing::random_presentation(rng, 6, 3, 0.4, 0.2);
    for (const CycleWalk& c : simple_cycles(pres.quiver())) {
      ClockTally t = clock_tally(pres, c);
      ClockTally r = clock_tally(pres, rotated(c, testing::uniform(rng, 0, c.size())));
      ClockTally f = clock_tally(pres, reflected(c));
      EXPECT_EQ(r.clockwise_count(), t.clockwise_count());
      EXPECT_EQ(r.counterclockwise_count(), t.counterclockwise_count());
      EXPECT_EQ(f.clockwise_count(), t.counterclockwise_count());
      EXPECT_EQ(f.counterclockwise_count(), t.clockwise_count());
    }
  }
}

TEST(ChordProperties, QuadraticLinearChordsGainOneArrow) {
  Rng rng(72);
  for (int i = 0; i < 400; ++i) {
    auto pres = testing::random_violator(rng, 8);
    for (const ClockTally& t : satisfies_clock(*pres).tallies) {
      auto cr = contract_cycle(*pres, t.cycle);
      for (const ContractedChord& cc : cr.chords) {
        const std::size_t expected = cc.cyclic ? std::max<std::size_t>(cc.embedded_relations, 1)
                                               : cc.embedded_relations + 1;
        EXPECT_EQ(cc.arrows.size(), expected);
      }
    }
  }
}

TEST(InvariantCases, TwoThousandSeededCases) {
  for (std::size_t i = 0; i < 2000; ++i) {
    std::string why = testing::run_invariant_case(7, i);
    EXPECT_TRUE(why.empty()) << "case " << i << " (" << testing::invariant_kind_name(i) << "): " << why;
  }
}

}  // namespace
}  // namespace qclock
