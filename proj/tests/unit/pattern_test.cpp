#include <gtest/gtest.h>

#include <set>

#include "gdl/invariant.hpp"
#include "gdl/pattern.hpp"
#include "gdl/random.hpp"
#include "oracle.hpp"

namespace gdl {
namespace {

const char* kPlusChord = "O1 U1 ; 1:+";
const char* kTrefoil = "O1+ U2+ O3+ U1+ O2+ U3+ / ()";

TEST(PatternText, ParsesAndSerializes) {
  const ArrowPattern a = parse_pattern("O1 O2 U1 O3 / U2 U3 ; 1:+ 2:? 3:-");
  EXPECT_EQ(a.num_circles(), 2u);
  ASSERT_EQ(a.arrows().size(), 3u);
  EXPECT_EQ(a.arrows()[0].constraint, SignConstraint::Plus);
  EXPECT_EQ(a.arrows()[1].constraint, SignConstraint::Any);
  EXPECT_EQ(a.arrows()[2].constraint, SignConstraint::Minus);
  EXPECT_EQ(a.mode(), AssignmentMode::AllInjective);
  EXPECT_EQ(serialize(a), "O1 O2 U1 O3 / U2 U3 ; 1:+ 2:? 3:- ; all");
  EXPECT_EQ(serialize(parse_pattern("() / () ; - ; ordered")), "() / () ; - ; ordered");
  EXPECT_EQ(parse_pattern(serialize(a)).arrows().size(), 3u);
}

TEST(PatternText, RejectsMalformedInput) {
  for (const char* bad : {"O1 U1", "O1 U1 ; 1:x", "O1 U1 ; 2:+", "O1 U1 ; 1:+ 1:-", "O1+ U1 ; 1:+", "O1 U2 ; 1:+ 2:+",
                          "O1 U1 ; 1:+ ; sometimes", "O1 O1 ; 1:+", "() ; 1:+"}) {
    EXPECT_THROW(parse_pattern(bad), PatternError) << '"' << bad << '"';
  }
}

TEST(Bracket, EmptyDiagramGivesNothing) {
  const GaussDiagram du = parse_gauss_code("() / ()");
  EXPECT_TRUE(enumerate_matchings(parse_pattern(kPlusChord), du).empty());
  EXPECT_EQ(evaluate_bracket(parse_pattern(kPlusChord), du), 0);
  EXPECT_EQ(evaluate_bracket(fonep_pattern(default_fonep()), du), 0);
}

TEST(Bracket, SingleChordCounts) {
  const auto one = enumerate_matchings(parse_pattern(kPlusChord), parse_gauss_code("O1+ U1+ / ()"));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].weight, 1);

  const auto three = enumerate_matchings(parse_pattern(kPlusChord), parse_gauss_code(kTrefoil));
  ASSERT_EQ(three.size(), 3u);
  for (const Matching& m : three) EXPECT_EQ(m.weight, 1);
  EXPECT_EQ(evaluate_bracket(parse_pattern(kPlusChord), parse_gauss_code(kTrefoil)), 3);
}

TEST(Bracket, WeightMultipliesAllMatchedSigns) {
  const GaussDiagram d = parse_gauss_code("O1- U1- O2+ U2+");
  // the constraint filters, the weight still carries the sign
  EXPECT_EQ(evaluate_bracket(parse_pattern("O1 U1 ; 1:-"), d), -1);
  EXPECT_EQ(evaluate_bracket(parse_pattern("O1 U1 ; 1:?"), d), 0);
  EXPECT_EQ(evaluate_bracket(parse_pattern("O1 U1 O2 U2 ; 1:? 2:?"), d), -2);
}

TEST(Bracket, CyclicOrderWithoutBasePoint) {
  // O1 O2 U1 U2 interleaves; O1 U1 O2 U2 does not
  const GaussDiagram d = parse_gauss_code("O2+ U1+ U2+ O1+");
  EXPECT_EQ(evaluate_bracket(parse_pattern("O1 O2 U1 U2 ; 1:? 2:?"), d), 1);
  EXPECT_EQ(evaluate_bracket(parse_pattern("O1 U1 O2 U2 ; 1:? 2:?"), d), 0);
}

TEST(Bracket, OrderedModeNeedsEnoughComponents) {
  const ArrowPattern two = parse_pattern("O1 / U1 ; 1:? ; ordered");
  EXPECT_THROW(evaluate_bracket(two, parse_gauss_code("O1+ U1+")), PatternError);
  const ArrowPattern all = parse_pattern("O1 / U1 ; 1:?");
  EXPECT_TRUE(enumerate_matchings(all, parse_gauss_code("O1+ U1+")).empty());
}

TEST(Bracket, OrderedModeFixesCircles) {
  const GaussDiagram d = parse_gauss_code("U1- / O1-");
  EXPECT_EQ(evaluate_bracket(parse_pattern("O1 / U1 ; 1:? ; ordered"), d), 0);
  EXPECT_EQ(evaluate_bracket(parse_pattern("O1 / U1 ; 1:? ; all"), d), -1);
}

TEST(Bracket, EmptyPatternCountsCircleAssignments) {
  const GaussDiagram d = random_diagram(4, 3, 11);
  const std::size_t expected[] = {1, 4, 12, 24, 24};
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<Component> circles(k);
    const ArrowPattern a(circles, {}, AssignmentMode::AllInjective);
    const auto ms = enumerate_matchings(a, d);
    EXPECT_EQ(ms.size(), expected[k]);
    for (const Matching& m : ms) EXPECT_EQ(m.weight, 1);
  }
  EXPECT_TRUE(enumerate_matchings(ArrowPattern(std::vector<Component>(5), {}, AssignmentMode::AllInjective), d).empty());
}

class PatternProperties : public ::testing::Test {
 protected:
  template <typename F>
  void for_instances(std::size_t n, F f) {
    Rng rng(77);
    for (std::size_t i = 0; i < n; ++i) {
      const ArrowPattern a = testing::random_pattern(rng, 3);
      const GaussDiagram d = random_diagram(1 + rng.below(3), rng.below(7), rng.next());
      f(a, d);
    }
  }
};

TEST_F(PatternProperties, MatchesBruteForceOracle) {
  for_instances(600, [](const ArrowPattern& a, const GaussDiagram& d) {
    std::size_t count = 0;
    const auto expected = testing::oracle_bracket(a, d, &count);
    if (!expected) {
      EXPECT_THROW(evaluate_bracket(a, d), PatternError);
      return;
    }
    EXPECT_EQ(evaluate_bracket(a, d), *expected) << serialize(a) << " on " << serialize(d);
    EXPECT_EQ(enumerate_matchings(a, d).size(), count);
  });
}

TEST_F(PatternProperties, MatchingsAreDistinctAndWellFormed) {
  for_instances(300, [](const ArrowPattern& a, const GaussDiagram& d) {
    if (a.mode() == AssignmentMode::Ordered && a.num_circles() > d.num_components()) return;
    std::set<std::pair<std::vector<std::size_t>, std::vector<std::pair<Label, Label>>>> seen;
    for (const Matching& m : enumerate_matchings(a, d)) {
      EXPECT_TRUE(seen.insert({m.circle_map, m.arrow_map}).second);
      int w = 1;
      std::set<Label> images;
      for (std::size_t i = 0; i < m.arrow_map.size(); ++i) {
        const auto& [pl, dl] = m.arrow_map[i];
        const PatternArrow& pa = a.arrows()[i];
        EXPECT_EQ(pa.label, pl);
        const Arrow& x = d.arrow(dl);
        EXPECT_TRUE(admits(pa.constraint, x.sign));
        EXPECT_EQ(m.circle_map[pa.tail.component], x.tail.component);
        EXPECT_EQ(m.circle_map[pa.head.component], x.head.component);
        images.insert(dl);
        w *= to_int(x.sign);
      }
      EXPECT_EQ(images.size(), m.arrow_map.size());
      EXPECT_EQ(m.weight, w);
    }
  });
}

TEST_F(PatternProperties, RemovingAnArrowNeverAddsMatchings) {
  for_instances(300, [](const ArrowPattern& a, const GaussDiagram& d) {
    if (d.num_arrows() == 0) return;
    if (a.mode() == AssignmentMode::Ordered && a.num_circles() > d.num_components()) return;
    const Label gone = d.arrows().front().label;
    std::vector<Component> comps = d.components();
    for (Component& c : comps) std::erase_if(c, [&](const Slot& s) { return s.label == gone; });
    auto signs = d.sign_map();
    signs.erase(gone);
    const GaussDiagram smaller(comps, signs);
    std::set<std::pair<std::vector<std::size_t>, std::vector<std::pair<Label, Label>>>> full;
    for (const Matching& m : enumerate_matchings(a, d)) full.insert({m.circle_map, m.arrow_map});
    for (const Matching& m : enumerate_matchings(a, smaller)) {
      EXPECT_TRUE(full.count({m.circle_map, m.arrow_map})) << serialize(a) << " on " << serialize(d);
    }
  });
}

TEST_F(PatternProperties, InvariantUnderPresentation) {
  Rng rng(5);
  for_instances(200, [&](const ArrowPattern& a, const GaussDiagram& d) {
    if (a.mode() == AssignmentMode::Ordered) return;
    EXPECT_EQ(evaluate_bracket(a, testing::scramble(d, rng)), evaluate_bracket(a, d));
  });
}

}  // namespace
}  // namespace gdl
