#include <gtest/gtest.h>

#include <set>

#include "gdl/gauss_diagram.hpp"
#include "gdl/random.hpp"
#include "oracle.hpp"

namespace gdl {
namespace {

TEST(GaussCode, ParsesKinkOnFirstComponent) {
  const GaussDiagram d = parse_gauss_code("O1+ U1+ / ()");
  ASSERT_EQ(d.num_components(), 2u);
  ASSERT_EQ(d.component(0).size(), 2u);
  EXPECT_TRUE(d.component(1).empty());
  const Arrow& a = d.arrow(1);
  EXPECT_EQ(a.sign, Sign::Plus);
  EXPECT_EQ(a.tail, (EndpointRef{0, 0}));
  EXPECT_EQ(a.head, (EndpointRef{0, 1}));
}

TEST(GaussCode, ParsesTrefoilCode) {
  const GaussDiagram d = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+ / ()");
  EXPECT_EQ(d.num_components(), 2u);
  EXPECT_EQ(d.num_arrows(), 3u);
  for (const Arrow& a : d.arrows()) {
    EXPECT_EQ(a.sign, Sign::Plus);
    EXPECT_EQ(a.tail.component, 0u);
    EXPECT_EQ(a.head.component, 0u);
  }
}

TEST(GaussCode, RejectsMalformedInput) {
  for (const char* bad : {"O1+ U2-", "", "O1+ U1-", "O1+ O1+", "U1+ U1+", "O1+ U1+ O1+", "X1+ U1+", "O1 U1",
                          "O1+  U1+", "O1+ U1+ /", "O0+ U0+", "O01+ U01+", "O1+ U1+ / / ()", "Oa+ Ua+"}) {
    EXPECT_THROW(parse_gauss_code(bad), ParseError) << '"' << bad << '"';
  }
}

TEST(GaussCode, SerializesEmptyAndKink) {
  EXPECT_EQ(serialize(GaussDiagram::empty(2)), "() / ()");
  EXPECT_EQ(serialize(parse_gauss_code("O1+ U1+ / ()")), "O1+ U1+ / ()");
  EXPECT_EQ(serialize(GaussDiagram()), "()");
}

TEST(GaussDiagram, ConstructorValidates) {
  EXPECT_THROW(GaussDiagram({{Slot{1, End::Tail}}}, {{1, Sign::Plus}}), InvalidDiagram);
  EXPECT_THROW(GaussDiagram({{Slot{1, End::Tail}, Slot{2, End::Head}}}, {{1, Sign::Plus}}), InvalidDiagram);
  EXPECT_THROW(GaussDiagram({}, {}), InvalidDiagram);
  EXPECT_THROW(validate({{Slot{1, End::Head}, Slot{1, End::Head}}}, {{1, Sign::Minus}}), InvalidDiagram);
  EXPECT_NO_THROW(validate({{Slot{1, End::Head}, Slot{1, End::Tail}}}, {{1, Sign::Minus}}));
}

TEST(GaussDiagram, NavigationWrapsAround) {
  const GaussDiagram d = parse_gauss_code("O1+ O2- U1+ U2-");
  EXPECT_EQ(d.next({0, 3}), (EndpointRef{0, 0}));
  EXPECT_TRUE(d.follows({0, 3}, {0, 0}));
  EXPECT_FALSE(d.follows({0, 0}, {0, 3}));
  const GaussDiagram k = parse_gauss_code("O1+ U1+");
  EXPECT_TRUE(k.follows({0, 0}, {0, 1}));
  EXPECT_TRUE(k.follows({0, 1}, {0, 0}));
}

TEST(Canonical, RotationAndPermutationExamples) {
  EXPECT_EQ(canonical_form(parse_gauss_code("U1+ O1+ / ()")), canonical_form(parse_gauss_code("O1+ U1+ / ()")));
  EXPECT_EQ(canonical_form(parse_gauss_code("() / O1+ U1+")), canonical_form(parse_gauss_code("O1+ U1+ / ()")));
  EXPECT_NE(canonical_code(parse_gauss_code("O1+ U1+ / ()")), canonical_code(parse_gauss_code("O1- U1- / ()")));
}

TEST(Canonical, DistinguishesMirrorChords) {
  // reversing one circle is not a symmetry
  EXPECT_NE(canonical_code(parse_gauss_code("O1+ O2+ U1+ O3+ U2+ U3+")),
            canonical_code(parse_gauss_code("U3+ U2+ O3+ U1+ O2+ O1+")));
}

TEST(RandomDiagram, ContractExamples) {
  EXPECT_EQ(canonical_code(random_diagram(2, 0, 5)), "() / ()");
  EXPECT_EQ(random_diagram(2, 6, 42), random_diagram(2, 6, 42));
  const GaussDiagram d = random_diagram(2, 6, 42);
  EXPECT_EQ(d.num_slots(), 12u);
  EXPECT_EQ(d.num_components(), 2u);
}

TEST(RandomDiagram, CoversInterComponentArrows) {
  bool inter = false, self = false;
  std::set<std::string> codes;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const GaussDiagram d = random_diagram(2, 3, s);
    codes.insert(serialize(d));
    for (const Arrow& a : d.arrows()) {
      (a.tail.component == a.head.component ? self : inter) = true;
    }
  }
  EXPECT_TRUE(inter);
  EXPECT_TRUE(self);
  EXPECT_GT(codes.size(), 40u);
}

TEST(Rng, DeterministicAndBounded) {
  Rng a(9), b(9);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.below(7);
    EXPECT_EQ(x, b.below(7));
    EXPECT_LT(x, 7u);
  }
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(3, 4), derive_seed(3, 4));
}

class GaussProperties : public ::testing::Test {
 protected:
  template <typename F>
  void for_samples(F f) {
    Rng rng(20261017);
    for (int i = 0; i < 1000; ++i) {
      const std::size_t comps = 1 + rng.below(3);
      const std::size_t arrows = rng.below(7);
      f(random_diagram(comps, arrows, rng.next()), rng);
    }
  }
};

TEST_F(GaussProperties, RoundTripIsIsomorphic) {
  for_samples([](const GaussDiagram& d, Rng&) {
    const GaussDiagram back = parse_gauss_code(serialize(d));
    EXPECT_EQ(back, d);
    EXPECT_EQ(canonical_code(back), canonical_code(d));
  });
}

TEST_F(GaussProperties, CanonicalRoundTripIsExact) {
  for_samples([](const GaussDiagram& d, Rng&) {
    const GaussDiagram c = canonical_form(d);
    EXPECT_EQ(serialize(parse_gauss_code(serialize(c))), serialize(c));
    EXPECT_EQ(canonical_form(c), c);
  });
}

TEST_F(GaussProperties, CanonicalFormIgnoresPresentation) {
  for_samples([](const GaussDiagram& d, Rng& rng) {
    const GaussDiagram other = testing::scramble(d, rng);
    EXPECT_EQ(canonical_code(other), canonical_code(d)) << serialize(d) << " vs " << serialize(other);
  });
}

TEST_F(GaussProperties, EverythingValidates) {
  for_samples([](const GaussDiagram& d, Rng&) {
    EXPECT_NO_THROW(validate(d.components(), d.sign_map()));
    EXPECT_EQ(d.num_slots(), 2 * d.num_arrows());
    std::size_t slots = 0;
    for (const Component& c : d.components()) slots += c.size();
    EXPECT_EQ(slots, d.num_slots());
    for (const Arrow& a : d.arrows()) {
      EXPECT_EQ(d.slot(a.tail), (Slot{a.label, End::Tail}));
      EXPECT_EQ(d.slot(a.head), (Slot{a.label, End::Head}));
    }
  });
}

}  // namespace
}  // namespace gdl
