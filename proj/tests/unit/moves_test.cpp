#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gdl/invariant.hpp"
#include "gdl/moves.hpp"
#include "gdl/random.hpp"
#include "oracle.hpp"

namespace gdl {
namespace {

using enum MoveDirection;

constexpr std::string_view kO3 = "abcdefgh";

TEST(MoveKinds, NamesRoundTrip) {
  const auto kinds = all_move_kinds();
  EXPECT_EQ(kinds.size(), 24u);
  std::set<std::string> names;
  for (MoveKind k : kinds) {
    names.insert(to_string(k));
    EXPECT_EQ(parse_move_kind(to_string(k)), k);
  }
  EXPECT_EQ(names.size(), 24u);
  EXPECT_EQ(to_string(omega2('c', Increasing)), "O2c+");
  EXPECT_EQ(to_string(omega3('b')), "O3b");
  EXPECT_EQ(parse_move_kind("O2d−"), omega2('d', Decreasing));
  for (const char* bad : {"O1e+", "O3b+", "O2a", "O4a", "o1a+", "O3i", ""}) {
    EXPECT_THROW(parse_move_kind(bad), GaussError) << bad;
  }
  EXPECT_EQ(kinds_of_family(MoveFamily::Omega3).size(), 8u);
}

TEST(MoveKinds, ArrowDeltas) {
  EXPECT_EQ(arrow_delta(omega1('a', Increasing)), 1);
  EXPECT_EQ(arrow_delta(omega1('d', Decreasing)), -1);
  EXPECT_EQ(arrow_delta(omega2('b', Increasing)), 2);
  EXPECT_EQ(arrow_delta(omega2('c', Decreasing)), -2);
  EXPECT_EQ(arrow_delta(omega3('h')), 0);
}

TEST(MoveKinds, TriangleSignsAreAllDistinct) {
  std::set<std::array<int, 3>> signs;
  for (char v : kO3) {
    const TriangleShape t = triangle_shape(v);
    signs.insert({to_int(t.tm), to_int(t.tb), to_int(t.mb)});
  }
  EXPECT_EQ(signs.size(), 8u);
}

TEST(MoveSites, EmptyDiagramHasNoRemovals) {
  const GaussDiagram du = parse_gauss_code("() / ()");
  for (MoveKind k : all_move_kinds()) {
    if (k.direction == Increasing) {
      EXPECT_FALSE(enumerate_sites(du, k).empty());
    } else {
      EXPECT_TRUE(enumerate_sites(du, k).empty()) << to_string(k);
    }
  }
}

TEST(MoveSites, PositiveKinkRemoval) {
  const GaussDiagram d = parse_gauss_code("O1+ U1+ / ()");
  const auto sites = enumerate_sites(d, omega1('a', Decreasing));
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(canonical_code(apply_move(d, omega1('a', Decreasing), sites[0])), "() / ()");
  EXPECT_TRUE(enumerate_sites(d, omega1('b', Decreasing)).empty());
  EXPECT_TRUE(enumerate_sites(d, omega1('d', Decreasing)).empty());
  EXPECT_EQ(classify_locality(d, sites[0]), Locality::SingleComponent);
}

TEST(MoveSites, KinkShapes) {
  const GaussDiagram d = parse_gauss_code("U1+ O2- U2- O1+");
  EXPECT_EQ(enumerate_sites(d, omega1('a', Decreasing)), std::vector<MoveSite>{KinkRemoval{1}});
  EXPECT_EQ(enumerate_sites(d, omega1('b', Decreasing)), std::vector<MoveSite>{KinkRemoval{2}});
  EXPECT_TRUE(enumerate_sites(d, omega1('c', Decreasing)).empty());
  const GaussDiagram e = parse_gauss_code("U1+ O1+ O2- U2-");
  EXPECT_EQ(enumerate_sites(e, omega1('c', Decreasing)), std::vector<MoveSite>{KinkRemoval{1}});
  EXPECT_TRUE(enumerate_sites(e, omega1('a', Decreasing)).empty());
  // a lone chord is a kink read either way round
  EXPECT_EQ(enumerate_sites(parse_gauss_code("O1- U1-"), omega1('d', Decreasing)).size(), 1u);
}

TEST(MoveSites, BigonAcrossComponents) {
  const GaussDiagram d = parse_gauss_code("O1+ O2- / U1+ U2-");
  const auto sites = enumerate_sites(d, omega2('b', Decreasing));
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(classify_locality(d, sites[0]), Locality::TwoComponent);
  EXPECT_EQ(canonical_code(apply_move(d, omega2('b', Decreasing), sites[0])), "() / ()");
  EXPECT_THROW(apply_move(d, omega2('a', Decreasing), sites[0]), InvalidSite);
}

TEST(MoveSites, MarkedBigonOfBuiltinDiagram) {
  const GaussDiagram dl = build_dl();
  const auto sites = enumerate_sites(dl, marked_bigon_kind());
  const MoveSite marked = marked_bigon();
  ASSERT_NE(std::find(sites.begin(), sites.end(), marked), sites.end());
  EXPECT_EQ(classify_locality(dl, marked), Locality::SingleComponent);
}

TEST(MoveSites, StaleSiteIsRejected) {
  const GaussDiagram d = parse_gauss_code("O1+ U1+");
  EXPECT_THROW(apply_move(d, omega1('a', Decreasing), KinkRemoval{2}), InvalidSite);
  EXPECT_THROW(apply_move(d, omega3('a'), TriangleSite{1, 2, 3}), InvalidSite);
  EXPECT_THROW(apply_move(d, omega1('a', Increasing), KinkInsertion{{3, 0}}), InvalidSite);
}

TEST(Decomposition, RowsOfTheTable) {
  auto row = [](char v) { return decompose_omega3(v); };
  EXPECT_EQ(row('b').increase, omega2('c', Increasing));
  EXPECT_EQ(row('b').middle, omega3('a'));
  EXPECT_EQ(row('b').decrease, omega2('d', Decreasing));
  EXPECT_EQ(row('c').increase, omega2('c', Increasing));
  EXPECT_EQ(row('c').middle, omega3('a'));
  EXPECT_EQ(row('c').decrease, omega2('d', Decreasing));
  EXPECT_EQ(row('d').increase, omega2('a', Increasing));
  EXPECT_EQ(row('d').middle, omega3('b'));
  EXPECT_EQ(row('d').decrease, omega2('b', Decreasing));
  EXPECT_EQ(row('e').increase, omega2('a', Increasing));
  EXPECT_EQ(row('e').middle, omega3('b'));
  EXPECT_EQ(row('e').decrease, omega2('b', Decreasing));
  EXPECT_EQ(row('f').increase, omega2('d', Increasing));
  EXPECT_EQ(row('f').middle, omega3('a'));
  EXPECT_EQ(row('f').decrease, omega2('c', Decreasing));
  EXPECT_EQ(row('g').middle, omega3('f'));
  EXPECT_EQ(row('h').middle, omega3('g'));
  EXPECT_THROW(decompose_omega3('a'), InvalidSite);
}

TEST(Decomposition, ExpansionCounts) {
  EXPECT_EQ(expand_to_omega3a('a'), std::vector<MoveKind>{omega3('a')});
  const std::vector<MoveKind> d{omega2('a', Increasing), omega2('c', Increasing), omega3('a'),
                                omega2('d', Decreasing), omega2('b', Decreasing)};
  EXPECT_EQ(expand_to_omega3a('d'), d);
  const std::map<char, std::size_t> k{{'b', 1}, {'c', 1}, {'d', 2}, {'e', 2}, {'f', 1}, {'g', 2}, {'h', 3}};
  for (auto [v, expected] : k) {
    const auto seq = expand_to_omega3a(v);
    EXPECT_EQ(seq.size(), 2 * expected + 1) << v;
    EXPECT_EQ(std::count(seq.begin(), seq.end(), omega3('a')), 1);
    std::size_t inc = 0, dec = 0;
    for (MoveKind m : seq) {
      inc += m.direction == Increasing;
      dec += m.direction == Decreasing;
    }
    EXPECT_EQ(inc, expected);
    EXPECT_EQ(dec, expected);
  }
}

// Searches every increasing site, every middle site and every decreasing site
// for a three-move sequence that reproduces the direct move.
bool some_sequence_reproduces(const PlantedTriangle& p, char variant, MoveKind inc, MoveKind mid, MoveKind dec) {
  const std::string target = canonical_code(apply_move(p.diagram, omega3(variant), p.site));
  for (const MoveSite& s1 : enumerate_sites(p.diagram, inc)) {
    const GaussDiagram d1 = apply_move(p.diagram, inc, s1);
    for (const MoveSite& s2 : enumerate_sites(d1, mid)) {
      const GaussDiagram d2 = apply_move(d1, mid, s2);
      for (const MoveSite& s3 : enumerate_sites(d2, dec)) {
        if (canonical_code(apply_move(d2, dec, s3)) == target) return true;
      }
    }
  }
  return false;
}

TEST(Decomposition, ImplementedRowsReproduceTheMoveBySearch) {
  Rng rng(3);
  for (char v : std::string_view("bcdefgh")) {
    const Decomposition row = decompose_omega3(v);
    const PlantedTriangle p = plant_triangle(GaussDiagram::empty(1), v, true, {0, 0, 0}, rng);
    EXPECT_TRUE(some_sequence_reproduces(p, v, row.increase, row.middle, row.decrease)) << v;
  }
}

TEST(Decomposition, TableLettersFailForLastTwoRows) {
  // With the names that satisfy the first five rows, the last two rows only
  // work with their O2 letter pairs exchanged.
  Rng rng(4);
  for (bool left : {true, false}) {
    const PlantedTriangle g = plant_triangle(GaussDiagram::empty(1), 'g', left, {0, 0, 0}, rng);
    EXPECT_FALSE(some_sequence_reproduces(g, 'g', omega2('c', Increasing), omega3('f'), omega2('d', Decreasing)));
    EXPECT_FALSE(some_sequence_reproduces(g, 'g', omega2('d', Increasing), omega3('f'), omega2('c', Decreasing)));
    const PlantedTriangle h = plant_triangle(GaussDiagram::empty(1), 'h', left, {0, 0, 0}, rng);
    EXPECT_FALSE(some_sequence_reproduces(h, 'h', omega2('a', Increasing), omega3('g'), omega2('b', Decreasing)));
    EXPECT_FALSE(some_sequence_reproduces(h, 'h', omega2('b', Increasing), omega3('g'), omega2('a', Decreasing)));
  }
}

// Random diagram with at least one site of every kind nearby: a planted
// triangle, and whatever the base offers.
struct Sample {
  GaussDiagram d;
  char planted;
};

Sample make_sample(Rng& rng) {
  const std::size_t comps = 1 + rng.below(3);
  const GaussDiagram base = random_diagram(comps, rng.below(5), rng.next());
  const char v = kO3[rng.below(8)];
  const std::array<std::size_t, 3> at{rng.below(comps), rng.below(comps), rng.below(comps)};
  return {plant_triangle(base, v, rng.coin(), at, rng).diagram, v};
}

std::set<Label> labels_of(const GaussDiagram& d) {
  std::set<Label> out;
  for (const Arrow& a : d.arrows()) out.insert(a.label);
  return out;
}

std::vector<Component> without(const GaussDiagram& d, const std::set<Label>& drop) {
  std::vector<Component> comps = d.components();
  for (Component& c : comps) std::erase_if(c, [&](const Slot& s) { return drop.count(s.label) != 0; });
  return comps;
}

bool same_cycle(const Component& a, const Component& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (std::equal(a.begin(), a.end(), b.begin() + static_cast<std::ptrdiff_t>(r), b.end()) &&
        std::equal(a.end() - static_cast<std::ptrdiff_t>(r), a.end(), b.begin())) {
      return true;
    }
  }
  return false;
}

class MoveProperties : public ::testing::Test {
 protected:
  template <typename F>
  void for_applications(F f) {
    Rng rng(909);
    for (int i = 0; i < 150; ++i) {
      const Sample s = make_sample(rng);
      for (MoveKind k : all_move_kinds()) {
        const auto sites = enumerate_sites(s.d, k);
        if (sites.empty()) continue;
        // a few sites per kind keeps the run short
        for (int j = 0; j < 3; ++j) f(s.d, k, sites[rng.below(sites.size())]);
      }
    }
  }
};

TEST_F(MoveProperties, SitesApplyAndDeltasHold) {
  std::size_t applications = 0;
  for_applications([&](const GaussDiagram& d, MoveKind k, const MoveSite& s) {
    ASSERT_TRUE(site_applies(d, k, s)) << to_string(k) << ' ' << to_string(s) << " on " << serialize(d);
    const GaussDiagram r = apply_move(d, k, s);
    EXPECT_NO_THROW(validate(r.components(), r.sign_map()));
    EXPECT_EQ(static_cast<long>(r.num_arrows()) - static_cast<long>(d.num_arrows()), arrow_delta(k));
    EXPECT_EQ(r.num_components(), d.num_components());
    ++applications;
  });
  EXPECT_GT(applications, 2000u);
}

TEST_F(MoveProperties, OtherArrowsAreUntouched) {
  for_applications([](const GaussDiagram& d, MoveKind k, const MoveSite& s) {
    const GaussDiagram r = apply_move(d, k, s);
    std::set<Label> site;
    const auto before = labels_of(d), after = labels_of(r);
    std::set_symmetric_difference(before.begin(), before.end(), after.begin(), after.end(),
                                  std::inserter(site, site.end()));
    if (const auto* t = std::get_if<TriangleSite>(&s)) site = {t->top_middle, t->top_bottom, t->middle_bottom};
    for (Label l : before) {
      if (!site.count(l)) {
        EXPECT_EQ(r.sign(l), d.sign(l));
      }
    }
    const auto x = without(d, site), y = without(r, site);
    for (std::size_t c = 0; c < x.size(); ++c) EXPECT_TRUE(same_cycle(x[c], y[c])) << to_string(k);
  });
}

TEST_F(MoveProperties, InverseMovesRestoreTheDiagram) {
  for_applications([](const GaussDiagram& d, MoveKind k, const MoveSite& s) {
    const GaussDiagram r = apply_move(d, k, s);
    MoveKind back = k;
    if (k.direction == Increasing) back.direction = Decreasing;
    if (k.direction == Decreasing) back.direction = Increasing;
    const std::string want = canonical_code(d);
    bool found = false;
    for (const MoveSite& t : enumerate_sites(r, back)) {
      if (canonical_code(apply_move(r, back, t)) == want) {
        found = true;
        break;
      }
    }
    EXPECT_TRUE(found) << to_string(k) << ' ' << to_string(s) << " on " << serialize(d);
  });
}

TEST_F(MoveProperties, TriangleMoveIsItsOwnInverseAtTheSameArrows) {
  for_applications([](const GaussDiagram& d, MoveKind k, const MoveSite& s) {
    if (k.family != MoveFamily::Omega3) return;
    const GaussDiagram r = apply_move(d, k, s);
    ASSERT_TRUE(site_applies(r, k, s));
    EXPECT_EQ(apply_move(r, k, s), d);
    const auto& t = std::get<TriangleSite>(s);
    const auto side = triangle_side(d, k.variant, t);
    ASSERT_TRUE(side.has_value());
    // a pair alone on a two-slot circle reads in both orders
    auto alone = [&](Label x, End e) { return d.component(d.locate(x, e).component).size() == 2; };
    if (alone(t.top_middle, End::Tail) && alone(t.top_middle, End::Head) && alone(t.top_bottom, End::Head)) return;
    EXPECT_EQ(triangle_side(r, k.variant, t), !*side)
        << to_string(k) << ' ' << to_string(s) << " on " << serialize(d);
  });
}

TEST_F(MoveProperties, LocalityFollowsTouchedComponents) {
  for_applications([](const GaussDiagram& d, MoveKind, const MoveSite& s) {
    const auto comps = touched_components(d, s);
    ASSERT_FALSE(comps.empty());
    EXPECT_TRUE(std::is_sorted(comps.begin(), comps.end()));
    EXPECT_EQ(classify_locality(d, s), comps.size() > 1 ? Locality::TwoComponent : Locality::SingleComponent);
  });
}

TEST(MoveDecomposition, CoherentAtEveryPlantedSite) {
  Rng rng(12);
  std::map<char, std::size_t> cases;
  for (int i = 0; i < 1000; ++i) {
    const Sample s = make_sample(rng);
    for (char v : std::string_view("bcdefgh")) {
      for (const MoveSite& site : enumerate_sites(s.d, omega3(v))) {
        const auto& t = std::get<TriangleSite>(site);
        const DecompositionTrace trace = decompose_at(s.d, v, t);
        ASSERT_EQ(trace.steps.size(), 3u);
        EXPECT_EQ(canonical_code(trace.result), canonical_code(apply_move(s.d, omega3(v), site)))
            << v << ' ' << to_string(site) << " on " << serialize(s.d);
        const auto& first = trace.steps.front();
        const auto& last = trace.steps.back();
        EXPECT_EQ(first.kind.direction, Increasing);
        EXPECT_EQ(last.kind.direction, Decreasing);
        EXPECT_EQ(classify_locality(first.before, first.site), classify_locality(last.before, last.site));
        ++cases[v];
      }
    }
  }
  for (char v : std::string_view("bcdefgh")) EXPECT_GE(cases[v], 100u) << v;
}

TEST(AffineIndex, CatalogueMovesPreserveIt) {
  Rng rng(31);
  for (int i = 0; i < 150; ++i) {
    const GaussDiagram base = random_diagram(1, rng.below(6), rng.next());
    const GaussDiagram d = plant_triangle(base, kO3[rng.below(8)], rng.coin(), {0, 0, 0}, rng).diagram;
    const auto p = testing::affine_index(d);
    for (MoveKind k : all_move_kinds()) {
      for (const MoveSite& site : enumerate_sites(d, k)) {
        EXPECT_EQ(testing::affine_index(apply_move(d, k, site)), p)
            << to_string(k) << ' ' << to_string(site) << " on " << serialize(d);
      }
    }
  }
}

TEST(AffineIndex, SelectsExactlyTheCatalogueTriangles) {
  // Every (signs, orders) combination that keeps the polynomial on random
  // one-component diagrams must be a side of a catalogue move, and back.
  std::set<std::array<int, 6>> catalogue;
  for (char v : kO3) {
    const TriangleShape t = triangle_shape(v);
    const int a = to_int(t.tm), b = to_int(t.tb), c = to_int(t.mb);
    catalogue.insert({a, b, c, t.top_tm_first, t.middle_tm_first, t.bottom_tb_first});
    catalogue.insert({a, b, c, !t.top_tm_first, !t.middle_tm_first, !t.bottom_tb_first});
  }
  ASSERT_EQ(catalogue.size(), 16u);

  Rng rng(8);
  std::set<std::array<int, 6>> preserving;
  for (int signs = 0; signs < 8; ++signs) {
    const std::array<Sign, 3> sg{signs & 4 ? Sign::Plus : Sign::Minus, signs & 2 ? Sign::Plus : Sign::Minus,
                                 signs & 1 ? Sign::Plus : Sign::Minus};
    for (int order = 0; order < 8; ++order) {
      const std::array<bool, 3> first{(order & 4) != 0, (order & 2) != 0, (order & 1) != 0};
      bool keeps = true;
      for (int trial = 0; trial < 60 && keeps; ++trial) {
        const GaussDiagram base = random_diagram(1, rng.below(5), rng.next());
        const auto t = testing::raw_triangle(base, sg, first, rng);
        keeps = testing::affine_index(t->diagram) == testing::affine_index(testing::swap_triangle(*t));
      }
      if (keeps) {
        preserving.insert({to_int(sg[0]), to_int(sg[1]), to_int(sg[2]), first[0], first[1], first[2]});
      }
    }
  }
  EXPECT_EQ(preserving, catalogue);
}

}  // namespace
}  // namespace gdl
