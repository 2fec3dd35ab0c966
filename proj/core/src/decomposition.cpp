// Three-move decompositions of O3 variants and triangle planting.
#include <array>

#include "gdl/moves.hpp"
#include "move_support.hpp"

namespace gdl {

namespace {

constexpr MoveKind inc(char v) { return omega2(v, MoveDirection::Increasing); }
constexpr MoveKind dec(char v) { return omega2(v, MoveDirection::Decreasing); }

enum class Strand { Top, Middle, Bottom };
enum class Role { TM, TB, MB, P, Q };

// Gap before the first endpoint of a strand's pair, or after the second.
struct GapSpec {
  Strand strand;
  bool after;
};

// P and Q are the bigon arrows created by the first move, P met first along
// the over strand.
struct Recipe {
  GapSpec over;
  GapSpec under;
  std::array<Role, 3> triangle;
  std::array<Role, 2> removal;
};

constexpr Strand T = Strand::Top;
constexpr Strand Mi = Strand::Middle;
constexpr Strand B = Strand::Bottom;
constexpr bool before = false;
constexpr bool after = true;

// Indexed by variant - 'b'. Applied from the left side of the variant.
constexpr std::array<Recipe, 7> kLeftRecipes{{
    {{T, after}, {B, before}, {Role::TM, Role::P, Role::MB}, {Role::TB, Role::P}},
    {{T, before}, {Mi, after}, {Role::Q, Role::TB, Role::MB}, {Role::Q, Role::TM}},
    {{Mi, before}, {B, before}, {Role::TM, Role::TB, Role::Q}, {Role::Q, Role::MB}},
    {{T, before}, {Mi, before}, {Role::Q, Role::TB, Role::MB}, {Role::Q, Role::TM}},
    {{Mi, after}, {B, before}, {Role::TM, Role::TB, Role::P}, {Role::MB, Role::P}},
    {{T, before}, {Mi, before}, {Role::Q, Role::TB, Role::MB}, {Role::Q, Role::TM}},
    {{T, after}, {B, before}, {Role::TM, Role::P, Role::MB}, {Role::TB, Role::P}},
}};

// Applied from the right side; the bigon kinds swap roles.
constexpr std::array<Recipe, 7> kRightRecipes{{
    {{T, before}, {B, after}, {Role::TM, Role::Q, Role::MB}, {Role::Q, Role::TB}},
    {{T, after}, {Mi, before}, {Role::P, Role::TB, Role::MB}, {Role::TM, Role::P}},
    {{Mi, after}, {B, after}, {Role::TM, Role::TB, Role::P}, {Role::MB, Role::P}},
    {{T, after}, {Mi, after}, {Role::P, Role::TB, Role::MB}, {Role::TM, Role::P}},
    {{Mi, before}, {B, after}, {Role::TM, Role::TB, Role::Q}, {Role::Q, Role::MB}},
    {{T, after}, {Mi, after}, {Role::P, Role::TB, Role::MB}, {Role::TM, Role::P}},
    {{T, before}, {B, after}, {Role::TM, Role::Q, Role::MB}, {Role::Q, Role::TB}},
}};

struct StrandEnds {
  EndpointRef first;
  EndpointRef second;
};

}  // namespace

Decomposition decompose_omega3(char variant) {
  switch (variant) {
    case 'b': return {inc('c'), omega3('a'), dec('d')};
    case 'c': return {inc('c'), omega3('a'), dec('d')};
    case 'd': return {inc('a'), omega3('b'), dec('b')};
    case 'e': return {inc('a'), omega3('b'), dec('b')};
    case 'f': return {inc('d'), omega3('a'), dec('c')};
    case 'g': return {inc('a'), omega3('f'), dec('b')};
    case 'h': return {inc('c'), omega3('g'), dec('d')};
  }
  throw InvalidSite(std::string("O3") + variant + " has no decomposition");
}

std::vector<MoveKind> expand_to_omega3a(char variant) {
  if (variant == 'a') return {omega3('a')};
  const Decomposition row = decompose_omega3(variant);
  std::vector<MoveKind> out{row.increase};
  const auto inner = expand_to_omega3a(row.middle.variant);
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back(row.decrease);
  return out;
}

DecompositionTrace decompose_at(const GaussDiagram& d, char variant, const TriangleSite& s) {
  const auto side = triangle_side(d, variant, s);
  if (!side) throw InvalidSite("not a site of O3" + std::string(1, variant));
  const bool left = *side;
  const Decomposition row = decompose_omega3(variant);
  const Recipe& recipe = (left ? kLeftRecipes : kRightRecipes)[static_cast<std::size_t>(variant - 'b')];
  const MoveKind first_kind = left ? row.increase : inc(row.decrease.variant);
  const MoveKind last_kind = left ? row.decrease : dec(row.increase.variant);

  const TriangleShape shape = triangle_shape(variant);
  const Arrow& tm = d.arrow(s.top_middle);
  const Arrow& tb = d.arrow(s.top_bottom);
  const Arrow& mb = d.arrow(s.middle_bottom);
  auto ends = [&](Strand strand) -> StrandEnds {
    switch (strand) {
      case Strand::Top:
        return shape.top_tm_first == left ? StrandEnds{tm.tail, tb.tail} : StrandEnds{tb.tail, tm.tail};
      case Strand::Middle:
        return shape.middle_tm_first == left ? StrandEnds{tm.head, mb.tail} : StrandEnds{mb.tail, tm.head};
      case Strand::Bottom:
        return shape.bottom_tb_first == left ? StrandEnds{tb.head, mb.head} : StrandEnds{mb.head, tb.head};
    }
    return {};
  };
  auto resolve = [&](GapSpec g) -> Gap {
    const StrandEnds e = ends(g.strand);
    if (!g.after) return {e.first.component, e.first.position};
    const std::size_t len = d.component(e.second.component).size();
    return {e.second.component, (e.second.position + 1) % len};
  };

  BigonInsertion bigon{resolve(recipe.over), resolve(recipe.under), true};
  if (bigon.over == bigon.under) bigon.over_first = recipe.over.after && !recipe.under.after;

  DecompositionTrace trace{{}, d};
  trace.steps.push_back({first_kind, bigon, d});
  const GaussDiagram d1 = apply_move(d, first_kind, bigon);

  const Label p = d.max_label() + 1;
  const Label q = d.max_label() + 2;
  auto label = [&](Role r) -> Label {
    switch (r) {
      case Role::TM: return s.top_middle;
      case Role::TB: return s.top_bottom;
      case Role::MB: return s.middle_bottom;
      case Role::P: return p;
      case Role::Q: return q;
    }
    return 0;
  };

  const TriangleSite triangle{label(recipe.triangle[0]), label(recipe.triangle[1]), label(recipe.triangle[2])};
  trace.steps.push_back({row.middle, triangle, d1});
  const GaussDiagram d2 = apply_move(d1, row.middle, triangle);

  const BigonRemoval removal{label(recipe.removal[0]), label(recipe.removal[1])};
  trace.steps.push_back({last_kind, removal, d2});
  trace.result = apply_move(d2, last_kind, removal);
  return trace;
}

PlantedTriangle plant_triangle(const GaussDiagram& base, char variant, bool left_side,
                               const std::array<std::size_t, 3>& strand_components, Rng& rng) {
  const TriangleShape shape = triangle_shape(variant);
  const Label tm = base.max_label() + 1;
  const Label tb = tm + 1;
  const Label mb = tm + 2;
  auto signs = base.sign_map();
  signs[tm] = shape.tm;
  signs[tb] = shape.tb;
  signs[mb] = shape.mb;

  auto pair = [&](Slot x, Slot y, bool x_first) { return x_first ? std::vector{x, y} : std::vector{y, x}; };
  const std::array<std::vector<Slot>, 3> runs{
      pair({tm, End::Tail}, {tb, End::Tail}, shape.top_tm_first == left_side),
      pair({tm, End::Head}, {mb, End::Tail}, shape.middle_tm_first == left_side),
      pair({tb, End::Head}, {mb, End::Head}, shape.bottom_tb_first == left_side),
  };

  std::vector<detail::Insertion> ins;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t c = strand_components[i];
    if (c >= base.num_components()) throw InvalidSite("strand component out of range");
    const std::size_t n = std::max<std::size_t>(1, base.component(c).size());
    ins.push_back({Gap{c, static_cast<std::size_t>(rng.below(n))}, runs[i]});
  }
  rng.shuffle(ins);
  return {GaussDiagram(detail::insert_runs(base, ins), signs), TriangleSite{tm, tb, mb}};
}

}  // namespace gdl
