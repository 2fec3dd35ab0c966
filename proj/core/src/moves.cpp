#include "gdl/moves.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "move_support.hpp"

namespace gdl {

namespace {

constexpr Sign P = Sign::Plus;
constexpr Sign M = Sign::Minus;

bool valid_variant(MoveKind k) {
  switch (k.family) {
    case MoveFamily::Omega1:
    case MoveFamily::Omega2:
      return k.variant >= 'a' && k.variant <= 'd' && k.direction != MoveDirection::Neutral;
    case MoveFamily::Omega3:
      return k.variant >= 'a' && k.variant <= 'h' && k.direction == MoveDirection::Neutral;
  }
  return false;
}

bool gap_valid(const GaussDiagram& d, const Gap& g) {
  if (g.component >= d.num_components()) return false;
  return g.index < std::max<std::size_t>(1, d.component(g.component).size());
}

std::optional<bool> kink_matches(const GaussDiagram& d, char variant, Label label) {
  if (!d.has_arrow(label)) return std::nullopt;
  const KinkShape shape = kink_shape(variant);
  const Arrow& a = d.arrow(label);
  if (a.sign != shape.sign) return std::nullopt;
  const bool ok = shape.tail_first ? d.follows(a.tail, a.head) : d.follows(a.head, a.tail);
  if (!ok) return std::nullopt;
  return true;
}

bool bigon_matches(const GaussDiagram& d, char variant, const BigonRemoval& s) {
  if (s.first == s.second || !d.has_arrow(s.first) || !d.has_arrow(s.second)) return false;
  const BigonShape shape = bigon_shape(variant);
  const Arrow& p = d.arrow(s.first);
  const Arrow& q = d.arrow(s.second);
  if (p.sign != shape.first_sign || q.sign != flip(shape.first_sign)) return false;
  if (!d.follows(p.tail, q.tail)) return false;
  return shape.coherent ? d.follows(p.head, q.head) : d.follows(q.head, p.head);
}

}  // namespace

std::string to_string(MoveKind k) {
  std::string s = "O";
  s += static_cast<char>('0' + static_cast<int>(k.family));
  s += k.variant;
  if (k.direction == MoveDirection::Increasing) s += '+';
  if (k.direction == MoveDirection::Decreasing) s += '-';
  return s;
}

MoveKind parse_move_kind(std::string_view text) {
  std::string t(text);
  // accept U+2212 as a minus sign
  const std::string unicode_minus = "\xE2\x88\x92";
  if (t.size() >= unicode_minus.size() && t.ends_with(unicode_minus)) {
    t.resize(t.size() - unicode_minus.size());
    t += '-';
  }
  if (t.size() < 3 || t[0] != 'O' || t[1] < '1' || t[1] > '3') {
    throw InvalidSite("unknown move kind '" + std::string(text) + "'");
  }
  MoveKind k;
  k.family = static_cast<MoveFamily>(t[1] - '0');
  k.variant = t[2];
  if (t.size() == 3) {
    k.direction = MoveDirection::Neutral;
  } else if (t.size() == 4 && (t[3] == '+' || t[3] == '-')) {
    k.direction = t[3] == '+' ? MoveDirection::Increasing : MoveDirection::Decreasing;
  } else {
    throw InvalidSite("unknown move kind '" + std::string(text) + "'");
  }
  if (!valid_variant(k)) throw InvalidSite("unknown move kind '" + std::string(text) + "'");
  return k;
}

void check_kind(MoveKind k) {
  if (!valid_variant(k)) throw InvalidSite("move kind outside the catalogue");
}

std::vector<MoveKind> kinds_of_family(MoveFamily f) {
  std::vector<MoveKind> out;
  if (f == MoveFamily::Omega3) {
    for (char v = 'a'; v <= 'h'; ++v) out.push_back(omega3(v));
    return out;
  }
  for (char v = 'a'; v <= 'd'; ++v) {
    out.push_back({f, v, MoveDirection::Increasing});
    out.push_back({f, v, MoveDirection::Decreasing});
  }
  return out;
}

std::vector<MoveKind> all_move_kinds() {
  std::vector<MoveKind> out;
  for (MoveFamily f : {MoveFamily::Omega1, MoveFamily::Omega2, MoveFamily::Omega3}) {
    const auto part = kinds_of_family(f);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int arrow_delta(MoveKind k) {
  const int size = k.family == MoveFamily::Omega1 ? 1 : k.family == MoveFamily::Omega2 ? 2 : 0;
  if (k.direction == MoveDirection::Increasing) return size;
  if (k.direction == MoveDirection::Decreasing) return -size;
  return 0;
}

KinkShape kink_shape(char variant) {
  switch (variant) {
    case 'a': return {P, true};
    case 'b': return {M, true};
    case 'c': return {P, false};
    case 'd': return {M, false};
  }
  throw InvalidSite("unknown O1 variant");
}

BigonShape bigon_shape(char variant) {
  switch (variant) {
    case 'a': return {true, M};
    case 'b': return {true, P};
    case 'c': return {false, M};
    case 'd': return {false, P};
  }
  throw InvalidSite("unknown O2 variant");
}

TriangleShape triangle_shape(char variant) {
  switch (variant) {
    case 'a': return {P, M, P, true, false, true};
    case 'b': return {P, P, P, false, false, false};
    case 'c': return {M, M, P, false, true, true};
    case 'd': return {P, P, M, false, true, true};
    case 'e': return {M, P, P, false, false, true};
    case 'f': return {P, M, M, false, false, true};
    case 'g': return {M, M, M, false, false, false};
    case 'h': return {M, P, M, false, true, false};
  }
  throw InvalidSite("unknown O3 variant");
}

std::string to_string(const MoveSite& s) {
  auto gap = [](const Gap& g) { return std::to_string(g.component) + ":" + std::to_string(g.index); };
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, KinkInsertion>) {
          return "gap " + gap(v.gap);
        } else if constexpr (std::is_same_v<T, BigonInsertion>) {
          std::string out = "over " + gap(v.over) + " under " + gap(v.under);
          if (v.over == v.under) out += v.over_first ? " over-first" : " under-first";
          return out;
        } else if constexpr (std::is_same_v<T, KinkRemoval>) {
          return "arrow " + std::to_string(v.arrow);
        } else if constexpr (std::is_same_v<T, BigonRemoval>) {
          return "arrows " + std::to_string(v.first) + "," + std::to_string(v.second);
        } else {
          return "triangle " + std::to_string(v.top_middle) + "," + std::to_string(v.top_bottom) +
                 "," + std::to_string(v.middle_bottom);
        }
      },
      s);
}

std::string to_string(Locality l) {
  return l == Locality::SingleComponent ? "single-component" : "two-component";
}

std::vector<Gap> gaps(const GaussDiagram& d) {
  std::vector<Gap> out;
  for (std::size_t c = 0; c < d.num_components(); ++c) {
    const std::size_t n = std::max<std::size_t>(1, d.component(c).size());
    for (std::size_t i = 0; i < n; ++i) out.push_back({c, i});
  }
  return out;
}

std::optional<bool> triangle_side(const GaussDiagram& d, char variant, const TriangleSite& s) {
  const Label tm = s.top_middle, tb = s.top_bottom, mb = s.middle_bottom;
  if (tm == tb || tm == mb || tb == mb) return std::nullopt;
  if (!d.has_arrow(tm) || !d.has_arrow(tb) || !d.has_arrow(mb)) return std::nullopt;
  const TriangleShape shape = triangle_shape(variant);
  const Arrow& a_tm = d.arrow(tm);
  const Arrow& a_tb = d.arrow(tb);
  const Arrow& a_mb = d.arrow(mb);
  if (a_tm.sign != shape.tm || a_tb.sign != shape.tb || a_mb.sign != shape.mb) return std::nullopt;

  auto ordered = [&](EndpointRef x, EndpointRef y, bool x_first) {
    return x_first ? d.follows(x, y) : d.follows(y, x);
  };
  auto side_ok = [&](bool left) {
    return ordered(a_tm.tail, a_tb.tail, shape.top_tm_first == left) &&
           ordered(a_tm.head, a_mb.tail, shape.middle_tm_first == left) &&
           ordered(a_tb.head, a_mb.head, shape.bottom_tb_first == left);
  };
  if (side_ok(true)) return true;
  if (side_ok(false)) return false;
  return std::nullopt;
}

bool site_applies(const GaussDiagram& d, MoveKind k, const MoveSite& s) {
  if (!valid_variant(k)) return false;
  if (k.family == MoveFamily::Omega1) {
    if (k.direction == MoveDirection::Increasing) {
      const auto* v = std::get_if<KinkInsertion>(&s);
      return v && gap_valid(d, v->gap);
    }
    const auto* v = std::get_if<KinkRemoval>(&s);
    return v && kink_matches(d, k.variant, v->arrow).has_value();
  }
  if (k.family == MoveFamily::Omega2) {
    if (k.direction == MoveDirection::Increasing) {
      const auto* v = std::get_if<BigonInsertion>(&s);
      if (!v || !gap_valid(d, v->over) || !gap_valid(d, v->under)) return false;
      return v->over == v->under || v->over_first;
    }
    const auto* v = std::get_if<BigonRemoval>(&s);
    return v && bigon_matches(d, k.variant, *v);
  }
  const auto* v = std::get_if<TriangleSite>(&s);
  return v && triangle_side(d, k.variant, *v).has_value();
}

std::vector<MoveSite> enumerate_sites(const GaussDiagram& d, MoveKind k) {
  check_kind(k);
  std::vector<MoveSite> out;
  if (k.family == MoveFamily::Omega1) {
    if (k.direction == MoveDirection::Increasing) {
      for (const Gap& g : gaps(d)) out.emplace_back(KinkInsertion{g});
      return out;
    }
    for (const Arrow& a : d.arrows()) {
      if (kink_matches(d, k.variant, a.label)) out.emplace_back(KinkRemoval{a.label});
    }
    return out;
  }
  if (k.family == MoveFamily::Omega2) {
    if (k.direction == MoveDirection::Increasing) {
      const auto all = gaps(d);
      for (const Gap& over : all) {
        for (const Gap& under : all) {
          out.emplace_back(BigonInsertion{over, under, true});
          if (over == under) out.emplace_back(BigonInsertion{over, under, false});
        }
      }
      return out;
    }
    for (const Arrow& p : d.arrows()) {
      const Slot& nxt = d.slot(d.next(p.tail));
      if (nxt.end != End::Tail || nxt.label == p.label) continue;
      const BigonRemoval s{p.label, nxt.label};
      if (bigon_matches(d, k.variant, s)) out.emplace_back(s);
    }
    std::sort(out.begin(), out.end(), [](const MoveSite& x, const MoveSite& y) {
      const auto& a = std::get<BigonRemoval>(x);
      const auto& b = std::get<BigonRemoval>(y);
      return std::tie(a.first, a.second) < std::tie(b.first, b.second);
    });
    return out;
  }

  // triangles: walk from TM to its neighbours
  std::set<std::tuple<Label, Label, Label>> found;
  auto neighbours = [&](EndpointRef r) {
    const std::size_t len = d.component(r.component).size();
    std::array<EndpointRef, 2> n{EndpointRef{r.component, (r.position + 1) % len},
                                 EndpointRef{r.component, (r.position + len - 1) % len}};
    return n;
  };
  for (const Arrow& tm : d.arrows()) {
    for (EndpointRef rt : neighbours(tm.tail)) {
      const Slot& t = d.slot(rt);
      if (t.end != End::Tail || t.label == tm.label) continue;
      for (EndpointRef rm : neighbours(tm.head)) {
        const Slot& m = d.slot(rm);
        if (m.end != End::Tail || m.label == tm.label || m.label == t.label) continue;
        const TriangleSite s{tm.label, t.label, m.label};
        if (triangle_side(d, k.variant, s)) found.emplace(s.top_middle, s.top_bottom, s.middle_bottom);
      }
    }
  }
  for (const auto& [a, b, c] : found) out.emplace_back(TriangleSite{a, b, c});
  return out;
}

GaussDiagram apply_move(const GaussDiagram& d, MoveKind k, const MoveSite& s) {
  if (!site_applies(d, k, s)) {
    throw InvalidSite("site " + to_string(s) + " does not apply for " + to_string(k));
  }
  auto signs = d.sign_map();
  const Label fresh = d.max_label() + 1;

  if (k.family == MoveFamily::Omega1) {
    if (k.direction == MoveDirection::Increasing) {
      const KinkShape shape = kink_shape(k.variant);
      const Slot tail{fresh, End::Tail}, head{fresh, End::Head};
      std::vector<detail::Insertion> ins{
          {std::get<KinkInsertion>(s).gap, shape.tail_first ? std::vector{tail, head} : std::vector{head, tail}}};
      signs[fresh] = shape.sign;
      return GaussDiagram(detail::insert_runs(d, ins), signs);
    }
    const Label l = std::get<KinkRemoval>(s).arrow;
    signs.erase(l);
    return GaussDiagram(detail::remove_labels(d, {l}), signs);
  }

  if (k.family == MoveFamily::Omega2) {
    if (k.direction == MoveDirection::Increasing) {
      const BigonShape shape = bigon_shape(k.variant);
      const auto& site = std::get<BigonInsertion>(s);
      const Label p = fresh, q = fresh + 1;
      signs[p] = shape.first_sign;
      signs[q] = flip(shape.first_sign);
      std::vector<Slot> over{{p, End::Tail}, {q, End::Tail}};
      std::vector<Slot> under = shape.coherent ? std::vector<Slot>{{p, End::Head}, {q, End::Head}}
                                               : std::vector<Slot>{{q, End::Head}, {p, End::Head}};
      std::vector<detail::Insertion> ins;
      if (site.over == site.under && !site.over_first) {
        ins = {{site.under, under}, {site.over, over}};
      } else {
        ins = {{site.over, over}, {site.under, under}};
      }
      return GaussDiagram(detail::insert_runs(d, ins), signs);
    }
    const auto& site = std::get<BigonRemoval>(s);
    signs.erase(site.first);
    signs.erase(site.second);
    return GaussDiagram(detail::remove_labels(d, {site.first, site.second}), signs);
  }

  const auto& t = std::get<TriangleSite>(s);
  std::vector<Component> comps = d.components();
  auto swap_pair = [&](EndpointRef x, EndpointRef y) {
    std::swap(comps[x.component][x.position], comps[y.component][y.position]);
  };
  const Arrow& a_tm = d.arrow(t.top_middle);
  const Arrow& a_tb = d.arrow(t.top_bottom);
  const Arrow& a_mb = d.arrow(t.middle_bottom);
  swap_pair(a_tm.tail, a_tb.tail);
  swap_pair(a_tm.head, a_mb.tail);
  swap_pair(a_tb.head, a_mb.head);
  return GaussDiagram(std::move(comps), signs);
}

std::vector<std::size_t> touched_components(const GaussDiagram& d, const MoveSite& s) {
  std::vector<std::size_t> out = std::visit(
      [&](const auto& v) -> std::vector<std::size_t> {
        using T = std::decay_t<decltype(v)>;
        auto ends = [&](Label l) {
          const Arrow& a = d.arrow(l);
          return std::vector<std::size_t>{a.tail.component, a.head.component};
        };
        if constexpr (std::is_same_v<T, KinkInsertion>) {
          return {v.gap.component};
        } else if constexpr (std::is_same_v<T, BigonInsertion>) {
          return {v.over.component, v.under.component};
        } else if constexpr (std::is_same_v<T, KinkRemoval>) {
          return ends(v.arrow);
        } else if constexpr (std::is_same_v<T, BigonRemoval>) {
          auto a = ends(v.first);
          auto b = ends(v.second);
          a.insert(a.end(), b.begin(), b.end());
          return a;
        } else {
          auto a = ends(v.top_middle);
          auto b = ends(v.top_bottom);
          auto c = ends(v.middle_bottom);
          a.insert(a.end(), b.begin(), b.end());
          a.insert(a.end(), c.begin(), c.end());
          return a;
        }
      },
      s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Locality classify_locality(const GaussDiagram& d, const MoveSite& s) {
  return touched_components(d, s).size() == 1 ? Locality::SingleComponent : Locality::TwoComponent;
}

namespace detail {

std::vector<Component> insert_runs(const GaussDiagram& d, const std::vector<Insertion>& runs) {
  std::vector<Component> out;
  out.reserve(d.num_components());
  for (std::size_t c = 0; c < d.num_components(); ++c) {
    const Component& src = d.component(c);
    Component dst;
    dst.reserve(src.size() + 4);
    const std::size_t n = std::max<std::size_t>(1, src.size());
    for (std::size_t i = 0; i < n; ++i) {
      for (const Insertion& r : runs) {
        if (r.gap.component == c && r.gap.index == i) dst.insert(dst.end(), r.slots.begin(), r.slots.end());
      }
      if (i < src.size()) dst.push_back(src[i]);
    }
    out.push_back(std::move(dst));
  }
  return out;
}

std::vector<Component> remove_labels(const GaussDiagram& d, const std::vector<Label>& labels) {
  std::vector<Component> out = d.components();
  for (Component& comp : out) {
    std::erase_if(comp, [&](const Slot& s) {
      return std::find(labels.begin(), labels.end(), s.label) != labels.end();
    });
  }
  return out;
}

}  // namespace detail

}  // namespace gdl
