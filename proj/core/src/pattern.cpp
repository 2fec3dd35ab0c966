#include "gdl/pattern.hpp"

#include <algorithm>
#include <charconv>

namespace gdl {

namespace {

std::vector<std::string_view> split(std::string_view text, std::string_view sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, at - start));
    start = at + sep.size();
  }
}

Label parse_label(std::string_view digits) {
  if (digits.empty() || digits.front() == '0') {
    throw PatternError("bad label '" + std::string(digits) + "'");
  }
  Label value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw PatternError("bad label '" + std::string(digits) + "'");
  }
  return value;
}

struct DiagramIndex {
  struct Entry {
    std::size_t tail_comp, head_comp, tail_pos, head_pos;
    int sign;
    Label label;
  };
  std::vector<Entry> arrows;
  // buckets[t * n + h] lists arrows running from component t to component h
  std::vector<std::vector<std::size_t>> buckets;
  std::size_t n = 0;

  explicit DiagramIndex(const GaussDiagram& d) : n(d.num_components()) {
    buckets.resize(n * n);
    for (const Arrow& a : d.arrows()) {
      buckets[a.tail.component * n + a.head.component].push_back(arrows.size());
      arrows.push_back({a.tail.component, a.head.component, a.tail.position, a.head.position,
                        to_int(a.sign), a.label});
    }
  }
};

// Visits every matching as (circle map, chosen diagram arrow indices).
template <typename Visit>
void for_each_matching(const ArrowPattern& a, const GaussDiagram& d, Visit&& visit) {
  const std::size_t k = a.num_circles();
  const std::size_t n = d.num_components();
  if (k > n) {
    if (a.mode() == AssignmentMode::Ordered) {
      throw PatternError("pattern has " + std::to_string(k) + " circles but diagram has " +
                         std::to_string(n) + " components");
    }
    return;
  }

  const DiagramIndex index(d);
  const auto& parrows = a.arrows();
  const std::size_t m = parrows.size();

  // per pattern circle: (pattern arrow index, end) in cyclic order
  std::vector<std::vector<std::pair<std::size_t, End>>> circle_slots(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (const Slot& s : a.circles()[c]) {
      auto it = std::lower_bound(parrows.begin(), parrows.end(), s.label,
                                 [](const PatternArrow& p, Label l) { return p.label < l; });
      circle_slots[c].emplace_back(static_cast<std::size_t>(it - parrows.begin()), s.end);
    }
  }

  std::vector<std::size_t> circle_map(k);
  std::vector<char> comp_used(n, 0);
  std::vector<std::size_t> chosen(m);
  std::vector<char> arrow_used(index.arrows.size(), 0);
  std::vector<std::size_t> positions;

  auto cyclic_ok = [&]() {
    for (std::size_t c = 0; c < k; ++c) {
      const auto& slots = circle_slots[c];
      if (slots.size() < 3) continue;
      positions.clear();
      for (const auto& [pi, end] : slots) {
        const auto& e = index.arrows[chosen[pi]];
        positions.push_back(end == End::Tail ? e.tail_pos : e.head_pos);
      }
      std::size_t descents = 0;
      for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] > positions[(i + 1) % positions.size()]) ++descents;
      }
      if (descents != 1) return false;
    }
    return true;
  };

  auto assign_arrows = [&](auto&& self, std::size_t i, int weight) -> void {
    if (i == m) {
      if (cyclic_ok()) visit(circle_map, chosen, weight);
      return;
    }
    const PatternArrow& p = parrows[i];
    const std::size_t tc = circle_map[p.tail.component];
    const std::size_t hc = circle_map[p.head.component];
    for (std::size_t j : index.buckets[tc * n + hc]) {
      if (arrow_used[j]) continue;
      const auto& e = index.arrows[j];
      if (p.constraint != SignConstraint::Any && static_cast<int>(p.constraint) != e.sign) continue;
      arrow_used[j] = 1;
      chosen[i] = j;
      self(self, i + 1, weight * e.sign);
      arrow_used[j] = 0;
    }
  };

  auto assign_circles = [&](auto&& self, std::size_t c) -> void {
    if (c == k) {
      assign_arrows(assign_arrows, 0, 1);
      return;
    }
    for (std::size_t comp = 0; comp < n; ++comp) {
      if (comp_used[comp]) continue;
      comp_used[comp] = 1;
      circle_map[c] = comp;
      self(self, c + 1);
      comp_used[comp] = 0;
    }
  };

  if (a.mode() == AssignmentMode::Ordered) {
    for (std::size_t c = 0; c < k; ++c) circle_map[c] = c;
    assign_arrows(assign_arrows, 0, 1);
  } else {
    assign_circles(assign_circles, 0);
  }
  (void)index;
}

}  // namespace

ArrowPattern::ArrowPattern(std::vector<Component> circles,
                           const std::map<Label, SignConstraint>& constraints, AssignmentMode mode)
    : circles_(std::move(circles)), mode_(mode) {
  if (circles_.empty()) throw PatternError("a pattern needs at least one circle");
  std::map<Label, Sign> placeholder;
  for (const auto& [label, c] : constraints) placeholder[label] = Sign::Plus;
  try {
    const GaussDiagram shape(circles_, placeholder);
    for (const Arrow& arr : shape.arrows()) {
      arrows_.push_back(PatternArrow{arr.label, constraints.at(arr.label), arr.tail, arr.head});
    }
  } catch (const InvalidDiagram& e) {
    throw PatternError(e.what());
  }
}

ArrowPattern parse_pattern(std::string_view text) {
  const auto sections = split(text, " ; ");
  if (sections.size() < 2 || sections.size() > 3) {
    throw PatternError("pattern needs a slot section and a constraint section");
  }

  AssignmentMode mode = AssignmentMode::AllInjective;
  if (sections.size() == 3) {
    if (sections[2] == "ordered") {
      mode = AssignmentMode::Ordered;
    } else if (sections[2] != "all") {
      throw PatternError("unknown assignment mode '" + std::string(sections[2]) + "'");
    }
  }

  std::vector<Component> circles;
  for (std::string_view part : split(sections[0], " / ")) {
    Component circle;
    if (part != "()") {
      for (std::string_view token : split(part, " ")) {
        if (token.size() < 2 || (token.front() != 'O' && token.front() != 'U')) {
          throw PatternError("malformed pattern slot '" + std::string(token) + "'");
        }
        circle.push_back(Slot{parse_label(token.substr(1)), token.front() == 'O' ? End::Tail : End::Head});
      }
    }
    circles.push_back(std::move(circle));
  }

  std::map<Label, SignConstraint> constraints;
  if (sections[1] != "-") {
    for (std::string_view entry : split(sections[1], " ")) {
      const std::size_t colon = entry.find(':');
      if (colon == std::string_view::npos || colon + 2 != entry.size()) {
        throw PatternError("malformed constraint '" + std::string(entry) + "'");
      }
      const Label label = parse_label(entry.substr(0, colon));
      SignConstraint c{};
      switch (entry.back()) {
        case '+': c = SignConstraint::Plus; break;
        case '-': c = SignConstraint::Minus; break;
        case '?': c = SignConstraint::Any; break;
        default: throw PatternError("constraint must be +, - or ?");
      }
      if (!constraints.emplace(label, c).second) {
        throw PatternError("label " + std::to_string(label) + " constrained twice");
      }
    }
  }

  std::map<Label, int> seen;
  for (const auto& circle : circles) {
    for (const Slot& s : circle) ++seen[s.label];
  }
  for (const auto& [label, count] : seen) {
    if (!constraints.count(label)) {
      throw PatternError("label " + std::to_string(label) + " has no constraint");
    }
  }
  for (const auto& [label, c] : constraints) {
    if (!seen.count(label)) {
      throw PatternError("constraint for absent label " + std::to_string(label));
    }
  }
  return ArrowPattern(std::move(circles), constraints, mode);
}

std::string serialize(const ArrowPattern& a) {
  std::string out;
  for (std::size_t c = 0; c < a.num_circles(); ++c) {
    if (c) out += " / ";
    const Component& circle = a.circles()[c];
    if (circle.empty()) {
      out += "()";
      continue;
    }
    for (std::size_t p = 0; p < circle.size(); ++p) {
      if (p) out += ' ';
      out += circle[p].end == End::Tail ? 'O' : 'U';
      out += std::to_string(circle[p].label);
    }
  }
  out += " ; ";
  if (a.arrows().empty()) out += '-';
  for (std::size_t i = 0; i < a.arrows().size(); ++i) {
    if (i) out += ' ';
    const PatternArrow& p = a.arrows()[i];
    out += std::to_string(p.label);
    out += ':';
    out += p.constraint == SignConstraint::Plus ? '+' : p.constraint == SignConstraint::Minus ? '-' : '?';
  }
  out += a.mode() == AssignmentMode::Ordered ? " ; ordered" : " ; all";
  return out;
}

std::vector<Matching> enumerate_matchings(const ArrowPattern& a, const GaussDiagram& d) {
  std::vector<Matching> out;
  const auto& parrows = a.arrows();
  const auto& darrows = d.arrows();
  for_each_matching(a, d, [&](const std::vector<std::size_t>& circle_map,
                              const std::vector<std::size_t>& chosen, int weight) {
    Matching m;
    m.circle_map = circle_map;
    m.weight = weight;
    for (std::size_t i = 0; i < parrows.size(); ++i) {
      m.arrow_map.emplace_back(parrows[i].label, darrows[chosen[i]].label);
    }
    out.push_back(std::move(m));
  });
  return out;
}

std::int64_t evaluate_bracket(const ArrowPattern& a, const GaussDiagram& d) {
  std::int64_t total = 0;
  for_each_matching(a, d, [&](const auto&, const auto&, int weight) { total += weight; });
  return total;
}

}  // namespace gdl
