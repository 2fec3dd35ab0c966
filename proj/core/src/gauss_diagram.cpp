#include "gdl/gauss_diagram.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "gdl/random.hpp"

namespace gdl {

namespace {

std::vector<Arrow> index_arrows(const std::vector<Component>& components,
                                 const std::map<Label, Sign>& signs) {
  std::vector<Arrow> arrows;
  arrows.reserve(signs.size());
  for (const auto& [label, sign] : signs) arrows.push_back(Arrow{label, sign, {}, {}});

  std::vector<int> seen_tail(arrows.size(), 0), seen_head(arrows.size(), 0);
  auto find = [&](Label label) -> std::size_t {
    auto it = std::lower_bound(arrows.begin(), arrows.end(), label,
                               [](const Arrow& a, Label l) { return a.label < l; });
    if (it == arrows.end() || it->label != label) {
      throw InvalidDiagram("slot refers to unknown arrow " + std::to_string(label));
    }
    return static_cast<std::size_t>(it - arrows.begin());
  };

  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t p = 0; p < components[c].size(); ++p) {
      const Slot& s = components[c][p];
      const std::size_t i = find(s.label);
      if (s.end == End::Tail) {
        if (seen_tail[i]++) throw InvalidDiagram("arrow " + std::to_string(s.label) + " has two tails");
        arrows[i].tail = {c, p};
      } else {
        if (seen_head[i]++) throw InvalidDiagram("arrow " + std::to_string(s.label) + " has two heads");
        arrows[i].head = {c, p};
      }
    }
  }
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (!seen_tail[i] || !seen_head[i]) {
      throw InvalidDiagram("arrow " + std::to_string(arrows[i].label) + " is missing an endpoint");
    }
  }
  return arrows;
}

Label parse_label(std::string_view digits, std::string_view token) {
  if (digits.empty() || digits.front() == '0') {
    throw ParseError("bad label in token '" + std::string(token) + "'");
  }
  Label value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ParseError("bad label in token '" + std::string(token) + "'");
  }
  return value;
}

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

void append_label(std::string& out, Label label) {
  char buf[16];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, label);
  out.append(buf, ptr);
}

}  // namespace

GaussDiagram::GaussDiagram() : components_(1) {}

GaussDiagram::GaussDiagram(std::vector<Component> components, const std::map<Label, Sign>& signs)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidDiagram("a diagram needs at least one component");
  for (const auto& [label, sign] : signs) {
    if (label == 0) throw InvalidDiagram("arrow labels must be positive");
    if (sign != Sign::Plus && sign != Sign::Minus) throw InvalidDiagram("bad sign");
  }
  arrows_ = index_arrows(components_, signs);
}

GaussDiagram GaussDiagram::empty(std::size_t num_components) {
  return GaussDiagram(std::vector<Component>(num_components), {});
}

bool GaussDiagram::has_arrow(Label label) const {
  auto it = std::lower_bound(arrows_.begin(), arrows_.end(), label,
                             [](const Arrow& a, Label l) { return a.label < l; });
  return it != arrows_.end() && it->label == label;
}

const Arrow& GaussDiagram::arrow(Label label) const {
  auto it = std::lower_bound(arrows_.begin(), arrows_.end(), label,
                             [](const Arrow& a, Label l) { return a.label < l; });
  if (it == arrows_.end() || it->label != label) {
    throw std::out_of_range("no arrow " + std::to_string(label));
  }
  return *it;
}

EndpointRef GaussDiagram::locate(Label label, End end) const {
  const Arrow& a = arrow(label);
  return end == End::Tail ? a.tail : a.head;
}

const Slot& GaussDiagram::slot(EndpointRef ref) const {
  return components_.at(ref.component).at(ref.position);
}

std::map<Label, Sign> GaussDiagram::sign_map() const {
  std::map<Label, Sign> m;
  for (const Arrow& a : arrows_) m.emplace_hint(m.end(), a.label, a.sign);
  return m;
}

EndpointRef GaussDiagram::next(EndpointRef ref) const {
  const std::size_t len = components_.at(ref.component).size();
  return {ref.component, (ref.position + 1) % len};
}

bool GaussDiagram::follows(EndpointRef a, EndpointRef b) const {
  if (a.component != b.component || a.position == b.position) return false;
  return next(a) == b;
}

void validate(const std::vector<Component>& components, const std::map<Label, Sign>& signs) {
  GaussDiagram(components, signs);
}

GaussDiagram parse_gauss_code(std::string_view text) {
  if (text.empty()) throw ParseError("empty Gauss code");
  std::vector<Component> components;
  std::map<Label, Sign> signs;
  std::map<Label, int> occurrences;

  for (std::string_view part : split(text, " / ")) {
    Component comp;
    if (part == "()") {
      components.push_back(std::move(comp));
      continue;
    }
    if (part.empty()) throw ParseError("empty component; write () instead");
    for (std::string_view token : split(part, " ")) {
      if (token.size() < 3) throw ParseError("malformed token '" + std::string(token) + "'");
      const char kind = token.front();
      const char sc = token.back();
      if (kind != 'O' && kind != 'U') {
        throw ParseError("token must start with O or U: '" + std::string(token) + "'");
      }
      if (sc != '+' && sc != '-') {
        throw ParseError("token must end with + or -: '" + std::string(token) + "'");
      }
      const Label label = parse_label(token.substr(1, token.size() - 2), token);
      const Sign sign = sc == '+' ? Sign::Plus : Sign::Minus;
      auto [it, inserted] = signs.emplace(label, sign);
      if (!inserted && it->second != sign) {
        throw ParseError("sign mismatch for label " + std::to_string(label));
      }
      if (++occurrences[label] > 2) {
        throw ParseError("label " + std::to_string(label) + " appears more than twice");
      }
      comp.push_back(Slot{label, kind == 'O' ? End::Tail : End::Head});
    }
    components.push_back(std::move(comp));
  }

  for (const auto& [label, count] : occurrences) {
    if (count != 2) throw ParseError("label " + std::to_string(label) + " appears once");
  }
  try {
    return GaussDiagram(std::move(components), signs);
  } catch (const InvalidDiagram& e) {
    throw ParseError(e.what());
  }
}

std::string serialize(const GaussDiagram& d) {
  std::string out;
  for (std::size_t c = 0; c < d.num_components(); ++c) {
    if (c) out += " / ";
    const Component& comp = d.component(c);
    if (comp.empty()) {
      out += "()";
      continue;
    }
    for (std::size_t p = 0; p < comp.size(); ++p) {
      if (p) out += ' ';
      out += comp[p].end == End::Tail ? 'O' : 'U';
      append_label(out, comp[p].label);
      out += sign_char(d.sign(comp[p].label));
    }
  }
  return out;
}

namespace {

struct Candidate {
  std::string code;
  std::vector<std::size_t> order;
  std::vector<std::size_t> rotation;
};

}  // namespace

GaussDiagram canonical_form(const GaussDiagram& d) {
  const std::size_t n = d.num_components();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::vector<Label> relabel(d.max_label() + 1);
  std::vector<std::size_t> rotation(n, 0);
  std::string best;
  bool have_best = false;
  std::vector<Component> best_components;
  std::map<Label, Sign> best_signs;

  auto build = [&](std::string& code, std::vector<Component>* comps, std::map<Label, Sign>* signs) {
    std::fill(relabel.begin(), relabel.end(), 0);
    Label next_label = 1;
    code.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Component& comp = d.component(order[i]);
      if (i) code += " / ";
      if (comps) comps->emplace_back();
      if (comp.empty()) {
        code += "()";
        continue;
      }
      for (std::size_t k = 0; k < comp.size(); ++k) {
        const Slot& s = comp[(k + rotation[i]) % comp.size()];
        if (relabel[s.label] == 0) relabel[s.label] = next_label++;
        const Label l = relabel[s.label];
        if (k) code += ' ';
        code += s.end == End::Tail ? 'O' : 'U';
        append_label(code, l);
        code += sign_char(d.sign(s.label));
        if (comps) comps->back().push_back(Slot{l, s.end});
        if (signs) (*signs)[l] = d.sign(s.label);
      }
    }
  };

  std::string code;
  Candidate winner;
  do {
    std::fill(rotation.begin(), rotation.end(), 0);
    while (true) {
      build(code, nullptr, nullptr);
      if (!have_best || code < best) {
        best = code;
        have_best = true;
        winner = Candidate{code, order, rotation};
      }
      // odometer over rotations
      std::size_t i = 0;
      for (; i < n; ++i) {
        const std::size_t len = std::max<std::size_t>(1, d.component(order[i]).size());
        if (++rotation[i] < len) break;
        rotation[i] = 0;
      }
      if (i == n) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));

  order = winner.order;
  rotation = winner.rotation;
  build(code, &best_components, &best_signs);
  return GaussDiagram(std::move(best_components), best_signs);
}

std::string canonical_code(const GaussDiagram& d) { return serialize(canonical_form(d)); }

GaussDiagram random_diagram(std::size_t num_components, std::size_t num_arrows, std::uint64_t seed) {
  if (num_components == 0) throw InvalidDiagram("a diagram needs at least one component");
  Rng rng(seed);
  std::map<Label, Sign> signs;
  std::vector<Slot> slots;
  slots.reserve(2 * num_arrows);
  for (Label l = 1; l <= num_arrows; ++l) {
    signs[l] = rng.coin() ? Sign::Plus : Sign::Minus;
    slots.push_back(Slot{l, End::Tail});
    slots.push_back(Slot{l, End::Head});
  }
  rng.shuffle(slots);
  std::vector<Component> components(num_components);
  for (const Slot& s : slots) {
    components[static_cast<std::size_t>(rng.below(num_components))].push_back(s);
  }
  return GaussDiagram(std::move(components), signs);
}

}  // namespace gdl
