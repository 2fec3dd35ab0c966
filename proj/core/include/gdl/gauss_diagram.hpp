// Multi-component Gauss diagrams.
//
// A diagram is an ordered list of oriented circles. Each circle carries a
// cyclic sequence of endpoint slots, and every arrow owns exactly two slots:
// its tail sits on the over-passing branch of the crossing, its head on the
// under-passing branch. The arrow sign is the local writhe of the crossing.
//
// No planarity is required; any pairing of slots is a valid (virtual) diagram.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gdl {

class GaussError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GaussError {
 public:
  using GaussError::GaussError;
};

class InvalidDiagram : public GaussError {
 public:
  using GaussError::GaussError;
};

enum class Sign : std::int8_t { Minus = -1, Plus = 1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
constexpr char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

using Label = std::uint32_t;

// Tail is written "O" in Gauss code, head is written "U".
enum class End : std::uint8_t { Tail, Head };

struct Slot {
  Label label = 0;
  End end = End::Tail;

  friend bool operator==(const Slot&, const Slot&) = default;
};

struct EndpointRef {
  std::size_t component = 0;
  std::size_t position = 0;

  friend bool operator==(const EndpointRef&, const EndpointRef&) = default;
};

struct Arrow {
  Label label = 0;
  Sign sign = Sign::Plus;
  EndpointRef tail;
  EndpointRef head;
};

using Component = std::vector<Slot>;

class GaussDiagram {
 public:
  // One empty component.
  GaussDiagram();

  // Throws InvalidDiagram unless every label in `signs` owns exactly one tail
  // slot and one head slot, and no slot carries an unknown label.
  GaussDiagram(std::vector<Component> components, const std::map<Label, Sign>& signs);

  static GaussDiagram empty(std::size_t num_components);

  std::size_t num_components() const { return components_.size(); }
  const std::vector<Component>& components() const { return components_; }
  const Component& component(std::size_t c) const { return components_.at(c); }

  std::size_t num_arrows() const { return arrows_.size(); }
  std::size_t num_slots() const { return 2 * arrows_.size(); }

  // Sorted by label.
  const std::vector<Arrow>& arrows() const { return arrows_; }
  bool has_arrow(Label label) const;
  const Arrow& arrow(Label label) const;
  Sign sign(Label label) const { return arrow(label).sign; }
  EndpointRef locate(Label label, End end) const;
  const Slot& slot(EndpointRef ref) const;
  Label max_label() const { return arrows_.empty() ? 0 : arrows_.back().label; }
  std::map<Label, Sign> sign_map() const;

  // The slot immediately after `ref` on its circle, cyclically.
  EndpointRef next(EndpointRef ref) const;
  // True if `b` immediately follows `a` on the same circle. On a circle with
  // two slots each one follows the other.
  bool follows(EndpointRef a, EndpointRef b) const;

  friend bool operator==(const GaussDiagram& x, const GaussDiagram& y) {
    return x.components_ == y.components_ && x.sign_map() == y.sign_map();
  }

 private:
  std::vector<Component> components_;
  std::vector<Arrow> arrows_;
};

GaussDiagram parse_gauss_code(std::string_view text);
std::string serialize(const GaussDiagram& d);

// Minimal serialization over component permutations and per-component
// rotations, with arrows relabeled 1, 2, ... in order of first occurrence.
GaussDiagram canonical_form(const GaussDiagram& d);
std::string canonical_code(const GaussDiagram& d);

// Throws InvalidDiagram on any broken invariant. Construction already
// validates, so this only matters for values assembled by hand.
void validate(const std::vector<Component>& components, const std::map<Label, Sign>& signs);

GaussDiagram random_diagram(std::size_t num_components, std::size_t num_arrows, std::uint64_t seed);

}  // namespace gdl
