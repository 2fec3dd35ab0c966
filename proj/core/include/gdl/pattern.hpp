// Arrow patterns and the bracket <A, D>.
//
// A pattern is a small arrow diagram whose arrows may be sign-constrained.
// <A, D> sums, over every embedding of A into D, the product of the signs of
// the matched diagram arrows. Constraints only filter; they never change the
// weight.
//
// Text format:
//
//   pattern     := circles " ; " constraints [ " ; " mode ]
//   circles     := circle (" / " circle)*
//   circle      := "()" | slot (" " slot)*
//   slot        := ("O" | "U") label
//   constraints := label ":" ("+" | "-" | "?") (" " label ":" ("+" | "-" | "?"))*
//   mode        := "ordered" | "all"
//
// Every label appears once as O and once as U, and once in the constraint
// list. A pattern without arrows writes "-" for the constraint list. The
// mode defaults to "all".
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdl/gauss_diagram.hpp"

namespace gdl {

class PatternError : public GaussError {
 public:
  using GaussError::GaussError;
};

enum class SignConstraint : std::int8_t { Minus = -1, Any = 0, Plus = 1 };

constexpr bool admits(SignConstraint c, Sign s) {
  return c == SignConstraint::Any || static_cast<int>(c) == to_int(s);
}

// Ordered: pattern circle i lands on component i.
// AllInjective: every injective circle assignment contributes.
enum class AssignmentMode : std::uint8_t { Ordered, AllInjective };

struct PatternArrow {
  Label label = 0;
  SignConstraint constraint = SignConstraint::Any;
  EndpointRef tail;
  EndpointRef head;
};

class ArrowPattern {
 public:
  ArrowPattern(std::vector<Component> circles, const std::map<Label, SignConstraint>& constraints,
               AssignmentMode mode);

  std::size_t num_circles() const { return circles_.size(); }
  const std::vector<Component>& circles() const { return circles_; }
  // Sorted by label.
  const std::vector<PatternArrow>& arrows() const { return arrows_; }
  AssignmentMode mode() const { return mode_; }

 private:
  std::vector<Component> circles_;
  std::vector<PatternArrow> arrows_;
  AssignmentMode mode_;
};

struct Matching {
  // circle_map[i] is the component hit by pattern circle i.
  std::vector<std::size_t> circle_map;
  // (pattern label, diagram label), in pattern arrow order.
  std::vector<std::pair<Label, Label>> arrow_map;
  int weight = 1;
};

ArrowPattern parse_pattern(std::string_view text);
std::string serialize(const ArrowPattern& a);

// Throws PatternError in ordered mode if the pattern has more circles than
// the diagram has components.
std::vector<Matching> enumerate_matchings(const ArrowPattern& a, const GaussDiagram& d);
std::int64_t evaluate_bracket(const ArrowPattern& a, const GaussDiagram& d);

}  // namespace gdl
