#include "gdl/invariant.hpp"

namespace gdl {

namespace {

const char* constraint_text(SignConstraint c) {
  return c == SignConstraint::Plus ? "+" : c == SignConstraint::Minus ? "-" : "?";
}

// Trivial 2-component link drawn with six crossings. Arrows 1 and 2 form the
// marked bigon on component 0.
constexpr const char* kDL = "O1+ O2- O5+ U6+ U2- U1+ U3- O4- / O3- U4- U5+ O6+";

}  // namespace

std::string describe(const FonepConfig& cfg) {
  std::string out = "self:";
  out += sign_char(cfg.self_sign);
  out += " inter:[";
  for (std::size_t i = 0; i < cfg.inter.size(); ++i) {
    const InterArrow& a = cfg.inter[i];
    if (i) out += ' ';
    out += a.direction == InterDirection::Out ? "out" : "in";
    out += a.arc == Arc::Forward ? "/fwd/" : "/bwd/";
    out += constraint_text(a.constraint);
  }
  out += "] mode:";
  out += cfg.mode == AssignmentMode::Ordered ? "ordered" : "all";
  return out;
}

FonepConfig default_fonep() {
  return FonepConfig{Sign::Plus,
                     {{InterDirection::Out, Arc::Forward, SignConstraint::Any},
                      {InterDirection::Out, Arc::Backward, SignConstraint::Any}},
                     AssignmentMode::AllInjective};
}

FonepConfig default_fonem() {
  FonepConfig cfg = default_fonep();
  cfg.self_sign = Sign::Minus;
  return cfg;
}

void check_config(const FonepConfig& cfg) {
  bool forward = false, backward = false;
  for (const InterArrow& a : cfg.inter) (a.arc == Arc::Forward ? forward : backward) = true;
  if (!forward || !backward) {
    throw ConfigError("self arrow is isolated: an arc carries no endpoint (" + describe(cfg) + ")");
  }
}

ArrowPattern candidate_pattern(const FonepConfig& cfg) {
  constexpr Label self = 1;
  Component circle0{{self, End::Tail}};
  Component circle1;
  std::map<Label, SignConstraint> constraints{
      {self, cfg.self_sign == Sign::Plus ? SignConstraint::Plus : SignConstraint::Minus}};

  Label next = 2;
  for (Arc arc : {Arc::Forward, Arc::Backward}) {
    if (arc == Arc::Backward) circle0.push_back({self, End::Head});
    for (const InterArrow& a : cfg.inter) {
      if (a.arc != arc) continue;
      const Label l = next++;
      const End near = a.direction == InterDirection::Out ? End::Tail : End::Head;
      const End far = near == End::Tail ? End::Head : End::Tail;
      circle0.push_back({l, near});
      constraints[l] = a.constraint;
      circle1.push_back({l, far});
    }
  }
  return ArrowPattern({std::move(circle0), std::move(circle1)}, constraints, cfg.mode);
}

ArrowPattern fonep_pattern(const FonepConfig& cfg) {
  check_config(cfg);
  return candidate_pattern(cfg);
}

std::int64_t lambda(const GaussDiagram& d, const FonepConfig& cfg) {
  return evaluate_bracket(fonep_pattern(cfg), d);
}

std::int64_t lambda(const GaussDiagram& d) {
  static const ArrowPattern pattern = fonep_pattern(default_fonep());
  return evaluate_bracket(pattern, d);
}

GaussDiagram build_du() { return GaussDiagram::empty(2); }

GaussDiagram build_dl() { return parse_gauss_code(kDL); }

BigonRemoval marked_bigon() { return {1, 2}; }

MoveKind marked_bigon_kind() { return omega2('d', MoveDirection::Decreasing); }

MoveKind chain_kind() { return omega2('c', MoveDirection::Increasing); }

BigonInsertion chain_site(const GaussDiagram& dln) {
  const Arrow& a = dln.arrow(marked_bigon().first);
  const std::size_t len = dln.component(a.tail.component).size();
  return BigonInsertion{Gap{a.tail.component, (a.tail.position + 1) % len},
                        Gap{a.head.component, a.head.position}, true};
}

GaussDiagram build_dln(std::size_t n) {
  if (n == 0) throw ConfigError("the family starts at n = 1");
  GaussDiagram d = build_dl();
  for (std::size_t i = 1; i < n; ++i) d = apply_move(d, chain_kind(), chain_site(d));
  return d;
}

}  // namespace gdl
