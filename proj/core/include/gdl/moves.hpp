// Oriented Reidemeister moves on Gauss diagrams.
//
// Variant conventions (tail = over, head = under):
//
//   O1a  kink of sign +, tail before head      O2a  coherent, first sign -
//   O1b  kink of sign -, tail before head      O2b  coherent, first sign +
//   O1c  kink of sign +, head before tail      O2c  opposite, first sign -
//   O1d  kink of sign -, head before tail      O2d  opposite, first sign +
//
// An O2 bigon is two arrows of opposite sign whose tails are adjacent on the
// over strand and whose heads are adjacent on the under strand. "Coherent"
// means the under strand meets the two heads in the same order as the over
// strand meets the tails; "opposite" means the reverse order. "First sign" is
// the sign of the arrow met first along the over strand.
//
// An O3 triangle has strands top, middle, bottom and arrows TM (top over
// middle), TB and MB. Signs are listed as (TM, TB, MB):
//
//   O3a (+,-,+)  O3b (+,+,+)  O3c (-,-,+)  O3d (+,+,-)
//   O3e (-,+,+)  O3f (+,-,-)  O3g (-,-,-)  O3h (-,+,-)
//
// The move reverses the pair of adjacent endpoints on each strand. Each
// variant has a left side and a right side that differ by that reversal;
// sites of either side are accepted.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gdl/gauss_diagram.hpp"
#include "gdl/random.hpp"

namespace gdl {

class InvalidSite : public GaussError {
 public:
  using GaussError::GaussError;
};

enum class MoveFamily : std::uint8_t { Omega1 = 1, Omega2 = 2, Omega3 = 3 };
enum class MoveDirection : std::uint8_t { Increasing, Decreasing, Neutral };

struct MoveKind {
  MoveFamily family = MoveFamily::Omega1;
  char variant = 'a';
  MoveDirection direction = MoveDirection::Increasing;

  friend auto operator<=>(const MoveKind&, const MoveKind&) = default;
};

// "O1a+", "O2c-", "O3b". The minus sign may also be written U+2212.
std::string to_string(MoveKind k);
MoveKind parse_move_kind(std::string_view text);
// Throws InvalidSite for anything outside the catalogue.
void check_kind(MoveKind k);

// O1a+ .. O1d-, O2a+ .. O2d-, O3a .. O3h.
std::vector<MoveKind> all_move_kinds();
std::vector<MoveKind> kinds_of_family(MoveFamily f);

constexpr MoveKind omega1(char v, MoveDirection dir) { return {MoveFamily::Omega1, v, dir}; }
constexpr MoveKind omega2(char v, MoveDirection dir) { return {MoveFamily::Omega2, v, dir}; }
constexpr MoveKind omega3(char v) { return {MoveFamily::Omega3, v, MoveDirection::Neutral}; }

int arrow_delta(MoveKind k);

struct KinkShape {
  Sign sign;
  bool tail_first;
};
struct BigonShape {
  bool coherent;
  Sign first_sign;
};
// Left side of an O3 variant: which arrow comes first on each strand.
struct TriangleShape {
  Sign tm, tb, mb;
  bool top_tm_first;
  bool middle_tm_first;
  bool bottom_tb_first;
};

KinkShape kink_shape(char variant);
BigonShape bigon_shape(char variant);
TriangleShape triangle_shape(char variant);

// A gap of a component with L slots is an index in [0, max(L, 1)); gap i
// sits immediately before slot i.
struct Gap {
  std::size_t component = 0;
  std::size_t index = 0;

  friend bool operator==(const Gap&, const Gap&) = default;
};

struct KinkInsertion {
  Gap gap;
  friend bool operator==(const KinkInsertion&, const KinkInsertion&) = default;
};
struct BigonInsertion {
  Gap over;
  Gap under;
  // Only meaningful when both gaps coincide: whether the over-strand pair
  // comes before the under-strand pair.
  bool over_first = true;
  friend bool operator==(const BigonInsertion&, const BigonInsertion&) = default;
};
struct KinkRemoval {
  Label arrow = 0;
  friend bool operator==(const KinkRemoval&, const KinkRemoval&) = default;
};
struct BigonRemoval {
  Label first = 0;  // met first along the over strand
  Label second = 0;
  friend bool operator==(const BigonRemoval&, const BigonRemoval&) = default;
};
struct TriangleSite {
  Label top_middle = 0;
  Label top_bottom = 0;
  Label middle_bottom = 0;
  friend bool operator==(const TriangleSite&, const TriangleSite&) = default;
};

using MoveSite = std::variant<KinkInsertion, BigonInsertion, KinkRemoval, BigonRemoval, TriangleSite>;

std::string to_string(const MoveSite& s);

enum class Locality : std::uint8_t { SingleComponent, TwoComponent };

std::string to_string(Locality l);

std::vector<Gap> gaps(const GaussDiagram& d);

// Sites in a fixed order: insertion sites by gap order, removal and triangle
// sites by ascending labels.
std::vector<MoveSite> enumerate_sites(const GaussDiagram& d, MoveKind k);
bool site_applies(const GaussDiagram& d, MoveKind k, const MoveSite& s);
// Throws InvalidSite if the site does not apply.
GaussDiagram apply_move(const GaussDiagram& d, MoveKind k, const MoveSite& s);

// Components touched by the site, ascending. "TwoComponent" means more than one.
std::vector<std::size_t> touched_components(const GaussDiagram& d, const MoveSite& s);
Locality classify_locality(const GaussDiagram& d, const MoveSite& s);

// For a triangle site: true if it matches the left side, false for the right
// side, nullopt if it is not a site of the variant.
std::optional<bool> triangle_side(const GaussDiagram& d, char variant, const TriangleSite& s);

struct Decomposition {
  MoveKind increase;
  MoveKind middle;
  MoveKind decrease;
};

// Throws InvalidSite for variant 'a'.
Decomposition decompose_omega3(char variant);
std::vector<MoveKind> expand_to_omega3a(char variant);

struct DecompositionStep {
  MoveKind kind;
  MoveSite site;
  GaussDiagram before;
};

struct DecompositionTrace {
  std::vector<DecompositionStep> steps;
  GaussDiagram result;
};

// Replays the three-move sequence for `variant` at a concrete triangle site.
// Throws InvalidSite if an intermediate site fails its precondition.
DecompositionTrace decompose_at(const GaussDiagram& d, char variant, const TriangleSite& s);

struct PlantedTriangle {
  GaussDiagram diagram;
  TriangleSite site;
};

// Inserts a fresh triangle of `variant` into `base`, with the top, middle and
// bottom strands on the given components at random gaps.
PlantedTriangle plant_triangle(const GaussDiagram& base, char variant, bool left_side,
                               const std::array<std::size_t, 3>& strand_components, Rng& rng);

}  // namespace gdl
