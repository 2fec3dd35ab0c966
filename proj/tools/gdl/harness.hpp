// Experiments behind the gdl command line.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdl/gauss_diagram.hpp"
#include "gdl/invariant.hpp"
#include "gdl/moves.hpp"
#include "gdl/pattern.hpp"

namespace gdl::cli {

class ResolveError : public GaussError {
 public:
  using GaussError::GaussError;
};

// Builtin names ("DU", "DL", "DL(3)", optionally prefixed "builtin:"),
// a path to a file holding Gauss code, or inline Gauss code.
GaussDiagram resolve_diagram(std::string_view ref);
// "fonep", "fonem", a file path, or inline pattern text.
ArrowPattern resolve_pattern(std::string_view ref);

// Names, comma lists, and the wildcards "O1*", "O2*", "O3*", "all".
std::vector<MoveKind> parse_kind_list(std::string_view text);

struct WalkOptions {
  std::vector<MoveKind> kinds;
  std::optional<Locality> locality;
  std::size_t steps = 1000;
  std::uint64_t seed = 1;
  // Increasing moves are skipped once they would exceed this many arrows.
  std::size_t max_arrows = 40;
};

struct WalkReport {
  std::size_t steps_taken = 0;
  bool ended_early = false;
  std::vector<std::string> kinds;
  std::vector<std::int64_t> values;
  // Set when the walk only uses moves that should keep the value and the
  // value changed; the walk stops there.
  std::optional<Witness> violation;
  std::size_t violation_step = 0;
  std::string violation_after;
};

WalkReport run_walk(const GaussDiagram& start, const ArrowPattern& pattern, const WalkOptions& opts);

struct TableRow {
  std::string kind;
  std::string locality;
  std::string context;
  bool expect_zero = false;
  std::optional<std::int64_t> expect_value;
  std::size_t samples = 0;
  std::map<std::int64_t, std::size_t> histogram;
  // One witness per distinct difference.
  std::map<std::int64_t, Witness> witnesses;

  bool ok() const;
};

struct DifferenceTable {
  std::vector<TableRow> rows;
  bool single_component_changes = false;
  bool ok() const;
};

DifferenceTable run_table1(std::size_t samples, std::uint64_t seed);

struct VariantCheck {
  char variant = 'a';
  std::size_t cases = 0;
  std::size_t coherent = 0;
  std::size_t locality_ok = 0;
  std::size_t expected_k = 0;
  std::size_t increases = 0;
  std::size_t decreases = 0;
  std::size_t omega3a = 0;
  std::vector<std::string> expansion;
  std::optional<std::string> failure;

  bool ok() const;
};

struct DecompositionReport {
  std::vector<VariantCheck> variants;
  bool ok() const;
};

DecompositionReport run_check_decomposition(std::size_t samples, std::uint64_t seed);

// Replays a witness and returns the value after the move.
std::int64_t replay(const Witness& w, const ArrowPattern& pattern);

std::uint64_t default_seed();

// Full command line; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gdl::cli
