// The two-circle pattern family, the invariant lambda and its example diagrams.
//
// A config describes a pattern with one sign-constrained arrow on circle 0
// (the self arrow) and a few arrows between circle 0 and circle 1. The forward
// arc of the self arrow runs from its tail to its head along the orientation
// of circle 0; the backward arc is the rest. Each inter arrow puts one
// endpoint on circle 0, on one of those arcs, and the other on circle 1.
//
// Circle 0 reads: self tail, forward-arc endpoints, self head, backward-arc
// endpoints. Circle 1 reads the inter endpoints in config order.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdl/gauss_diagram.hpp"
#include "gdl/moves.hpp"
#include "gdl/pattern.hpp"

namespace gdl {

class ConfigError : public GaussError {
 public:
  using GaussError::GaussError;
};

// Out: the tail lies on circle 0.
enum class InterDirection : std::uint8_t { Out, In };
enum class Arc : std::uint8_t { Forward, Backward };

struct InterArrow {
  InterDirection direction = InterDirection::Out;
  Arc arc = Arc::Forward;
  SignConstraint constraint = SignConstraint::Any;

  friend bool operator==(const InterArrow&, const InterArrow&) = default;
};

struct FonepConfig {
  Sign self_sign = Sign::Plus;
  std::vector<InterArrow> inter;
  AssignmentMode mode = AssignmentMode::AllInjective;

  friend bool operator==(const FonepConfig&, const FonepConfig&) = default;
};

std::string describe(const FonepConfig& cfg);

// One outgoing unconstrained arrow on each arc, summed over circle assignments.
FonepConfig default_fonep();
// default_fonep with the self arrow constrained to -.
FonepConfig default_fonem();

// Throws ConfigError if an arc of the self arrow carries no endpoint.
void check_config(const FonepConfig& cfg);
ArrowPattern fonep_pattern(const FonepConfig& cfg);
// Same construction without the config check.
ArrowPattern candidate_pattern(const FonepConfig& cfg);

std::int64_t lambda(const GaussDiagram& d);
std::int64_t lambda(const GaussDiagram& d, const FonepConfig& cfg);

GaussDiagram build_du();
GaussDiagram build_dl();
// n >= 1. Each step inserts a bigon next to the marked one.
GaussDiagram build_dln(std::size_t n);

// The marked bigon of build_dl() and the kind that removes it.
BigonRemoval marked_bigon();
MoveKind marked_bigon_kind();
// The insertion that takes build_dln(n) to build_dln(n + 1).
MoveKind chain_kind();
BigonInsertion chain_site(const GaussDiagram& dln);

struct SearchOptions {
  std::size_t max_arrows = 3;
  std::size_t trials = 40;
  std::uint64_t seed = 1;
  bool figure_filter = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Witness {
  std::string before;
  std::string kind;
  std::string site;
  // Position of the site in enumerate_sites(before, kind).
  std::size_t site_index = 0;
  std::int64_t value_before = 0;
  std::int64_t value_after = 0;
};

struct CandidateReport {
  FonepConfig config;
  bool omega1 = false;
  bool omega3 = false;
  bool omega2_two_component = false;
  bool omega2_single_changes = false;
  bool figure_values = false;
  // First failure per constraint, empty when the constraint holds.
  std::vector<std::pair<std::string, Witness>> failures;

  bool passes(bool figure_filter) const {
    return omega1 && omega3 && omega2_two_component && omega2_single_changes &&
           (!figure_filter || figure_values);
  }
};

std::vector<FonepConfig> candidate_configs(std::size_t max_arrows);
std::vector<CandidateReport> evaluate_candidates(const SearchOptions& opts);
std::vector<FonepConfig> search_valid_configs(std::size_t max_arrows, std::size_t trials, std::uint64_t seed);

}  // namespace gdl
