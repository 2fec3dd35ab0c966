// Empirical search over the pattern family.
#include <algorithm>
#include <array>
#include <optional>
#include <atomic>
#include <thread>

#include "gdl/invariant.hpp"
#include "gdl/random.hpp"

namespace gdl {

namespace {

struct Sample {
  GaussDiagram before;
  GaussDiagram after;
  MoveKind kind;
  MoveSite site;
};

struct SampleSet {
  std::vector<Sample> omega1;
  std::vector<Sample> omega3;
  std::vector<Sample> two_component;
  std::vector<Sample> single_component;
};

constexpr std::size_t kMaxBaseArrows = 6;

void add_all_sites(const GaussDiagram& d, MoveKind k, std::vector<Sample>& out) {
  for (const MoveSite& s : enumerate_sites(d, k)) out.push_back({d, apply_move(d, k, s), k, s});
}

SampleSet build_samples(std::size_t trials, std::uint64_t seed) {
  SampleSet set;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const auto n = static_cast<std::size_t>(rng.below(kMaxBaseArrows + 1));
    const GaussDiagram d = random_diagram(2, n, rng.next());

    for (MoveKind k : kinds_of_family(MoveFamily::Omega1)) add_all_sites(d, k, set.omega1);

    for (MoveKind k : kinds_of_family(MoveFamily::Omega2)) {
      for (const MoveSite& s : enumerate_sites(d, k)) {
        auto& bucket = classify_locality(d, s) == Locality::SingleComponent ? set.single_component
                                                                             : set.two_component;
        bucket.push_back({d, apply_move(d, k, s), k, s});
      }
    }

    for (char v = 'a'; v <= 'h'; ++v) {
      for (unsigned mask = 0; mask < 8; ++mask) {
        const std::array<std::size_t, 3> comps{mask & 1u, (mask >> 1) & 1u, (mask >> 2) & 1u};
        const PlantedTriangle planted = plant_triangle(d, v, rng.coin(), comps, rng);
        add_all_sites(planted.diagram, omega3(v), set.omega3);
      }
    }
  }
  return set;
}

Witness make_witness(const Sample& s, std::int64_t before, std::int64_t after) {
  const auto sites = enumerate_sites(s.before, s.kind);
  const auto it = std::find(sites.begin(), sites.end(), s.site);
  return Witness{serialize(s.before), to_string(s.kind), to_string(s.site),
                 static_cast<std::size_t>(it - sites.begin()), before, after};
}

// First sample whose value changes, if any.
std::optional<Witness> first_change(const ArrowPattern& p, const std::vector<Sample>& samples) {
  for (const Sample& s : samples) {
    const std::int64_t before = evaluate_bracket(p, s.before);
    const std::int64_t after = evaluate_bracket(p, s.after);
    if (before != after) return make_witness(s, before, after);
  }
  return std::nullopt;
}

CandidateReport evaluate(const FonepConfig& cfg, const SampleSet& samples) {
  CandidateReport r;
  r.config = cfg;
  const ArrowPattern p = candidate_pattern(cfg);

  auto invariant_under = [&](const char* name, const std::vector<Sample>& set) {
    if (auto w = first_change(p, set)) {
      r.failures.emplace_back(name, *w);
      return false;
    }
    return true;
  };
  r.omega1 = invariant_under("omega1", samples.omega1);
  r.omega3 = invariant_under("omega3", samples.omega3);
  r.omega2_two_component = invariant_under("omega2-two-component", samples.two_component);
  r.omega2_single_changes = first_change(p, samples.single_component).has_value();
  if (!r.omega2_single_changes) r.failures.emplace_back("omega2-single-component-change", Witness{});

  r.figure_values = evaluate_bracket(p, build_du()) == 0;
  for (std::size_t n = 1; n <= 4 && r.figure_values; ++n) {
    r.figure_values = evaluate_bracket(p, build_dln(n)) == -static_cast<std::int64_t>(n);
  }
  if (!r.figure_values) r.failures.emplace_back("figure-values", Witness{});
  return r;
}

}  // namespace

std::vector<FonepConfig> candidate_configs(std::size_t max_arrows) {
  std::vector<InterArrow> specs;
  for (InterDirection dir : {InterDirection::Out, InterDirection::In}) {
    for (SignConstraint c : {SignConstraint::Any, SignConstraint::Plus, SignConstraint::Minus}) {
      specs.push_back({dir, Arc::Forward, c});
    }
  }

  std::vector<std::vector<InterArrow>> inter_sets;
  const std::size_t max_inter = max_arrows == 0 ? 0 : max_arrows - 1;
  for (std::size_t count = 0; count <= max_inter; ++count) {
    for (std::size_t forward = 0; forward <= count; ++forward) {
      // odometer over spec choices for each position
      std::vector<std::size_t> pick(count, 0);
      while (true) {
        std::vector<InterArrow> inter;
        for (std::size_t i = 0; i < count; ++i) {
          InterArrow a = specs[pick[i]];
          a.arc = i < forward ? Arc::Forward : Arc::Backward;
          inter.push_back(a);
        }
        inter_sets.push_back(std::move(inter));
        std::size_t i = 0;
        for (; i < count; ++i) {
          if (++pick[i] < specs.size()) break;
          pick[i] = 0;
        }
        if (i == count) break;
      }
      if (count == 0) break;
    }
  }

  std::vector<FonepConfig> out;
  for (AssignmentMode mode : {AssignmentMode::AllInjective, AssignmentMode::Ordered}) {
    for (const auto& inter : inter_sets) out.push_back(FonepConfig{Sign::Plus, inter, mode});
  }
  return out;
}

std::vector<CandidateReport> evaluate_candidates(const SearchOptions& opts) {
  const SampleSet samples = build_samples(opts.trials, opts.seed);
  const auto configs = candidate_configs(opts.max_arrows);
  std::vector<CandidateReport> reports(configs.size());

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, configs.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) reports[i] = evaluate(configs[i], samples);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return reports;
}

std::vector<FonepConfig> search_valid_configs(std::size_t max_arrows, std::size_t trials, std::uint64_t seed) {
  SearchOptions opts;
  opts.max_arrows = max_arrows;
  opts.trials = trials;
  opts.seed = seed;
  std::vector<FonepConfig> out;
  for (const CandidateReport& r : evaluate_candidates(opts)) {
    if (r.passes(opts.figure_filter)) out.push_back(r.config);
  }
  return out;
}

}  // namespace gdl
