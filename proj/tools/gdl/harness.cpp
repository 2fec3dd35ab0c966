#include "harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <regex>
#include <sstream>

#include "gdl/random.hpp"
#include "gdl/render.hpp"

namespace gdl::cli {

namespace {

using nlohmann::json;

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::optional<std::string> read_file(std::string_view ref) {
  std::error_code ec;
  const std::filesystem::path path{std::string(ref)};
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return trim(buf.str());
}

std::optional<GaussDiagram> builtin_diagram(std::string_view name) {
  if (name == "DU") return build_du();
  if (name == "DL") return build_dl();
  static const std::regex family(R"(DL\(([1-9][0-9]{0,3})\))");
  std::cmatch m;
  if (std::regex_match(name.begin(), name.end(), m, family)) {
    return build_dln(static_cast<std::size_t>(std::stoul(m[1].str())));
  }
  return std::nullopt;
}

bool checks_invariance(const WalkOptions& opts) {
  return std::all_of(opts.kinds.begin(), opts.kinds.end(), [&](MoveKind k) {
    return k.family != MoveFamily::Omega2 || opts.locality == Locality::TwoComponent;
  });
}

bool locality_allows(const std::optional<Locality>& loc, bool same_component) {
  if (!loc) return true;
  return (*loc == Locality::SingleComponent) == same_component;
}

// Increasing sites are counted and decoded without materialising them.
struct Choice {
  MoveKind kind;
  std::size_t count = 0;
  std::vector<MoveSite> listed;
  bool analytic = false;
};

std::size_t bigon_choices_for(const std::vector<Gap>& all, const Gap& over, const std::optional<Locality>& loc) {
  std::size_t n = 0;
  for (const Gap& u : all) {
    if (!locality_allows(loc, u.component == over.component)) continue;
    n += u == over ? 2 : 1;
  }
  return n;
}

MoveSite decode_bigon(const std::vector<Gap>& all, std::size_t r, const std::optional<Locality>& loc) {
  for (const Gap& over : all) {
    const std::size_t cnt = bigon_choices_for(all, over, loc);
    if (r >= cnt) {
      r -= cnt;
      continue;
    }
    for (const Gap& u : all) {
      if (!locality_allows(loc, u.component == over.component)) continue;
      if (u == over) {
        if (r < 2) return BigonInsertion{over, u, r == 0};
        r -= 2;
      } else {
        if (r == 0) return BigonInsertion{over, u, true};
        r -= 1;
      }
    }
  }
  throw std::logic_error("bigon index out of range");
}

std::size_t site_index(const GaussDiagram& d, MoveKind k, const MoveSite& s) {
  const auto sites = enumerate_sites(d, k);
  return static_cast<std::size_t>(std::find(sites.begin(), sites.end(), s) - sites.begin());
}

Witness witness(const GaussDiagram& before, MoveKind k, const MoveSite& s, std::int64_t vb, std::int64_t va) {
  return Witness{serialize(before), to_string(k), to_string(s), site_index(before, k, s), vb, va};
}

json to_json(const Witness& w) {
  return json{{"before", w.before}, {"kind", w.kind},           {"site", w.site},
              {"site_index", w.site_index}, {"value_before", w.value_before}, {"value_after", w.value_after}};
}

MoveSite random_listed(const std::vector<MoveSite>& sites, Rng& rng) {
  return sites[static_cast<std::size_t>(rng.below(sites.size()))];
}

}  // namespace

GaussDiagram resolve_diagram(std::string_view ref) {
  constexpr std::string_view prefix = "builtin:";
  if (ref.starts_with(prefix)) {
    if (auto d = builtin_diagram(ref.substr(prefix.size()))) return *d;
    throw ResolveError("unknown builtin diagram '" + std::string(ref) + "'");
  }
  if (auto d = builtin_diagram(ref)) return *d;
  if (auto text = read_file(ref)) return parse_gauss_code(*text);
  return parse_gauss_code(ref);
}

ArrowPattern resolve_pattern(std::string_view ref) {
  if (ref.starts_with("builtin:")) ref.remove_prefix(8);
  if (ref == "fonep") return fonep_pattern(default_fonep());
  if (ref == "fonem") return fonep_pattern(default_fonem());
  if (auto text = read_file(ref)) return parse_pattern(*text);
  return parse_pattern(ref);
}

std::vector<MoveKind> parse_kind_list(std::string_view text) {
  std::vector<MoveKind> out;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item == "all") {
      const auto all = all_move_kinds();
      out.insert(out.end(), all.begin(), all.end());
    } else if (item.size() == 3 && item[0] == 'O' && item[2] == '*' && item[1] >= '1' && item[1] <= '3') {
      const auto fam = kinds_of_family(static_cast<MoveFamily>(item[1] - '0'));
      out.insert(out.end(), fam.begin(), fam.end());
    } else {
      out.push_back(parse_move_kind(item));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw ResolveError("no move kinds given");
  return out;
}

WalkReport run_walk(const GaussDiagram& start, const ArrowPattern& pattern, const WalkOptions& opts) {
  WalkReport report;
  Rng rng(opts.seed);
  GaussDiagram d = start;
  std::int64_t value = evaluate_bracket(pattern, d);
  report.values.push_back(value);
  const bool checking = checks_invariance(opts);

  std::vector<Choice> choices;
  for (std::size_t step = 0; step < opts.steps; ++step) {
    choices.clear();
    std::size_t total = 0;
    const auto all_gaps = gaps(d);
    for (MoveKind k : opts.kinds) {
      if (k.direction == MoveDirection::Increasing &&
          d.num_arrows() + static_cast<std::size_t>(arrow_delta(k)) > opts.max_arrows) {
        continue;
      }
      Choice c;
      c.kind = k;
      if (k.family == MoveFamily::Omega1 && k.direction == MoveDirection::Increasing) {
        c.analytic = true;
        c.count = locality_allows(opts.locality, true) ? all_gaps.size() : 0;
      } else if (k.family == MoveFamily::Omega2 && k.direction == MoveDirection::Increasing) {
        c.analytic = true;
        for (const Gap& over : all_gaps) c.count += bigon_choices_for(all_gaps, over, opts.locality);
      } else {
        for (MoveSite& s : enumerate_sites(d, k)) {
          if (!opts.locality || classify_locality(d, s) == *opts.locality) c.listed.push_back(std::move(s));
        }
        c.count = c.listed.size();
      }
      total += c.count;
      if (c.count) choices.push_back(std::move(c));
    }
    if (total == 0) {
      report.ended_early = true;
      break;
    }

    std::size_t r = static_cast<std::size_t>(rng.below(total));
    auto it = choices.begin();
    while (r >= it->count) r -= (it++)->count;
    MoveSite site;
    if (!it->analytic) {
      site = it->listed[r];
    } else if (it->kind.family == MoveFamily::Omega1) {
      site = KinkInsertion{all_gaps[r]};
    } else {
      site = decode_bigon(all_gaps, r, opts.locality);
    }

    GaussDiagram after = apply_move(d, it->kind, site);
    const std::int64_t next_value = evaluate_bracket(pattern, after);
    report.kinds.push_back(to_string(it->kind));
    report.values.push_back(next_value);
    report.steps_taken = step + 1;
    if (checking && next_value != value) {
      report.violation = witness(d, it->kind, site, value, next_value);
      report.violation_step = step + 1;
      report.violation_after = serialize(after);
      break;
    }
    d = std::move(after);
    value = next_value;
  }
  return report;
}

bool TableRow::ok() const {
  for (const auto& [diff, count] : histogram) {
    if (expect_zero && diff != 0) return false;
    if (expect_value && diff != *expect_value) return false;
  }
  return true;
}

bool DifferenceTable::ok() const {
  return single_component_changes && std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.ok(); });
}

DifferenceTable run_table1(std::size_t samples, std::uint64_t seed) {
  DifferenceTable table;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
  auto row = [&](MoveKind k, Locality loc, const std::string& context) -> TableRow& {
    const auto key = std::make_tuple(to_string(k), to_string(loc), context);
    auto [it, inserted] = index.emplace(key, table.rows.size());
    if (inserted) {
      TableRow r;
      r.kind = to_string(k);
      r.locality = to_string(loc);
      r.context = context;
      r.expect_zero = !(k.family == MoveFamily::Omega2 && loc == Locality::SingleComponent);
      table.rows.push_back(std::move(r));
    }
    return table.rows[it->second];
  };
  const ArrowPattern pattern = fonep_pattern(default_fonep());
  auto record = [&](TableRow& r, const GaussDiagram& before, MoveKind k, const MoveSite& s, std::int64_t vb) {
    const std::int64_t va = evaluate_bracket(pattern, apply_move(before, k, s));
    const std::int64_t diff = va - vb;
    ++r.samples;
    ++r.histogram[diff];
    if (!r.witnesses.count(diff)) r.witnesses.emplace(diff, witness(before, k, s, vb, va));
    return diff;
  };

  // Build rows in a fixed order so the table layout does not depend on samples.
  for (char v = 'a'; v <= 'd'; ++v) row(omega1(v, MoveDirection::Increasing), Locality::SingleComponent, "random");
  for (Locality loc : {Locality::SingleComponent, Locality::TwoComponent}) {
    for (char v = 'a'; v <= 'd'; ++v) row(omega2(v, MoveDirection::Increasing), loc, "random");
  }
  for (char v = 'a'; v <= 'h'; ++v) {
    for (Locality loc : {Locality::SingleComponent, Locality::TwoComponent}) row(omega3(v), loc, "planted");
  }

  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto n = static_cast<std::size_t>(rng.below(9));
    const GaussDiagram d = random_diagram(2, n, rng.next());
    const std::int64_t v0 = evaluate_bracket(pattern, d);

    for (char v = 'a'; v <= 'd'; ++v) {
      const MoveKind k = omega1(v, MoveDirection::Increasing);
      record(row(k, Locality::SingleComponent, "random"), d, k, random_listed(enumerate_sites(d, k), rng), v0);
    }
    for (char v = 'a'; v <= 'd'; ++v) {
      const MoveKind k = omega2(v, MoveDirection::Increasing);
      const auto sites = enumerate_sites(d, k);
      for (Locality loc : {Locality::SingleComponent, Locality::TwoComponent}) {
        std::vector<MoveSite> pick;
        for (const MoveSite& s : sites) {
          if (classify_locality(d, s) == loc) pick.push_back(s);
        }
        if (pick.empty()) continue;
        const std::int64_t diff = record(row(k, loc, "random"), d, k, random_listed(pick, rng), v0);
        if (loc == Locality::SingleComponent && diff != 0) table.single_component_changes = true;
      }
    }
    for (char v = 'a'; v <= 'h'; ++v) {
      const std::array<std::size_t, 3> comps{rng.below(2), rng.below(2), rng.below(2)};
      const PlantedTriangle planted = plant_triangle(d, v, rng.coin(), comps, rng);
      const Locality loc = classify_locality(planted.diagram, planted.site);
      record(row(omega3(v), loc, "planted"), planted.diagram, omega3(v), planted.site,
             evaluate_bracket(pattern, planted.diagram));
    }
  }

  for (std::size_t n = 1; n <= 8; ++n) {
    const GaussDiagram d = build_dln(n);
    TableRow& r = row(chain_kind(), Locality::SingleComponent, "DL(n) chain");
    r.expect_zero = false;
    r.expect_value = -1;
    record(r, d, chain_kind(), chain_site(d), evaluate_bracket(pattern, d));
  }
  return table;
}

bool VariantCheck::ok() const {
  return !failure && coherent == cases && locality_ok == cases && increases == expected_k &&
         decreases == expected_k && omega3a == 1;
}

bool DecompositionReport::ok() const {
  return std::all_of(variants.begin(), variants.end(), [](const VariantCheck& v) { return v.ok(); });
}

DecompositionReport run_check_decomposition(std::size_t samples, std::uint64_t seed) {
  // One O3a plus k increasing and k decreasing bigon moves per variant.
  static const std::map<char, std::size_t> expected_k{{'a', 0}, {'b', 1}, {'c', 1}, {'d', 2},
                                                      {'e', 2}, {'f', 1}, {'g', 2}, {'h', 3}};
  DecompositionReport report;
  for (char v = 'a'; v <= 'h'; ++v) {
    VariantCheck check;
    check.variant = v;
    check.expected_k = expected_k.at(v);
    for (MoveKind k : expand_to_omega3a(v)) {
      check.expansion.push_back(to_string(k));
      if (k.direction == MoveDirection::Increasing) ++check.increases;
      if (k.direction == MoveDirection::Decreasing) ++check.decreases;
      if (k == omega3('a')) ++check.omega3a;
    }
    if (v != 'a') {
      for (std::size_t i = 0; i < samples; ++i) {
        Rng rng(derive_seed(seed, i * 8 + static_cast<std::size_t>(v - 'a')));
        const GaussDiagram base = random_diagram(2, static_cast<std::size_t>(rng.below(7)), rng.next());
        const std::array<std::size_t, 3> comps{rng.below(2), rng.below(2), rng.below(2)};
        const PlantedTriangle planted = plant_triangle(base, v, rng.coin(), comps, rng);
        for (const MoveSite& s : enumerate_sites(planted.diagram, omega3(v))) {
          ++check.cases;
          const auto& t = std::get<TriangleSite>(s);
          try {
            const DecompositionTrace trace = decompose_at(planted.diagram, v, t);
            const GaussDiagram direct = apply_move(planted.diagram, omega3(v), s);
            if (canonical_code(direct) == canonical_code(trace.result)) {
              ++check.coherent;
            } else if (!check.failure) {
              check.failure = "mismatch at " + serialize(planted.diagram) + " " + to_string(s);
            }
            const auto& first = trace.steps.front();
            const auto& last = trace.steps.back();
            if (classify_locality(first.before, first.site) == classify_locality(last.before, last.site)) {
              ++check.locality_ok;
            } else if (!check.failure) {
              check.failure = "locality differs at " + serialize(planted.diagram) + " " + to_string(s);
            }
          } catch (const InvalidSite& e) {
            if (!check.failure) check.failure = std::string(e.what()) + " at " + serialize(planted.diagram);
          }
        }
      }
      if (check.cases < samples && !check.failure) check.failure = "fewer cases than samples";
    }
    report.variants.push_back(std::move(check));
  }
  return report;
}

std::int64_t replay(const Witness& w, const ArrowPattern& pattern) {
  const GaussDiagram before = parse_gauss_code(w.before);
  const MoveKind k = parse_move_kind(w.kind);
  const auto sites = enumerate_sites(before, k);
  if (w.site_index >= sites.size()) throw InvalidSite("witness site index out of range");
  return evaluate_bracket(pattern, apply_move(before, k, sites[w.site_index]));
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GDL_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ResolveError("GDL_SEED must be a non-negative integer");
    }
  }
  return 1;
}

namespace {

struct Common {
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t resolved_seed() const { return seed ? *seed : default_seed(); }
};

int cmd_eval(const std::string& pattern_ref, const std::string& diagram_ref, const Common& c, std::ostream& out) {
  const ArrowPattern p = resolve_pattern(pattern_ref);
  const GaussDiagram d = resolve_diagram(diagram_ref);
  const std::int64_t v = evaluate_bracket(p, d);
  if (c.json) {
    out << json{{"pattern", serialize(p)}, {"diagram", serialize(d)}, {"value", v}}.dump(2) << '\n';
  } else {
    out << v << '\n';
  }
  return 0;
}

int cmd_move(const std::string& diagram_ref, const std::string& kind, std::size_t site, const Common& c,
             std::ostream& out) {
  const GaussDiagram d = resolve_diagram(diagram_ref);
  const MoveKind k = parse_move_kind(kind);
  const auto sites = enumerate_sites(d, k);
  if (site >= sites.size()) {
    throw ResolveError("site index " + std::to_string(site) + " out of range (" + std::to_string(sites.size()) +
                       " sites)");
  }
  const GaussDiagram after = apply_move(d, k, sites[site]);
  if (c.json) {
    out << json{{"before", serialize(d)},
                {"kind", to_string(k)},
                {"site_index", site},
                {"site", to_string(sites[site])},
                {"locality", to_string(classify_locality(d, sites[site]))},
                {"after", serialize(after)},
                {"value_before", lambda(d)},
                {"value_after", lambda(after)}}
               .dump(2)
        << '\n';
  } else {
    out << serialize(after) << '\n';
  }
  return 0;
}

int cmd_sites(const std::string& diagram_ref, const std::string& kinds, const Common& c, std::ostream& out) {
  const GaussDiagram d = resolve_diagram(diagram_ref);
  json all = json::array();
  for (MoveKind k : parse_kind_list(kinds)) {
    const auto sites = enumerate_sites(d, k);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const std::string loc = to_string(classify_locality(d, sites[i]));
      if (c.json) {
        all.push_back({{"kind", to_string(k)}, {"index", i}, {"site", to_string(sites[i])}, {"locality", loc}});
      } else {
        out << to_string(k) << '\t' << i << '\t' << to_string(sites[i]) << '\t' << loc << '\n';
      }
    }
  }
  if (c.json) out << all.dump(2) << '\n';
  return 0;
}

int cmd_walk(const std::string& diagram_ref, const std::string& pattern_ref, WalkOptions opts,
             const std::string& kinds, const std::string& locality, const Common& c, std::ostream& out) {
  const GaussDiagram d = resolve_diagram(diagram_ref);
  const ArrowPattern p = resolve_pattern(pattern_ref);
  opts.kinds = parse_kind_list(kinds);
  opts.seed = c.resolved_seed();
  if (locality == "single") {
    opts.locality = Locality::SingleComponent;
  } else if (locality == "two") {
    opts.locality = Locality::TwoComponent;
  } else if (locality != "any") {
    throw ResolveError("locality must be any, single or two");
  }
  const WalkReport r = run_walk(d, p, opts);
  const bool constant = std::all_of(r.values.begin(), r.values.end(), [&](auto v) { return v == r.values.front(); });
  if (c.json) {
    json j{{"start", serialize(d)},      {"seed", opts.seed},           {"steps_taken", r.steps_taken},
           {"ended_early", r.ended_early}, {"kinds", r.kinds},           {"values", r.values},
           {"constant", constant},       {"violation", nullptr}};
    if (r.violation) {
      j["violation"] = to_json(*r.violation);
      j["violation"]["step"] = r.violation_step;
      j["violation"]["after"] = r.violation_after;
    }
    out << j.dump(2) << '\n';
  } else {
    out << "start " << serialize(d) << '\n';
    out << "seed " << opts.seed << '\n';
    out << "steps " << r.steps_taken << (r.ended_early ? " (no applicable move, ended early)" : "") << '\n';
    out << "initial " << r.values.front() << '\n';
    out << "final " << r.values.back() << '\n';
    out << (constant ? "constant yes" : "constant no") << '\n';
    if (r.violation) {
      const Witness& w = *r.violation;
      out << "violation step " << r.violation_step << '\n';
      out << "  before " << w.before << '\n';
      out << "  kind " << w.kind << " site " << w.site_index << " (" << w.site << ")\n";
      out << "  after " << r.violation_after << '\n';
      out << "  value " << w.value_before << " -> " << w.value_after << '\n';
    }
  }
  return r.violation ? 1 : 0;
}

std::string histogram_text(const std::map<std::int64_t, std::size_t>& h) {
  std::string s;
  for (const auto& [diff, count] : h) {
    if (!s.empty()) s += ' ';
    s += std::to_string(diff) + ":" + std::to_string(count);
  }
  return s.empty() ? "-" : s;
}

int cmd_table1(std::size_t samples, const Common& c, std::ostream& out) {
  const DifferenceTable t = run_table1(samples, c.resolved_seed());
  if (c.json) {
    json rows = json::array();
    for (const TableRow& r : t.rows) {
      json h = json::object();
      for (const auto& [diff, count] : r.histogram) h[std::to_string(diff)] = count;
      json ws = json::array();
      for (const auto& [diff, w] : r.witnesses) ws.push_back(to_json(w));
      rows.push_back({{"kind", r.kind},
                      {"locality", r.locality},
                      {"context", r.context},
                      {"samples", r.samples},
                      {"histogram", h},
                      {"expect_zero", r.expect_zero},
                      {"expect_value", r.expect_value ? json(*r.expect_value) : json(nullptr)},
                      {"ok", r.ok()},
                      {"witnesses", ws}});
    }
    out << json{{"samples", samples},
                {"seed", c.resolved_seed()},
                {"rows", rows},
                {"single_component_changes", t.single_component_changes},
                {"ok", t.ok()}}
                   .dump(2)
        << '\n';
  } else {
    out << "kind\tlocality\tcontext\tsamples\tdifferences\tstatus\n";
    for (const TableRow& r : t.rows) {
      const char* status = r.ok() ? (r.expect_zero ? "zero" : r.expect_value ? "expected" : "observed") : "FAIL";
      out << r.kind << '\t' << r.locality << '\t' << r.context << '\t' << r.samples << '\t'
          << histogram_text(r.histogram) << '\t' << status << '\n';
    }
    out << "single-component change observed: " << (t.single_component_changes ? "yes" : "no") << '\n';
    for (const TableRow& r : t.rows) {
      if (r.ok()) continue;
      for (const auto& [diff, w] : r.witnesses) {
        if ((r.expect_zero && diff != 0) || (r.expect_value && diff != *r.expect_value)) {
          out << "witness " << r.kind << ' ' << r.locality << ": " << w.before << " site " << w.site_index << " ("
              << w.site << ") " << w.value_before << " -> " << w.value_after << '\n';
          break;
        }
      }
    }
    out << (t.ok() ? "table1 ok" : "table1 FAIL") << '\n';
  }
  return t.ok() ? 0 : 1;
}

int cmd_check_decomposition(std::size_t samples, const Common& c, std::ostream& out) {
  const DecompositionReport r = run_check_decomposition(samples, c.resolved_seed());
  if (c.json) {
    json vs = json::array();
    for (const VariantCheck& v : r.variants) {
      vs.push_back({{"variant", std::string("O3") + v.variant},
                    {"cases", v.cases},
                    {"coherent", v.coherent},
                    {"locality_ok", v.locality_ok},
                    {"expansion", v.expansion},
                    {"k", v.increases},
                    {"expected_k", v.expected_k},
                    {"failure", v.failure ? json(*v.failure) : json(nullptr)},
                    {"ok", v.ok()}});
    }
    out << json{{"samples", samples}, {"seed", c.resolved_seed()}, {"variants", vs}, {"ok", r.ok()}}.dump(2) << '\n';
  } else {
    out << "variant\tcases\tcoherent\tlocality\tk\texpected\texpansion\n";
    for (const VariantCheck& v : r.variants) {
      std::string expansion;
      for (const auto& k : v.expansion) expansion += (expansion.empty() ? "" : " ") + k;
      out << "O3" << v.variant << '\t' << v.cases << '\t' << v.coherent << '\t' << v.locality_ok << '\t'
          << v.increases << '\t' << v.expected_k << '\t' << expansion << (v.ok() ? "" : "\tFAIL") << '\n';
      if (v.failure) out << "  " << *v.failure << '\n';
    }
    out << (r.ok() ? "decomposition ok" : "decomposition FAIL") << '\n';
  }
  return r.ok() ? 0 : 1;
}

int cmd_family(std::size_t max_n, const Common& c, std::ostream& out) {
  bool ok = true;
  json rows = json::array();
  if (!c.json) out << "n\tlambda\texpected\n";
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::int64_t v = lambda(build_dln(n));
    const std::int64_t expected = -static_cast<std::int64_t>(n);
    ok = ok && v == expected;
    if (c.json) {
      rows.push_back({{"n", n}, {"lambda", v}, {"expected", expected}});
    } else {
      out << n << '\t' << v << '\t' << expected << (v == expected ? "" : "\tFAIL") << '\n';
    }
  }
  if (c.json) out << json{{"rows", rows}, {"ok", ok}}.dump(2) << '\n';
  return ok ? 0 : 1;
}

int cmd_search(const SearchOptions& opts, const Common& c, std::ostream& out) {
  const auto reports = evaluate_candidates(opts);
  std::vector<const CandidateReport*> valid;
  bool has_default = false;
  for (const CandidateReport& r : reports) {
    if (!r.passes(opts.figure_filter)) continue;
    valid.push_back(&r);
    has_default = has_default || r.config == default_fonep();
  }
  const bool ok = !valid.empty() && has_default;
  // configs that pass everything except the O3 constraint
  std::vector<const CandidateReport*> near;
  for (const CandidateReport& r : reports) {
    if (!r.omega3 && r.omega1 && r.omega2_two_component && r.omega2_single_changes &&
        (!opts.figure_filter || r.figure_values)) {
      near.push_back(&r);
    }
  }

  auto flags = [](const CandidateReport& r) {
    return json{{"omega1", r.omega1},
                {"omega3", r.omega3},
                {"omega2_two_component", r.omega2_two_component},
                {"omega2_single_changes", r.omega2_single_changes},
                {"figure_values", r.figure_values}};
  };
  if (c.json) {
    json cands = json::array();
    for (const CandidateReport& r : reports) {
      json failures = json::object();
      for (const auto& [name, w] : r.failures) failures[name] = w.before.empty() ? json(nullptr) : to_json(w);
      cands.push_back({{"config", describe(r.config)},
                       {"pattern", serialize(candidate_pattern(r.config))},
                       {"checks", flags(r)},
                       {"failures", failures}});
    }
    json v = json::array();
    for (const auto* r : valid) v.push_back(describe(r->config));
    out << json{{"max_arrows", opts.max_arrows},
                {"trials", opts.trials},
                {"seed", opts.seed},
                {"figure_filter", opts.figure_filter},
                {"candidates", cands},
                {"valid", v},
                {"contains_default", has_default},
                {"ok", ok}}
                   .dump(2)
        << '\n';
  } else {
    out << "candidates " << reports.size() << '\n';
    std::size_t o1 = 0, o3 = 0, two = 0, single = 0, fig = 0;
    for (const CandidateReport& r : reports) {
      o1 += r.omega1;
      o3 += r.omega3;
      two += r.omega2_two_component;
      single += r.omega2_single_changes;
      fig += r.figure_values;
    }
    out << "pass omega1 " << o1 << '\n';
    out << "pass omega3 " << o3 << '\n';
    out << "pass omega2-two-component " << two << '\n';
    out << "pass omega2-single-component-change " << single << '\n';
    out << "pass figure-values " << fig << (opts.figure_filter ? "" : " (filter off)") << '\n';
    out << "valid " << valid.size() << '\n';
    for (const auto* r : valid) out << "  " << describe(r->config) << '\n';
    out << "all but omega3 " << near.size() << '\n';
    for (const auto* r : near) {
      out << "  " << describe(r->config) << '\n';
      for (const auto& [name, w] : r->failures) {
        if (name != "omega3") continue;
        out << "    omega3 witness " << w.before << " " << w.kind << " site " << w.site_index << " (" << w.site
            << ") " << w.value_before << " -> " << w.value_after << '\n';
      }
    }
    out << "default " << describe(default_fonep()) << (has_default ? " found" : " not found") << '\n';
    out << (ok ? "search ok" : "search FAIL") << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_render(const std::string& diagram_ref, const std::string& out_path, int size, bool no_labels,
               const std::string& highlight, std::ostream& out) {
  const GaussDiagram d = resolve_diagram(diagram_ref);
  RenderOptions opts;
  if (size <= 0) throw ResolveError("size must be positive");
  opts.size = size;
  opts.show_labels = !no_labels;
  std::stringstream ss(highlight);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) opts.highlight.insert(static_cast<Label>(std::stoul(item)));
  }
  const std::string svg = render_svg(d, opts);
  if (out_path.empty() || out_path == "-") {
    out << svg;
  } else {
    std::ofstream f(out_path);
    if (!f) throw ResolveError("cannot write " + out_path);
    f << svg;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauss diagrams, oriented Reidemeister moves and the two-circle bracket"};
  app.name("gdl");
  app.require_subcommand(1);

  Common common;
  std::string diagram = "DL", pattern = "fonep", kinds, locality = "any", out_path, highlight;
  std::size_t site = 0, steps = 1000, samples = 0, n = 8, max_arrows = 40, search_arrows = 3;
  int size = 320;
  bool no_labels = false, no_figure_filter = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "Emit JSON");
    sub->add_option("--seed", common.seed, "Seed (default: $GDL_SEED or 1)");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate <pattern, diagram>");
  eval->add_option("--pattern", pattern, "Pattern: fonep, fonem, file or text")->required();
  eval->add_option("--diagram", diagram, "Diagram: builtin, file or Gauss code")->required();
  add_common(eval);

  auto* inv = app.add_subcommand("invariant", "Print lambda of a diagram");
  inv->add_option("--diagram", diagram, "Diagram")->required();
  inv->add_option("--pattern", pattern, "Pattern (default fonep)");
  add_common(inv);

  auto* move = app.add_subcommand("move", "Apply one move");
  move->add_option("--diagram", diagram, "Diagram")->required();
  move->add_option("--kind", kinds, "Move kind, e.g. O2c+")->required();
  move->add_option("--site", site, "Site index from `gdl sites`")->required();
  add_common(move);

  auto* sites = app.add_subcommand("sites", "List move sites");
  sites->add_option("--diagram", diagram, "Diagram")->required();
  sites->add_option("--kind", kinds, "Kinds (comma list, O1*, all)")->default_val("all");
  add_common(sites);

  auto* walk = app.add_subcommand("walk", "Random walk recording lambda");
  walk->add_option("--diagram", diagram, "Start diagram")->required();
  walk->add_option("--kind", kinds, "Allowed kinds (comma list, O1*, all)")->required();
  walk->add_option("--locality", locality, "any, single or two")->default_val("any");
  walk->add_option("--steps", steps, "Steps")->check(CLI::PositiveNumber);
  walk->add_option("--max-arrows", max_arrows, "Arrow cap for increasing moves");
  walk->add_option("--pattern", pattern, "Pattern (default fonep)");
  add_common(walk);

  auto* table1 = app.add_subcommand("table1", "Measure lambda differences per move kind");
  table1->add_option("--samples", samples, "Random diagrams")->default_val(300)->check(CLI::PositiveNumber);
  add_common(table1);

  auto* family = app.add_subcommand("family", "lambda on DL(1..n)");
  family->add_option("--n", n, "Largest n")->default_val(8)->check(CLI::PositiveNumber);
  add_common(family);

  auto* decomp = app.add_subcommand("check-decomposition", "Check O3 decompositions");
  decomp->add_option("--samples", samples, "Random diagrams per variant")->default_val(100)->check(CLI::PositiveNumber);
  add_common(decomp);

  auto* search = app.add_subcommand("search-config", "Search the pattern family");
  search->add_option("--samples", samples, "Random diagrams")->default_val(40)->check(CLI::PositiveNumber);
  search->add_option("--max-arrows", search_arrows, "Pattern arrows")->default_val(3);
  search->add_flag("--no-figure-filter", no_figure_filter, "Skip the DU/DL/DL(n) value filter");
  add_common(search);

  auto* render = app.add_subcommand("render", "Write an SVG chord diagram");
  render->add_option("--diagram", diagram, "Diagram")->required();
  render->add_option("--out", out_path, "Output path (default stdout)");
  render->add_option("--size", size, "Cell size in pixels");
  render->add_flag("--no-labels", no_labels, "Hide endpoint labels");
  render->add_option("--highlight", highlight, "Comma list of arrow labels");

  std::vector<const char*> argv{"gdl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(pattern, diagram, common, out);
    if (inv->parsed()) return cmd_eval(pattern, diagram, common, out);
    if (move->parsed()) return cmd_move(diagram, kinds, site, common, out);
    if (sites->parsed()) return cmd_sites(diagram, kinds, common, out);
    if (walk->parsed()) {
      WalkOptions opts;
      opts.steps = steps;
      opts.max_arrows = max_arrows;
      return cmd_walk(diagram, pattern, opts, kinds, locality, common, out);
    }
    if (table1->parsed()) return cmd_table1(samples, common, out);
    if (family->parsed()) return cmd_family(n, common, out);
    if (decomp->parsed()) return cmd_check_decomposition(samples, common, out);
    if (search->parsed()) {
      SearchOptions opts;
      opts.max_arrows = search_arrows;
      opts.trials = samples;
      opts.seed = common.resolved_seed();
      opts.figure_filter = !no_figure_filter;
      return cmd_search(opts, common, out);
    }
    if (render->parsed()) return cmd_render(diagram, out_path, size, no_labels, highlight, out);
  } catch (const GaussError& e) {
    err << "gdl: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "gdl: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "gdl: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace gdl::cli
