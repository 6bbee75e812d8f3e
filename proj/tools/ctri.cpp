// ctri: command-line front end for the compatible-triangulation toolkit.
//
// Exit codes: 0 positive result, 1 proved negative, 2 usage or input error,
// 3 budget exhausted.

#include "ctri/construct.hpp"
#include "ctri/datasets.hpp"
#include "ctri/generate.hpp"
#include "ctri/render.hpp"
#include "ctri/steiner.hpp"
#include "ctri/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using namespace ctri;

enum Exit : int { kPositive = 0, kNegative = 1, kInputError = 2, kBudget = 3 };

struct RunConfig {
  std::uint64_t budget_nodes = 10'000'000;
  double budget_secs = 0;  // 0: command default
  unsigned workers = default_workers();
  std::uint64_t seed = 0;
  std::string svg;
  bool use_pins = false;
  bool ignore_required = false;
  bool allow_exterior = false;

  SearchOptions search() const { return {budget_nodes, budget_secs, workers}; }
};

Instance resolve(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return load_instance(arg);
  try {
    return builtin(arg);
  } catch (const Error&) {
    throw Error(ErrorCode::UnknownName, "'" + arg + "' is neither a readable file nor a builtin (" + [] {
      std::string names;
      for (const auto& n : builtin_names()) names += (names.empty() ? "" : ", ") + n;
      return names;
    }() + ")");
  }
}

std::string edge_list(const std::vector<Edge>& es) {
  std::string out;
  for (const auto& e : es) out += (out.empty() ? "" : " ") + to_string(e);
  return out.empty() ? "(none)" : out;
}

std::string mapping_text(const Correspondence& phi) {
  std::string out;
  for (auto [p, q] : phi.pairs) out += (out.empty() ? "" : " ") + std::to_string(p) + "->" + std::to_string(q);
  return out;
}

void print_outcome(const SearchOutcome& r) {
  std::cout << "verdict: " << to_string(r.verdict) << "\n";
  if (r.certificate) {
    std::cout << "T_P: " << edge_list(r.certificate->tp.edges) << "\n";
    std::cout << "T_Q: " << edge_list(r.certificate->tq.edges) << "\n";
    std::cout << "mapping: " << mapping_text(r.certificate->phi) << "\n";
  } else {
    std::cout << "evidence: " << to_string(r.evidence.kind) << "\n";
    if (!r.evidence.detail.empty()) std::cout << "detail: " << r.evidence.detail << "\n";
    if (r.evidence.triangulations_p || r.evidence.triangulations_q)
      std::cout << "triangulations: " << r.evidence.triangulations_p << " x " << r.evidence.triangulations_q << "\n";
  }
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Compatible: return kPositive;
    case Verdict::Incompatible: return kNegative;
    case Verdict::Inconclusive: return kBudget;
  }
  return kBudget;
}

std::string certificate_svg(const PointSet& p, const PointSet& q, const SearchOutcome& r, const std::string& caption) {
  std::vector<Panel> panels{{&p, {}, "P"}, {&q, {}, "Q"}};
  if (r.certificate) {
    panels[0].edges = r.certificate->tp.edges;
    panels[1].edges = r.certificate->tq.edges;
  }
  return render_svg(panels, caption + ": " + std::string(to_string(r.verdict)));
}

SearchOutcome solve(const Instance& inst, const RunConfig& cfg, std::string* mode) {
  const auto req_p = cfg.ignore_required ? std::vector<Edge>{} : inst.required_p;
  const auto req_q = cfg.ignore_required ? std::vector<Edge>{} : inst.required_q;
  if (cfg.use_pins && inst.mapping_is_full()) {
    *mode = "full mapping";
    MappedOptions mo;
    mo.search = cfg.search();
    mo.required_p = req_p;
    mo.required_q = req_q;
    return compatible_under_full_mapping(inst.p, inst.q, inst.correspondence(), mo);
  }
  const auto pins = cfg.use_pins ? inst.mapping : std::vector<std::pair<int, int>>{};
  *mode = pins.empty() ? "unpinned" : "pinned (" + std::to_string(pins.size()) + " pairs)";
  if (!req_p.empty() || !req_q.empty())
    *mode += ", required edges " + std::to_string(req_p.size()) + "+" + std::to_string(req_q.size());
  return find_compatible(inst.p, inst.q, Constraints{pins, req_p, req_q}, cfg.search());
}

int cmd_solve(const std::string& name, const RunConfig& cfg) {
  const Instance inst = resolve(name);
  std::string mode;
  const auto r = solve(inst, cfg, &mode);
  std::cout << "instance: " << name << "\nmode: " << mode << "\n";
  print_outcome(r);
  if (!cfg.svg.empty()) write_text_file(cfg.svg, certificate_svg(inst.p, inst.q, r, name));
  return verdict_exit(r.verdict);
}

int cmd_enumerate(const std::string& name, const std::string& side, std::size_t show, const RunConfig& cfg) {
  const Instance inst = resolve(name);
  for (const PointSet* s : {&inst.p, &inst.q}) {
    if (side != "both" && side != s->name()) continue;
    const auto& req = s == &inst.p ? inst.required_p : inst.required_q;
    EnumStats stats;
    const auto ts = enumerate_triangulations(*s, {cfg.budget_nodes, cfg.ignore_required ? std::vector<Edge>{} : req},
                                             &stats);
    std::cout << s->name() << ": " << ts.size() << " triangulations (" << stats.nodes << " nodes)\n";
    for (std::size_t i = 0; i < ts.size() && i < show; ++i) {
      std::string degs;
      for (int d : hull_degree_sequence(*s, ts[i])) degs += (degs.empty() ? "" : ",") + std::to_string(d);
      std::cout << "  #" << i + 1 << " hull degrees [" << degs << "] edges " << edge_list(ts[i].edges) << "\n";
    }
    if (ts.size() > show) std::cout << "  ... " << ts.size() - show << " more\n";
  }
  return kPositive;
}

int cmd_forced(const std::string& name) {
  const Instance inst = resolve(name);
  for (const PointSet* s : {&inst.p, &inst.q}) {
    const auto c1 = forced_edges_claim1(*s);
    const auto c2 = forced_edges_claim2(*s);
    std::cout << s->name() << " uncrossed candidates (" << c1.size() << "): " << edge_list(c1) << "\n";
    std::cout << s->name() << " hull-removal forced (" << c2.size() << "): " << edge_list(c2) << "\n";
  }
  return kPositive;
}

int cmd_construct(const std::string& name, const RunConfig& cfg) {
  const Instance inst = resolve(name);
  const std::size_t inner = interior_points(inst.p).size();
  const bool constructive = (inner == 1 || inner == 2) && inst.p.size() == inst.q.size() &&
                            convex_hull_boundary(inst.p).size() == convex_hull_boundary(inst.q).size();
  std::cout << "instance: " << name << "\nmethod: "
            << (constructive ? "construction (" + std::to_string(inner) + " interior)" : std::string("search"))
            << "\n";
  const auto r = construct_small(inst.p, inst.q, cfg.search());
  print_outcome(r);
  if (!cfg.svg.empty()) write_text_file(cfg.svg, certificate_svg(inst.p, inst.q, r, name));
  return verdict_exit(r.verdict);
}

int cmd_steiner(const std::string& name, int k, const RunConfig& cfg) {
  const Instance inst = resolve(name);
  if (!inst.mapping_is_full()) throw Error(ErrorCode::PreconditionViolated, "steiner needs a full mapping");
  SteinerOptions so;
  so.k = k;
  so.search = cfg.search();
  if (cfg.budget_secs <= 0) so.search.budget_secs = k == 1 ? 600 : 3600;
  so.allow_exterior = cfg.allow_exterior;
  const auto r = steiner_search(inst.p, inst.q, inst.correspondence(), so);
  std::cout << "instance: " << name << "\nk: " << k << "\nverdict: " << to_string(r.verdict) << "\n";
  std::cout << "cells: " << r.cells_p << " x " << r.cells_q << "\n";
  if (r.verdict == SteinerVerdict::Found) {
    for (const auto& [a, b] : r.placements)
      std::cout << "steiner " << a.id << ": (" << format_coord(a.x) << ", " << format_coord(a.y) << ") -> ("
                << format_coord(b.x) << ", " << format_coord(b.y) << ")\n";
    const auto aug = augment(inst.p, inst.q, inst.correspondence(), r.placements);
    const bool ok = verify_steiner_solution(inst.p, inst.q, inst.correspondence(), r.placements, r.certificate->tp,
                                            r.certificate->tq);
    std::cout << "T_P: " << edge_list(r.certificate->tp.edges) << "\n";
    std::cout << "T_Q: " << edge_list(r.certificate->tq.edges) << "\n";
    std::cout << "replay: " << (ok ? "ok" : "FAILED") << "\n";
    if (!cfg.svg.empty())
      write_text_file(cfg.svg, render_svg({{&aug.p, r.certificate->tp.edges, "P + Steiner"},
                                           {&aug.q, r.certificate->tq.edges, "Q + Steiner"}},
                                          name + ": k=" + std::to_string(k) + " Found"));
    if (!ok) throw Error(ErrorCode::InternalAssertionFailed, "Steiner certificate failed replay");
    return kPositive;
  }
  std::cout << "pairs examined: " << r.pairs_examined << "\n";
  if (k == 2) std::cout << "pairs pruned: " << r.pairs_pruned << "\n";
  if (!r.detail.empty()) std::cout << "detail: " << r.detail << "\n";
  return r.verdict == SteinerVerdict::Budget ? kBudget : kNegative;
}

int cmd_verify_paper(const std::string& report_path, bool sweep, const RunConfig& cfg) {
  VerifyOptions vo;
  vo.validate.search = cfg.search();
  vo.sweep.search = cfg.search();
  vo.run_sweep = sweep;
  if (cfg.budget_secs > 0) vo.validate.steiner_k1_secs = vo.validate.steiner_k2_secs = cfg.budget_secs;
  const auto report = verify_paper(vo);
  std::cout << report.table();
  if (!report_path.empty()) write_text_file(report_path, report.deterministic_text());
  return report.passed() ? kPositive : kNegative;
}

int cmd_render(const std::string& name, bool certificate, const RunConfig& cfg) {
  if (cfg.svg.empty()) throw Error(ErrorCode::PreconditionViolated, "render needs --svg <path>");
  const Instance inst = resolve(name);
  if (certificate) {
    std::string mode;
    const auto r = solve(inst, cfg, &mode);
    write_text_file(cfg.svg, certificate_svg(inst.p, inst.q, r, name));
    return verdict_exit(r.verdict);
  }
  write_text_file(cfg.svg, render_svg({{&inst.p, {}, "P"}, {&inst.q, {}, "Q"}}, name));
  return kPositive;
}

int cmd_gen(int n, int grid, const std::string& pairs, std::optional<int> interior, const std::string& out,
            const RunConfig& cfg) {
  if (pairs != "any" && pairs != "equal-hull")
    throw Error(ErrorCode::PreconditionViolated, "--pairs must be 'any' or 'equal-hull'");
  GenOptions go;
  go.n = n;
  go.grid = grid;
  go.equal_hull = pairs == "equal-hull";
  go.interior = interior;
  std::mt19937_64 rng(cfg.seed);
  auto [p, q] = generate_pair(rng, go);
  Instance inst;
  inst.p = std::move(p);
  inst.q = std::move(q);
  const std::string text = format_instance(inst);
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
  return kPositive;
}

int cmd_validate(const std::string& name, const RunConfig& cfg) {
  const Instance inst = resolve(name);
  ValidateOptions vo;
  vo.search = cfg.search();
  if (cfg.budget_secs > 0) vo.steiner_k1_secs = vo.steiner_k2_secs = cfg.budget_secs;
  const auto report = validate(inst, vo);
  for (const auto& c : report.checks) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", c.seconds);
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.predicate << " expected=" << c.expected
              << " actual=" << c.actual << " (" << secs << " s)\n";
  }
  std::cout << report.checks.size() << " checks, " << (report.passed() ? "all pass" : "FAILURES") << "\n";
  return report.passed() ? kPositive : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compatible triangulations of planar point sets"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--budget-nodes", cfg.budget_nodes, "DFS node limit per search")->check(CLI::PositiveNumber);
  app.add_option("--budget-secs", cfg.budget_secs, "wall-clock limit in seconds (0: command default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "generator seed");
  app.add_option("--svg", cfg.svg, "write an SVG rendering here");
  app.add_flag("--use-pins", cfg.use_pins, "apply the instance's mapping");
  app.add_flag("--ignore-required", cfg.ignore_required, "drop the instance's required edges");
  app.add_flag("--allow-exterior-steiner", cfg.allow_exterior, "let Steiner points leave the hull");

  std::string instance;
  std::function<int()> run;

  auto* solve_cmd = app.add_subcommand("solve", "decide whether compatible triangulations exist");
  solve_cmd->add_option("instance", instance, "builtin name or instance file")->required();
  solve_cmd->callback([&] { run = [&] { return cmd_solve(instance, cfg); }; });

  std::string side = "both";
  std::size_t show = 20;
  auto* enum_cmd = app.add_subcommand("enumerate", "list all triangulations");
  enum_cmd->add_option("instance", instance)->required();
  enum_cmd->add_option("--side", side)->check(CLI::IsMember({"P", "Q", "both"}));
  enum_cmd->add_option("--show", show, "print at most this many per side");
  enum_cmd->callback([&] { run = [&] { return cmd_enumerate(instance, side, show, cfg); }; });

  auto* forced_cmd = app.add_subcommand("forced", "edges present in every triangulation");
  forced_cmd->add_option("instance", instance)->required();
  forced_cmd->callback([&] { run = [&] { return cmd_forced(instance); }; });

  auto* construct_cmd = app.add_subcommand("construct", "explicit construction for one or two interior points");
  construct_cmd->add_option("instance", instance)->required();
  construct_cmd->callback([&] { run = [&] { return cmd_construct(instance, cfg); }; });

  int k = 1;
  auto* steiner_cmd = app.add_subcommand("steiner", "search for k Steiner points under the full mapping");
  steiner_cmd->add_option("instance", instance)->required();
  steiner_cmd->add_option("--k", k)->check(CLI::IsMember({1, 2}));
  steiner_cmd->callback([&] { run = [&] { return cmd_steiner(instance, k, cfg); }; });

  std::string report;
  bool no_sweep = false;
  auto* verify_cmd = app.add_subcommand("verify-paper", "re-check every builtin and the small-n sweep");
  verify_cmd->add_option("--report", report, "write a timing-free report here");
  verify_cmd->add_flag("--no-sweep", no_sweep, "skip the small-n sweep");
  verify_cmd->callback([&] { run = [&] { return cmd_verify_paper(report, !no_sweep, cfg); }; });

  bool certificate = false;
  auto* render_cmd = app.add_subcommand("render", "draw an instance as SVG");
  render_cmd->add_option("instance", instance)->required();
  render_cmd->add_flag("--certificate", certificate, "solve first and draw the triangulations");
  render_cmd->callback([&] { run = [&] { return cmd_render(instance, certificate, cfg); }; });

  int n = 5, grid = 5;
  std::string pairs = "any", out;
  std::optional<int> interior;
  auto* gen_cmd = app.add_subcommand("gen", "random grid instance");
  gen_cmd->add_option("--n", n);
  gen_cmd->add_option("--grid", grid);
  gen_cmd->add_option("--pairs", pairs, "any | equal-hull");
  gen_cmd->add_option("--interior", interior, "exact interior point count per set");
  gen_cmd->add_option("--out", out, "output path (default stdout)");
  gen_cmd->callback([&] { run = [&] { return cmd_gen(n, grid, pairs, interior, out, cfg); }; });

  auto* validate_cmd = app.add_subcommand("validate", "check an instance's expectations");
  validate_cmd->add_option("instance", instance)->required();
  validate_cmd->callback([&] { run = [&] { return cmd_validate(instance, cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    return run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BudgetExceeded ? kBudget : kInputError;
  }
}
