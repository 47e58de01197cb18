// Command-line front end. Exit codes: 0 success, 1 invariant violation,
// 2 usage, input or I/O error.

#include "sidnc/analytics.hpp"
#include "sidnc/coding.hpp"
#include "sidnc/errors.hpp"
#include "sidnc/experiment.hpp"
#include "sidnc/schemes.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace sidnc;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct SimulateOptions {
  std::size_t packets = 15;
  std::size_t receivers = 10;
  double erasure = 0.2;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> schemes{"fully-online"};
  std::vector<std::string> algorithms{"optimal"};
  std::string sweep;
  std::string out;
  std::string sfm_file;
  std::string config;
  std::size_t threads = 0;
  std::optional<double> coded_erasure;
  bool validate = false;
  bool confidence = false;
  bool trace = false;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T x{};
  if (!(in >> x) || !(in >> std::ws).eof()) throw ParseError("config key '" + key + "': bad value '" + value + "'");
  return x;
}

// Fills every option the command line left unset from the config file.
void apply_config(SimulateOptions& o, const CLI::App& app) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw ParseError("cannot open config file " + o.config);
  const auto kv = parse_key_values(in);
  auto unset = [&](const char* flag) { return app.count(flag) == 0; };
  for (const auto& [key, value] : kv) {
    if (key == "packets") {
      if (unset("--packets")) o.packets = parse_number<std::size_t>(key, value);
    } else if (key == "receivers") {
      if (unset("--receivers")) o.receivers = parse_number<std::size_t>(key, value);
    } else if (key == "erasure") {
      if (unset("--erasure")) o.erasure = parse_number<double>(key, value);
    } else if (key == "trials") {
      if (unset("--trials")) o.trials = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
      if (unset("--seed")) o.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "scheme") {
      if (unset("--scheme")) o.schemes = split_list(value);
    } else if (key == "algorithm") {
      if (unset("--algorithm")) o.algorithms = split_list(value);
    } else if (key == "sweep") {
      if (unset("--sweep")) o.sweep = value;
    } else if (key == "threads") {
      if (unset("--threads")) o.threads = parse_number<std::size_t>(key, value);
    } else if (key == "coded-erasure") {
      if (unset("--coded-erasure")) o.coded_erasure = parse_number<double>(key, value);
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
}

std::vector<SchemeSpec> scheme_specs(const SimulateOptions& o) {
  std::vector<SchemeSpec> out;
  for (const auto& name : o.schemes) {
    const SchemeKind kind = parse_scheme(name);
    const bool s_idnc = kind == SchemeKind::FullyOnlineS || kind == SchemeKind::SemiOnlineS;
    if (!s_idnc) {
      SchemeSpec spec;
      spec.scheme = kind;
      spec.validate = o.validate;
      out.push_back(spec);
      continue;
    }
    for (const auto& alg : o.algorithms) {
      SchemeSpec spec;
      spec.scheme = kind;
      spec.algorithm = parse_algorithm(alg);
      spec.validate = o.validate;
      out.push_back(spec);
    }
  }
  return out;
}

int run_simulate(SimulateOptions o, const CLI::App& app) {
  apply_config(o, app);
  ExperimentSpec spec;
  spec.config = {o.packets, o.receivers, o.erasure, o.seed, o.trials};
  spec.sweep = o.sweep.empty() ? std::vector<std::size_t>{o.receivers} : parse_sweep(o.sweep);
  spec.schemes = scheme_specs(o);
  spec.coded_erasure = o.coded_erasure;
  spec.confidence = o.confidence;
  spec.threads = o.threads;
  if (!o.sfm_file.empty()) spec.initial_sfm = load_sfm(o.sfm_file);
  spec.validate();

  if (o.trace) {
    // Trace of trial 0 for each scheme, first sweep value.
    BroadcastConfig cfg = spec.config;
    cfg.receivers = spec.initial_sfm ? spec.initial_sfm->receivers() : spec.sweep.front();
    if (spec.initial_sfm) cfg.packets = spec.initial_sfm->packets();
    ErasureChannel sys(cfg.erasure, cfg.seed, 0, 0);
    const auto sfm = spec.initial_sfm ? *spec.initial_sfm : systematic_phase(cfg, sys);
    int code = kOk;
    for (const auto& s : spec.schemes) {
      ErasureChannel coded(spec.coded_erasure.value_or(cfg.erasure), cfg.seed, 0, 1);
      const auto log = run_scheme(sfm, s, coded);
      std::cout << "# " << s.label() << '\n' << log.trace();
      if (!log.violations.empty()) code = kViolation;
    }
    return code;
  }

  const auto progress = [&](const ResultRow& r, double seconds) {
    std::cerr << fmt::format("{}/{} N={}: mean U_T {:.4f}, mean D_T {:.4f}, incomplete {} ({:.2f} s)\n", r.scheme,
                             r.algorithm, r.receivers, r.mean_completion, r.mean_delay, r.incomplete, seconds);
    if (o.confidence)
      std::cerr << fmt::format("  95% CI U_T [{:.4f}, {:.4f}], D_T [{:.4f}, {:.4f}]\n",
                               r.mean_completion - 1.96 * r.stderr_completion,
                               r.mean_completion + 1.96 * r.stderr_completion, r.mean_delay - 1.96 * r.stderr_delay,
                               r.mean_delay + 1.96 * r.stderr_delay);
  };
  const auto result = run_experiment(spec, progress);
  if (o.out.empty())
    std::cout << format_csv(result.rows);
  else
    emit_csv(result.rows, o.out);

  std::size_t violations = 0;
  for (const auto& r : result.rows) violations += r.violations;
  if (violations) std::cerr << violations << " invariant violation(s)\n";
  return violations ? kViolation : kOk;
}

StateFeedbackMatrix input_sfm(const std::string& path) { return path.empty() ? fig1_sfm() : load_sfm(path); }

int run_bounds(const std::string& path) {
  const auto sfm = input_sfm(path);
  const auto g = build_sidnc_graph(sfm);
  const auto gbar = complement(g);
  const auto k = g.vertex_count();
  const auto m0 = g.edge_count();
  std::cout << fmt::format("{:<12}{}\n", "M0", m0);
  std::cout << fmt::format("{:<12}{}\n", "geller", geller_lower_bound(k, m0));
  std::cout << fmt::format("{:<12}{}\n", "staircase", staircase_upper_bound(k, m0));
  std::cout << fmt::format("{:<12}{}\n", "degree+1", degree_upper_bound(gbar));
  std::cout << fmt::format("{:<12}{}\n", "clique", clique_lower_bound(gbar));
  try {
    const auto chi = exact_chromatic_number(gbar);
    std::cout << fmt::format("{:<12}{}\n", "chromatic", chi);
    std::cout << fmt::format("{:<12}{}\n", "apdd-bound", apdd_upper_bound(chi));
  } catch (const SizeLimitExceeded&) {
    std::cout << fmt::format("{:<12}{}\n", "chromatic", "over cap");
    std::cout << fmt::format("{:<12}{}\n", "apdd-bound", "over cap");
  }
  return kOk;
}

int run_oracle(const std::string& which, const std::string& path) {
  const auto sfm = input_sfm(path);
  if (which == "chromatic") {
    std::cout << exact_chromatic_number(complement(build_sidnc_graph(sfm))) << '\n';
    return kOk;
  }
  const auto opt = brute_force_min_apdd(sfm);
  std::cout << fmt::format("{}\t{}\n", opt.value, opt.solution.label());
  return kOk;
}

int run_export(const std::string& kind, const std::string& path, const std::string& out) {
  const auto sfm = input_sfm(path);
  const std::string dot = kind == "s" ? to_dot(build_sidnc_graph(sfm)) : to_dot(build_gidnc_graph(sfm));
  if (out.empty())
    std::cout << dot;
  else
    write_text_file(out, dot);
  return kOk;
}

Graph example4_graph() { return Graph::from_edges(6, {{0, 2}, {1, 2}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}}); }

int run_fixture(const std::string& name) {
  if (name == "fig1") {
    std::cout << format_sfm(fig1_sfm());
  } else if (name == "example4") {
    const auto g = example4_graph();
    std::cout << to_dot(g, "example4");
    const auto fam = bron_kerbosch(g);
    for (const auto& c : fam.cliques) std::cout << "# clique " << c.label() << '\n';
    for (const auto& s : optimal_solution_search(fam, g.all_vertices()).solutions)
      std::cout << "# minimum " << s.label() << '\n';
  } else {
    std::cout << format_sfm(fig1_sfm());
    std::cout << "# heuristic " << heuristic_solution_search(build_sidnc_graph(fig1_sfm())).label() << '\n';
  }
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strict instantly decodable network coding simulator"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo sweep over receiver counts, CSV out");
  simulate->add_option("-K,--packets", sim.packets, "Packets per block")->check(CLI::PositiveNumber);
  simulate->add_option("-N,--receivers", sim.receivers, "Receivers (used when no sweep is given)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("-p,--erasure", sim.erasure, "Erasure probability")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--trials", sim.trials, "Trials per row")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--scheme", sim.schemes, "fully-online, semi-online, rlnc, gidnc-fully-online, gidnc-semi-online")
      ->delimiter(',');
  simulate->add_option("--algorithm", sim.algorithms, "optimal, hybrid, heuristic")->delimiter(',');
  simulate->add_option("--sweep", sim.sweep, "Receiver counts, e.g. 5:40:5 or 5,10,20");
  simulate->add_option("--out", sim.out, "CSV path (default stdout)");
  simulate->add_option("--sfm-file", sim.sfm_file, "Start every trial from this matrix");
  simulate->add_option("--config", sim.config, "key=value file; command-line flags win");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--coded-erasure", sim.coded_erasure, "Erasure probability of the coded phase only");
  simulate->add_flag("--validate", sim.validate, "Validate every computed solution");
  simulate->add_flag("--confidence", sim.confidence, "Report 95% intervals on stderr");
  simulate->add_flag("--trace", sim.trace, "Print the slot trace of trial 0 instead of CSV");

  std::string bounds_file;
  auto* bounds = app.add_subcommand("bounds", "Throughput bounds of one matrix (default: the fig1 fixture)");
  bounds->add_option("--sfm-file", bounds_file, "Matrix file");

  std::string oracle_kind;
  std::string oracle_file;
  CLI::App* oracle = nullptr;
#ifdef SIDNC_CLI_ORACLES
  oracle = app.add_subcommand("oracle", "Exact test oracles");
  oracle->add_option("kind", oracle_kind, "chromatic or min-apdd")
      ->required()
      ->check(CLI::IsMember({"chromatic", "min-apdd"}));
  oracle->add_option("--sfm-file", oracle_file, "Matrix file");
#endif

  std::string graph_kind = "s";
  std::string graph_file;
  std::string graph_out;
  auto* graph = app.add_subcommand("graph", "Graph utilities");
  graph->require_subcommand(1);
  auto* exporter = graph->add_subcommand("export", "DOT export");
  exporter->add_option("--kind", graph_kind, "s (S-IDNC) or g (G-IDNC)")->check(CLI::IsMember({"s", "g"}));
  exporter->add_option("--sfm-file", graph_file, "Matrix file");
  exporter->add_option("--out", graph_out, "DOT path (default stdout)");

  std::string fixture_name;
  auto* fixture = app.add_subcommand("fixture", "Print a built-in fixture");
  fixture->add_option("name", fixture_name, "fig1, example4 or example5")
      ->required()
      ->check(CLI::IsMember({"fig1", "example4", "example5"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return run_simulate(sim, *simulate);
    if (*bounds) return run_bounds(bounds_file);
    if (oracle && *oracle) return run_oracle(oracle_kind, oracle_file);
    if (*exporter) return run_export(graph_kind, graph_file, graph_out);
    if (*fixture) return run_fixture(fixture_name);
  } catch (const ConflictingCodingSet& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kViolation;
  } catch (const InvalidSolution& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
