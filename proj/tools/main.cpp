#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace mesp;
using namespace mesp::cli;

int main(int argc, char** argv) {
  CLI::App app{"Minimum eccentricity shortest path solver"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "decide ecc <= k, or find the smallest k");
  std::string solve_path;
  std::string solver_name = "auto";
  Hop k = 0;
  bool json_out = false;
  SolveFlags flags;
  solve->add_option("graph", solve_path, "edge-list or DIMACS file")->required();
  solve->add_option("--solver", solver_name, "auto, brute, mw, cluster or paths")
      ->check(CLI::IsMember({"auto", "brute", "mw", "cluster", "paths"}));
  auto* k_opt = solve->add_option("--k", k, "desired eccentricity")->check(CLI::NonNegativeNumber);
  auto* min_opt = solve->add_flag("--minimize", flags.minimize, "report the smallest feasible k");
  k_opt->excludes(min_opt);
  solve->add_flag("--json", json_out, "print the run report as JSON");
  solve->add_option("--seed", flags.seed, "recorded in the report");
  solve->add_option("--cap-p", flags.options.cap_p, "largest cluster modulator to search for");
  solve->add_option("--cap-c", flags.options.cap_c, "largest disjoint-paths modulator to search for");
  solve->add_option("--cap-mw", flags.options.cap_mw, "largest prime root accepted by the mw solver");
  solve->add_option("--threads", flags.options.solver.threads, "worker threads")->check(CLI::Range(1u, 256u));

  // verify
  auto* verify = app.add_subcommand("verify", "check a witness path");
  std::string verify_path;
  std::string witness_text;
  Hop verify_k = 0;
  verify->add_option("graph", verify_path, "edge-list or DIMACS file")->required();
  verify->add_option("--witness", witness_text, "vertex list, e.g. 0,1,2,3")->required();
  verify->add_option("--k", verify_k, "desired eccentricity")->required()->check(CLI::NonNegativeNumber);
  verify->add_flag("--json", json_out, "print the result as JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "generated instances vs brute force");
  BenchConfig cfg;
  std::string format = "csv";
  bench->add_option("--family", cfg.family, "cluster-plus-p, subdivided-core, substitution or random")
      ->check(CLI::IsMember({"cluster-plus-p", "subdivided-core", "substitution", "random"}));
  bench->add_option("--sizes", cfg.sizes, "vertex counts")->delimiter(',');
  bench->add_option("--seed", cfg.seed);
  bench->add_option("--p", cfg.p, "cluster modulator size");
  bench->add_option("--core-n", cfg.core_n, "core vertices (subdivided-core)");
  bench->add_option("--factor", cfg.factor, "subdivision factor (subdivided-core)");
  bench->add_option("--max-module", cfg.max_module, "module size cap (substitution)");
  bench->add_option("--budget-ms", cfg.budget_ms, "brute-force deadline");
  bench->add_option("--threads", cfg.threads)->check(CLI::Range(1u, 256u));
  bench->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) {
      if (!*k_opt && !flags.minimize) throw std::invalid_argument("give --k or --minimize");
      flags.solver = parse_solver_kind(solver_name);
      if (*k_opt) flags.k = k;
      const auto report = cmd_solve(solve_path, flags);
      if (json_out) {
        std::cout << report.to_json().dump(2) << "\n";
      } else {
        print_human(std::cout, report);
      }
      return report.exit_code();
    }
    if (*verify) {
      const bool ok = cmd_verify(verify_path, parse_vertex_list(witness_text), verify_k);
      if (json_out) {
        std::cout << json{{"valid", ok}}.dump() << "\n";
      } else {
        std::cout << (ok ? "true" : "false") << "\n";
      }
      return ok ? kExitYes : kExitNo;
    }
    if (*bench) {
      const auto rows = cmd_bench(cfg);
      if (format == "json") {
        std::cout << bench_json(rows, cfg.seed).dump(2) << "\n";
      } else {
        write_bench_csv(std::cout, rows);
      }
      return bench_all_agree(rows) ? kExitYes : kExitNo;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
