#pragma once

// The three CLI commands, kept free of argument parsing so tests can call
// them directly. Exit codes: 0 yes/true, 1 no/false, 2 error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mesp/mesp.hpp"

namespace mesp::cli {

using nlohmann::json;

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;

struct SolveFlags {
  SolverKind solver = SolverKind::kAuto;
  std::optional<Hop> k;
  bool minimize = false;
  std::uint64_t seed = 1;
  AutoOptions options;
};

struct RunReport {
  std::string input_digest;
  std::string solver;
  json parameters = json::object();
  std::optional<Hop> k;
  std::optional<Hop> k_star;
  bool decision = false;
  std::optional<Path> witness;
  std::map<std::string, double> timings_ms;
  SolveStats counters;
  std::uint64_t seed = 0;

  int exit_code() const { return decision ? kExitYes : kExitNo; }

  json to_json() const {
    json out;
    out["input_digest"] = input_digest;
    out["solver"] = solver;
    out["parameters"] = parameters;
    out["k"] = k ? json(*k) : json(nullptr);
    out["k_star"] = k_star ? json(*k_star) : json(nullptr);
    out["decision"] = decision ? "yes" : "no";
    out["witness"] = witness ? json(*witness) : json(nullptr);
    out["timings_ms"] = timings_ms;
    out["counters"] = {{"guesses", counters.guesses},
                       {"csc_calls", counters.csc_calls},
                       {"paths_examined", counters.paths_examined}};
    out["rng"] = {{"engine", std::string(kRngVersion)}, {"seed", seed}};
    return out;
  }
};

// FNV-1a 64 over the file bytes, as 16 hex digits.
inline std::string digest_of(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct LoadedGraph {
  Graph graph;
  std::string digest;
};

inline LoadedGraph load_graph(const std::string& path) {
  const std::string bytes = slurp(path);
  std::istringstream in(bytes);
  return {read_graph(in), digest_of(bytes)};
}

inline double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

inline json describe(const GraphParameters& p, const AutoOptions& o) {
  json out;
  out["modular_width"] = p.modular_width ? json(*p.modular_width) : json(nullptr);
  out["cluster_distance"] = p.cluster ? json(p.cluster->size()) : json(nullptr);
  out["paths_distance"] = p.paths ? json(p.paths->size()) : json(nullptr);
  out["cluster_modulator"] = p.cluster ? json(p.cluster->vertices) : json(nullptr);
  out["paths_modulator"] = p.paths ? json(p.paths->vertices) : json(nullptr);
  out["leaf_lower_bound"] = p.leaf_lower_bound;
  out["shortest_paths_log2"] = p.shortest_paths_log2;
  out["caps"] = {{"p", o.cap_p}, {"c", o.cap_c}, {"mw", o.cap_mw}};
  return out;
}

// Resolves `auto` to a concrete solver once, so every k of a minimisation
// uses the same one.
inline SolverKind resolve_solver(const Graph& g, const DistanceMatrix& d, const SolveFlags& flags, RunReport& report,
                                 std::optional<SolverPlan>& plan) {
  if (flags.solver != SolverKind::kAuto) return flags.solver;
  const auto t = Clock::now();
  plan = plan_solver(g, d, flags.k.value_or(1), flags.options);
  report.timings_ms["parameters"] = ms_since(t);
  report.parameters = describe(plan->parameters, flags.options);
  json costs = json::object();
  for (const auto& e : plan->estimates) {
    costs[std::string(to_string(e.kind))] = e.applicable ? json(e.log2_cost) : json(nullptr);
  }
  report.parameters["log2_costs"] = costs;
  return plan->kind;
}

inline RunReport cmd_solve(const std::string& path, const SolveFlags& flags) {
  if (flags.minimize == flags.k.has_value()) throw std::invalid_argument("give exactly one of --k and --minimize");
  auto t = Clock::now();
  const auto loaded = load_graph(path);
  RunReport report;
  report.input_digest = loaded.digest;
  report.seed = flags.seed;
  report.timings_ms["parse"] = ms_since(t);
  t = Clock::now();
  const DistanceMatrix d(loaded.graph);
  report.timings_ms["distances"] = ms_since(t);

  std::optional<SolverPlan> plan;
  const SolverKind kind = resolve_solver(loaded.graph, d, flags, report, plan);
  report.solver = std::string(to_string(kind));

  t = Clock::now();
  SolverFn solver;
  if (plan) {
    auto shared = std::make_shared<SolverPlan>(std::move(*plan));
    solver = [shared, options = flags.options](const MespQuery& q) { return run_plan(q, *shared, options); };
  } else {
    solver = make_solver(kind, loaded.graph, flags.options);
    report.timings_ms["parameters"] = ms_since(t);
  }

  t = Clock::now();
  if (flags.minimize) {
    const auto result = minimize_k(loaded.graph, d, solver);
    report.k_star = result.k_star;
    report.decision = true;
    report.witness = result.witness;
    report.counters = result.stats;
  } else {
    const auto answer = solver(MespQuery{loaded.graph, d, *flags.k});
    report.k = flags.k;
    report.decision = answer.decision;
    report.witness = answer.witness;
    report.counters = answer.stats;
  }
  report.timings_ms["solve"] = ms_since(t);
  return report;
}

inline void print_human(std::ostream& out, const RunReport& r) {
  out << "solver: " << r.solver << "\n";
  if (r.k_star) out << "k*: " << *r.k_star << "\n";
  if (r.k) out << "k: " << *r.k << "\n";
  out << "decision: " << (r.decision ? "yes" : "no") << "\n";
  if (r.witness) {
    out << "witness:";
    for (Vertex v : *r.witness) out << ' ' << v;
    out << "\n";
  }
}

// True iff the vertex list is a shortest path with eccentricity <= k.
inline bool cmd_verify(const std::string& path, const std::vector<long long>& witness, Hop k) {
  if (k < 0) throw DomainError("k must be non-negative");
  const auto loaded = load_graph(path);
  const auto n = static_cast<long long>(loaded.graph.vertex_count());
  if (witness.empty()) throw FormatError("witness is empty");
  Path p;
  for (long long v : witness) {
    if (v < 0 || v >= n) throw FormatError("witness vertex " + std::to_string(v) + " out of range");
    p.push_back(static_cast<Vertex>(v));
  }
  const DistanceMatrix d(loaded.graph);
  return is_mesp_witness(loaded.graph, d, p, k);
}

// Parses "0,1,2" or "0 1 2".
inline std::vector<long long> parse_vertex_list(const std::string& text) {
  std::vector<long long> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw FormatError("bad vertex '" + token + "' in witness");
    }
    if (used != token.size()) throw FormatError("bad vertex '" + token + "' in witness");
    out.push_back(v);
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (out.empty()) throw FormatError("witness is empty");
  return out;
}

// ---------------------------------------------------------------- bench

struct BenchConfig {
  std::string family = "random";
  std::vector<std::size_t> sizes;  // vertex counts; empty = one instance at family defaults
  std::uint64_t seed = 1;
  std::size_t p = 2;            // cluster-plus-p modulator size
  std::size_t core_n = 6;       // subdivided-core core size
  std::size_t factor = 10;      // subdivided-core subdivision factor
  std::size_t max_module = 3;   // substitution module size cap
  double budget_ms = 10000;     // brute-force deadline
  unsigned threads = 1;
};

struct BenchRow {
  std::string family;
  std::size_t n = 0;
  std::string parameter;        // e.g. "p=2"
  Hop k = 0;
  std::string solver;
  std::string decision;         // yes / no / timeout
  double ms = 0;
  std::optional<bool> agrees;   // vs brute force, when it finished
  json extra = json::object();
};

namespace detail {

inline std::string run_timed(const std::function<MespAnswer()>& fn, double& ms) {
  const auto t = Clock::now();
  try {
    const auto a = fn();
    ms = ms_since(t);
    return a.decision ? "yes" : "no";
  } catch (const Timeout&) {
    ms = ms_since(t);
    return "timeout";
  }
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return build_graph(n, e);
}

}  // namespace detail

// For each size: build an instance with a known parameter witness, find k*
// with the structural solver, then compare it against brute force at k*-1
// and k*.
inline std::vector<BenchRow> cmd_bench(const BenchConfig& cfg) {
  std::vector<BenchRow> rows;
  Rng rng(cfg.seed);
  SolverOptions base;
  base.threads = cfg.threads;
  std::vector<std::size_t> sizes = cfg.sizes;
  if (sizes.empty()) sizes.push_back(0);
  for (std::size_t n : sizes) {
    std::optional<Graph> graph;
    std::string parameter;
    SolverFn structural;
    std::string structural_name;
    json extra = json::object();
    if (cfg.family == "cluster-plus-p") {
      if (cfg.p == 0) throw std::invalid_argument("cluster-plus-p needs p >= 1");
      if (n == 0) n = 40;
      if (n <= cfg.p) throw std::invalid_argument("size must exceed p");
      std::vector<std::size_t> cliques;
      std::size_t left = n - cfg.p;
      while (left > 0) {
        const std::size_t s = std::min<std::size_t>(left, std::uniform_int_distribution<std::size_t>(1, 8)(rng));
        cliques.push_back(s);
        left -= s;
      }
      auto made = cluster_plus_p(cliques, cfg.p, 0.1, rng);
      graph = made.graph;
      parameter = "p=" + std::to_string(made.modulator.size());
      structural_name = "cluster";
      structural = [m = made.modulator, base](const MespQuery& q) { return solve_distance_to_cluster(q, m, base); };
    } else if (cfg.family == "subdivided-core") {
      auto core = random_connected_graph(cfg.core_n, 0.5, rng);
      // With a size given, pick the factor that lands closest to it.
      std::size_t factor = std::max<std::size_t>(cfg.factor, 1);
      if (n > cfg.core_n) factor = std::max<std::size_t>(1, (n - cfg.core_n + core.edge_count() / 2) / core.edge_count() + 1);
      auto made = subdivided_core(core, factor);
      graph = made.graph;
      parameter = "leaf_bound=" + std::to_string(made.leaf_bound);
      structural_name = "brute";
      structural = [base](const MespQuery& q) { return solve_bruteforce(q, base); };
      const DistanceMatrix d(*graph);
      const double count = static_cast<double>(count_shortest_paths(*graph, d));
      const double nn = static_cast<double>(graph->vertex_count());
      extra["shortest_paths"] = count;
      extra["log2_bound"] = 4.0 * static_cast<double>(made.leaf_bound) + 2 * std::log2(nn);
      extra["within_bound"] = std::log2(count) <= 4.0 * static_cast<double>(made.leaf_bound) + 2 * std::log2(nn);
    } else if (cfg.family == "substitution") {
      const Graph pattern = detail::cycle_graph(5);
      std::vector<std::size_t> sizes(5);
      for (auto& s : sizes) s = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(cfg.max_module, 1))(rng);
      if (n >= 5) {
        // Spread n vertices over the modules instead.
        sizes.assign(5, n / 5);
        for (std::size_t i = 0; i < n % 5; ++i) ++sizes[i];
      }
      auto made = substitution(pattern, sizes, 0.5, rng);
      graph = made.graph;
      auto tree = std::make_shared<MDTree>(modular_decomposition(*graph));
      parameter = "mw=" + std::to_string(modular_width(*tree));
      structural_name = "mw";
      structural = [tree, base](const MespQuery& q) { return solve_modular_width(q, *tree, base); };
    } else if (cfg.family == "random") {
      if (n == 0) n = 20;
      graph = random_connected_graph(n, 4.0 / static_cast<double>(std::max<std::size_t>(n, 4)), rng);
      structural_name = "auto";
      parameter = "-";
      AutoOptions o;
      o.solver = base;
      structural = [o](const MespQuery& q) { return solve_auto(q, o); };
    } else {
      throw std::invalid_argument("unknown bench family '" + cfg.family + "'");
    }

    const Graph& g = *graph;
    const DistanceMatrix d(g);
    const auto minimized = minimize_k(g, d, structural);
    std::vector<Hop> ks;
    if (minimized.k_star > 0) ks.push_back(minimized.k_star - 1);
    ks.push_back(minimized.k_star);
    for (Hop k : ks) {
      const MespQuery q{g, d, k};
      BenchRow row{cfg.family, g.vertex_count(), parameter, k, structural_name, "", 0, std::nullopt, extra};
      row.decision = detail::run_timed([&] { return structural(q); }, row.ms);
      BenchRow oracle{cfg.family, g.vertex_count(), parameter, k, "brute", "", 0, std::nullopt, extra};
      SolverOptions timed = base;
      timed.deadline = Clock::now() + std::chrono::microseconds(static_cast<long long>(cfg.budget_ms * 1000));
      oracle.decision = detail::run_timed([&] { return solve_bruteforce(q, timed); }, oracle.ms);
      if (oracle.decision != "timeout") row.agrees = oracle.decision == row.decision;
      rows.push_back(row);
      rows.push_back(oracle);
    }
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "family,n,parameter,k,solver,decision,ms,agrees\n";
  for (const auto& r : rows) {
    out << r.family << ',' << r.n << ',' << r.parameter << ',' << r.k << ',' << r.solver << ',' << r.decision << ','
        << std::fixed << std::setprecision(3) << r.ms << ',' << (r.agrees ? (*r.agrees ? "yes" : "no") : "-")
        << "\n";
  }
}

inline json bench_json(const std::vector<BenchRow>& rows, std::uint64_t seed) {
  json out = json::array();
  for (const auto& r : rows) {
    json row = {{"family", r.family}, {"n", r.n}, {"parameter", r.parameter}, {"k", r.k},
                {"solver", r.solver}, {"decision", r.decision}, {"ms", r.ms}};
    row["agrees"] = r.agrees ? json(*r.agrees) : json(nullptr);
    if (!r.extra.empty()) row["extra"] = r.extra;
    out.push_back(row);
  }
  return {{"rng", {{"engine", std::string(kRngVersion)}, {"seed", seed}}}, {"rows", out}};
}

// All rows that ran against a finished oracle agreed.
inline bool bench_all_agree(const std::vector<BenchRow>& rows) {
  for (const auto& r : rows) {
    if (r.agrees && !*r.agrees) return false;
    if (r.extra.contains("within_bound") && !r.extra["within_bound"].get<bool>()) return false;
  }
  return true;
}

}  // namespace mesp::cli
