#pragma once

// Command-line harness. run() is the whole program minus process plumbing so
// the test suites can drive it in-process.
//
// Exit status: 0 success, 1 verification failure, 2 usage or input errors.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cbmm/cbmm.hpp"

namespace cbmm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path);
  return in;
}

inline TripartiteGraph load_graph(const std::string& path, bool general) {
  std::ifstream in = open_in(path);
  try {
    return general ? read_general_graph(in) : read_graph(in);
  } catch (const parse_error& e) {
    throw usage_error(path + ": " + e.what());
  }
}

inline BitMatrix load_matrix(const std::string& path) {
  std::ifstream in = open_in(path);
  try {
    return read_matrix(in);
  } catch (const parse_error& e) {
    throw usage_error(path + ": " + e.what());
  }
}

inline void print_verdict(std::ostream& out, const Verdict& v) {
  if (v.found()) {
    out << "TRIANGLE " << v.witness->a << ' ' << v.witness->b << ' ' << v.witness->c << '\n';
  } else {
    out << "TRIANGLE-FREE\n";
  }
}

struct DetectOptions {
  std::string algo = "recursive";
  std::size_t delta = 2;
  std::optional<std::size_t> small_threshold;
};

inline Verdict run_detector(const TripartiteGraph& g, const DetectOptions& opt, RunStats& stats) {
  if (opt.algo == "recursive") {
    DetectorConfig cfg;
    cfg.delta = opt.delta;
    cfg.small_threshold = opt.small_threshold;
    return detect(g, cfg, stats);
  }
  if (opt.algo == "sparse") {
    SparseParams p;
    p.delta = std::max<std::size_t>(1, opt.delta);
    const SubInstance view(g);
    if (auto v = check_degree_condition(view, p.delta)) {
      throw usage_error("sparse: vertex a" + std::to_string(*v) + " violates the degree bound for delta " +
                        std::to_string(p.delta) + "; try --delta 1");
    }
    return sparse_detect(view, p, stats);
  }
  if (opt.algo == "framework") {
    const HighDegreeFinder finder(opt.delta);
    const FrameworkConfig cfg = FrameworkConfig::for_high_degree(opt.delta);
    return detect_with_finder(g, finder, cfg, stats);
  }
  if (opt.algo == "bmm") return triangle_via_bmm(g);
  if (opt.algo == "brute") return brute_triangle(g);
  throw usage_error("unknown detection algorithm " + opt.algo);
}

inline BitMatrix run_multiplier(const BitMatrix& a, const BitMatrix& b, const std::string& algo,
                                std::optional<std::size_t> block, RunStats& stats) {
  if (algo == "bitpacked") return multiply_bitpacked(a, b);
  if (algo == "scalar") return multiply_scalar_oracle(a, b);
  if (algo == "via-triangle") {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
      throw usage_error("via-triangle needs two square matrices of equal size");
    }
    BlockSpec spec = BlockSpec::with_default_side(a.rows());
    if (block) spec.t = *block;
    if (a.rows() > 0 && (spec.t < 1 || spec.t > a.rows())) throw usage_error("--block must lie in [1, n]");
    return bmm_via_triangle(a, b, spec, recursive_detector(), stats);
  }
  throw usage_error("unknown multiplication algorithm " + algo);
}

inline constexpr double kVerifyDensities[] = {0.02, 0.1, 0.3, 0.7, 1.0};

struct Mismatch {
  std::string what;
  std::optional<TripartiteGraph> graph;
  std::optional<std::pair<BitMatrix, BitMatrix>> matrices;
};

// One trial's worth of cross-checks; returns the first disagreement.
inline std::optional<Mismatch> verify_graph(const TripartiteGraph& g, std::size_t& checks) {
  const bool expected = brute_triangle(g).found();
  auto check = [&](const std::string& name, const Verdict& v) -> std::optional<Mismatch> {
    ++checks;
    if (v.found() != expected) return Mismatch{name + " verdict disagrees with brute force", g, std::nullopt};
    if (v.found() && !g.is_triangle(*v.witness)) return Mismatch{name + " returned a bogus witness", g, std::nullopt};
    return std::nullopt;
  };
  RunStats stats;
  for (std::size_t delta : {1, 2, 3}) {
    for (std::optional<std::size_t> thr : {std::optional<std::size_t>{}, std::optional<std::size_t>{1}}) {
      DetectorConfig cfg;
      cfg.delta = delta;
      cfg.small_threshold = thr;
      if (delta == 3) cfg.subset_cap = 2;
      cfg.debug_charge_check = true;
      if (auto m = check("recursive(delta=" + std::to_string(delta) + ")", detect(g, cfg, stats))) return m;
    }
  }
  SparseParams sp;
  sp.delta = 1;
  if (auto m = check("sparse", sparse_detect(SubInstance(g), sp, stats))) return m;
  {
    const HighDegreeFinder finder(2);
    FrameworkConfig cfg = FrameworkConfig::for_high_degree(2);
    cfg.small_volume_threshold = 64;
    if (auto m = check("framework", detect_with_finder(g, finder, cfg, stats))) return m;
  }
  if (auto m = check("bmm", triangle_via_bmm(g))) return m;
  return std::nullopt;
}

inline std::optional<Mismatch> verify_matrices(const BitMatrix& a, const BitMatrix& b, InstanceRng& rng,
                                               std::size_t& checks) {
  const BitMatrix expected = multiply_scalar_oracle(a, b);
  ++checks;
  if (multiply_bitpacked(a, b) != expected) return Mismatch{"bitpacked product differs", std::nullopt, std::pair{a, b}};
  const std::size_t n = a.rows();
  BlockSpec spec = BlockSpec::with_default_side(n);
  const std::size_t sides[] = {spec.t, rng.uniform(1, n)};
  for (std::size_t t : sides) {
    spec.t = t;
    RunStats stats;
    ++checks;
    if (bmm_via_triangle(a, b, spec, recursive_detector(), stats) != expected) {
      return Mismatch{"via-triangle product differs (t=" + std::to_string(t) + ")", std::nullopt, std::pair{a, b}};
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial triangle detection and Boolean matrix multiplication", "cbmm"};
  app.require_subcommand(1);

  detail::DetectOptions det;
  std::string graph_path;
  bool general = false;
  bool print_stats = false;
  CLI::App* detect_cmd = app.add_subcommand("detect", "Report a triangle or TRIANGLE-FREE");
  detect_cmd->add_option("--graph", graph_path, "Graph file")->required();
  detect_cmd->add_option("--algo", det.algo, "Detector")
      ->check(CLI::IsMember({"recursive", "sparse", "framework", "bmm", "brute"}));
  detect_cmd->add_option("--delta", det.delta, "Chunk parameter delta");
  detect_cmd->add_option("--small-threshold", det.small_threshold, "Exhaustive-search cutoff on |B|, |C|");
  detect_cmd->add_flag("--stats", print_stats, "Print work counters");
  detect_cmd->add_flag("--general", general, "Input is a general graph (\"n\" then \"i j\" lines)");

  std::string a_path, b_path, out_path, mul_algo = "bitpacked";
  std::optional<std::size_t> block;
  CLI::App* multiply_cmd = app.add_subcommand("multiply", "Boolean matrix product");
  multiply_cmd->add_option("--a", a_path, "Left matrix file")->required();
  multiply_cmd->add_option("--b", b_path, "Right matrix file")->required();
  multiply_cmd->add_option("--algo", mul_algo, "Multiplier")
      ->check(CLI::IsMember({"bitpacked", "via-triangle", "scalar"}));
  multiply_cmd->add_option("--block", block, "Block side for via-triangle");
  multiply_cmd->add_option("--out", out_path, "Output matrix file")->required();

  std::uint64_t seed = 0;
  std::size_t trials = 0, max_size = 0;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Randomized cross-validation against the oracles");
  verify_cmd->add_option("--seed", seed, "PRNG seed")->required();
  verify_cmd->add_option("--trials", trials, "Number of trials")->required();
  verify_cmd->add_option("--max-size", max_size, "Largest part / matrix side")->required()->check(CLI::PositiveNumber);

  std::vector<std::size_t> sizes;
  std::vector<double> densities;
  std::vector<std::string> algos;
  std::uint64_t bench_seed = 1;
  std::size_t bench_delta = 2;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Timing table as CSV");
  bench_cmd->add_option("--sizes", sizes, "Part sizes / matrix sides")->required()->delimiter(',');
  bench_cmd->add_option("--densities", densities, "Edge densities")->required()->delimiter(',');
  bench_cmd->add_option("--algos", algos, "Algorithms")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"recursive", "sparse", "framework", "bmm", "brute", "bitpacked", "scalar", "via-triangle"}));
  bench_cmd->add_option("--seed", bench_seed, "PRNG seed");
  bench_cmd->add_option("--delta", bench_delta, "Chunk parameter delta");

  std::string demo_graph;
  std::size_t demo_delta = 2;
  std::optional<std::size_t> demo_threshold;
  CLI::App* demo_cmd = app.add_subcommand("stats-demo", "Run detect with the charged-pair uniqueness check");
  demo_cmd->add_option("--graph", demo_graph, "Graph file")->required();
  demo_cmd->add_option("--delta", demo_delta, "Chunk parameter delta")->required();
  demo_cmd->add_option("--small-threshold", demo_threshold, "Exhaustive-search cutoff on |B|, |C|");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("cbmm");
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*detect_cmd) {
      const TripartiteGraph g = detail::load_graph(graph_path, general);
      RunStats stats;
      detail::print_verdict(out, detail::run_detector(g, det, stats));
      if (print_stats) out << stats;
      return kExitOk;
    }

    if (*multiply_cmd) {
      const BitMatrix a = detail::load_matrix(a_path);
      const BitMatrix b = detail::load_matrix(b_path);
      if (a.cols() != b.rows()) throw detail::usage_error("inner dimensions differ");
      RunStats stats;
      const BitMatrix c = detail::run_multiplier(a, b, mul_algo, block, stats);
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw detail::usage_error("cannot write " + out_path);
      write_matrix(f, c);
      return kExitOk;
    }

    if (*verify_cmd) {
      out << "verify seed=" << seed << " trials=" << trials << " max-size=" << max_size << '\n';
      InstanceRng rng(seed);
      std::size_t graph_checks = 0, matrix_checks = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t na = rng.uniform(1, max_size), nb = rng.uniform(1, max_size), nc = rng.uniform(1, max_size);
        const double p = detail::kVerifyDensities[rng.uniform(0, 4)];
        const TripartiteGraph g = random_tripartite(rng, na, nb, nc, p);
        std::optional<detail::Mismatch> bad = detail::verify_graph(g, graph_checks);
        if (!bad) {
          const std::size_t n = rng.uniform(1, max_size);
          const double q = detail::kVerifyDensities[rng.uniform(0, 4)];
          const BitMatrix a = random_matrix(rng, n, n, q);
          const BitMatrix b = random_matrix(rng, n, n, q);
          bad = detail::verify_matrices(a, b, rng, matrix_checks);
        }
        if (bad) {
          out << "MISMATCH trial=" << t << ": " << bad->what << '\n';
          if (bad->graph) write_graph(out, *bad->graph);
          if (bad->matrices) {
            out << "# a\n";
            write_matrix(out, bad->matrices->first);
            out << "# b\n";
            write_matrix(out, bad->matrices->second);
          }
          return kExitMismatch;
        }
      }
      out << "OK " << trials << " trials, " << graph_checks << " detector checks, " << matrix_checks
          << " multiplier checks\n";
      return kExitOk;
    }

    if (*bench_cmd) {
      out << "algo,n,density,millis,triples_enumerated,pairs_charged,table_queries\n";
      for (std::size_t n : sizes) {
        for (std::size_t di = 0; di < densities.size(); ++di) {
          const double p = densities[di];
          for (const std::string& algo : algos) {
            InstanceRng rng(bench_seed ^ (static_cast<std::uint64_t>(n) << 20) ^ di);
            RunStats stats;
            const bool is_mul = algo == "bitpacked" || algo == "scalar" || algo == "via-triangle";
            std::chrono::steady_clock::time_point start, stop;
            if (is_mul) {
              const BitMatrix a = random_matrix(rng, n, n, p);
              const BitMatrix b = random_matrix(rng, n, n, p);
              start = std::chrono::steady_clock::now();
              (void)detail::run_multiplier(a, b, algo, std::nullopt, stats);
              stop = std::chrono::steady_clock::now();
            } else {
              const TripartiteGraph g = random_tripartite(rng, n, n, n, p);
              detail::DetectOptions opt{algo == "sparse" ? "sparse" : algo, algo == "sparse" ? 1 : bench_delta,
                                        std::nullopt};
              start = std::chrono::steady_clock::now();
              (void)detail::run_detector(g, opt, stats);
              stop = std::chrono::steady_clock::now();
            }
            const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
            out << algo << ',' << n << ',' << p << ',' << std::fixed << std::setprecision(3) << ms
                << std::defaultfloat << ',' << stats.triples_enumerated << ',' << stats.pairs_charged << ','
                << stats.table_queries << '\n';
          }
        }
      }
      return kExitOk;
    }

    if (*demo_cmd) {
      const TripartiteGraph g = detail::load_graph(demo_graph, false);
      DetectorConfig cfg;
      cfg.delta = demo_delta;
      cfg.small_threshold = demo_threshold;
      cfg.debug_charge_check = true;
      cfg.charge_check_budget = std::numeric_limits<std::uint64_t>::max();
      RunStats stats;
      try {
        detail::print_verdict(out, detect(g, cfg, stats));
        out << "charged-pair uniqueness: held\n";
      } catch (const invariant_violation& e) {
        out << "charged-pair uniqueness: VIOLATED (" << e.what() << ")\n";
        out << stats;
        return kExitMismatch;
      }
      out << stats;
      return kExitOk;
    }
  } catch (const detail::usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const table_budget_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cbmm::cli
