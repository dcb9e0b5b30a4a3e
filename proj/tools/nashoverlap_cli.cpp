// Command-line front end: detection, evaluation, benchmark generation
// and edge-closeness analytics with reproducible seeded configuration.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "nashoverlap/benchgen.hpp"
#include "nashoverlap/cover.hpp"
#include "nashoverlap/graph.hpp"
#include "nashoverlap/io.hpp"
#include "nashoverlap/manifest.hpp"
#include "nashoverlap/modularity.hpp"
#include "nashoverlap/nmi.hpp"
#include "nashoverlap/phase1.hpp"
#include "nashoverlap/phase2.hpp"
#include "nashoverlap/pipeline.hpp"
#include "nashoverlap/stats.hpp"
#include "nashoverlap/tie_strength.hpp"

namespace {

using namespace nashoverlap;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string hex_digest(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

struct SweepRange {
  double lo = 0, hi = 0, step = 0;
  std::vector<double> values() const {
    std::vector<double> out;
    for (int i = 0;; ++i) {
      double a = lo + i * step;
      if (a > hi + 1e-9) break;
      out.push_back(std::round(a * 1e6) / 1e6);
    }
    return out;
  }
};

SweepRange parse_sweep(const std::string& spec) {
  SweepRange r;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi, &r.step,
                  &extra) != 3)
    throw std::runtime_error("--alpha-sweep expects lo:hi:step");
  if (!(r.lo > 0.0 && r.lo <= r.hi && r.hi <= 1.0 && r.step > 0.0))
    throw std::runtime_error("--alpha-sweep range must satisfy 0<lo<=hi<=1, step>0");
  return r;
}

std::string alpha_tag(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

CoverFormat parse_cover_format(const std::string& name) {
  if (name == "communities") return CoverFormat::community_per_line;
  if (name == "memberships") return CoverFormat::vertex_memberships;
  throw std::runtime_error("unknown cover format '" + name +
                           "' (use communities or memberships)");
}

struct DetectArgs {
  std::string graph_path;
  bool weighted = false;
  bool one_indexed = false;
  Phase1Config phase1;
  Phase2Config phase2;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string out_path;
  std::string closeness_path;
  std::string manifest_path;
  std::string alpha_sweep;
};

int run_detect(const DetectArgs& args) {
  const double t_start = now_ms();
  RunManifest manifest;
  manifest.add("command", std::string("detect"));
  manifest.add("graph", args.graph_path);

  const std::string graph_bytes = read_file(args.graph_path);
  manifest.add("graph_digest", hex_digest(fnv1a64(graph_bytes)));
  manifest.add("weighted", std::uint32_t{args.weighted});
  manifest.add("one_indexed", std::uint32_t{args.one_indexed});

  const double t_parse = now_ms();
  std::istringstream graph_in(graph_bytes);
  const Graph g =
      read_edge_list(graph_in, {args.weighted, args.one_indexed});
  const double parse_ms = now_ms() - t_parse;

  manifest.add("vertices", std::uint64_t{g.num_vertices()});
  manifest.add("edges", std::uint64_t{g.num_edges()});
  manifest.add("self_loops_dropped", std::uint64_t{g.self_loops_dropped()});
  manifest.add("r", args.phase1.strategies);
  manifest.add("k", args.phase1.games);
  manifest.add("beta", args.phase1.beta);
  manifest.add("epsilon", args.phase1.epsilon);
  manifest.add("seed", args.phase1.master_seed);
  manifest.add("max_rounds", args.phase1.max_rounds);

  args.phase1.validate();
  args.phase2.validate();

  const double t_ties = now_ms();
  const TieStrengths ties = compute_tie_strengths(g);
  const double ties_ms = now_ms() - t_ties;

  const double t_phase1 = now_ms();
  const Phase1Result phase1 = run_phase1(g, ties, args.phase1, args.threads);
  const IntermediatePartition partition =
      intermediate_partition(g, phase1.closeness, args.phase1.beta);
  const double phase1_ms = now_ms() - t_phase1;

  std::cerr << "phase1 passes per game:";
  for (std::uint32_t p : phase1.passes) std::cerr << ' ' << p;
  std::cerr << '\n';
  std::cerr << "phase1 games converged "
            << (args.phase1.games - phase1.nonconverged) << '/'
            << args.phase1.games << ", intermediate components "
            << partition.components.size() << '\n';

  manifest.add("games_converged",
               std::uint64_t{args.phase1.games - phase1.nonconverged});
  manifest.add("games_nonconverged", std::uint64_t{phase1.nonconverged});
  {
    std::string passes;
    for (std::size_t i = 0; i < phase1.passes.size(); ++i) {
      if (i) passes += ',';
      passes += std::to_string(phase1.passes[i]);
    }
    manifest.add("game_passes", passes);
    std::uint64_t moves = 0;
    for (std::uint64_t m : phase1.accepted_moves) moves += m;
    manifest.add("phase1_accepted_moves", moves);
  }
  manifest.add("intermediate_components",
               std::uint64_t{partition.components.size()});

  std::vector<double> alphas;
  bool sweep = !args.alpha_sweep.empty();
  if (sweep) {
    manifest.add("alpha_sweep", args.alpha_sweep);
    alphas = parse_sweep(args.alpha_sweep).values();
  } else {
    manifest.add("alpha", args.phase2.alpha);
    alphas = {args.phase2.alpha};
  }

  double phase2_ms = 0;
  for (double alpha : alphas) {
    Phase2Config cfg = args.phase2;
    cfg.alpha = alpha;
    const double t_phase2 = now_ms();
    const Phase2Result phase2 =
        run_phase2(g, phase1.closeness, partition, cfg);
    phase2_ms += now_ms() - t_phase2;

    const std::string suffix = sweep ? "_" + alpha_tag(alpha) : "";
    const std::string out_path =
        sweep ? args.out_path + ".alpha_" + alpha_tag(alpha) : args.out_path;
    std::ostringstream cover_out;
    write_cover(cover_out, phase2.cover, g.labels());
    const std::string cover_bytes = std::move(cover_out).str();
    write_file(out_path, cover_bytes);

    std::cerr << "phase2 alpha " << alpha_tag(alpha) << ": passes "
              << phase2.passes << (phase2.converged ? "" : " (not converged)")
              << ", communities " << phase2.cover.community_count() << '\n';
    manifest.add("phase2_passes" + suffix, phase2.passes);
    manifest.add("phase2_converged" + suffix,
                 std::uint32_t{phase2.converged});
    manifest.add("communities" + suffix,
                 std::uint64_t{phase2.cover.community_count()});
    manifest.add("cover" + suffix, out_path);
    manifest.add("cover_digest" + suffix, hex_digest(fnv1a64(cover_bytes)));
  }

  if (!args.closeness_path.empty()) {
    std::ostringstream csv;
    write_closeness_csv(csv, g, ties, phase1.closeness);
    const std::string bytes = std::move(csv).str();
    write_file(args.closeness_path, bytes);
    manifest.add("closeness", args.closeness_path);
    manifest.add("closeness_digest", hex_digest(fnv1a64(bytes)));
  }

  manifest.add("perf_threads", std::uint64_t{args.threads});
  manifest.add("perf_parse_ms", parse_ms);
  manifest.add("perf_ties_ms", ties_ms);
  manifest.add("perf_phase1_ms", phase1_ms);
  manifest.add("perf_phase2_ms", phase2_ms);
  manifest.add("perf_total_ms", now_ms() - t_start);

  if (args.manifest_path.empty()) {
    manifest.write(std::cerr);
  } else {
    std::ostringstream out;
    manifest.write(out);
    write_file(args.manifest_path, std::move(out).str());
  }
  return 0;
}

Cover load_cover_for_graph(const std::string& path, const std::string& format,
                           const Graph& g) {
  std::istringstream in(read_file(path));
  return index_cover(read_cover_communities(in, parse_cover_format(format)),
                     g);
}

int run_eval_nmi(const std::string& detected_path,
                 const std::string& detected_format,
                 const std::string& truth_path,
                 const std::string& truth_format, bool json) {
  auto load = [](const std::string& path, const std::string& format) {
    std::istringstream in(read_file(path));
    return read_cover_communities(in, parse_cover_format(format));
  };
  const auto detected = load(detected_path, detected_format);
  const auto truth = load(truth_path, truth_format);

  auto universe_of = [](const std::vector<std::vector<Label>>& cover) {
    std::vector<Label> labels;
    for (const auto& c : cover) labels.insert(labels.end(), c.begin(), c.end());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
  };
  const auto universe = universe_of(truth);
  if (universe_of(detected) != universe)
    throw std::runtime_error("mismatched universes: the covers reference different vertex sets");

  const NmiReport report =
      nmi_overlapping(index_cover(detected, universe),
                      index_cover(truth, universe),
                      static_cast<Vertex>(universe.size()));
  if (json)
    std::cout << "{\"nmi\": " << format_double(report.value) << "}\n";
  else
    std::cout << fixed6(report.value) << '\n';
  return 0;
}

int run_eval_modularity(const std::string& graph_path, bool weighted,
                        bool one_indexed, const std::string& cover_path,
                        const std::string& format, bool json) {
  std::istringstream graph_in(read_file(graph_path));
  const Graph g = read_edge_list(graph_in, {weighted, one_indexed});
  const Cover cover = load_cover_for_graph(cover_path, format, g);
  const double q = modularity(g, cover);
  if (json)
    std::cout << "{\"modularity\": " << format_double(q) << "}\n";
  else
    std::cout << fixed6(q) << '\n';
  return 0;
}

int run_gen_planted(const PlantedParams& params,
                    const std::string& out_graph,
                    const std::string& out_truth) {
  const PlantedBenchmark bench = generate_planted(params);

  std::ostringstream graph_out;
  write_edge_list(graph_out, bench.graph, /*weighted=*/false);
  write_file(out_graph, std::move(graph_out).str());

  std::ostringstream truth_out;
  write_cover(truth_out, bench.truth, bench.graph.labels());
  write_file(out_truth, std::move(truth_out).str());

  std::cout << "vertices=" << bench.graph.num_vertices()
            << " edges=" << bench.graph.num_edges() << '\n'
            << "realized_mu_max=" << format_double(bench.audit.max_mixing)
            << '\n'
            << "realized_mu_mean=" << format_double(bench.audit.mean_mixing)
            << '\n'
            << "dropped_intra_stubs=" << bench.audit.dropped_intra_stubs
            << '\n'
            << "dropped_inter_stubs=" << bench.audit.dropped_inter_stubs
            << '\n';
  return 0;
}

int run_stats_closeness(const std::string& graph_path, bool weighted,
                        bool one_indexed, const std::string& closeness_path,
                        const std::string& out_scatter,
                        const std::string& out_hist, double bin_width) {
  std::istringstream graph_in(read_file(graph_path));
  const Graph g = read_edge_list(graph_in, {weighted, one_indexed});
  const TieStrengths ties = compute_tie_strengths(g);
  std::istringstream closeness_in(read_file(closeness_path));
  const EdgeCloseness closeness = read_closeness_csv(closeness_in, g);

  const ClosenessStats stats = closeness_stats(g, ties, closeness, bin_width);
  std::ostringstream scatter;
  write_scatter_csv(scatter, g, ties, closeness);
  write_file(out_scatter, std::move(scatter).str());
  std::ostringstream hist;
  write_histogram_csv(hist, stats);
  write_file(out_hist, std::move(hist).str());

  if (stats.pearson_defined)
    std::cout << "pearson_r=" << format_double(stats.pearson_r) << '\n';
  else
    std::cout << "pearson_r=undefined\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlapping community detection via graph coordination games"};
  app.require_subcommand(1);

  // detect
  DetectArgs detect;
  auto* cmd_detect = app.add_subcommand(
      "detect", "Detect the overlapping community structure of a graph");
  cmd_detect->add_option("--graph", detect.graph_path, "Edge-list file")
      ->required();
  cmd_detect->add_flag("--weighted", detect.weighted,
                       "Edge list has a third weight column");
  cmd_detect->add_flag("--one-indexed", detect.one_indexed,
                       "Vertex ids start at 1 (LFR style)");
  cmd_detect->add_option("--r", detect.phase1.strategies,
                         "Strategies per game (default 40)");
  cmd_detect->add_option("--k", detect.phase1.games,
                         "Number of independent games (default 100)");
  cmd_detect->add_option("--alpha", detect.phase2.alpha,
                         "Overlap parameter in (0,1] (default 0.5)");
  cmd_detect->add_option("--beta", detect.phase1.beta,
                         "Edge-closeness threshold (default 0.95)");
  cmd_detect->add_option("--epsilon", detect.phase1.epsilon,
                         "Good-enough improvement parameter (default 0)");
  std::uint64_t seed = 0;
  cmd_detect->add_option("--seed", seed, "Master seed (default 0)");
  cmd_detect->add_option("--threads", detect.threads,
                         "Worker threads for phase 1 (default: available)");
  cmd_detect->add_option("--out", detect.out_path, "Output cover file")
      ->required();
  cmd_detect->add_option("--emit-closeness", detect.closeness_path,
                         "Write per-edge closeness CSV (u,v,w,t,p)");
  cmd_detect->add_option("--manifest", detect.manifest_path,
                         "Write the run manifest here instead of stderr");
  cmd_detect->add_option("--alpha-sweep", detect.alpha_sweep,
                         "lo:hi:step; write one cover per alpha");

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "Score covers");
  cmd_eval->require_subcommand(1);
  std::string detected_path, truth_path;
  std::string detected_format = "communities", truth_format = "communities";
  bool nmi_json = false;
  auto* cmd_nmi = cmd_eval->add_subcommand(
      "nmi", "Overlapping NMI between a detected cover and ground truth");
  cmd_nmi->add_option("--detected", detected_path, "Detected cover file")
      ->required();
  cmd_nmi->add_option("--truth", truth_path, "Ground-truth cover file")
      ->required();
  cmd_nmi->add_option("--detected-format", detected_format,
                      "communities|memberships (default communities)");
  cmd_nmi->add_option("--truth-format", truth_format,
                      "communities|memberships (default communities)");
  cmd_nmi->add_flag("--json", nmi_json, "Emit {\"nmi\": x}");

  std::string mod_graph, mod_cover;
  std::string mod_format = "communities";
  bool mod_weighted = false, mod_one_indexed = false, mod_json = false;
  auto* cmd_mod = cmd_eval->add_subcommand(
      "modularity", "Weighted Newman modularity of a disjoint partition");
  cmd_mod->add_option("--graph", mod_graph, "Edge-list file")->required();
  cmd_mod->add_flag("--weighted", mod_weighted, "Weighted edge list");
  cmd_mod->add_flag("--one-indexed", mod_one_indexed, "Ids start at 1");
  cmd_mod->add_option("--cover", mod_cover, "Partition file")->required();
  cmd_mod->add_option("--format", mod_format,
                      "communities|memberships (default communities)");
  cmd_mod->add_flag("--json", mod_json, "Emit {\"modularity\": q}");

  // gen
  auto* cmd_gen = app.add_subcommand("gen", "Generate benchmark graphs");
  cmd_gen->require_subcommand(1);
  PlantedParams planted;
  std::string gen_out_graph, gen_out_truth;
  auto* cmd_planted = cmd_gen->add_subcommand(
      "planted", "Planted overlapping communities with known ground truth");
  cmd_planted->add_option("--n", planted.n, "Vertex count")->required();
  cmd_planted->add_option("--communities", planted.n_comm, "Community count")
      ->required();
  cmd_planted->add_option("--mu", planted.mu, "Mixing factor in [0,0.5]")
      ->required();
  cmd_planted
      ->add_option("--on-fraction", planted.on_fraction,
                   "Fraction of overlapping vertices")
      ->required();
  cmd_planted
      ->add_option("--om", planted.om, "Memberships per overlapping vertex")
      ->required();
  cmd_planted->add_option("--avg-degree", planted.avg_degree, "Mean degree")
      ->required();
  cmd_planted->add_option("--seed", planted.seed, "Generator seed")
      ->required();
  cmd_planted->add_option("--out-graph", gen_out_graph, "Edge-list output")
      ->required();
  cmd_planted->add_option("--out-truth", gen_out_truth, "Truth cover output")
      ->required();

  // stats
  auto* cmd_stats = app.add_subcommand("stats", "Edge-closeness analytics");
  cmd_stats->require_subcommand(1);
  std::string stats_graph, stats_closeness, stats_scatter, stats_hist;
  bool stats_weighted = false, stats_one_indexed = false;
  double bin_width = 0.05;
  auto* cmd_closeness = cmd_stats->add_subcommand(
      "closeness", "Correlation and histogram of a closeness dump");
  cmd_closeness->add_option("--graph", stats_graph, "Edge-list file")
      ->required();
  cmd_closeness->add_flag("--weighted", stats_weighted, "Weighted edge list");
  cmd_closeness->add_flag("--one-indexed", stats_one_indexed,
                          "Ids start at 1");
  cmd_closeness
      ->add_option("--closeness", stats_closeness,
                   "Closeness CSV from detect --emit-closeness")
      ->required();
  cmd_closeness->add_option("--out-scatter", stats_scatter, "t,p CSV output")
      ->required();
  cmd_closeness->add_option("--out-hist", stats_hist, "Histogram CSV output")
      ->required();
  cmd_closeness->add_option("--bin-width", bin_width,
                            "Histogram bin width (default 0.05)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_detect->parsed()) {
      detect.phase1.master_seed = seed;
      detect.phase2.master_seed = seed;
      return run_detect(detect);
    }
    if (cmd_nmi->parsed())
      return run_eval_nmi(detected_path, detected_format, truth_path,
                          truth_format, nmi_json);
    if (cmd_mod->parsed())
      return run_eval_modularity(mod_graph, mod_weighted, mod_one_indexed,
                                 mod_cover, mod_format, mod_json);
    if (cmd_planted->parsed())
      return run_gen_planted(planted, gen_out_graph, gen_out_truth);
    if (cmd_closeness->parsed())
      return run_stats_closeness(stats_graph, stats_weighted,
                                 stats_one_indexed, stats_closeness,
                                 stats_scatter, stats_hist, bin_width);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
