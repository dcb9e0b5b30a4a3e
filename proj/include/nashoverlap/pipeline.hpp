#pragma once

#include <chrono>

#include "nashoverlap/cover.hpp"
#include "nashoverlap/graph.hpp"
#include "nashoverlap/phase1.hpp"
#include "nashoverlap/phase2.hpp"
#include "nashoverlap/tie_strength.hpp"

namespace nashoverlap {

/// End-to-end detection: tie-strengths -> k coordination games ->
/// intermediate partition -> community-closeness refinement.
struct DetectResult {
  TieStrengths ties;
  Phase1Result phase1;
  IntermediatePartition partition;
  Phase2Result phase2;
  double ties_ms = 0;
  double phase1_ms = 0;
  double phase2_ms = 0;

  const Cover& cover() const { return phase2.cover; }
};

inline DetectResult detect_communities(const Graph& g,
                                       const Phase1Config& phase1_cfg,
                                       const Phase2Config& phase2_cfg,
                                       unsigned threads = 1) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point start) {
    return std::chrono::duration<double, std::milli>(clock::now() - start)
        .count();
  };

  DetectResult result;
  auto t0 = clock::now();
  result.ties = compute_tie_strengths(g);
  result.ties_ms = ms_since(t0);

  t0 = clock::now();
  result.phase1 = run_phase1(g, result.ties, phase1_cfg, threads);
  result.partition =
      intermediate_partition(g, result.phase1.closeness, phase1_cfg.beta);
  result.phase1_ms = ms_since(t0);

  t0 = clock::now();
  result.phase2 =
      run_phase2(g, result.phase1.closeness, result.partition, phase2_cfg);
  result.phase2_ms = ms_since(t0);
  return result;
}

}  // namespace nashoverlap
