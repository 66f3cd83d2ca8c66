#pragma once

#include <vector>

#include <json.hpp>

#include "qdl/graph.hpp"

namespace qdl {

struct SweepPoint {
  double gamma = 0.0;
  double beta = 0.0;
  double expected_cut = 0.0;
};

struct SweepResult {
  int gamma_steps = 0;
  int beta_steps = 0;
  std::vector<SweepPoint> points;  // row-major: gamma outer, beta inner
  SweepPoint best;                 // first strictly greatest point
};

// Exact (sampling-free) p=1 QAOA expectation of the cut at one angle pair,
// computed from the final statevector amplitudes.
double exact_expected_cut(const Graph& g, double gamma, double beta);

// Grid sweep over gamma in [0, pi) and beta in [0, pi/2). The p=1 QAOA state
// for +/-1 couplings is periodic in gamma with period pi and in beta with
// period pi/2, so this window contains the optimum.
SweepResult sweep_qaoa_angles(const Graph& g, int gamma_steps, int beta_steps);

nlohmann::json to_json(const SweepResult& result);

// Dense-statevector cap for the sweep.
inline constexpr int kMaxSweepQubits = 16;

}  // namespace qdl
