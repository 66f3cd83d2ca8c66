#pragma once

#include <string>
#include <vector>

#include "qdl/descriptors.hpp"
#include "qdl/graph.hpp"

namespace qdl {

// p pairs of QAOA layer angles, in radians.
struct QaoaAngles {
  std::vector<double> gammas;
  std::vector<double> betas;

  bool operator==(const QaoaAngles&) const = default;
};

// Register factories used by the builders and the CLI so both emission paths
// produce byte-identical QDT blocks from the same inputs.
QuantumDataType make_spin_register(const std::string& id, const std::string& name,
                                   int width);
QuantumDataType make_phase_register(const std::string& id, const std::string& name,
                                    int width, const Rational& phase_scale);

// Z-basis readout of every carrier of `qdt`, in register order.
ResultSchema make_readout_schema(const QuantumDataType& qdt);

// In-place QFT_TEMPLATE descriptor on a phase register, cost_hint filled.
OperatorDescriptor build_qft(const QuantumDataType& qdt, int approx_degree, bool do_swaps,
                             bool inverse);

// [PREP_UNIFORM, (ISING_COST_PHASE, MIXER_RX) x p, MEASUREMENT] over a spin
// register realizing one QAOA Max-Cut stack for the graph.
std::vector<OperatorDescriptor> build_qaoa_maxcut(const Graph& g,
                                                  const QuantumDataType& qdt,
                                                  const QaoaAngles& angles);

// ISING_PROBLEM with h = 0 and J[i][j] = +w_ij: minimizing E(s) maximizes the
// cut, since cut(s) = (W_total - E(s)) / 2 when h = 0.
OperatorDescriptor build_ising_maxcut(const Graph& g, const QuantumDataType& qdt);

// Bundle assembly: runs the composition and capability checks, then stamps
// provenance. created_at has a fixed default so output is deterministic.
JobBundle package_job(std::vector<QuantumDataType> qdts,
                      std::vector<OperatorDescriptor> ops, ContextDescriptor ctx,
                      const std::string& source,
                      const std::string& created_at = "unspecified");

}  // namespace qdl
