#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qdl/descriptors.hpp"

namespace qdl {

enum class GateKind { H, Rx, Rz, Sx, Cp, Rzz, Cx, Swap };

std::string_view gate_name(GateKind kind);  // lowercase wire name ("rzz")

struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;          // -1 for one-qubit gates
  double angle = 0.0;   // radians; meaningful for Rx, Rz, Cp, Rzz

  bool is_two_qubit() const { return q1 >= 0; }
};

struct RoutingOverhead {
  long long swaps_inserted = 0;
};

struct GateList {
  int n_qubits = 0;
  std::vector<Gate> gates;
  // measure_order[p] is the qubit whose outcome lands at string position p
  // (p = 0 is the leftmost character). Empty when nothing is measured.
  std::vector<int> measure_order;
  RoutingOverhead routing_overhead;
  std::vector<std::string> warnings;  // e.g. gates outside the declared basis

  // Layered ASAP depth of the gate list (measurement not counted).
  long long depth() const;
  std::map<std::string, long long> gate_counts() const;
};

// Dense statevector over n qubits. Index convention: bit i of the basis-state
// index is qubit i (LSB_0).
class Statevector {
 public:
  explicit Statevector(int n_qubits);  // |0...0>
  static Statevector basis_state(int n_qubits, std::uint64_t k);

  int n_qubits() const { return n_; }
  std::uint64_t dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

  void apply(const Gate& g);
  double norm() const;

  // |amplitude|^2 per basis index.
  Eigen::VectorXd probabilities() const;

 private:
  void apply_single(int q, const Eigen::Matrix2cd& u);

  int n_;
  Eigen::VectorXcd amps_;
};

using Counts = std::map<std::string, long long>;

// Lowers a gate-realizable operator sequence to concrete gates, routing
// two-qubit gates through the coupling map when one is declared. Inserted
// SWAPs are never undone; the permutation they induce is folded into
// measure_order.
GateList lower(const std::vector<OperatorDescriptor>& ops,
               const std::vector<QuantumDataType>& qdts, const ContextDescriptor& ctx);

// Runs the gate list from |0...0> and samples ctx.exec.samples outcomes with
// the context seed (inverse CDF over the exact distribution, mt19937_64,
// 53-bit uniforms). Deterministic in (gl, samples, seed).
Counts simulate(const GateList& gl, const ContextDescriptor& ctx);
Statevector run_gates(const GateList& gl, Statevector state);

// Full gate path: lower, simulate, assemble results.json content.
nlohmann::json run_gate_job(const JobBundle& job);

// Hard cap of the dense simulator; above this, CapacityError.
inline constexpr int kMaxSimQubits = 24;

}  // namespace qdl
