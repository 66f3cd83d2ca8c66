#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qdl/descriptors.hpp"
#include "qdl/gate_backend.hpp"  // Counts

namespace qdl {

// E(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j over spins in {-1, +1}.
class IsingModel {
 public:
  IsingModel(Eigen::VectorXd h, Eigen::MatrixXd j);  // enforces symmetry, zero diagonal
  static IsingModel from_operator(const OperatorDescriptor& op);

  int n() const { return static_cast<int>(h_.size()); }
  const Eigen::VectorXd& h() const { return h_; }
  const Eigen::MatrixXd& j() const { return j_; }

  double energy(const std::vector<int>& spins) const;

 private:
  Eigen::VectorXd h_;
  Eigen::MatrixXd j_;
};

struct SampleRecord {
  std::vector<int> spins;  // entries in {-1, +1}, index = carrier index
  double energy = 0.0;
  long long occurrences = 0;
};

struct SampleSet {
  std::vector<SampleRecord> records;  // ascending energy, then spins
  long long num_reads = 0;
  long long num_sweeps = 0;
  std::array<double, 2> beta_range = {0.0, 0.0};
  std::uint64_t seed = 0;
};

// Sub-seed for read r from the base seed: a SplitMix64 finalizer over
// base + (r+1) * 0x9E3779B97F4A7C15. Part of the external contract so reads
// can run in any order (or in parallel) without changing results.
std::uint64_t read_subseed(std::uint64_t base, long long read_index);

// Metropolis simulated annealing: num_reads independent restarts, each
// num_sweeps sequential full sweeps under a geometric beta schedule from
// beta_range[0] to beta_range[1]. Deterministic in (model, settings, seed).
SampleSet sample(const IsingModel& m, const ContextDescriptor& ctx);

// Spins to bitstrings via s = 1 - 2b (s=+1 -> '0'), rendered in clbit_order.
Counts decode_samples(const SampleSet& ss, const ResultSchema& rs);

// Full anneal path: model from the single ISING_PROBLEM operator, sample,
// assemble results.json content.
nlohmann::json run_anneal_job(const JobBundle& job);

}  // namespace qdl
