#include "qdl/anneal_backend.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <utility>

#include "qdl/errors.hpp"

namespace qdl {

IsingModel::IsingModel(Eigen::VectorXd h, Eigen::MatrixXd j)
    : h_(std::move(h)), j_(std::move(j)) {
  if (j_.rows() != h_.size() || j_.cols() != h_.size()) {
    throw DimensionError("J must be " + std::to_string(h_.size()) + "x" +
                         std::to_string(h_.size()) + " to match h");
  }
  for (Eigen::Index r = 0; r < j_.rows(); ++r) {
    if (j_(r, r) != 0.0) throw ParamError("J must have a zero diagonal");
    for (Eigen::Index c = r + 1; c < j_.cols(); ++c) {
      if (j_(r, c) != j_(c, r)) throw ParamError("J must be symmetric");
    }
  }
}

IsingModel IsingModel::from_operator(const OperatorDescriptor& op) {
  const auto* params = std::get_if<IsingProblemParams>(&op.params);
  if (params == nullptr) {
    throw SchemaMismatchError("expected an ISING_PROBLEM operator, got " +
                              std::string(to_wire(op.rep_kind)));
  }
  return IsingModel(params->h, params->j);
}

double IsingModel::energy(const std::vector<int>& spins) const {
  if (static_cast<Eigen::Index>(spins.size()) != h_.size()) {
    throw DimensionError("spin vector has length " + std::to_string(spins.size()) +
                         ", model has " + std::to_string(h_.size()) + " sites");
  }
  for (const int s : spins) {
    if (s != 1 && s != -1) throw DimensionError("spins must be +1 or -1");
  }
  double e = 0.0;
  const int n = this->n();
  for (int i = 0; i < n; ++i) e += h_(i) * spins[i];
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e += j_(i, j) * spins[i] * spins[j];
  }
  return e;
}

std::uint64_t read_subseed(std::uint64_t base, long long read_index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(read_index) + 1);
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

SampleSet sample(const IsingModel& m, const ContextDescriptor& ctx) {
  const AnnealSettings settings = ctx.anneal.value_or(AnnealSettings{});
  if (settings.beta_range[0] <= 0.0 || settings.beta_range[0] >= settings.beta_range[1]) {
    throw ConfigError("beta_range must satisfy 0 < beta_min < beta_max");
  }
  if (settings.num_reads < 1 || settings.num_sweeps < 1) {
    throw ConfigError("num_reads and num_sweeps must be positive");
  }

  const int n = m.n();
  const long long sweeps = settings.num_sweeps;
  const double beta_min = settings.beta_range[0];
  const double log_ratio = std::log(settings.beta_range[1] / beta_min);

  // Keyed by the final spin vector so the merge is independent of read order.
  std::map<std::vector<int>, long long> occurrences;

  std::vector<int> spins(n);
  std::vector<int> order(n);
  Eigen::VectorXd local(n);
  for (long long r = 0; r < settings.num_reads; ++r) {
    std::mt19937_64 rng(read_subseed(ctx.exec.seed, r));
    for (int i = 0; i < n; ++i) spins[i] = (rng() & 1) ? -1 : 1;

    for (long long t = 0; t < sweeps; ++t) {
      const double beta =
          sweeps == 1
              ? settings.beta_range[1]
              : beta_min * std::exp(log_ratio * static_cast<double>(t) /
                                    static_cast<double>(sweeps - 1));
      // Each sweep visits every site once in a fresh random order.  A fixed
      // scan order is not ergodic on flat plateaus: zero-cost flips are always
      // accepted, so once uphill moves freeze the dynamics is deterministic
      // and can settle into a closed orbit that never reaches a minimum
      // (degenerate instances such as even rings hit this roughly half the
      // time).  The permutation comes from the read's own generator, so runs
      // stay reproducible.  Fisher-Yates with j = rng() mod (i+1) is part of
      // the sampler contract; see docs/formats.md.
      for (int i = 0; i < n; ++i) order[i] = i;
      for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[i], order[j]);
      }
      // Local fields recomputed at each sweep start to bound drift from the
      // incremental updates below.
      for (int i = 0; i < n; ++i) {
        double f = 0.0;
        for (int j = 0; j < n; ++j) f += m.j()(i, j) * spins[j];
        local(i) = f;
      }
      for (int k = 0; k < n; ++k) {
        const int i = order[k];
        const double delta = -2.0 * spins[i] * (m.h()(i) + local(i));
        const double u = uniform01(rng);
        if (delta <= 0.0 || u < std::exp(-beta * delta)) {
          spins[i] = -spins[i];
          local += 2.0 * spins[i] * m.j().col(i);
        }
      }
    }
    ++occurrences[spins];
  }

  SampleSet out;
  out.num_reads = settings.num_reads;
  out.num_sweeps = settings.num_sweeps;
  out.beta_range = settings.beta_range;
  out.seed = ctx.exec.seed;
  for (const auto& [s, count] : occurrences) {
    out.records.push_back({s, m.energy(s), count});
  }
  std::sort(out.records.begin(), out.records.end(),
            [](const SampleRecord& a, const SampleRecord& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return a.spins < b.spins;
            });
  return out;
}

namespace {

std::string render_bits(const std::vector<int>& spins, const ResultSchema& rs) {
  std::string bits(rs.clbit_order.size(), '0');
  for (std::size_t p = 0; p < rs.clbit_order.size(); ++p) {
    const int index = rs.clbit_order[p].index;
    if (index < 0 || static_cast<std::size_t>(index) >= spins.size()) {
      throw SchemaMismatchError("clbit_order references carrier " + std::to_string(index) +
                                " outside the sampled register");
    }
    bits[p] = spins[index] == 1 ? '0' : '1';  // s = 1 - 2b
  }
  return bits;
}

}  // namespace

Counts decode_samples(const SampleSet& ss, const ResultSchema& rs) {
  if (rs.datatype != MeasurementSemantics::AsBool) {
    throw SchemaMismatchError("anneal decoding requires datatype AS_BOOL, got " +
                              std::string(to_wire(rs.datatype)));
  }
  Counts counts;
  for (const SampleRecord& record : ss.records) {
    if (record.spins.size() != rs.clbit_order.size()) {
      throw SchemaMismatchError("sample has " + std::to_string(record.spins.size()) +
                                " spins but clbit_order lists " +
                                std::to_string(rs.clbit_order.size()) + " carriers");
    }
    counts[render_bits(record.spins, rs)] += record.occurrences;
  }
  return counts;
}

nlohmann::json run_anneal_job(const JobBundle& job) {
  const OperatorDescriptor* problem = nullptr;
  for (const auto& op : job.operators) {
    if (op.rep_kind == RepKind::IsingProblem) {
      problem = &op;
      break;
    }
  }
  if (problem == nullptr) {
    throw UnrealizableError("engine \"" + job.context.exec.engine +
                            "\" needs an ISING_PROBLEM operator");
  }
  if (!problem->result_schema) {
    throw SemanticsError("ISING_PROBLEM requires a result_schema");
  }

  const IsingModel model = IsingModel::from_operator(*problem);
  const SampleSet ss = sample(model, job.context);
  const Counts counts = decode_samples(ss, *problem->result_schema);

  nlohmann::json out;
  out["engine"] = job.context.exec.engine;
  out["num_reads"] = ss.num_reads;
  out["seed"] = ss.seed;
  auto& samples = out["samples"] = nlohmann::json::array();
  for (const SampleRecord& record : ss.records) {
    samples.push_back(nlohmann::json{{"bits", render_bits(record.spins, *problem->result_schema)},
                                     {"spins", record.spins},
                                     {"energy", record.energy},
                                     {"occurrences", record.occurrences}});
  }
  auto& jcounts = out["counts"] = nlohmann::json::object();
  for (const auto& [bits, count] : counts) jcounts[bits] = count;
  return out;
}

}  // namespace qdl
