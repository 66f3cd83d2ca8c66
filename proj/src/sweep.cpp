#include "qdl/sweep.hpp"

#include <numbers>

#include "qdl/algolib.hpp"
#include "qdl/decode.hpp"
#include "qdl/errors.hpp"
#include "qdl/gate_backend.hpp"

namespace qdl {

namespace {

// Cut value per basis index under the statevector convention (bit i of the
// index is carrier i), tabulated once per sweep.
Eigen::VectorXd cut_table(const Graph& g) {
  const std::int64_t dim = std::int64_t{1} << g.n;
  Eigen::VectorXd cuts(dim);
  std::vector<std::uint8_t> bits(g.n);
  for (std::int64_t z = 0; z < dim; ++z) {
    for (int i = 0; i < g.n; ++i) bits[i] = static_cast<std::uint8_t>((z >> i) & 1);
    cuts(z) = cut_value(g, bits);
  }
  return cuts;
}

double expected_cut_impl(const Graph& g, double gamma, double beta,
                         const Eigen::VectorXd& cuts) {
  const QuantumDataType reg = make_spin_register("sweep_vars", "sweep", g.n);
  const auto ops = build_qaoa_maxcut(g, reg, QaoaAngles{{gamma}, {beta}});

  ContextDescriptor ctx;  // all-to-all, engine irrelevant for lowering
  ctx.schema_id = std::string(kContextSchemaId);
  ctx.exec.engine = std::string(kGateEngine);
  ctx.exec.samples = 1;

  const GateList gl = lower(ops, {reg}, ctx);
  const Statevector state = run_gates(gl, Statevector(g.n));
  return state.probabilities().dot(cuts);
}

}  // namespace

double exact_expected_cut(const Graph& g, double gamma, double beta) {
  if (g.n > kMaxSweepQubits) {
    throw CapacityError("exact sweep supports up to " + std::to_string(kMaxSweepQubits) +
                        " vertices, got " + std::to_string(g.n));
  }
  return expected_cut_impl(g, gamma, beta, cut_table(g));
}

SweepResult sweep_qaoa_angles(const Graph& g, int gamma_steps, int beta_steps) {
  if (g.n > kMaxSweepQubits) {
    throw CapacityError("exact sweep supports up to " + std::to_string(kMaxSweepQubits) +
                        " vertices, got " + std::to_string(g.n));
  }
  if (gamma_steps < 1 || beta_steps < 1) {
    throw ParamError("sweep grid needs at least one step per axis");
  }

  const Eigen::VectorXd cuts = cut_table(g);
  SweepResult result;
  result.gamma_steps = gamma_steps;
  result.beta_steps = beta_steps;
  result.points.reserve(static_cast<std::size_t>(gamma_steps) * beta_steps);

  for (int gi = 0; gi < gamma_steps; ++gi) {
    const double gamma = std::numbers::pi * gi / gamma_steps;
    for (int bi = 0; bi < beta_steps; ++bi) {
      const double beta = (std::numbers::pi / 2) * bi / beta_steps;
      const double value = expected_cut_impl(g, gamma, beta, cuts);
      result.points.push_back({gamma, beta, value});
      if (result.points.size() == 1 || value > result.best.expected_cut) {
        result.best = result.points.back();
      }
    }
  }
  return result;
}

nlohmann::json to_json(const SweepResult& result) {
  nlohmann::json j;
  j["grid"] = nlohmann::json{{"gamma_steps", result.gamma_steps},
                             {"beta_steps", result.beta_steps}};
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const SweepPoint& p : result.points) {
    rows.push_back(nlohmann::json::array({p.gamma, p.beta, p.expected_cut}));
  }
  j["best"] = nlohmann::json{{"gamma", result.best.gamma},
                             {"beta", result.best.beta},
                             {"expected_cut", result.best.expected_cut}};
  return j;
}

}  // namespace qdl
