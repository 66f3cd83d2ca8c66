#include "qdl/algolib.hpp"

#include <set>
#include <utility>

#include "qdl/errors.hpp"
#include "qdl/validate.hpp"

namespace qdl {

QuantumDataType make_spin_register(const std::string& id, const std::string& name,
                                   int width) {
  QuantumDataType q;
  q.schema_id = std::string(kQdtSchemaId);
  q.id = id;
  q.name = name;
  q.width = width;
  q.encoding_kind = EncodingKind::IsingSpin;
  q.bit_order = BitOrder::Lsb0;
  q.measurement_semantics = MeasurementSemantics::AsBool;
  return q;
}

QuantumDataType make_phase_register(const std::string& id, const std::string& name,
                                    int width, const Rational& phase_scale) {
  QuantumDataType q;
  q.schema_id = std::string(kQdtSchemaId);
  q.id = id;
  q.name = name;
  q.width = width;
  q.encoding_kind = EncodingKind::PhaseRegister;
  q.bit_order = BitOrder::Lsb0;
  q.measurement_semantics = MeasurementSemantics::AsPhase;
  q.phase_scale = phase_scale;
  return q;
}

ResultSchema make_readout_schema(const QuantumDataType& qdt) {
  ResultSchema rs;
  rs.basis = "Z";
  rs.datatype = qdt.measurement_semantics;
  rs.bit_significance = qdt.bit_order;
  for (int i = 0; i < qdt.width; ++i) rs.clbit_order.push_back({qdt.id, i});
  return rs;
}

namespace {

OperatorDescriptor base_operator(const std::string& name, RepKind kind,
                                 const QuantumDataType& qdt) {
  OperatorDescriptor op;
  op.schema_id = std::string(kOperatorSchemaId);
  op.name = name;
  op.rep_kind = kind;
  op.domain_qdt = qdt.id;
  op.codomain_qdt = qdt.id;
  return op;
}

void require_spin_register(const Graph& g, const QuantumDataType& qdt,
                           const char* builder) {
  if (qdt.encoding_kind != EncodingKind::IsingSpin) {
    throw EncodingMismatchError(std::string(builder) + " needs an ISING_SPIN register, got " +
                                std::string(to_wire(qdt.encoding_kind)));
  }
  if (qdt.width != g.n) {
    throw WidthMismatchError(std::string(builder) + ": graph has " + std::to_string(g.n) +
                             " vertices but register \"" + qdt.id + "\" has width " +
                             std::to_string(qdt.width));
  }
}

}  // namespace

OperatorDescriptor build_qft(const QuantumDataType& qdt, int approx_degree, bool do_swaps,
                             bool inverse) {
  if (qdt.encoding_kind != EncodingKind::PhaseRegister) {
    throw EncodingMismatchError("build_qft needs a PHASE_REGISTER, got " +
                                std::string(to_wire(qdt.encoding_kind)));
  }
  if (approx_degree < 0 || approx_degree >= qdt.width) {
    throw ParamError("approx_degree must lie in [0, width)", "params.approx_degree");
  }
  OperatorDescriptor op = base_operator("qft", RepKind::QftTemplate, qdt);
  op.params = QftParams{approx_degree, do_swaps, inverse};
  op.cost_hint = estimate_cost(op, qdt.width);
  return op;
}

std::vector<OperatorDescriptor> build_qaoa_maxcut(const Graph& g,
                                                  const QuantumDataType& qdt,
                                                  const QaoaAngles& angles) {
  require_spin_register(g, qdt, "build_qaoa_maxcut");
  if (angles.gammas.empty() || angles.gammas.size() != angles.betas.size()) {
    throw ParamError("angles must hold p >= 1 gamma/beta pairs of equal length");
  }

  std::vector<OperatorDescriptor> ops;

  OperatorDescriptor prep = base_operator("prep_uniform", RepKind::PrepUniform, qdt);
  prep.params = PrepUniformParams{};
  prep.cost_hint = estimate_cost(prep, qdt.width);
  ops.push_back(std::move(prep));

  for (std::size_t layer = 0; layer < angles.gammas.size(); ++layer) {
    IsingCostPhaseParams cost;
    cost.gamma = angles.gammas[layer];
    for (const auto& e : g.edges) {
      cost.edges.push_back({e.i, e.j});
      cost.weights.push_back(e.w);
    }
    OperatorDescriptor phase = base_operator(
        "cost_phase_" + std::to_string(layer + 1), RepKind::IsingCostPhase, qdt);
    phase.params = std::move(cost);
    phase.cost_hint = estimate_cost(phase, qdt.width);
    ops.push_back(std::move(phase));

    OperatorDescriptor mixer =
        base_operator("mixer_rx_" + std::to_string(layer + 1), RepKind::MixerRx, qdt);
    mixer.params = MixerRxParams{angles.betas[layer]};
    mixer.cost_hint = estimate_cost(mixer, qdt.width);
    ops.push_back(std::move(mixer));
  }

  OperatorDescriptor measure = base_operator("measure_z", RepKind::Measurement, qdt);
  measure.params = MeasurementParams{};
  measure.cost_hint = estimate_cost(measure, qdt.width);
  measure.result_schema = make_readout_schema(qdt);
  ops.push_back(std::move(measure));
  return ops;
}

OperatorDescriptor build_ising_maxcut(const Graph& g, const QuantumDataType& qdt) {
  require_spin_register(g, qdt, "build_ising_maxcut");
  IsingProblemParams params;
  params.h = Eigen::VectorXd::Zero(g.n);
  params.j = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const auto& e : g.edges) {
    params.j(e.i, e.j) = e.w;
    params.j(e.j, e.i) = e.w;
  }
  OperatorDescriptor op = base_operator("maxcut_ising", RepKind::IsingProblem, qdt);
  op.params = std::move(params);
  op.cost_hint = estimate_cost(op, qdt.width);
  op.result_schema = make_readout_schema(qdt);
  return op;
}

JobBundle package_job(std::vector<QuantumDataType> qdts,
                      std::vector<OperatorDescriptor> ops, ContextDescriptor ctx,
                      const std::string& source, const std::string& created_at) {
  std::set<std::string> ids;
  for (const auto& q : qdts) {
    if (!ids.insert(q.id).second) {
      throw SemanticsError("duplicate register id \"" + q.id + "\"");
    }
  }

  const SequenceReport report = check_sequence(ops, qdts);
  if (!report.ok) {
    throw ValidationError("operator sequence is not composable: " +
                              report.violations.front().message,
                          report);
  }

  JobBundle job;
  job.qdts = std::move(qdts);
  job.operators = std::move(ops);
  job.context = std::move(ctx);
  job.provenance = {std::string(kToolVersion), created_at, source};
  validate_job(job);
  return job;
}

}  // namespace qdl
