#include <doctest.h>

#include <random>
#include <utility>
#include <vector>

#include "qdl/descriptors.hpp"
#include "qdl/errors.hpp"
#include "qdl/json_io.hpp"
#include "qdl/validate.hpp"
#include "test_support.hpp"

using namespace qdl;
using namespace qdl::test;

namespace {

QuantumDataType spin_register(int width) {
  QuantumDataType q;
  q.schema_id = std::string(kQdtSchemaId);
  q.id = "ising_vars";
  q.name = "s";
  q.width = width;
  q.encoding_kind = EncodingKind::IsingSpin;
  q.bit_order = BitOrder::Lsb0;
  q.measurement_semantics = MeasurementSemantics::AsBool;
  return q;
}

OperatorDescriptor on_register(RepKind kind, OperatorParams params,
                               const std::string& reg = "ising_vars") {
  OperatorDescriptor op;
  op.schema_id = std::string(kOperatorSchemaId);
  op.name = "op";
  op.rep_kind = kind;
  op.domain_qdt = reg;
  op.codomain_qdt = reg;
  op.params = std::move(params);
  return op;
}

ResultSchema identity_readout(const QuantumDataType& q) {
  ResultSchema rs;
  rs.datatype = q.measurement_semantics;
  for (int i = 0; i < q.width; ++i) rs.clbit_order.push_back({q.id, i});
  return rs;
}

OperatorDescriptor measurement_on(const QuantumDataType& q) {
  OperatorDescriptor op = on_register(RepKind::Measurement, MeasurementParams{}, q.id);
  op.result_schema = identity_readout(q);
  return op;
}

IsingCostPhaseParams ring_cost(double gamma) {
  IsingCostPhaseParams p;
  p.gamma = gamma;
  p.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  p.weights = {1.0, 1.0, 1.0, 1.0};
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sequence composition
// ---------------------------------------------------------------------------

TEST_CASE("a well-formed variational stack composes") {
  const QuantumDataType q = spin_register(4);
  const std::vector<OperatorDescriptor> ops = {
      on_register(RepKind::PrepUniform, PrepUniformParams{}),
      on_register(RepKind::IsingCostPhase, ring_cost(0.7)),
      on_register(RepKind::MixerRx, MixerRxParams{0.3}),
      measurement_on(q),
  };
  const SequenceReport report = check_sequence(ops, {q});
  CHECK(report.ok);
  CHECK(report.violations.empty());
  // Sum of the per-operator estimates: prep 0+1, cost 4+4, mixer 0+1, measure 0+1.
  CHECK(report.total_cost_hint.twoq == 4);
  CHECK(report.total_cost_hint.depth == 7);
}

TEST_CASE("a measurement anywhere but last is flagged") {
  const QuantumDataType q = spin_register(4);
  const std::vector<OperatorDescriptor> ops = {
      measurement_on(q),
      on_register(RepKind::MixerRx, MixerRxParams{0.3}),
  };
  const SequenceReport report = check_sequence(ops, {q});
  REQUIRE_FALSE(report.ok);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].index == 0);
  CHECK(report.violations[0].rule == SequenceRule::HiddenMeasurement);
}

TEST_CASE("operator order matters to composition") {
  const QuantumDataType q = spin_register(4);
  std::vector<OperatorDescriptor> ops = {
      on_register(RepKind::PrepUniform, PrepUniformParams{}),
      measurement_on(q),
      on_register(RepKind::IsingCostPhase, ring_cost(0.7)),
  };
  CHECK_FALSE(check_sequence(ops, {q}).ok);
  std::swap(ops[1], ops[2]);  // measurement moves to the end
  CHECK(check_sequence(ops, {q}).ok);
}

TEST_CASE("broken register chains are domain mismatches") {
  const QuantumDataType a = spin_register(4);
  QuantumDataType b = spin_register(4);
  b.id = "other_reg";
  std::vector<OperatorDescriptor> ops = {
      on_register(RepKind::PrepUniform, PrepUniformParams{}, "ising_vars"),
      on_register(RepKind::MixerRx, MixerRxParams{0.1}, "other_reg"),
  };
  const SequenceReport report = check_sequence(ops, {a, b});
  REQUIRE_FALSE(report.ok);
  CHECK(report.violations[0].rule == SequenceRule::DomainMismatch);
  CHECK(report.violations[0].index == 1);
}

TEST_CASE("unresolved references are reported, not thrown") {
  const std::vector<OperatorDescriptor> ops = {
      on_register(RepKind::PrepUniform, PrepUniformParams{}, "ghost"),
  };
  const SequenceReport report = check_sequence(ops, {spin_register(4)});
  REQUIRE_FALSE(report.ok);
  CHECK(report.violations[0].rule == SequenceRule::DomainMismatch);
}

TEST_CASE("implied widths must match the register") {
  const QuantumDataType q = spin_register(4);

  // An edge touching carrier 5 implies at least six carriers.
  IsingCostPhaseParams wide = ring_cost(0.5);
  wide.edges.push_back({4, 5});
  wide.weights.push_back(1.0);
  const SequenceReport r1 =
      check_sequence({on_register(RepKind::IsingCostPhase, wide)}, {q});
  REQUIRE_FALSE(r1.ok);
  CHECK(r1.violations[0].rule == SequenceRule::WidthMismatch);

  // A three-site problem statement on a four-carrier register.
  IsingProblemParams p;
  p.h = Eigen::VectorXd::Zero(3);
  p.j = Eigen::MatrixXd::Zero(3, 3);
  OperatorDescriptor op = on_register(RepKind::IsingProblem, p);
  op.result_schema = identity_readout(q);
  const SequenceReport r2 = check_sequence({op}, {q});
  REQUIRE_FALSE(r2.ok);
  CHECK(r2.violations[0].rule == SequenceRule::WidthMismatch);

  // A readout covering the wrong number of carriers.
  OperatorDescriptor meas = measurement_on(q);
  meas.result_schema->clbit_order.pop_back();
  const SequenceReport r3 = check_sequence({meas}, {q});
  REQUIRE_FALSE(r3.ok);
  CHECK(r3.violations[0].rule == SequenceRule::WidthMismatch);
}

// ---------------------------------------------------------------------------
// Inversion
// ---------------------------------------------------------------------------

TEST_CASE("inversion toggles and negates the angle-like parameters") {
  QuantumDataType q = spin_register(4);

  OperatorDescriptor qft = on_register(RepKind::QftTemplate, QftParams{0, true, false});
  qft.cost_hint = CostHint{45, 100};
  const OperatorDescriptor inv = invert(qft);
  CHECK(std::get<QftParams>(inv.params).inverse);
  CHECK(inv.cost_hint == qft.cost_hint);

  const OperatorDescriptor cost = on_register(RepKind::IsingCostPhase, ring_cost(0.7));
  CHECK(std::get<IsingCostPhaseParams>(invert(cost).params).gamma == -0.7);

  const OperatorDescriptor mixer = on_register(RepKind::MixerRx, MixerRxParams{0.25});
  CHECK(std::get<MixerRxParams>(invert(mixer).params).beta == -0.25);

  // The inverse of a generator is a generator: any readout is dropped.
  OperatorDescriptor with_readout = on_register(RepKind::QftTemplate, QftParams{});
  with_readout.result_schema = identity_readout(q);
  CHECK_FALSE(invert(with_readout).result_schema.has_value());
}

TEST_CASE("inverting twice is the identity for invertible operators") {
  std::mt19937_64 rng(99);
  int tested = 0;
  while (tested < 200) {
    const QuantumDataType q = random_qdt(rng);
    OperatorDescriptor op = random_operator(rng, q);
    if (op.rep_kind == RepKind::Measurement || op.rep_kind == RepKind::PrepUniform ||
        op.rep_kind == RepKind::IsingProblem) {
      continue;
    }
    op.result_schema.reset();  // inversion drops readouts by design
    CHECK(invert(invert(op)) == op);
    ++tested;
  }
}

TEST_CASE("non-unitary operators are not invertible") {
  const QuantumDataType q = spin_register(4);
  CHECK_THROWS_AS(invert(measurement_on(q)), NotInvertibleError);
  CHECK_THROWS_AS(invert(on_register(RepKind::PrepUniform, PrepUniformParams{})),
                  NotInvertibleError);
  IsingProblemParams p;
  p.h = Eigen::VectorXd::Zero(4);
  p.j = Eigen::MatrixXd::Zero(4, 4);
  OperatorDescriptor problem = on_register(RepKind::IsingProblem, p);
  problem.result_schema = identity_readout(q);
  CHECK_THROWS_AS(invert(problem), NotInvertibleError);
}

// ---------------------------------------------------------------------------
// Cost estimation
// ---------------------------------------------------------------------------

namespace {

// Independent count: controlled-phase pairs (k, j) with k < j whose distance
// stays within the approximation window, plus the reversal swaps.
long long oracle_twoq(int width, int approx, bool do_swaps) {
  long long count = 0;
  for (int j = 0; j < width; ++j) {
    for (int k = 0; k < j; ++k) {
      if (j - k <= width - 1 - approx) ++count;
    }
  }
  if (do_swaps) count += 3LL * (width / 2);
  return count;
}

}  // namespace

TEST_CASE("exact fourier transform on ten carriers costs 45 two-qubit gates") {
  const OperatorDescriptor op =
      on_register(RepKind::QftTemplate, QftParams{0, false, false});
  CHECK(estimate_cost(op, 10).twoq == 45);
}

TEST_CASE("two-qubit count follows the closed form over widths 1..20") {
  for (int n = 1; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(qft_twoq_count(n, 0, false) == static_cast<long long>(n) * (n - 1) / 2);
    CHECK(qft_twoq_count(n, 0, true) ==
          static_cast<long long>(n) * (n - 1) / 2 + 3LL * (n / 2));
    for (int a = 0; a < n; ++a) {
      CHECK(qft_twoq_count(n, a, false) == oracle_twoq(n, a, false));
      CHECK(qft_twoq_count(n, a, true) == oracle_twoq(n, a, true));
    }
  }
}

TEST_CASE("cost estimates for the remaining operator kinds") {
  const OperatorDescriptor cost = on_register(RepKind::IsingCostPhase, ring_cost(0.7));
  CHECK(estimate_cost(cost, 4) == CostHint{4, 4});

  CHECK(estimate_cost(on_register(RepKind::PrepUniform, PrepUniformParams{}), 4) ==
        CostHint{0, 1});
  CHECK(estimate_cost(on_register(RepKind::MixerRx, MixerRxParams{0.1}), 4) ==
        CostHint{0, 1});

  IsingProblemParams p;
  p.h = Eigen::VectorXd::Zero(4);
  p.j = Eigen::MatrixXd::Zero(4, 4);
  p.j(0, 1) = p.j(1, 0) = 1.0;
  p.j(2, 3) = p.j(3, 2) = -0.5;
  CHECK(estimate_cost(on_register(RepKind::IsingProblem, p), 4) == CostHint{2, 0});
}

// ---------------------------------------------------------------------------
// Engine capability checks
// ---------------------------------------------------------------------------

namespace {

JobBundle job_with(const std::vector<OperatorDescriptor>& ops, const std::string& engine) {
  JobBundle job;
  job.qdts = {spin_register(4)};
  job.operators = ops;
  job.context.schema_id = std::string(kContextSchemaId);
  job.context.exec.engine = engine;
  job.context.exec.samples = 16;
  job.provenance = {"0.1.0", "unspecified", "test"};
  return job;
}

OperatorDescriptor ring_problem() {
  IsingProblemParams p;
  p.h = Eigen::VectorXd::Zero(4);
  p.j = Eigen::MatrixXd::Zero(4, 4);
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}) {
    p.j(a, b) = p.j(b, a) = 1.0;
  }
  OperatorDescriptor op = on_register(RepKind::IsingProblem, p);
  op.result_schema = identity_readout(spin_register(4));
  return op;
}

}  // namespace

TEST_CASE("the gate engine cannot realize a whole-problem statement") {
  const JobBundle job = job_with({ring_problem()}, std::string(kGateEngine));
  CHECK_THROWS_AS(validate_job(job), ValidationError);
}

TEST_CASE("the anneal engine requires exactly one problem statement") {
  const QuantumDataType q = spin_register(4);
  CHECK_THROWS_AS(
      validate_job(job_with({on_register(RepKind::PrepUniform, PrepUniformParams{}),
                             measurement_on(q)},
                            std::string(kAnnealEngine))),
      ValidationError);
  CHECK_NOTHROW(validate_job(job_with({ring_problem()}, std::string(kAnnealEngine))));
}

TEST_CASE("unknown engines are unconstrained at validation time") {
  CHECK_NOTHROW(validate_job(job_with({ring_problem()}, "vendor.qpu")));
}

TEST_CASE("coupling maps must fit the widest register") {
  JobBundle job = job_with({ring_problem()}, std::string(kAnnealEngine));
  TargetConstraints t;
  t.coupling_map = {{0, 7}};
  job.context.exec.target = t;
  CHECK_THROWS_AS(validate_job(job), SemanticsError);
}
