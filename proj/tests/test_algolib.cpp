#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "qdl/algolib.hpp"
#include "qdl/errors.hpp"
#include "qdl/graph.hpp"
#include "qdl/json_io.hpp"
#include "qdl/validate.hpp"
#include "test_support.hpp"

using namespace qdl;
using namespace qdl::test;

namespace {

Graph ring4() { return parse_graph(read_text_file(data_path("graph_c4.json"))); }

}  // namespace

TEST_CASE("register factories produce valid registers") {
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  CHECK(spin.encoding_kind == EncodingKind::IsingSpin);
  CHECK(spin.measurement_semantics == MeasurementSemantics::AsBool);
  CHECK(spin.width == 4);
  CHECK_FALSE(spin.phase_scale.has_value());
  CHECK(parse_qdt(serialize(spin)) == spin);

  const QuantumDataType phase =
      make_phase_register("reg_phase", "phase", 10, Rational(1, 1024));
  CHECK(phase.encoding_kind == EncodingKind::PhaseRegister);
  CHECK(phase.measurement_semantics == MeasurementSemantics::AsPhase);
  REQUIRE(phase.phase_scale.has_value());
  CHECK(*phase.phase_scale == Rational(1, 1024));
  CHECK(parse_qdt(serialize(phase)) == phase);
}

TEST_CASE("the readout factory covers every carrier in register order") {
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  const ResultSchema rs = make_readout_schema(spin);
  CHECK(rs.basis == "Z");
  CHECK(rs.datatype == MeasurementSemantics::AsBool);
  CHECK(rs.bit_significance == spin.bit_order);
  REQUIRE(rs.clbit_order.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(rs.clbit_order[i].qdt_id == "ising_vars");
    CHECK(rs.clbit_order[i].index == i);
  }
}

TEST_CASE("fourier builder fills the cost hint and validates its inputs") {
  const QuantumDataType phase =
      make_phase_register("reg_phase", "phase", 10, Rational(1, 1024));
  const OperatorDescriptor op = build_qft(phase, 0, false, false);
  CHECK(op.name == "qft");
  CHECK(op.rep_kind == RepKind::QftTemplate);
  REQUIRE(op.cost_hint.has_value());
  CHECK(op.cost_hint->twoq == 45);
  CHECK(op.cost_hint == estimate_cost(op, 10));
  CHECK(parse_operator(serialize(op), {phase}) == op);

  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  CHECK_THROWS_AS(build_qft(spin, 0, true, false), EncodingMismatchError);
  CHECK_THROWS_AS(build_qft(phase, 10, true, false), ParamError);
  CHECK_THROWS_AS(build_qft(phase, -1, true, false), ParamError);
}

TEST_CASE("variational builder emits the documented stack") {
  const Graph g = ring4();
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  const QaoaAngles angles{{0.7, 0.2}, {0.3, 0.1}};
  const std::vector<OperatorDescriptor> ops = build_qaoa_maxcut(g, spin, angles);

  REQUIRE(ops.size() == 6);  // prep + 2 x (cost, mixer) + measurement
  CHECK(ops[0].name == "prep_uniform");
  CHECK(ops[1].name == "cost_phase_1");
  CHECK(ops[2].name == "mixer_rx_1");
  CHECK(ops[3].name == "cost_phase_2");
  CHECK(ops[4].name == "mixer_rx_2");
  CHECK(ops[5].name == "measure_z");

  const auto& cost = std::get<IsingCostPhaseParams>(ops[1].params);
  CHECK(cost.gamma == 0.7);
  REQUIRE(cost.edges.size() == g.edges.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    CHECK(cost.edges[k][0] == g.edges[k].i);
    CHECK(cost.edges[k][1] == g.edges[k].j);
    CHECK(cost.weights[k] == g.edges[k].w);
  }
  CHECK(std::get<MixerRxParams>(ops[2].params).beta == 0.3);
  CHECK(std::get<IsingCostPhaseParams>(ops[3].params).gamma == 0.2);
  REQUIRE(ops[5].result_schema.has_value());

  // The emitted stack composes, and every operator survives a round trip.
  CHECK(check_sequence(ops, {spin}).ok);
  for (const auto& op : ops) {
    CHECK(parse_operator(serialize(op), {spin}) == op);
  }
}

TEST_CASE("variational builder rejects mismatched inputs") {
  const Graph g = ring4();
  const QuantumDataType narrow = make_spin_register("ising_vars", "s", 3);
  CHECK_THROWS_AS(build_qaoa_maxcut(g, narrow, {{0.1}, {0.1}}), WidthMismatchError);

  const QuantumDataType phase =
      make_phase_register("reg_phase", "phase", 4, Rational(1, 16));
  CHECK_THROWS_AS(build_qaoa_maxcut(g, phase, {{0.1}, {0.1}}), EncodingMismatchError);

  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  CHECK_THROWS_AS(build_qaoa_maxcut(g, spin, {{0.1, 0.2}, {0.1}}), ParamError);
  CHECK_THROWS_AS(build_qaoa_maxcut(g, spin, {{}, {}}), ParamError);
}

TEST_CASE("problem builder encodes max-cut with zero fields and positive couplings") {
  const Graph g = ring4();
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  const OperatorDescriptor op = build_ising_maxcut(g, spin);
  CHECK(op.name == "maxcut_ising");
  const auto& p = std::get<IsingProblemParams>(op.params);
  CHECK(p.h.isZero(0.0));
  CHECK(p.j(0, 1) == 1.0);
  CHECK(p.j(1, 0) == 1.0);
  CHECK(p.j(0, 2) == 0.0);
  REQUIRE(op.result_schema.has_value());
  CHECK(parse_operator(serialize(op), {spin}) == op);
}

TEST_CASE("minimizing the problem energy maximizes the cut") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);  // up to 12 vertices
    const Graph g = random_graph(rng, n);
    const QuantumDataType spin = make_spin_register("ising_vars", "s", n);
    const OperatorDescriptor problem = build_ising_maxcut(g, spin);
    const auto& p = std::get<IsingProblemParams>(problem.params);

    // cut(s) = (W_total - E(s)) / 2 at every assignment, hence the two
    // exhaustive argopt sets coincide.
    const double w_total = g.total_weight();
    double best_cut = -1.0, min_energy = 1e300;
    std::set<std::uint32_t> argmax_cut, argmin_energy;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      const double cut = cut_of_mask(g, m);
      const double e = ising_energy_of_mask(p.h, p.j, m);
      CHECK(cut == doctest::Approx((w_total - e) / 2).epsilon(1e-12));
      if (cut > best_cut + 1e-12) {
        best_cut = cut;
        argmax_cut = {m};
      } else if (cut > best_cut - 1e-12) {
        argmax_cut.insert(m);
      }
      if (e < min_energy - 1e-12) {
        min_energy = e;
        argmin_energy = {m};
      } else if (e < min_energy + 1e-12) {
        argmin_energy.insert(m);
      }
    }
    CAPTURE(trial);
    CHECK(argmax_cut == argmin_energy);
  }
}

TEST_CASE("packaging stamps provenance and validates the bundle") {
  const Graph g = ring4();
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  const ContextDescriptor ctx =
      parse_context(read_text_file(data_path("ctx_gate_ring4.json")));
  const JobBundle job = package_job({spin}, build_qaoa_maxcut(g, spin, {{0.7}, {0.3}}),
                                    ctx, "unit test");
  CHECK(job.provenance.tool_version == std::string(kToolVersion));
  CHECK(job.provenance.created_at == "unspecified");
  CHECK(job.provenance.source == "unit test");
  CHECK(parse_job(serialize(job)) == job);
}

TEST_CASE("packaging rejects duplicate registers and bad sequences") {
  const Graph g = ring4();
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  const ContextDescriptor ctx =
      parse_context(read_text_file(data_path("ctx_gate_ring4.json")));
  auto ops = build_qaoa_maxcut(g, spin, {{0.7}, {0.3}});

  CHECK_THROWS_AS(package_job({spin, spin}, ops, ctx, "dup"), SemanticsError);

  auto shuffled = ops;
  std::swap(shuffled.front(), shuffled.back());  // measurement first
  CHECK_THROWS_AS(package_job({spin}, shuffled, ctx, "bad order"), ValidationError);
}

TEST_CASE("builders never mention engines, gates, or devices") {
  const Graph g = ring4();
  const QuantumDataType spin = make_spin_register("ising_vars", "s", 4);
  const QuantumDataType phase =
      make_phase_register("reg_phase", "phase", 6, Rational(1, 64));

  std::vector<OperatorDescriptor> ops = build_qaoa_maxcut(g, spin, {{0.7}, {0.3}});
  ops.push_back(build_ising_maxcut(g, spin));
  ops.push_back(build_qft(phase, 0, true, false));

  for (const auto& op : ops) {
    const std::string text = serialize(op);
    CAPTURE(op.name);
    for (const char* token :
         {"statevector", "metropolis", "\"cx\"", "\"sx\"", "\"rz\"", "\"rzz\"",
          "basis_gates", "coupling_map", "pulse", "backend"}) {
      CHECK(text.find(token) == std::string::npos);
    }
  }
}
