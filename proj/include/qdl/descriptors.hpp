#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qdl/rational.hpp"

namespace qdl {

// ---------------------------------------------------------------------------
// Enumerations (wire names in comments)
// ---------------------------------------------------------------------------

enum class EncodingKind {
  PhaseRegister,  // "PHASE_REGISTER" — basis index k means phase k * phase_scale turns
  IsingSpin,      // "ISING_SPIN"     — logical spins in {-1,+1}, read out as {0,1}
  IntRegister,    // "INT_REGISTER"   — basis index k means the integer k
  BoolRegister,   // "BOOL_REGISTER"  — independent {0,1} flags
};

enum class BitOrder {
  Lsb0,  // "LSB_0" — index i carries weight 2^i
  Msb0,  // "MSB_0" — index i carries weight 2^(width-1-i)
};

enum class MeasurementSemantics {
  AsPhase,  // "AS_PHASE"
  AsBool,   // "AS_BOOL"
  AsInt,    // "AS_INT"
};

enum class RepKind {
  QftTemplate,     // "QFT_TEMPLATE"
  PrepUniform,     // "PREP_UNIFORM"
  IsingCostPhase,  // "ISING_COST_PHASE"
  MixerRx,         // "MIXER_RX"
  Measurement,     // "MEASUREMENT"
  IsingProblem,    // "ISING_PROBLEM"
};

std::string_view to_wire(EncodingKind k);
std::string_view to_wire(BitOrder o);
std::string_view to_wire(MeasurementSemantics m);
std::string_view to_wire(RepKind k);

// Each throws SchemaError when the token is unknown.
EncodingKind encoding_kind_from_wire(const std::string& s, const std::string& path);
BitOrder bit_order_from_wire(const std::string& s, const std::string& path);
MeasurementSemantics semantics_from_wire(const std::string& s, const std::string& path);
RepKind rep_kind_from_wire(const std::string& s, const std::string& path);

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

inline constexpr std::string_view kQdtSchemaId = "qdt-core.schema.json";
inline constexpr std::string_view kOperatorSchemaId = "qod.schema.json";
inline constexpr std::string_view kContextSchemaId = "ctx.schema.json";

// Engines this build can execute. Other engine strings parse but leave the
// context non-runnable.
inline constexpr std::string_view kGateEngine = "gate.statevector";
inline constexpr std::string_view kAnnealEngine = "anneal.metropolis";

inline constexpr std::string_view kToolVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Quantum data type: the semantic contract of one register.
// ---------------------------------------------------------------------------

struct QuantumDataType {
  std::string schema_id;  // "$schema"
  std::string id;         // unique register identifier within a bundle
  std::string name;
  int width = 0;          // count of logical carriers, >= 1
  EncodingKind encoding_kind = EncodingKind::BoolRegister;
  BitOrder bit_order = BitOrder::Lsb0;
  MeasurementSemantics measurement_semantics = MeasurementSemantics::AsBool;
  std::optional<Rational> phase_scale;  // present iff PHASE_REGISTER; in (0, 1]
  nlohmann::json extensions = nlohmann::json::object();

  bool operator==(const QuantumDataType&) const = default;
};

// The measurement interpretation each encoding admits.
MeasurementSemantics required_semantics(EncodingKind k);

// ---------------------------------------------------------------------------
// Result schema: how a Z-basis readout becomes a typed value.
// ---------------------------------------------------------------------------

// One entry of clbit_order, wire form "regId[i]".
struct CarrierRef {
  std::string qdt_id;
  int index = 0;

  std::string str() const { return qdt_id + "[" + std::to_string(index) + "]"; }
  static CarrierRef parse(const std::string& text, const std::string& path);

  bool operator==(const CarrierRef&) const = default;
};

struct ResultSchema {
  // basis is always "Z" in this build; kept as a field so documents carry it.
  std::string basis = "Z";
  MeasurementSemantics datatype = MeasurementSemantics::AsBool;
  BitOrder bit_significance = BitOrder::Lsb0;
  std::vector<CarrierRef> clbit_order;  // covers the carriers of one register, each once

  bool operator==(const ResultSchema&) const = default;
};

// ---------------------------------------------------------------------------
// Operator descriptor: a named logical transformation, never gates.
// ---------------------------------------------------------------------------

struct CostHint {
  long long twoq = 0;
  long long depth = 0;

  bool operator==(const CostHint&) const = default;
};

struct QftParams {
  int approx_degree = 0;  // 0 = exact; degree a drops CP pairs with distance > width-1-a
  bool do_swaps = true;
  bool inverse = false;

  bool operator==(const QftParams&) const = default;
};

struct PrepUniformParams {
  bool operator==(const PrepUniformParams&) const = default;
};

struct IsingCostPhaseParams {
  double gamma = 0.0;                     // radians
  std::vector<std::array<int, 2>> edges;  // carrier index pairs
  std::vector<double> weights;            // same length as edges

  bool operator==(const IsingCostPhaseParams&) const = default;
};

struct MixerRxParams {
  double beta = 0.0;  // radians

  bool operator==(const MixerRxParams&) const = default;
};

struct MeasurementParams {
  bool operator==(const MeasurementParams&) const = default;
};

struct IsingProblemParams {
  Eigen::VectorXd h;  // length = register width
  Eigen::MatrixXd j;  // symmetric, zero diagonal, width x width

  bool operator==(const IsingProblemParams& other) const {
    if (h.size() != other.h.size() || j.rows() != other.j.rows() ||
        j.cols() != other.j.cols()) {
      return false;
    }
    return (h.array() == other.h.array()).all() &&
           (j.array() == other.j.array()).all();
  }
};

using OperatorParams = std::variant<QftParams, PrepUniformParams, IsingCostPhaseParams,
                                    MixerRxParams, MeasurementParams, IsingProblemParams>;

struct OperatorDescriptor {
  std::string schema_id;
  std::string name;
  RepKind rep_kind = RepKind::Measurement;
  std::string domain_qdt;    // input register id
  std::string codomain_qdt;  // output register id
  OperatorParams params;
  std::optional<CostHint> cost_hint;
  // Required for MEASUREMENT and ISING_PROBLEM; allowed elsewhere as a
  // downstream-readout description.
  std::optional<ResultSchema> result_schema;
  nlohmann::json extensions = nlohmann::json::object();

  bool operator==(const OperatorDescriptor&) const = default;
};

// ---------------------------------------------------------------------------
// Context descriptor: execution policy, orthogonal to meaning.
// ---------------------------------------------------------------------------

struct TargetConstraints {
  std::vector<std::string> basis_gates;             // recognized names only
  std::vector<std::array<int, 2>> coupling_map;     // undirected pairs, no self-loops

  bool operator==(const TargetConstraints&) const = default;
};

struct ExecPolicy {
  std::string engine;
  long long samples = 0;        // > 0
  std::uint64_t seed = 0;
  std::optional<TargetConstraints> target;  // absent = ideal all-to-all
  nlohmann::json options = nlohmann::json::object();  // free-form, echoed verbatim

  bool operator==(const ExecPolicy&) const = default;
};

struct AnnealSettings {
  long long num_reads = 1000;
  long long num_sweeps = 1000;
  std::array<double, 2> beta_range = {0.1, 10.0};

  bool operator==(const AnnealSettings&) const = default;
};

struct QecPolicy {
  std::string code_family;
  int distance = 0;  // odd, positive
  std::string allocator;
  std::vector<std::string> logical_gate_set;

  bool operator==(const QecPolicy&) const = default;
};

struct ContextDescriptor {
  std::string schema_id;
  ExecPolicy exec;
  std::optional<AnnealSettings> anneal;
  std::optional<QecPolicy> qec;  // parsed and validated; never alters lowering
  nlohmann::json extensions = nlohmann::json::object();

  bool runnable() const {
    return exec.engine == kGateEngine || exec.engine == kAnnealEngine;
  }
  bool all_to_all() const { return !exec.target.has_value(); }

  bool operator==(const ContextDescriptor&) const = default;
};

// ---------------------------------------------------------------------------
// Job bundle: the unit of submission (job.json).
// ---------------------------------------------------------------------------

struct Provenance {
  std::string tool_version;
  std::string created_at;  // caller-supplied; defaults stay deterministic
  std::string source;

  bool operator==(const Provenance&) const = default;
};

struct JobBundle {
  std::vector<QuantumDataType> qdts;
  std::vector<OperatorDescriptor> operators;
  ContextDescriptor context;
  Provenance provenance;

  const QuantumDataType* find_qdt(std::string_view id) const;
  // Width of the widest register in the bundle (0 when empty).
  int max_width() const;

  bool operator==(const JobBundle&) const = default;
};

const QuantumDataType* find_qdt(const std::vector<QuantumDataType>& qdts,
                                std::string_view id);

}  // namespace qdl
