#include "qdl/descriptors.hpp"

#include <algorithm>
#include <charconv>

#include "qdl/errors.hpp"

namespace qdl {

std::string_view to_wire(EncodingKind k) {
  switch (k) {
    case EncodingKind::PhaseRegister: return "PHASE_REGISTER";
    case EncodingKind::IsingSpin: return "ISING_SPIN";
    case EncodingKind::IntRegister: return "INT_REGISTER";
    case EncodingKind::BoolRegister: return "BOOL_REGISTER";
  }
  return "?";
}

std::string_view to_wire(BitOrder o) {
  return o == BitOrder::Lsb0 ? "LSB_0" : "MSB_0";
}

std::string_view to_wire(MeasurementSemantics m) {
  switch (m) {
    case MeasurementSemantics::AsPhase: return "AS_PHASE";
    case MeasurementSemantics::AsBool: return "AS_BOOL";
    case MeasurementSemantics::AsInt: return "AS_INT";
  }
  return "?";
}

std::string_view to_wire(RepKind k) {
  switch (k) {
    case RepKind::QftTemplate: return "QFT_TEMPLATE";
    case RepKind::PrepUniform: return "PREP_UNIFORM";
    case RepKind::IsingCostPhase: return "ISING_COST_PHASE";
    case RepKind::MixerRx: return "MIXER_RX";
    case RepKind::Measurement: return "MEASUREMENT";
    case RepKind::IsingProblem: return "ISING_PROBLEM";
  }
  return "?";
}

EncodingKind encoding_kind_from_wire(const std::string& s, const std::string& path) {
  if (s == "PHASE_REGISTER") return EncodingKind::PhaseRegister;
  if (s == "ISING_SPIN") return EncodingKind::IsingSpin;
  if (s == "INT_REGISTER") return EncodingKind::IntRegister;
  if (s == "BOOL_REGISTER") return EncodingKind::BoolRegister;
  throw SchemaError("unknown encoding_kind \"" + s + "\"", path);
}

BitOrder bit_order_from_wire(const std::string& s, const std::string& path) {
  if (s == "LSB_0") return BitOrder::Lsb0;
  if (s == "MSB_0") return BitOrder::Msb0;
  throw SchemaError("unknown bit order \"" + s + "\"", path);
}

MeasurementSemantics semantics_from_wire(const std::string& s, const std::string& path) {
  if (s == "AS_PHASE") return MeasurementSemantics::AsPhase;
  if (s == "AS_BOOL") return MeasurementSemantics::AsBool;
  if (s == "AS_INT") return MeasurementSemantics::AsInt;
  throw SchemaError("unknown measurement semantics \"" + s + "\"", path);
}

RepKind rep_kind_from_wire(const std::string& s, const std::string& path) {
  if (s == "QFT_TEMPLATE") return RepKind::QftTemplate;
  if (s == "PREP_UNIFORM") return RepKind::PrepUniform;
  if (s == "ISING_COST_PHASE") return RepKind::IsingCostPhase;
  if (s == "MIXER_RX") return RepKind::MixerRx;
  if (s == "MEASUREMENT") return RepKind::Measurement;
  if (s == "ISING_PROBLEM") return RepKind::IsingProblem;
  throw SchemaError("unknown rep_kind \"" + s + "\"", path);
}

MeasurementSemantics required_semantics(EncodingKind k) {
  switch (k) {
    case EncodingKind::PhaseRegister: return MeasurementSemantics::AsPhase;
    case EncodingKind::IsingSpin: return MeasurementSemantics::AsBool;
    case EncodingKind::BoolRegister: return MeasurementSemantics::AsBool;
    case EncodingKind::IntRegister: return MeasurementSemantics::AsInt;
  }
  return MeasurementSemantics::AsBool;
}

CarrierRef CarrierRef::parse(const std::string& text, const std::string& path) {
  const auto open = text.find('[');
  if (open == std::string::npos || open == 0 || text.back() != ']') {
    throw SchemaError("carrier reference must look like \"regId[i]\": \"" + text + "\"", path);
  }
  const std::string_view digits = std::string_view(text).substr(open + 1, text.size() - open - 2);
  int index = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || index < 0) {
    throw SchemaError("carrier index must be a nonnegative integer: \"" + text + "\"", path);
  }
  return CarrierRef{text.substr(0, open), index};
}

const QuantumDataType* find_qdt(const std::vector<QuantumDataType>& qdts,
                                std::string_view id) {
  const auto it = std::find_if(qdts.begin(), qdts.end(),
                               [&](const QuantumDataType& q) { return q.id == id; });
  return it == qdts.end() ? nullptr : &*it;
}

const QuantumDataType* JobBundle::find_qdt(std::string_view id) const {
  return qdl::find_qdt(qdts, id);
}

int JobBundle::max_width() const {
  int w = 0;
  for (const auto& q : qdts) w = std::max(w, q.width);
  return w;
}

}  // namespace qdl
