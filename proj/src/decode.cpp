#include "qdl/decode.hpp"

#include <algorithm>

#include "qdl/errors.hpp"

namespace qdl {

long long decode_integer(const std::string& bits, const ResultSchema& rs) {
  const std::size_t width = rs.clbit_order.size();
  if (bits.size() != width) {
    throw LengthMismatchError("bitstring has " + std::to_string(bits.size()) +
                              " characters but clbit_order lists " + std::to_string(width));
  }
  long long k = 0;
  for (std::size_t p = 0; p < width; ++p) {
    if (bits[p] != '0' && bits[p] != '1') {
      throw LengthMismatchError("bitstring may contain only '0' and '1'");
    }
    if (bits[p] == '0') continue;
    const std::size_t significance =
        rs.bit_significance == BitOrder::Lsb0 ? p : width - 1 - p;
    k += 1LL << significance;
  }
  return k;
}

std::vector<std::uint8_t> register_bits(const std::string& bits, const ResultSchema& rs) {
  if (bits.size() != rs.clbit_order.size()) {
    throw LengthMismatchError("bitstring has " + std::to_string(bits.size()) +
                              " characters but clbit_order lists " +
                              std::to_string(rs.clbit_order.size()));
  }
  std::vector<std::uint8_t> out(bits.size(), 0);
  for (std::size_t p = 0; p < bits.size(); ++p) {
    if (bits[p] != '0' && bits[p] != '1') {
      throw LengthMismatchError("bitstring may contain only '0' and '1'");
    }
    const int index = rs.clbit_order[p].index;
    if (index < 0 || static_cast<std::size_t>(index) >= out.size()) {
      throw LengthMismatchError("clbit_order references carrier " + std::to_string(index) +
                                " outside the decoded register");
    }
    out[index] = bits[p] == '1' ? 1 : 0;
  }
  return out;
}

std::vector<DecodedRecord> decode(const Counts& counts, const ResultSchema& rs,
                                  const QuantumDataType& qdt, const Graph* graph) {
  std::vector<DecodedRecord> records;
  for (const auto& [bits, count] : counts) {
    DecodedRecord record;
    record.raw = bits;
    record.count = count;
    switch (rs.datatype) {
      case MeasurementSemantics::AsInt:
        record.value = decode_integer(bits, rs);
        break;
      case MeasurementSemantics::AsPhase: {
        if (!qdt.phase_scale) {
          throw MissingPhaseScaleError("register \"" + qdt.id +
                                       "\" has no phase_scale to decode AS_PHASE");
        }
        record.value = qdt.phase_scale->times(decode_integer(bits, rs));
        break;
      }
      case MeasurementSemantics::AsBool:
        record.value = register_bits(bits, rs);
        break;
    }
    if (graph != nullptr) {
      record.objective = cut_value(*graph, register_bits(bits, rs));
    }
    records.push_back(std::move(record));
  }
  return records;
}

double cut_value(const Graph& g, const std::vector<std::uint8_t>& bits) {
  if (static_cast<int>(bits.size()) != g.n) {
    throw LengthMismatchError("assignment has " + std::to_string(bits.size()) +
                              " bits but the graph has " + std::to_string(g.n) +
                              " vertices");
  }
  double cut = 0.0;
  for (const auto& e : g.edges) {
    if (bits[e.i] != bits[e.j]) cut += e.w;
  }
  return cut;
}

double expected_objective(const Counts& counts, const Graph& g, const ResultSchema& rs) {
  if (counts.empty()) throw EmptyCountsError("no outcomes to average over");
  double weighted = 0.0;
  long long total = 0;
  for (const auto& [bits, count] : counts) {
    weighted += static_cast<double>(count) * cut_value(g, register_bits(bits, rs));
    total += count;
  }
  if (total <= 0) throw EmptyCountsError("counts sum to zero");
  return weighted / static_cast<double>(total);
}

std::vector<Assignment> best_assignments(const Counts& counts, const Graph& g,
                                         const ResultSchema& rs, std::size_t k) {
  if (counts.empty()) throw EmptyCountsError("no outcomes to rank");
  std::vector<Assignment> all;
  for (const auto& [bits, count] : counts) {
    all.push_back({bits, cut_value(g, register_bits(bits, rs)), count});
  }
  std::sort(all.begin(), all.end(), [](const Assignment& a, const Assignment& b) {
    if (a.objective != b.objective) return a.objective > b.objective;
    if (a.count != b.count) return a.count > b.count;
    return a.bits < b.bits;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

nlohmann::json make_report(const Counts& counts, const Graph& g, const ResultSchema& rs,
                           std::size_t top_k) {
  nlohmann::json report;
  report["expected_objective"] = expected_objective(counts, g, rs);
  auto& best = report["best"] = nlohmann::json::array();
  for (const Assignment& a : best_assignments(counts, g, rs, top_k)) {
    best.push_back(nlohmann::json{
        {"bits", a.bits}, {"objective", a.objective}, {"count", a.count}});
  }
  report["n_outcomes"] = counts.size();
  return report;
}

}  // namespace qdl
