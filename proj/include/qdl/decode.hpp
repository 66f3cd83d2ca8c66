#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdl/descriptors.hpp"
#include "qdl/gate_backend.hpp"  // Counts
#include "qdl/graph.hpp"
#include "qdl/rational.hpp"

namespace qdl {

// AS_PHASE -> exact rational turns; AS_INT -> integer; AS_BOOL -> bit vector
// in register index order.
using DecodedValue = std::variant<Rational, long long, std::vector<std::uint8_t>>;

struct DecodedRecord {
  std::string raw;  // outcome bitstring as emitted by the backend
  DecodedValue value;
  long long count = 0;
  std::optional<double> objective;  // cut value; present iff a graph was supplied
};

// The integer behind a bitstring: character p (the outcome of clbit_order[p])
// carries weight 2^p under LSB_0 significance, 2^(L-1-p) under MSB_0.
long long decode_integer(const std::string& bits, const ResultSchema& rs);

// Bits rearranged from string order to register index order.
std::vector<std::uint8_t> register_bits(const std::string& bits, const ResultSchema& rs);

std::vector<DecodedRecord> decode(const Counts& counts, const ResultSchema& rs,
                                  const QuantumDataType& qdt,
                                  const Graph* graph = nullptr);

// Cut weight crossed by a two-coloring given in register index order.
double cut_value(const Graph& g, const std::vector<std::uint8_t>& bits);

// Count-weighted average cut over all outcomes.
double expected_objective(const Counts& counts, const Graph& g, const ResultSchema& rs);

struct Assignment {
  std::string bits;
  double objective = 0.0;
  long long count = 0;
};

// Top-k outcomes ordered by objective desc, count desc, bits ascending.
std::vector<Assignment> best_assignments(const Counts& counts, const Graph& g,
                                         const ResultSchema& rs, std::size_t k);

// report.json content: expected objective, best assignments, outcome count.
nlohmann::json make_report(const Counts& counts, const Graph& g, const ResultSchema& rs,
                           std::size_t top_k = 8);

}  // namespace qdl
