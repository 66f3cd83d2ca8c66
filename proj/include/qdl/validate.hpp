#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qdl/descriptors.hpp"
#include "qdl/errors.hpp"

namespace qdl {

enum class SequenceRule {
  DomainMismatch,
  HiddenMeasurement,
  WidthMismatch,
};

std::string_view to_wire(SequenceRule rule);

struct SequenceViolation {
  std::size_t index = 0;  // position of the offending operator
  SequenceRule rule = SequenceRule::DomainMismatch;
  std::string message;
};

struct SequenceReport {
  bool ok = true;
  std::vector<SequenceViolation> violations;
  CostHint total_cost_hint;
};

// Composition check over an ordered operator list. Each operator is assumed
// individually valid; unresolved registers are reported as violations rather
// than thrown so the whole report is always produced.
SequenceReport check_sequence(const std::vector<OperatorDescriptor>& ops,
                              const std::vector<QuantumDataType>& qdts);

// A failed composition or capability check. Carries the report when one was
// produced.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, SequenceReport report = {})
      : Error(message), report_(std::move(report)) {}
  const SequenceReport& report() const { return report_; }

 private:
  SequenceReport report_;
};

// Formal inverse at the descriptor level. QFT_TEMPLATE toggles `inverse`,
// ISING_COST_PHASE negates gamma, MIXER_RX negates beta; anything else throws
// NotInvertibleError. An attached result_schema is dropped (the inverse of a
// generator is a generator).
OperatorDescriptor invert(const OperatorDescriptor& op);

// Two-qubit-gate count of the lowered QFT network on `width` carriers:
// controlled-phase pairs with distance <= width-1-approx_degree, plus three
// CX per swap in the final reversal layer when do_swaps.
long long qft_twoq_count(int width, int approx_degree, bool do_swaps);

// Closed-form cost model; depth is the documented heuristic, not a simulated
// schedule. Deterministic in (descriptor, width).
CostHint estimate_cost(const OperatorDescriptor& op, int domain_width);

// Bundle-level checks beyond per-document parsing: a runnable engine must be
// able to realize every rep_kind, and coupling-map indices must fit the
// widest register. Throws ValidationError / SemanticsError.
void validate_job(const JobBundle& job);

}  // namespace qdl
