#include "qdl/validate.hpp"

#include <algorithm>
#include <string>

namespace qdl {

std::string_view to_wire(SequenceRule rule) {
  switch (rule) {
    case SequenceRule::DomainMismatch: return "DOMAIN_MISMATCH";
    case SequenceRule::HiddenMeasurement: return "HIDDEN_MEASUREMENT";
    case SequenceRule::WidthMismatch: return "WIDTH_MISMATCH";
  }
  return "?";
}

namespace {

void add(SequenceReport& report, std::size_t index, SequenceRule rule, std::string message) {
  report.ok = false;
  report.violations.push_back({index, rule, std::move(message)});
}

// Width the params imply, or -1 when the kind carries no width of its own.
int implied_width(const OperatorDescriptor& op) {
  if (const auto* cost = std::get_if<IsingCostPhaseParams>(&op.params)) {
    int max_index = -1;
    for (const auto& e : cost->edges) max_index = std::max({max_index, e[0], e[1]});
    return max_index < 0 ? -1 : max_index + 1;  // lower bound, checked as <=
  }
  if (const auto* ising = std::get_if<IsingProblemParams>(&op.params)) {
    return static_cast<int>(ising->h.size());
  }
  return -1;
}

}  // namespace

SequenceReport check_sequence(const std::vector<OperatorDescriptor>& ops,
                              const std::vector<QuantumDataType>& qdts) {
  SequenceReport report;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const OperatorDescriptor& op = ops[k];
    const QuantumDataType* dom = find_qdt(qdts, op.domain_qdt);
    const QuantumDataType* cod = find_qdt(qdts, op.codomain_qdt);
    if (dom == nullptr) {
      add(report, k, SequenceRule::DomainMismatch,
          "operator " + std::to_string(k) + " (\"" + op.name + "\"): domain_qdt \"" +
              op.domain_qdt + "\" does not resolve");
    }
    if (cod == nullptr) {
      add(report, k, SequenceRule::DomainMismatch,
          "operator " + std::to_string(k) + " (\"" + op.name + "\"): codomain_qdt \"" +
              op.codomain_qdt + "\" does not resolve");
    }

    if (k + 1 < ops.size()) {
      if (op.codomain_qdt != ops[k + 1].domain_qdt) {
        add(report, k + 1, SequenceRule::DomainMismatch,
            "operator " + std::to_string(k + 1) + " (\"" + ops[k + 1].name +
                "\"): domain_qdt \"" + ops[k + 1].domain_qdt +
                "\" does not match the previous codomain \"" + op.codomain_qdt + "\"");
      }
      if (op.rep_kind == RepKind::Measurement) {
        add(report, k, SequenceRule::HiddenMeasurement,
            "operator " + std::to_string(k) + " (\"" + op.name +
                "\"): MEASUREMENT may only appear as the final operator");
      }
    }

    if (dom != nullptr) {
      const int implied = implied_width(op);
      const bool exact = std::holds_alternative<IsingProblemParams>(op.params);
      if (implied >= 0 && (exact ? implied != dom->width : implied > dom->width)) {
        add(report, k, SequenceRule::WidthMismatch,
            "operator " + std::to_string(k) + " (\"" + op.name + "\"): params imply width " +
                std::to_string(implied) + " but \"" + dom->id + "\" has width " +
                std::to_string(dom->width));
      }
      if (op.result_schema) {
        const auto& order = op.result_schema->clbit_order;
        const QuantumDataType* reg = find_qdt(qdts, order.front().qdt_id);
        if (reg == nullptr) {
          add(report, k, SequenceRule::DomainMismatch,
              "operator " + std::to_string(k) + " (\"" + op.name +
                  "\"): result_schema references unknown register \"" +
                  order.front().qdt_id + "\"");
        } else if (order.size() != static_cast<std::size_t>(reg->width)) {
          add(report, k, SequenceRule::WidthMismatch,
              "operator " + std::to_string(k) + " (\"" + op.name +
                  "\"): clbit_order lists " + std::to_string(order.size()) +
                  " carriers but \"" + reg->id + "\" has width " +
                  std::to_string(reg->width));
        }
      }
      const CostHint cost = estimate_cost(op, dom->width);
      report.total_cost_hint.twoq += cost.twoq;
      report.total_cost_hint.depth += cost.depth;
    }
  }
  return report;
}

OperatorDescriptor invert(const OperatorDescriptor& op) {
  OperatorDescriptor out = op;
  switch (op.rep_kind) {
    case RepKind::QftTemplate: {
      auto p = std::get<QftParams>(op.params);
      p.inverse = !p.inverse;
      out.params = p;
      break;
    }
    case RepKind::IsingCostPhase: {
      auto p = std::get<IsingCostPhaseParams>(op.params);
      p.gamma = -p.gamma;
      out.params = p;
      break;
    }
    case RepKind::MixerRx: {
      auto p = std::get<MixerRxParams>(op.params);
      p.beta = -p.beta;
      out.params = p;
      break;
    }
    case RepKind::PrepUniform:
    case RepKind::Measurement:
    case RepKind::IsingProblem:
      throw NotInvertibleError(std::string(to_wire(op.rep_kind)) +
                               " has no formal inverse");
  }
  out.result_schema.reset();
  return out;
}

long long qft_twoq_count(int width, int approx_degree, bool do_swaps) {
  const long long reach = std::max(0, width - 1 - approx_degree);
  long long pairs = 0;
  for (int j = 1; j < width; ++j) pairs += std::min<long long>(j, reach);
  return pairs + (do_swaps ? 3LL * (width / 2) : 0LL);
}

CostHint estimate_cost(const OperatorDescriptor& op, int domain_width) {
  CostHint hint;
  switch (op.rep_kind) {
    case RepKind::QftTemplate: {
      const auto& p = std::get<QftParams>(op.params);
      hint.twoq = qft_twoq_count(domain_width, p.approx_degree, p.do_swaps);
      // Heuristic depth model: one H plus one rotation slot per carrier,
      // then the entangling network fully serialized.
      hint.depth = 2LL * domain_width + hint.twoq;
      break;
    }
    case RepKind::PrepUniform:
    case RepKind::MixerRx:
    case RepKind::Measurement:
      hint.twoq = 0;
      hint.depth = 1;
      break;
    case RepKind::IsingCostPhase: {
      const auto& p = std::get<IsingCostPhaseParams>(op.params);
      hint.twoq = static_cast<long long>(p.edges.size());
      hint.depth = static_cast<long long>(p.edges.size());
      break;
    }
    case RepKind::IsingProblem: {
      const auto& p = std::get<IsingProblemParams>(op.params);
      long long nnz = 0;
      for (Eigen::Index r = 0; r < p.j.rows(); ++r) {
        for (Eigen::Index c = r + 1; c < p.j.cols(); ++c) {
          if (p.j(r, c) != 0.0) ++nnz;
        }
      }
      hint.twoq = nnz;
      hint.depth = 0;  // nothing is scheduled; the problem is handed over whole
      break;
    }
  }
  return hint;
}

void validate_job(const JobBundle& job) {
  const std::string& engine = job.context.exec.engine;
  if (engine == kGateEngine) {
    for (std::size_t k = 0; k < job.operators.size(); ++k) {
      if (job.operators[k].rep_kind == RepKind::IsingProblem) {
        throw ValidationError("engine \"" + engine + "\" cannot realize rep_kind " +
                              std::string(to_wire(job.operators[k].rep_kind)) +
                              " (operator " + std::to_string(k) + ")");
      }
    }
  } else if (engine == kAnnealEngine) {
    if (job.operators.size() != 1 ||
        job.operators.front().rep_kind != RepKind::IsingProblem) {
      std::string kinds;
      for (const auto& op : job.operators) {
        if (!kinds.empty()) kinds += ", ";
        kinds += to_wire(op.rep_kind);
      }
      throw ValidationError("engine \"" + engine +
                            "\" realizes exactly one ISING_PROBLEM operator, got [" +
                            kinds + "]");
    }
  }
  // Unknown engines impose no capability constraint; the bundle is archival.

  if (job.context.exec.target) {
    const int width = job.max_width();
    const auto& pairs = job.context.exec.target->coupling_map;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i][0] >= width || pairs[i][1] >= width) {
        throw SemanticsError(
            "coupling pair [" + std::to_string(pairs[i][0]) + ", " +
                std::to_string(pairs[i][1]) + "] exceeds the widest register (width " +
                std::to_string(width) + ")",
            "context.exec.target.coupling_map[" + std::to_string(i) + "]");
      }
    }
  }
}

}  // namespace qdl
