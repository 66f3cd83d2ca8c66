#include "qdl/gate_backend.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <set>

#include "qdl/errors.hpp"

namespace qdl {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::Rx: return "rx";
    case GateKind::Rz: return "rz";
    case GateKind::Sx: return "sx";
    case GateKind::Cp: return "cp";
    case GateKind::Rzz: return "rzz";
    case GateKind::Cx: return "cx";
    case GateKind::Swap: return "swap";
  }
  return "?";
}

long long GateList::depth() const {
  std::vector<long long> level(n_qubits, 0);
  long long depth = 0;
  for (const Gate& g : gates) {
    long long at = level[g.q0];
    if (g.is_two_qubit()) at = std::max(at, level[g.q1]);
    ++at;
    level[g.q0] = at;
    if (g.is_two_qubit()) level[g.q1] = at;
    depth = std::max(depth, at);
  }
  return depth;
}

std::map<std::string, long long> GateList::gate_counts() const {
  std::map<std::string, long long> counts;
  for (const Gate& g : gates) ++counts[std::string(gate_name(g.kind))];
  return counts;
}

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
  amps_ = Eigen::VectorXcd::Zero(std::int64_t{1} << n_);
  amps_(0) = 1.0;
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t k) {
  Statevector s(n_qubits);
  s.amps_(0) = 0.0;
  s.amps_(static_cast<std::int64_t>(k)) = 1.0;
  return s;
}

double Statevector::norm() const { return amps_.norm(); }

Eigen::VectorXd Statevector::probabilities() const { return amps_.cwiseAbs2(); }

void Statevector::apply_single(int q, const Eigen::Matrix2cd& u) {
  const std::int64_t step = std::int64_t{1} << q;
  const std::int64_t dim = amps_.size();
  for (std::int64_t base = 0; base < dim; base += 2 * step) {
    for (std::int64_t i = base; i < base + step; ++i) {
      const std::complex<double> a0 = amps_(i);
      const std::complex<double> a1 = amps_(i + step);
      amps_(i) = u(0, 0) * a0 + u(0, 1) * a1;
      amps_(i + step) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

void Statevector::apply(const Gate& g) {
  using std::complex;
  constexpr complex<double> i1(0.0, 1.0);
  const std::int64_t dim = amps_.size();
  switch (g.kind) {
    case GateKind::H: {
      Eigen::Matrix2cd u;
      const double r = 1.0 / std::numbers::sqrt2;
      u << r, r, r, -r;
      apply_single(g.q0, u);
      break;
    }
    case GateKind::Rx: {
      Eigen::Matrix2cd u;
      const double c = std::cos(g.angle / 2);
      const double s = std::sin(g.angle / 2);
      u << c, -i1 * s, -i1 * s, c;
      apply_single(g.q0, u);
      break;
    }
    case GateKind::Rz: {
      Eigen::Matrix2cd u;
      u << std::exp(-i1 * (g.angle / 2)), 0.0, 0.0, std::exp(i1 * (g.angle / 2));
      apply_single(g.q0, u);
      break;
    }
    case GateKind::Sx: {
      Eigen::Matrix2cd u;
      u << 0.5 * complex<double>(1, 1), 0.5 * complex<double>(1, -1),
          0.5 * complex<double>(1, -1), 0.5 * complex<double>(1, 1);
      apply_single(g.q0, u);
      break;
    }
    case GateKind::Cp: {
      const std::int64_t mask = (std::int64_t{1} << g.q0) | (std::int64_t{1} << g.q1);
      const complex<double> phase = std::exp(i1 * g.angle);
      for (std::int64_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) amps_(i) *= phase;
      }
      break;
    }
    case GateKind::Rzz: {
      // diag(e^{-i t/2}, e^{+i t/2}, e^{+i t/2}, e^{-i t/2}) over (q0, q1)
      const complex<double> even = std::exp(-i1 * (g.angle / 2));
      const complex<double> odd = std::exp(i1 * (g.angle / 2));
      for (std::int64_t i = 0; i < dim; ++i) {
        const int parity = static_cast<int>((i >> g.q0) & 1) ^
                           static_cast<int>((i >> g.q1) & 1);
        amps_(i) *= parity ? odd : even;
      }
      break;
    }
    case GateKind::Cx: {
      const std::int64_t control = std::int64_t{1} << g.q0;
      const std::int64_t target = std::int64_t{1} << g.q1;
      for (std::int64_t i = 0; i < dim; ++i) {
        if ((i & control) && !(i & target)) {
          std::swap(amps_(i), amps_(i | target));
        }
      }
      break;
    }
    case GateKind::Swap: {
      const std::int64_t b0 = std::int64_t{1} << g.q0;
      const std::int64_t b1 = std::int64_t{1} << g.q1;
      for (std::int64_t i = 0; i < dim; ++i) {
        if ((i & b0) && !(i & b1)) {
          std::swap(amps_(i), amps_((i & ~b0) | b1));
        }
      }
      break;
    }
  }
}

namespace {

// Routing state: phys_of_log[l] is the physical wire currently holding
// logical carrier l. SWAPs permute the assignment and are never undone.
class Router {
 public:
  Router(int n, const std::vector<std::array<int, 2>>& coupling) : phys_of_log_(n) {
    for (int i = 0; i < n; ++i) phys_of_log_[i] = i;
    adjacency_.resize(n);
    for (const auto& pair : coupling) {
      adjacency_[pair[0]].push_back(pair[1]);
      adjacency_[pair[1]].push_back(pair[0]);
      edges_.insert(key(pair[0], pair[1]));
    }
    active_ = !coupling.empty();
  }

  bool active() const { return active_; }
  int phys(int logical) const { return phys_of_log_[logical]; }
  long long swaps_inserted() const { return swaps_; }

  // Brings the operands of a two-qubit gate adjacent, appending SWAPs to
  // `out`, and returns the physical pair to act on.
  std::pair<int, int> route(int log_a, int log_b, std::vector<Gate>& out) {
    int pa = phys_of_log_[log_a];
    const int pb = phys_of_log_[log_b];
    if (!active_ || adjacent(pa, pb)) return {pa, pb};

    const std::vector<int> path = shortest_path(pa, pb);
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      out.push_back({GateKind::Swap, path[i - 1], path[i], 0.0});
      swap_physical(path[i - 1], path[i]);
      ++swaps_;
    }
    pa = path[path.size() - 2];
    return {pa, pb};
  }

 private:
  static long long key(int a, int b) {
    return (static_cast<long long>(std::min(a, b)) << 32) | std::max(a, b);
  }

  bool adjacent(int a, int b) const { return edges_.count(key(a, b)) > 0; }

  void swap_physical(int pa, int pb) {
    for (int& p : phys_of_log_) {
      if (p == pa) {
        p = pb;
      } else if (p == pb) {
        p = pa;
      }
    }
  }

  std::vector<int> shortest_path(int from, int to) const {
    std::vector<int> parent(phys_of_log_.size(), -1);
    std::deque<int> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
      const int at = queue.front();
      queue.pop_front();
      if (at == to) break;
      for (const int next : adjacency_[at]) {
        if (parent[next] == -1) {
          parent[next] = at;
          queue.push_back(next);
        }
      }
    }
    if (parent[to] == -1) {
      throw DisconnectedCouplingError("no coupling path between physical carriers " +
                                      std::to_string(from) + " and " + std::to_string(to));
    }
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  std::vector<int> phys_of_log_;
  std::vector<std::vector<int>> adjacency_;
  std::set<long long> edges_;
  long long swaps_ = 0;
  bool active_ = false;
};

void emit_qft(const QftParams& p, int n, Router& router, std::vector<Gate>& out) {
  // Forward network: for j from n-1 down to 0, H(j) then CP(pi/2^(j-k)) for
  // each k < j with distance j-k <= n-1-approx_degree. The CP layer after an
  // H is diagonal, so intra-layer order is free; a fixed order keeps the
  // emitted list deterministic.
  const int reach = n - 1 - p.approx_degree;
  std::vector<Gate> network;
  for (int j = n - 1; j >= 0; --j) {
    network.push_back({GateKind::H, j, -1, 0.0});
    for (int k = j - 1; k >= 0; --k) {
      if (j - k > reach) continue;
      const double angle = std::numbers::pi / static_cast<double>(1LL << (j - k));
      network.push_back({GateKind::Cp, k, j, angle});
    }
  }
  if (p.do_swaps) {
    for (int i = 0; i < n / 2; ++i) {
      network.push_back({GateKind::Swap, i, n - 1 - i, 0.0});
    }
  }
  if (p.inverse) {
    std::reverse(network.begin(), network.end());
    for (Gate& g : network) g.angle = -g.angle;
  }
  for (const Gate& g : network) {
    if (g.is_two_qubit()) {
      const auto [pa, pb] = router.route(g.q0, g.q1, out);
      out.push_back({g.kind, pa, pb, g.angle});
    } else {
      out.push_back({g.kind, router.phys(g.q0), -1, g.angle});
    }
  }
}

}  // namespace

GateList lower(const std::vector<OperatorDescriptor>& ops,
               const std::vector<QuantumDataType>& qdts, const ContextDescriptor& ctx) {
  if (ops.empty()) throw UnrealizableError("nothing to lower: empty operator sequence");

  const QuantumDataType* reg = find_qdt(qdts, ops.front().domain_qdt);
  if (reg == nullptr) {
    throw UnresolvedReferenceError("domain_qdt \"" + ops.front().domain_qdt +
                                   "\" does not resolve");
  }
  for (const auto& op : ops) {
    if (op.domain_qdt != reg->id || op.codomain_qdt != reg->id) {
      throw UnrealizableError(
          "gate lowering supports a single register; operator \"" + op.name +
          "\" references \"" + op.domain_qdt + "\"/\"" + op.codomain_qdt + "\"");
    }
  }

  GateList gl;
  gl.n_qubits = reg->width;
  Router router(reg->width,
                ctx.exec.target ? ctx.exec.target->coupling_map
                                : std::vector<std::array<int, 2>>{});

  for (const auto& op : ops) {
    switch (op.rep_kind) {
      case RepKind::PrepUniform:
        for (int q = 0; q < gl.n_qubits; ++q) {
          gl.gates.push_back({GateKind::H, router.phys(q), -1, 0.0});
        }
        break;
      case RepKind::IsingCostPhase: {
        const auto& p = std::get<IsingCostPhaseParams>(op.params);
        for (std::size_t e = 0; e < p.edges.size(); ++e) {
          const auto [pa, pb] = router.route(p.edges[e][0], p.edges[e][1], gl.gates);
          gl.gates.push_back({GateKind::Rzz, pa, pb, 2.0 * p.gamma * p.weights[e]});
        }
        break;
      }
      case RepKind::MixerRx: {
        const auto& p = std::get<MixerRxParams>(op.params);
        for (int q = 0; q < gl.n_qubits; ++q) {
          gl.gates.push_back({GateKind::Rx, router.phys(q), -1, 2.0 * p.beta});
        }
        break;
      }
      case RepKind::QftTemplate:
        emit_qft(std::get<QftParams>(op.params), gl.n_qubits, router, gl.gates);
        break;
      case RepKind::Measurement: {
        if (!op.result_schema) {
          throw SemanticsError("MEASUREMENT requires a result_schema");
        }
        const auto& order = op.result_schema->clbit_order;
        for (const auto& ref : order) {
          gl.measure_order.push_back(router.phys(ref.index));
        }
        break;
      }
      case RepKind::IsingProblem:
        throw UnrealizableError("rep_kind ISING_PROBLEM cannot be realized by engine \"" +
                                ctx.exec.engine + "\"");
    }
  }

  gl.routing_overhead.swaps_inserted = router.swaps_inserted();

  if (ctx.exec.target && !ctx.exec.target->basis_gates.empty()) {
    const std::set<std::string> declared(ctx.exec.target->basis_gates.begin(),
                                         ctx.exec.target->basis_gates.end());
    std::set<std::string> flagged;
    for (const auto& [kind, count] : gl.gate_counts()) {
      (void)count;
      if (declared.count(kind) == 0 && flagged.insert(kind).second) {
        gl.warnings.push_back("lowered gate \"" + kind +
                              "\" is outside the declared basis_gates");
      }
    }
  }
  return gl;
}

Statevector run_gates(const GateList& gl, Statevector state) {
  for (const Gate& g : gl.gates) {
    state.apply(g);
    if (std::abs(state.norm() - 1.0) > 1e-8) {
      throw NormalizationError("statevector norm drifted to " +
                               std::to_string(state.norm()));
    }
  }
  return state;
}

Counts simulate(const GateList& gl, const ContextDescriptor& ctx) {
  if (gl.n_qubits > kMaxSimQubits) {
    throw CapacityError("dense simulation supports up to " +
                        std::to_string(kMaxSimQubits) + " carriers, got " +
                        std::to_string(gl.n_qubits));
  }

  const Statevector state = run_gates(gl, Statevector(gl.n_qubits));
  const Eigen::VectorXd probs = state.probabilities();
  Eigen::VectorXd cumulative(probs.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    total += probs(i);
    cumulative(i) = total;
  }

  std::mt19937_64 rng(ctx.exec.seed);
  Counts counts;
  for (long long s = 0; s < ctx.exec.samples; ++s) {
    // 53-bit uniform in [0, 1); scaled by the true total to absorb rounding.
    const double u =
        static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0) * total;
    const double* begin = cumulative.data();
    const double* end = begin + cumulative.size();
    const Eigen::Index idx = std::upper_bound(begin, end, u) - begin;
    const std::int64_t outcome = std::min<std::int64_t>(idx, cumulative.size() - 1);

    std::string bits(gl.measure_order.size(), '0');
    for (std::size_t p = 0; p < gl.measure_order.size(); ++p) {
      bits[p] = static_cast<char>('0' + ((outcome >> gl.measure_order[p]) & 1));
    }
    ++counts[bits];
  }
  return counts;
}

nlohmann::json run_gate_job(const JobBundle& job) {
  const GateList gl = lower(job.operators, job.qdts, job.context);
  const Counts counts = simulate(gl, job.context);

  nlohmann::json out;
  out["engine"] = job.context.exec.engine;
  out["samples"] = job.context.exec.samples;
  out["seed"] = job.context.exec.seed;
  auto& jcounts = out["counts"] = nlohmann::json::object();
  for (const auto& [bits, count] : counts) jcounts[bits] = count;
  out["routing_overhead"] =
      nlohmann::json{{"swaps_inserted", gl.routing_overhead.swaps_inserted}};
  out["gate_counts"] = gl.gate_counts();
  out["depth"] = gl.depth();
  if (!gl.warnings.empty()) out["warnings"] = gl.warnings;
  return out;
}

}  // namespace qdl
