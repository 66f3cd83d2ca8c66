#include "qdl/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string_view>

#include "qdl/errors.hpp"
#include "qdl/validate.hpp"

namespace qdl {
namespace {

using nlohmann::json;

std::string join(const std::string& base, std::string_view key) {
  if (base.empty()) return std::string(key);
  return base + "." + std::string(key);
}

std::string at_index(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

// Field access helpers. The error type parameter selects the taxonomy:
// SchemaError for descriptor fields, ParamError inside a params block.

template <class E>
const json& need(const json& obj, std::string_view key, const std::string& base) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw E("missing field \"" + std::string(key) + "\"", join(base, key));
  }
  return *it;
}

template <class E>
std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw E("expected a string", path);
  return v.get<std::string>();
}

template <class E>
bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw E("expected a boolean", path);
  return v.get<bool>();
}

template <class E>
long long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw E("expected an integer", path);
  return v.get<long long>();
}

template <class E>
double as_finite_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw E("expected a number", path);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw E("expected a finite number", path);
  return x;
}

template <class E>
std::string need_string(const json& obj, std::string_view key, const std::string& base) {
  return as_string<E>(need<E>(obj, key, base), join(base, key));
}

template <class E>
long long need_integer(const json& obj, std::string_view key, const std::string& base) {
  return as_integer<E>(need<E>(obj, key, base), join(base, key));
}

template <class E>
bool need_bool(const json& obj, std::string_view key, const std::string& base) {
  return as_bool<E>(need<E>(obj, key, base), join(base, key));
}

template <class E>
double need_number(const json& obj, std::string_view key, const std::string& base) {
  return as_finite_number<E>(need<E>(obj, key, base), join(base, key));
}

template <class E>
void need_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw E("expected an object", path);
}

template <class E>
void need_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw E("expected an array", path);
}

// Strict blocks (exec, params, ...) reject unknown keys outright.
template <class E>
void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> known,
                         const std::string& base) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw E("unexpected field \"" + key + "\"", join(base, key));
    }
  }
}

// Top-level descriptor documents instead fold unknown keys into the
// extensions bag so future fields survive a round trip.
json collect_extensions(const json& obj, std::initializer_list<std::string_view> known,
                        const std::string& base) {
  json bag = json::object();
  if (const auto it = obj.find("extensions"); it != obj.end()) {
    need_object<SchemaError>(*it, join(base, "extensions"));
    bag = *it;
  }
  for (const auto& [key, value] : obj.items()) {
    if (key == "extensions") continue;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      bag[key] = value;
    }
  }
  return bag;
}

void check_schema_id(const json& doc, std::string_view expected, const std::string& base) {
  const std::string got = need_string<SchemaError>(doc, "$schema", base);
  if (got != expected) {
    throw SchemaError("unknown schema id \"" + got + "\" (expected \"" +
                          std::string(expected) + "\")",
                      join(base, "$schema"));
  }
}

// Gate vocabulary accepted in target.basis_gates. Lowering understands a
// subset; the rest are legal constraint names that simply trigger warnings.
bool recognized_gate_name(const std::string& g) {
  static const std::set<std::string, std::less<>> names = {
      "id", "x",  "y",  "z",  "h",  "s",   "sdg",  "t",    "tdg",
      "sx", "rx", "ry", "rz", "cx", "cz",  "cp",   "rzz",  "swap",
      "measure"};
  return names.count(g) > 0;
}

QuantumDataType parse_qdt_impl(const json& doc, const std::string& base) {
  need_object<SchemaError>(doc, base);
  QuantumDataType q;
  check_schema_id(doc, kQdtSchemaId, base);
  q.schema_id = std::string(kQdtSchemaId);
  q.id = need_string<SchemaError>(doc, "id", base);
  if (q.id.empty()) throw SchemaError("id must be non-empty", join(base, "id"));
  q.name = need_string<SchemaError>(doc, "name", base);
  const long long width = need_integer<SchemaError>(doc, "width", base);
  if (width < 1) {
    throw SchemaError("width must be a positive integer", join(base, "width"));
  }
  q.width = static_cast<int>(width);
  q.encoding_kind = encoding_kind_from_wire(
      need_string<SchemaError>(doc, "encoding_kind", base), join(base, "encoding_kind"));
  q.bit_order = bit_order_from_wire(need_string<SchemaError>(doc, "bit_order", base),
                                    join(base, "bit_order"));
  q.measurement_semantics =
      semantics_from_wire(need_string<SchemaError>(doc, "measurement_semantics", base),
                          join(base, "measurement_semantics"));

  if (q.measurement_semantics != required_semantics(q.encoding_kind)) {
    throw SemanticsError(
        "measurement_semantics " + std::string(to_wire(q.measurement_semantics)) +
            " is illegal for encoding_kind " + std::string(to_wire(q.encoding_kind)),
        join(base, "measurement_semantics"));
  }

  const auto scale_it = doc.find("phase_scale");
  if (q.encoding_kind == EncodingKind::PhaseRegister) {
    if (scale_it == doc.end()) {
      throw SemanticsError("phase_scale is required for PHASE_REGISTER",
                           join(base, "phase_scale"));
    }
  } else if (scale_it != doc.end()) {
    throw SemanticsError("phase_scale is only legal for PHASE_REGISTER",
                         join(base, "phase_scale"));
  }
  if (scale_it != doc.end()) {
    const std::string path = join(base, "phase_scale");
    if (!scale_it->is_string()) {
      throw RationalParseError("phase_scale must be a string of the form \"p/q\"", path);
    }
    Rational scale;
    try {
      scale = Rational::parse(scale_it->get<std::string>());
    } catch (const RationalParseError&) {
      throw RationalParseError("phase_scale must be \"p/q\" with integer p and q > 0",
                               path);
    }
    if (!scale.positive() || scale.num() > scale.den()) {
      throw SemanticsError("phase_scale must lie in (0, 1]", path);
    }
    q.phase_scale = scale;
  }

  q.extensions = collect_extensions(
      doc,
      {"$schema", "id", "name", "width", "encoding_kind", "bit_order",
       "measurement_semantics", "phase_scale"},
      base);
  return q;
}

// width < 0 means the register could not be resolved (standalone parse);
// range checks against the register width are skipped in that case.
ResultSchema parse_result_schema(const json& doc, const std::string& base,
                                 const std::vector<QuantumDataType>* bundle_qdts) {
  need_object<SchemaError>(doc, base);
  reject_unknown_keys<SchemaError>(doc, {"basis", "datatype", "bit_significance", "clbit_order"},
                                   base);
  ResultSchema rs;
  rs.basis = need_string<SchemaError>(doc, "basis", base);
  if (rs.basis != "Z") {
    throw SchemaError("unsupported measurement basis \"" + rs.basis + "\"",
                      join(base, "basis"));
  }
  rs.datatype = semantics_from_wire(need_string<SchemaError>(doc, "datatype", base),
                                    join(base, "datatype"));
  rs.bit_significance =
      bit_order_from_wire(need_string<SchemaError>(doc, "bit_significance", base),
                          join(base, "bit_significance"));

  const json& order = need<SchemaError>(doc, "clbit_order", base);
  const std::string order_path = join(base, "clbit_order");
  need_array<SchemaError>(order, order_path);
  if (order.empty()) throw SemanticsError("clbit_order must not be empty", order_path);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::string entry_path = at_index(order_path, i);
    rs.clbit_order.push_back(
        CarrierRef::parse(as_string<SchemaError>(order[i], entry_path), entry_path));
  }

  const std::string& reg = rs.clbit_order.front().qdt_id;
  std::set<int> seen;
  for (std::size_t i = 0; i < rs.clbit_order.size(); ++i) {
    const auto& ref = rs.clbit_order[i];
    if (ref.qdt_id != reg) {
      throw SemanticsError("clbit_order must reference a single register",
                           at_index(order_path, i));
    }
    if (!seen.insert(ref.index).second) {
      throw SemanticsError("carrier " + ref.str() + " referenced more than once",
                           at_index(order_path, i));
    }
  }

  if (bundle_qdts != nullptr) {
    const QuantumDataType* q = find_qdt(*bundle_qdts, reg);
    if (q == nullptr) {
      throw UnresolvedReferenceError("register \"" + reg + "\" does not resolve",
                                     order_path);
    }
    if (rs.clbit_order.size() != static_cast<std::size_t>(q->width) ||
        *seen.rbegin() >= q->width) {
      throw SemanticsError("clbit_order must cover each of the " +
                               std::to_string(q->width) + " carriers of \"" + reg +
                               "\" exactly once",
                           order_path);
    }
    if (rs.datatype != q->measurement_semantics) {
      throw SemanticsError("datatype " + std::string(to_wire(rs.datatype)) +
                               " does not match the register's measurement semantics",
                           join(base, "datatype"));
    }
  }
  return rs;
}

// Edge lists shared by ISING_COST_PHASE and the edge form of ISING_PROBLEM.
std::vector<std::array<int, 2>> parse_edge_pairs(const json& v, const std::string& path,
                                                 int width) {
  need_array<ParamError>(v, path);
  std::vector<std::array<int, 2>> edges;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string edge_path = at_index(path, i);
    const json& e = v[i];
    if (!e.is_array() || e.size() != 2) {
      throw ParamError("each edge must be a pair [i, j]", edge_path);
    }
    const int a = static_cast<int>(as_integer<ParamError>(e[0], edge_path));
    const int b = static_cast<int>(as_integer<ParamError>(e[1], edge_path));
    if (a < 0 || b < 0 || (width >= 0 && (a >= width || b >= width))) {
      throw ParamError("edge index out of range [0, width)", edge_path);
    }
    if (a == b) throw ParamError("edge must join two distinct carriers", edge_path);
    edges.push_back({a, b});
  }
  return edges;
}

std::vector<double> parse_weights(const json& v, const std::string& path) {
  need_array<ParamError>(v, path);
  std::vector<double> w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    w.push_back(as_finite_number<ParamError>(v[i], at_index(path, i)));
  }
  return w;
}

QftParams parse_qft_params(const json& p, const std::string& base, int width) {
  reject_unknown_keys<ParamError>(p, {"approx_degree", "do_swaps", "inverse"}, base);
  QftParams out;
  const long long degree = need_integer<ParamError>(p, "approx_degree", base);
  if (degree < 0) {
    throw ParamError("approx_degree must be a nonnegative integer",
                     join(base, "approx_degree"));
  }
  if (width >= 0 && degree >= width) {
    throw ParamError("approx_degree must be smaller than the register width",
                     join(base, "approx_degree"));
  }
  out.approx_degree = static_cast<int>(degree);
  out.do_swaps = need_bool<ParamError>(p, "do_swaps", base);
  out.inverse = need_bool<ParamError>(p, "inverse", base);
  return out;
}

IsingCostPhaseParams parse_cost_phase_params(const json& p, const std::string& base,
                                             int width) {
  reject_unknown_keys<ParamError>(p, {"gamma", "edges", "weights"}, base);
  IsingCostPhaseParams out;
  out.gamma = need_number<ParamError>(p, "gamma", base);
  out.edges = parse_edge_pairs(need<ParamError>(p, "edges", base), join(base, "edges"), width);
  out.weights = parse_weights(need<ParamError>(p, "weights", base), join(base, "weights"));
  if (out.edges.size() != out.weights.size()) {
    throw ParamError("edges and weights must have the same length", join(base, "weights"));
  }
  return out;
}

MixerRxParams parse_mixer_params(const json& p, const std::string& base) {
  reject_unknown_keys<ParamError>(p, {"beta"}, base);
  return MixerRxParams{need_number<ParamError>(p, "beta", base)};
}

IsingProblemParams parse_ising_problem_params(const json& p, const std::string& base,
                                              int width) {
  reject_unknown_keys<ParamError>(p, {"h", "j", "edges", "weights"}, base);
  IsingProblemParams out;

  const json& hv = need<ParamError>(p, "h", base);
  const std::string h_path = join(base, "h");
  need_array<ParamError>(hv, h_path);
  const int n = static_cast<int>(hv.size());
  if (n == 0) throw ParamError("h must not be empty", h_path);
  if (width >= 0 && n != width) {
    throw ParamError("h must have one entry per carrier of the register", h_path);
  }
  out.h.resize(n);
  for (int i = 0; i < n; ++i) {
    out.h(i) = as_finite_number<ParamError>(hv[i], at_index(h_path, i));
  }

  const bool has_matrix = p.contains("j");
  const bool has_edges = p.contains("edges") || p.contains("weights");
  if (has_matrix == has_edges) {
    throw ParamError("couplings must be given either as a matrix \"j\" or as "
                     "\"edges\"/\"weights\", not both",
                     base);
  }

  out.j = Eigen::MatrixXd::Zero(n, n);
  if (has_matrix) {
    const json& jv = p["j"];
    const std::string j_path = join(base, "j");
    need_array<ParamError>(jv, j_path);
    if (static_cast<int>(jv.size()) != n) {
      throw ParamError("j must be a " + std::to_string(n) + "x" + std::to_string(n) +
                           " matrix",
                       j_path);
    }
    for (int r = 0; r < n; ++r) {
      const std::string row_path = at_index(j_path, r);
      need_array<ParamError>(jv[r], row_path);
      if (static_cast<int>(jv[r].size()) != n) {
        throw ParamError("j rows must each have " + std::to_string(n) + " entries",
                         row_path);
      }
      for (int c = 0; c < n; ++c) {
        out.j(r, c) = as_finite_number<ParamError>(jv[r][c], at_index(row_path, c));
      }
    }
    for (int r = 0; r < n; ++r) {
      if (out.j(r, r) != 0.0) {
        throw ParamError("j must have a zero diagonal", at_index(j_path, r));
      }
      for (int c = r + 1; c < n; ++c) {
        if (out.j(r, c) != out.j(c, r)) {
          throw ParamError("j must be symmetric: j[" + std::to_string(r) + "][" +
                               std::to_string(c) + "] != j[" + std::to_string(c) + "][" +
                               std::to_string(r) + "]",
                           j_path);
        }
      }
    }
  } else {
    const auto edges =
        parse_edge_pairs(need<ParamError>(p, "edges", base), join(base, "edges"), n);
    const auto weights =
        parse_weights(need<ParamError>(p, "weights", base), join(base, "weights"));
    if (edges.size() != weights.size()) {
      throw ParamError("edges and weights must have the same length",
                       join(base, "weights"));
    }
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto [a, b] = edges[k];
      if (out.j(a, b) != 0.0) {
        throw ParamError("duplicate edge (" + std::to_string(a) + ", " +
                             std::to_string(b) + ")",
                         at_index(join(base, "edges"), k));
      }
      out.j(a, b) = weights[k];
      out.j(b, a) = weights[k];
    }
  }
  return out;
}

OperatorParams parse_params(RepKind kind, const json& doc, const std::string& base,
                            int width) {
  // An absent params block is treated as the empty record; the kind-specific
  // required fields then fail with ParamError at their own path.
  json empty = json::object();
  const json* p = &empty;
  if (const auto it = doc.find("params"); it != doc.end()) {
    need_object<SchemaError>(*it, join(base, "params"));
    p = &*it;
  }
  const std::string pb = join(base, "params");
  switch (kind) {
    case RepKind::QftTemplate:
      return parse_qft_params(*p, pb, width);
    case RepKind::PrepUniform:
      reject_unknown_keys<ParamError>(*p, {}, pb);
      return PrepUniformParams{};
    case RepKind::IsingCostPhase:
      return parse_cost_phase_params(*p, pb, width);
    case RepKind::MixerRx:
      return parse_mixer_params(*p, pb);
    case RepKind::Measurement:
      reject_unknown_keys<ParamError>(*p, {}, pb);
      return MeasurementParams{};
    case RepKind::IsingProblem:
      return parse_ising_problem_params(*p, pb, width);
  }
  throw SchemaError("unknown rep_kind", join(base, "rep_kind"));
}

OperatorDescriptor parse_operator_impl(const json& doc, const std::string& base,
                                       const std::vector<QuantumDataType>* bundle_qdts) {
  need_object<SchemaError>(doc, base);
  OperatorDescriptor op;
  check_schema_id(doc, kOperatorSchemaId, base);
  op.schema_id = std::string(kOperatorSchemaId);
  op.name = need_string<SchemaError>(doc, "name", base);
  op.rep_kind = rep_kind_from_wire(need_string<SchemaError>(doc, "rep_kind", base),
                                   join(base, "rep_kind"));
  op.domain_qdt = need_string<SchemaError>(doc, "domain_qdt", base);
  op.codomain_qdt = need_string<SchemaError>(doc, "codomain_qdt", base);

  int width = -1;
  if (bundle_qdts != nullptr) {
    const QuantumDataType* dom = find_qdt(*bundle_qdts, op.domain_qdt);
    if (dom == nullptr) {
      throw UnresolvedReferenceError(
          "domain_qdt \"" + op.domain_qdt + "\" does not resolve", join(base, "domain_qdt"));
    }
    if (find_qdt(*bundle_qdts, op.codomain_qdt) == nullptr) {
      throw UnresolvedReferenceError(
          "codomain_qdt \"" + op.codomain_qdt + "\" does not resolve",
          join(base, "codomain_qdt"));
    }
    width = dom->width;
  }

  op.params = parse_params(op.rep_kind, doc, base, width);

  if (const auto it = doc.find("cost_hint"); it != doc.end()) {
    const std::string hb = join(base, "cost_hint");
    need_object<SchemaError>(*it, hb);
    reject_unknown_keys<SchemaError>(*it, {"twoq", "depth"}, hb);
    CostHint hint;
    hint.twoq = need_integer<SchemaError>(*it, "twoq", hb);
    hint.depth = need_integer<SchemaError>(*it, "depth", hb);
    if (hint.twoq < 0 || hint.depth < 0) {
      throw SchemaError("cost_hint entries must be nonnegative", hb);
    }
    op.cost_hint = hint;
  }

  const bool needs_schema =
      op.rep_kind == RepKind::Measurement || op.rep_kind == RepKind::IsingProblem;
  if (const auto it = doc.find("result_schema"); it != doc.end()) {
    op.result_schema = parse_result_schema(*it, join(base, "result_schema"), bundle_qdts);
  } else if (needs_schema) {
    throw SemanticsError(std::string(to_wire(op.rep_kind)) + " requires a result_schema",
                         join(base, "result_schema"));
  }

  op.extensions = collect_extensions(doc,
                                     {"$schema", "name", "rep_kind", "domain_qdt",
                                      "codomain_qdt", "params", "cost_hint",
                                      "result_schema"},
                                     base);
  return op;
}

ContextDescriptor parse_context_impl(const json& doc, const std::string& base) {
  need_object<SchemaError>(doc, base);
  ContextDescriptor ctx;
  check_schema_id(doc, kContextSchemaId, base);
  ctx.schema_id = std::string(kContextSchemaId);

  const json& exec = need<SchemaError>(doc, "exec", base);
  const std::string eb = join(base, "exec");
  need_object<SchemaError>(exec, eb);
  reject_unknown_keys<SchemaError>(exec, {"engine", "samples", "seed", "target", "options"},
                                   eb);
  ctx.exec.engine = need_string<SchemaError>(exec, "engine", eb);
  if (ctx.exec.engine.empty()) {
    throw SchemaError("engine must be non-empty", join(eb, "engine"));
  }
  ctx.exec.samples = need_integer<SchemaError>(exec, "samples", eb);
  if (ctx.exec.samples < 1) {
    throw SchemaError("samples must be a positive integer", join(eb, "samples"));
  }
  {
    const json& seed = need<SchemaError>(exec, "seed", eb);
    const std::string sp = join(eb, "seed");
    if (seed.is_number_unsigned()) {
      ctx.exec.seed = seed.get<std::uint64_t>();
    } else if (seed.is_number_integer()) {
      const long long s = seed.get<long long>();
      if (s < 0) throw SchemaError("seed must be a nonnegative integer", sp);
      ctx.exec.seed = static_cast<std::uint64_t>(s);
    } else {
      throw SchemaError("seed must be a nonnegative integer", sp);
    }
  }

  if (const auto it = exec.find("target"); it != exec.end()) {
    const std::string tb = join(eb, "target");
    need_object<SchemaError>(*it, tb);
    reject_unknown_keys<SchemaError>(*it, {"basis_gates", "coupling_map"}, tb);
    TargetConstraints target;
    if (const auto bg = it->find("basis_gates"); bg != it->end()) {
      const std::string gb = join(tb, "basis_gates");
      need_array<SchemaError>(*bg, gb);
      for (std::size_t i = 0; i < bg->size(); ++i) {
        const std::string gp = at_index(gb, i);
        const std::string g = as_string<SchemaError>((*bg)[i], gp);
        if (!recognized_gate_name(g)) {
          throw SchemaError("unrecognized gate name \"" + g + "\"", gp);
        }
        target.basis_gates.push_back(g);
      }
    }
    if (const auto cm = it->find("coupling_map"); cm != it->end()) {
      const std::string cb = join(tb, "coupling_map");
      need_array<SchemaError>(*cm, cb);
      for (std::size_t i = 0; i < cm->size(); ++i) {
        const std::string cp = at_index(cb, i);
        const json& pair = (*cm)[i];
        if (!pair.is_array() || pair.size() != 2) {
          throw SchemaError("each coupling must be a pair [i, j]", cp);
        }
        const int a = static_cast<int>(as_integer<SchemaError>(pair[0], cp));
        const int b = static_cast<int>(as_integer<SchemaError>(pair[1], cp));
        if (a < 0 || b < 0) throw SchemaError("coupling indices must be nonnegative", cp);
        if (a == b) throw SchemaError("coupling must join two distinct carriers", cp);
        target.coupling_map.push_back({a, b});
      }
    }
    ctx.exec.target = std::move(target);
  }

  if (const auto it = exec.find("options"); it != exec.end()) {
    need_object<SchemaError>(*it, join(eb, "options"));
    ctx.exec.options = *it;
  }

  if (const auto it = doc.find("anneal"); it != doc.end()) {
    const std::string ab = join(base, "anneal");
    need_object<SchemaError>(*it, ab);
    reject_unknown_keys<SchemaError>(*it, {"num_reads", "num_sweeps", "beta_range"}, ab);
    AnnealSettings a;
    if (it->contains("num_reads")) {
      a.num_reads = need_integer<SchemaError>(*it, "num_reads", ab);
      if (a.num_reads < 1) {
        throw SchemaError("num_reads must be a positive integer", join(ab, "num_reads"));
      }
    }
    if (it->contains("num_sweeps")) {
      a.num_sweeps = need_integer<SchemaError>(*it, "num_sweeps", ab);
      if (a.num_sweeps < 1) {
        throw SchemaError("num_sweeps must be a positive integer", join(ab, "num_sweeps"));
      }
    }
    if (it->contains("beta_range")) {
      const json& br = (*it)["beta_range"];
      const std::string bp = join(ab, "beta_range");
      if (!br.is_array() || br.size() != 2) {
        throw SchemaError("beta_range must be a pair of positive reals", bp);
      }
      a.beta_range[0] = as_finite_number<SchemaError>(br[0], at_index(bp, 0));
      a.beta_range[1] = as_finite_number<SchemaError>(br[1], at_index(bp, 1));
      if (a.beta_range[0] <= 0.0 || a.beta_range[1] <= 0.0) {
        throw SchemaError("beta_range must be a pair of positive reals", bp);
      }
    }
    ctx.anneal = a;
  }

  if (const auto it = doc.find("qec"); it != doc.end()) {
    const std::string qb = join(base, "qec");
    need_object<SchemaError>(*it, qb);
    reject_unknown_keys<SchemaError>(
        *it, {"code_family", "distance", "allocator", "logical_gate_set"}, qb);
    QecPolicy qec;
    qec.code_family = need_string<SchemaError>(*it, "code_family", qb);
    const long long d = need_integer<SchemaError>(*it, "distance", qb);
    if (d < 1 || d % 2 == 0) {
      throw SchemaError("distance must be a positive odd integer", join(qb, "distance"));
    }
    qec.distance = static_cast<int>(d);
    qec.allocator = need_string<SchemaError>(*it, "allocator", qb);
    const json& gates = need<SchemaError>(*it, "logical_gate_set", qb);
    const std::string gp = join(qb, "logical_gate_set");
    need_array<SchemaError>(gates, gp);
    for (std::size_t i = 0; i < gates.size(); ++i) {
      qec.logical_gate_set.push_back(as_string<SchemaError>(gates[i], at_index(gp, i)));
    }
    ctx.qec = std::move(qec);
  }

  ctx.extensions = collect_extensions(doc, {"$schema", "exec", "anneal", "qec"}, base);
  return ctx;
}

}  // namespace

QuantumDataType parse_qdt(const json& doc) { return parse_qdt_impl(doc, ""); }

QuantumDataType parse_qdt(const std::string& text) {
  return parse_qdt(load_json_text(text));
}

OperatorDescriptor parse_operator(const json& doc,
                                  const std::vector<QuantumDataType>& bundle_qdts) {
  return parse_operator_impl(doc, "", &bundle_qdts);
}

OperatorDescriptor parse_operator(const std::string& text,
                                  const std::vector<QuantumDataType>& bundle_qdts) {
  return parse_operator(load_json_text(text), bundle_qdts);
}

OperatorDescriptor parse_operator_standalone(const json& doc) {
  return parse_operator_impl(doc, "", nullptr);
}

ContextDescriptor parse_context(const json& doc) { return parse_context_impl(doc, ""); }

ContextDescriptor parse_context(const std::string& text) {
  return parse_context(load_json_text(text));
}

JobBundle parse_job(const json& doc) {
  need_object<SchemaError>(doc, "");
  reject_unknown_keys<SchemaError>(doc, {"qdts", "operators", "context", "provenance"}, "");

  JobBundle job;
  const json& qdts = need<SchemaError>(doc, "qdts", "");
  need_array<SchemaError>(qdts, "qdts");
  if (qdts.empty()) throw SchemaError("qdts must contain at least one register", "qdts");
  for (std::size_t i = 0; i < qdts.size(); ++i) {
    job.qdts.push_back(parse_qdt_impl(qdts[i], at_index("qdts", i)));
    for (std::size_t k = 0; k < i; ++k) {
      if (job.qdts[k].id == job.qdts[i].id) {
        throw SemanticsError("duplicate register id \"" + job.qdts[i].id + "\"",
                             join(at_index("qdts", i), "id"));
      }
    }
  }

  const json& ops = need<SchemaError>(doc, "operators", "");
  need_array<SchemaError>(ops, "operators");
  if (ops.empty()) {
    throw SchemaError("operators must contain at least one operator", "operators");
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    job.operators.push_back(parse_operator_impl(ops[i], at_index("operators", i), &job.qdts));
  }

  job.context = parse_context_impl(need<SchemaError>(doc, "context", ""), "context");

  const json& prov = need<SchemaError>(doc, "provenance", "");
  need_object<SchemaError>(prov, "provenance");
  reject_unknown_keys<SchemaError>(prov, {"tool_version", "created_at", "source"},
                                   "provenance");
  job.provenance.tool_version = need_string<SchemaError>(prov, "tool_version", "provenance");
  job.provenance.created_at = need_string<SchemaError>(prov, "created_at", "provenance");
  job.provenance.source = need_string<SchemaError>(prov, "source", "provenance");

  const SequenceReport report = check_sequence(job.operators, job.qdts);
  if (!report.ok) {
    throw ValidationError("operator sequence is not composable: " +
                              report.violations.front().message,
                          report);
  }
  validate_job(job);
  return job;
}

JobBundle parse_job(const std::string& text) { return parse_job(load_json_text(text)); }

json to_json(const QuantumDataType& qdt) {
  json j;
  j["$schema"] = qdt.schema_id;
  j["id"] = qdt.id;
  j["name"] = qdt.name;
  j["width"] = qdt.width;
  j["encoding_kind"] = to_wire(qdt.encoding_kind);
  j["bit_order"] = to_wire(qdt.bit_order);
  j["measurement_semantics"] = to_wire(qdt.measurement_semantics);
  if (qdt.phase_scale) j["phase_scale"] = qdt.phase_scale->str();
  if (!qdt.extensions.empty()) j["extensions"] = qdt.extensions;
  return j;
}

json to_json(const ResultSchema& rs) {
  json j;
  j["basis"] = rs.basis;
  j["datatype"] = to_wire(rs.datatype);
  j["bit_significance"] = to_wire(rs.bit_significance);
  auto& order = j["clbit_order"] = json::array();
  for (const auto& ref : rs.clbit_order) order.push_back(ref.str());
  return j;
}

namespace {

json params_to_json(const OperatorDescriptor& op) {
  json p = json::object();
  std::visit(
      [&p](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, QftParams>) {
          p["approx_degree"] = v.approx_degree;
          p["do_swaps"] = v.do_swaps;
          p["inverse"] = v.inverse;
        } else if constexpr (std::is_same_v<T, IsingCostPhaseParams>) {
          p["gamma"] = v.gamma;
          auto& edges = p["edges"] = json::array();
          for (const auto& e : v.edges) edges.push_back(json::array({e[0], e[1]}));
          p["weights"] = v.weights;
        } else if constexpr (std::is_same_v<T, MixerRxParams>) {
          p["beta"] = v.beta;
        } else if constexpr (std::is_same_v<T, IsingProblemParams>) {
          auto& h = p["h"] = json::array();
          for (Eigen::Index i = 0; i < v.h.size(); ++i) h.push_back(v.h(i));
          auto& rows = p["j"] = json::array();
          for (Eigen::Index r = 0; r < v.j.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < v.j.cols(); ++c) row.push_back(v.j(r, c));
            rows.push_back(std::move(row));
          }
        }
      },
      op.params);
  return p;
}

}  // namespace

json to_json(const OperatorDescriptor& op) {
  json j;
  j["$schema"] = op.schema_id;
  j["name"] = op.name;
  j["rep_kind"] = to_wire(op.rep_kind);
  j["domain_qdt"] = op.domain_qdt;
  j["codomain_qdt"] = op.codomain_qdt;
  j["params"] = params_to_json(op);
  if (op.cost_hint) {
    j["cost_hint"] = json{{"twoq", op.cost_hint->twoq}, {"depth", op.cost_hint->depth}};
  }
  if (op.result_schema) j["result_schema"] = to_json(*op.result_schema);
  if (!op.extensions.empty()) j["extensions"] = op.extensions;
  return j;
}

json to_json(const ContextDescriptor& ctx) {
  json j;
  j["$schema"] = ctx.schema_id;
  json exec;
  exec["engine"] = ctx.exec.engine;
  exec["samples"] = ctx.exec.samples;
  exec["seed"] = ctx.exec.seed;
  if (ctx.exec.target) {
    json target;
    target["basis_gates"] = ctx.exec.target->basis_gates;
    auto& cm = target["coupling_map"] = json::array();
    for (const auto& pair : ctx.exec.target->coupling_map) {
      cm.push_back(json::array({pair[0], pair[1]}));
    }
    exec["target"] = std::move(target);
  }
  if (!ctx.exec.options.empty()) exec["options"] = ctx.exec.options;
  j["exec"] = std::move(exec);
  if (ctx.anneal) {
    j["anneal"] = json{{"num_reads", ctx.anneal->num_reads},
                       {"num_sweeps", ctx.anneal->num_sweeps},
                       {"beta_range", {ctx.anneal->beta_range[0], ctx.anneal->beta_range[1]}}};
  }
  if (ctx.qec) {
    j["qec"] = json{{"code_family", ctx.qec->code_family},
                    {"distance", ctx.qec->distance},
                    {"allocator", ctx.qec->allocator},
                    {"logical_gate_set", ctx.qec->logical_gate_set}};
  }
  if (!ctx.extensions.empty()) j["extensions"] = ctx.extensions;
  return j;
}

json to_json(const JobBundle& job) {
  json j;
  auto& qdts = j["qdts"] = json::array();
  for (const auto& q : job.qdts) qdts.push_back(to_json(q));
  auto& ops = j["operators"] = json::array();
  for (const auto& op : job.operators) ops.push_back(to_json(op));
  j["context"] = to_json(job.context);
  j["provenance"] = json{{"tool_version", job.provenance.tool_version},
                         {"created_at", job.provenance.created_at},
                         {"source", job.provenance.source}};
  return j;
}

std::string canonical_text(const json& doc) { return doc.dump(2) + "\n"; }

std::string serialize(const QuantumDataType& qdt) { return canonical_text(to_json(qdt)); }
std::string serialize(const OperatorDescriptor& op) { return canonical_text(to_json(op)); }
std::string serialize(const ContextDescriptor& ctx) { return canonical_text(to_json(ctx)); }
std::string serialize(const JobBundle& job) { return canonical_text(to_json(job)); }

json load_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read file: " + path);
  return load_json_text(buf.str());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read file: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("cannot write file: " + path);
}

}  // namespace qdl
