#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdl/algolib.hpp"
#include "qdl/anneal_backend.hpp"
#include "qdl/decode.hpp"
#include "qdl/errors.hpp"
#include "qdl/gate_backend.hpp"
#include "qdl/graph.hpp"
#include "qdl/json_io.hpp"
#include "qdl/run.hpp"
#include "qdl/sweep.hpp"
#include "qdl/validate.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 success, 1 validation failure, 2 I/O, 3 capacity/unrealizable.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitCapacity = 3;

int cmd_validate(const std::string& path) {
  const json doc = qdl::load_json_file(path);
  if (doc.is_object() && doc.contains("qdts") && doc.contains("operators")) {
    const qdl::JobBundle job = qdl::parse_job(doc);
    std::cout << "valid job bundle: " << job.qdts.size() << " register(s), "
              << job.operators.size() << " operator(s), engine \""
              << job.context.exec.engine << "\"\n";
    if (!job.context.runnable()) {
      std::cout << "warning: engine \"" << job.context.exec.engine
                << "\" is not runnable by this build\n";
    }
    return kExitOk;
  }
  if (doc.is_object() && doc.contains("n") && doc.contains("edges")) {
    const qdl::Graph g = qdl::parse_graph(doc);
    std::cout << "valid graph: " << g.n << " vertices, " << g.edges.size()
              << " edge(s), total weight " << g.total_weight() << "\n";
    return kExitOk;
  }
  const std::string schema =
      doc.is_object() && doc.contains("$schema") && doc["$schema"].is_string()
          ? doc["$schema"].get<std::string>()
          : "";
  if (schema == qdl::kQdtSchemaId) {
    const qdl::QuantumDataType q = qdl::parse_qdt(doc);
    std::cout << "valid quantum data type \"" << q.id << "\": width " << q.width << ", "
              << qdl::to_wire(q.encoding_kind) << "\n";
    return kExitOk;
  }
  if (schema == qdl::kOperatorSchemaId) {
    const qdl::OperatorDescriptor op = qdl::parse_operator_standalone(doc);
    std::cout << "valid operator \"" << op.name << "\": " << qdl::to_wire(op.rep_kind)
              << " on \"" << op.domain_qdt
              << "\" (register references not checked outside a bundle)\n";
    return kExitOk;
  }
  if (schema == qdl::kContextSchemaId) {
    const qdl::ContextDescriptor ctx = qdl::parse_context(doc);
    std::cout << "valid context: engine \"" << ctx.exec.engine << "\", samples "
              << ctx.exec.samples << ", seed " << ctx.exec.seed
              << (ctx.all_to_all() ? ", all-to-all" : ", constrained target") << "\n";
    if (!ctx.runnable()) {
      std::cout << "warning: engine \"" << ctx.exec.engine
                << "\" is not runnable by this build\n";
    }
    return kExitOk;
  }
  throw qdl::SchemaError("unrecognized document: expected a descriptor $schema, "
                         "a job bundle, or a graph");
}

qdl::Rational qft_phase_scale(int width) {
  if (width < 1 || width > 62) {
    throw qdl::CapacityError("qft width must lie in [1, 62] for an exact phase_scale");
  }
  return qdl::Rational(1, std::int64_t{1} << width);
}

struct BuildArgs {
  std::string kind;
  std::string graph_path;
  std::string context_path;
  std::string out_path = "job.json";
  std::vector<double> gammas;
  std::vector<double> betas;
  int p = 0;
  int width = 0;
  int approx_degree = 0;
  bool no_swaps = false;
  bool inverse = false;
};

int cmd_build(const BuildArgs& args) {
  const qdl::ContextDescriptor ctx = qdl::parse_context(qdl::load_json_file(args.context_path));

  std::vector<qdl::QuantumDataType> qdts;
  std::vector<qdl::OperatorDescriptor> ops;

  if (args.kind == "qft") {
    const qdl::QuantumDataType reg =
        qdl::make_phase_register("reg_phase", "phase", args.width, qft_phase_scale(args.width));
    qdl::OperatorDescriptor qft =
        qdl::build_qft(reg, args.approx_degree, !args.no_swaps, args.inverse);
    qdl::OperatorDescriptor measure;
    measure.schema_id = std::string(qdl::kOperatorSchemaId);
    measure.name = "measure_z";
    measure.rep_kind = qdl::RepKind::Measurement;
    measure.domain_qdt = reg.id;
    measure.codomain_qdt = reg.id;
    measure.params = qdl::MeasurementParams{};
    measure.cost_hint = qdl::estimate_cost(measure, reg.width);
    measure.result_schema = qdl::make_readout_schema(reg);
    qdts.push_back(reg);
    ops.push_back(std::move(qft));
    ops.push_back(std::move(measure));
  } else {
    const qdl::Graph g = qdl::parse_graph(qdl::load_json_file(args.graph_path));
    const qdl::QuantumDataType reg = qdl::make_spin_register("ising_vars", "s", g.n);
    qdts.push_back(reg);
    if (args.kind == "qaoa-maxcut") {
      if (args.gammas.empty() || args.gammas.size() != args.betas.size()) {
        throw qdl::ParamError("qaoa-maxcut needs equal numbers of --gamma and --beta "
                              "values (at least one pair)");
      }
      if (args.p != 0 && static_cast<std::size_t>(args.p) != args.gammas.size()) {
        throw qdl::ParamError("--p disagrees with the number of --gamma/--beta pairs");
      }
      ops = qdl::build_qaoa_maxcut(g, reg, qdl::QaoaAngles{args.gammas, args.betas});
    } else {
      ops.push_back(qdl::build_ising_maxcut(g, reg));
    }
  }

  // A uniform source string keeps everything outside the operator list and
  // the context byte-identical across build kinds over the same inputs.
  const qdl::JobBundle job =
      qdl::package_job(std::move(qdts), std::move(ops), ctx, "qdl build");
  qdl::write_text_file(args.out_path, qdl::serialize(job));
  std::cout << "wrote " << args.out_path << ": " << job.qdts.size() << " register(s), "
            << job.operators.size() << " operator(s), engine \""
            << job.context.exec.engine << "\"\n";
  if (!job.context.runnable()) {
    std::cout << "warning: engine \"" << job.context.exec.engine
              << "\" is not runnable by this build\n";
  }
  return kExitOk;
}

struct RunArgs {
  std::string job_path;
  std::string out_path = "results.json";
  std::optional<std::int64_t> seed;
  std::optional<long long> samples;
  std::optional<long long> num_reads;
};

int cmd_run(const RunArgs& args) {
  qdl::JobBundle job = qdl::parse_job(qdl::load_json_file(args.job_path));

  json overrides = json::object();
  if (args.seed) {
    job.context.exec.seed = static_cast<std::uint64_t>(*args.seed);
    overrides["seed"] = *args.seed;
    std::cout << "override: seed = " << *args.seed << "\n";
  }
  if (args.samples) {
    if (*args.samples < 1) throw qdl::SchemaError("samples must be a positive integer");
    job.context.exec.samples = *args.samples;
    overrides["samples"] = *args.samples;
    std::cout << "override: samples = " << *args.samples << "\n";
  }
  if (args.num_reads) {
    if (*args.num_reads < 1) throw qdl::SchemaError("num_reads must be a positive integer");
    if (!job.context.anneal) job.context.anneal = qdl::AnnealSettings{};
    job.context.anneal->num_reads = *args.num_reads;
    overrides["num_reads"] = *args.num_reads;
    std::cout << "override: num_reads = " << *args.num_reads << "\n";
  }

  json results = qdl::run_job(job);
  if (!overrides.empty()) results["overrides"] = overrides;
  qdl::write_text_file(args.out_path, qdl::canonical_text(results));

  long long total = 0;
  std::string top_bits;
  long long top_count = -1;
  for (const auto& [bits, count] : results["counts"].items()) {
    const long long c = count.get<long long>();
    total += c;
    if (c > top_count) {
      top_count = c;
      top_bits = bits;
    }
  }
  std::cout << "wrote " << args.out_path << ": engine \""
            << results["engine"].get<std::string>() << "\", "
            << results["counts"].size() << " distinct outcome(s), " << total
            << " total\n";
  if (top_count >= 0) {
    std::cout << "most frequent outcome: \"" << top_bits << "\" (" << top_count << ")\n";
  }
  if (results.contains("warnings")) {
    for (const auto& w : results["warnings"]) {
      std::cout << "warning: " << w.get<std::string>() << "\n";
    }
  }
  return kExitOk;
}

struct SweepArgs {
  std::string graph_path;
  std::string out_path;
  int gamma_steps = 64;
  int beta_steps = 64;
};

int cmd_sweep_angles(const SweepArgs& args) {
  const qdl::Graph g = qdl::parse_graph(qdl::load_json_file(args.graph_path));
  const qdl::SweepResult result = qdl::sweep_qaoa_angles(g, args.gamma_steps, args.beta_steps);
  if (!args.out_path.empty()) {
    qdl::write_text_file(args.out_path, qdl::canonical_text(qdl::to_json(result)));
    std::cout << "wrote " << args.out_path << "\n";
  }
  std::cout << "grid " << args.gamma_steps << "x" << args.beta_steps
            << ": best expected cut " << result.best.expected_cut << " at gamma = "
            << result.best.gamma << ", beta = " << result.best.beta << "\n";
  return kExitOk;
}

struct ReportArgs {
  std::string results_path;
  std::string graph_path;
  std::string out_path;
  int top_k = 8;
};

// Reconstructs the identity readout schema the builders attach: string
// position p is register carrier p. Outcome keys produced by this toolkit
// are always rendered that way.
qdl::ResultSchema identity_schema(int width) {
  qdl::ResultSchema rs;
  rs.datatype = qdl::MeasurementSemantics::AsBool;
  rs.bit_significance = qdl::BitOrder::Lsb0;
  for (int i = 0; i < width; ++i) rs.clbit_order.push_back({"vars", i});
  return rs;
}

int cmd_report(const ReportArgs& args) {
  const json results = qdl::load_json_file(args.results_path);
  if (!results.is_object() || !results.contains("counts") ||
      !results["counts"].is_object()) {
    throw qdl::SchemaError("results file must contain a \"counts\" object", "counts");
  }
  const qdl::Graph g = qdl::parse_graph(qdl::load_json_file(args.graph_path));

  qdl::Counts counts;
  for (const auto& [bits, count] : results["counts"].items()) {
    if (!count.is_number_integer() || count.get<long long>() < 0) {
      throw qdl::SchemaError("counts must be nonnegative integers", "counts." + bits);
    }
    if (static_cast<int>(bits.size()) != g.n) {
      throw qdl::LengthMismatchError("outcome \"" + bits + "\" has " +
                                     std::to_string(bits.size()) +
                                     " bits but the graph has " + std::to_string(g.n) +
                                     " vertices");
    }
    counts[bits] = count.get<long long>();
  }

  const qdl::ResultSchema rs = identity_schema(g.n);
  const json report = qdl::make_report(counts, g, rs, static_cast<std::size_t>(args.top_k));

  std::cout << "expected objective: " << report["expected_objective"].get<double>()
            << " over " << report["n_outcomes"].get<std::size_t>()
            << " distinct outcome(s)\n";
  std::cout << "best assignments:\n";
  for (const auto& a : report["best"]) {
    std::cout << "  \"" << a["bits"].get<std::string>() << "\"  objective "
              << a["objective"].get<double>() << "  count " << a["count"].get<long long>()
              << "\n";
  }
  if (!args.out_path.empty()) {
    qdl::write_text_file(args.out_path, qdl::canonical_text(report));
    std::cout << "wrote " << args.out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"backend-neutral quantum job toolkit"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate = app.add_subcommand(
      "validate", "Validate a descriptor, job bundle, or graph file");
  validate->add_option("path", validate_path, "JSON file to validate")->required();

  BuildArgs build_args;
  CLI::App* build = app.add_subcommand("build", "Build a job bundle from intent inputs");
  build->add_option("kind", build_args.kind, "one of: qaoa-maxcut, ising-maxcut, qft")
      ->required()
      ->check(CLI::IsMember({"qaoa-maxcut", "ising-maxcut", "qft"}));
  build->add_option("--graph", build_args.graph_path, "graph JSON file");
  build->add_option("--context", build_args.context_path, "context descriptor file")
      ->required();
  build->add_option("--out", build_args.out_path, "output job file (default job.json)");
  build->add_option("--gamma", build_args.gammas, "cost-phase angle, radians (repeatable)");
  build->add_option("--beta", build_args.betas, "mixer angle, radians (repeatable)");
  build->add_option("--p", build_args.p, "QAOA depth (must match the angle count)");
  build->add_option("--width", build_args.width, "register width (qft)");
  build->add_option("--approx-degree", build_args.approx_degree, "QFT approximation degree");
  build->add_flag("--no-swaps", build_args.no_swaps, "omit the final QFT swap layer");
  build->add_flag("--inverse", build_args.inverse, "emit the inverse QFT");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run a job bundle on its context's engine");
  run->add_option("job", run_args.job_path, "job.json file")->required();
  run->add_option("--out", run_args.out_path, "results file (default results.json)");
  std::int64_t seed_value = 0;
  long long samples_value = 0;
  long long reads_value = 0;
  CLI::Option* seed_opt = run->add_option("--seed", seed_value, "override context seed");
  CLI::Option* samples_opt =
      run->add_option("--samples", samples_value, "override context samples");
  CLI::Option* reads_opt =
      run->add_option("--num-reads", reads_value, "override anneal num_reads");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep-angles", "Exact p=1 QAOA angle sweep over gamma in [0,pi), beta in [0,pi/2)");
  sweep->add_option("--graph", sweep_args.graph_path, "graph JSON file")->required();
  sweep->add_option("--gamma-steps", sweep_args.gamma_steps, "grid steps along gamma");
  sweep->add_option("--beta-steps", sweep_args.beta_steps, "grid steps along beta");
  sweep->add_option("--out", sweep_args.out_path, "write the full sweep table here");

  ReportArgs report_args;
  CLI::App* report = app.add_subcommand("report", "Decode results and report objectives");
  report->add_option("--results", report_args.results_path, "results.json file")->required();
  report->add_option("--graph", report_args.graph_path, "graph JSON file")->required();
  report->add_option("--top", report_args.top_k, "how many best assignments to list")
      ->check(CLI::PositiveNumber);
  report->add_option("--out", report_args.out_path, "write report.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*validate) return cmd_validate(validate_path);
    if (*build) {
      if (build_args.kind != "qft" && build_args.graph_path.empty()) {
        throw qdl::ParamError("--graph is required for " + build_args.kind);
      }
      if (build_args.kind == "qft" && build_args.width < 1) {
        throw qdl::ParamError("--width is required for qft");
      }
      return cmd_build(build_args);
    }
    if (*run) {
      if (*seed_opt) {
        if (seed_value < 0) throw qdl::SchemaError("seed must be a nonnegative integer");
        run_args.seed = seed_value;
      }
      if (*samples_opt) run_args.samples = samples_value;
      if (*reads_opt) run_args.num_reads = reads_value;
      return cmd_run(run_args);
    }
    if (*sweep) return cmd_sweep_angles(sweep_args);
    if (*report) return cmd_report(report_args);
  } catch (const qdl::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const qdl::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const qdl::UnrealizableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const qdl::DisconnectedCouplingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const qdl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
