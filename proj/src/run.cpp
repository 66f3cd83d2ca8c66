#include "qdl/run.hpp"

#include "qdl/anneal_backend.hpp"
#include "qdl/errors.hpp"
#include "qdl/gate_backend.hpp"

namespace qdl {

nlohmann::json run_job(const JobBundle& job) {
  const std::string& engine = job.context.exec.engine;
  if (engine == kGateEngine) return run_gate_job(job);
  if (engine == kAnnealEngine) return run_anneal_job(job);
  throw UnrealizableError("engine \"" + engine + "\" is not runnable by this build");
}

}  // namespace qdl
