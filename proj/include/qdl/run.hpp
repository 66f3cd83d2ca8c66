#pragma once

#include <json.hpp>

#include "qdl/descriptors.hpp"

namespace qdl {

// Dispatches the bundle to the backend its context selects and returns
// results.json content. UnrealizableError for engines this build cannot run.
nlohmann::json run_job(const JobBundle& job);

}  // namespace qdl
