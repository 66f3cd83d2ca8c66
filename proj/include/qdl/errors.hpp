#pragma once

#include <stdexcept>
#include <string>

namespace qdl {

// Base of every error raised by this library. `json_path()` points at the
// offending location in the source document ("params.inverse") when the
// error came from parsing or validation; it is empty otherwise.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message, std::string json_path = "")
      : std::runtime_error(json_path.empty() ? message
                                             : message + " (at " + json_path + ")"),
        json_path_(std::move(json_path)) {}

  const std::string& json_path() const { return json_path_; }

 private:
  std::string json_path_;
};

// descriptor-core
struct SchemaError : Error { using Error::Error; };              // missing/ill-typed field
struct SemanticsError : Error { using Error::Error; };           // legal JSON, illegal meaning
struct RationalParseError : Error { using Error::Error; };       // phase_scale not "p/q", q > 0
struct UnresolvedReferenceError : Error { using Error::Error; }; // qdt id not in bundle
struct ParamError : Error { using Error::Error; };               // params block violates rep_kind

// validation-composition
struct NotInvertibleError : Error { using Error::Error; };

// algolib
struct EncodingMismatchError : Error { using Error::Error; };
struct WidthMismatchError : Error { using Error::Error; };

// gate backend
struct UnrealizableError : Error { using Error::Error; };
struct DisconnectedCouplingError : Error { using Error::Error; };
struct CapacityError : Error { using Error::Error; };
struct NormalizationError : Error { using Error::Error; };

// anneal backend
struct ConfigError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct SchemaMismatchError : Error { using Error::Error; };

// decode/report
struct LengthMismatchError : Error { using Error::Error; };
struct MissingPhaseScaleError : Error { using Error::Error; };
struct EmptyCountsError : Error { using Error::Error; };

// i/o
struct IoError : Error { using Error::Error; };

}  // namespace qdl
