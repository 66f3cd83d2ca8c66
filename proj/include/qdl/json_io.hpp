#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qdl/descriptors.hpp"

namespace qdl {

// Parsing validates every invariant of the descriptor families; the returned
// values always satisfy them. All parse errors derive from qdl::Error and
// carry the JSON path of the offending field.

QuantumDataType parse_qdt(const nlohmann::json& doc);
QuantumDataType parse_qdt(const std::string& text);

// bundle_qdts supplies the registers the operator may reference. The
// standalone variant skips reference resolution (used when validating a lone
// operator file); everything checkable without the registers is still checked.
OperatorDescriptor parse_operator(const nlohmann::json& doc,
                                  const std::vector<QuantumDataType>& bundle_qdts);
OperatorDescriptor parse_operator(const std::string& text,
                                  const std::vector<QuantumDataType>& bundle_qdts);
OperatorDescriptor parse_operator_standalone(const nlohmann::json& doc);

ContextDescriptor parse_context(const nlohmann::json& doc);
ContextDescriptor parse_context(const std::string& text);

// Full bundle parse: structure, reference resolution, sequence composition,
// and engine capability. Throws ValidationError with the offending report
// when composition fails.
JobBundle parse_job(const nlohmann::json& doc);
JobBundle parse_job(const std::string& text);

nlohmann::json to_json(const QuantumDataType& qdt);
nlohmann::json to_json(const ResultSchema& rs);
nlohmann::json to_json(const OperatorDescriptor& op);
nlohmann::json to_json(const ContextDescriptor& ctx);
nlohmann::json to_json(const JobBundle& job);

// Canonical text form: sorted keys, two-space indent, one trailing newline.
// Identical values serialize to identical bytes; parse(serialize(x)) == x.
std::string canonical_text(const nlohmann::json& doc);
std::string serialize(const QuantumDataType& qdt);
std::string serialize(const OperatorDescriptor& op);
std::string serialize(const ContextDescriptor& ctx);
std::string serialize(const JobBundle& job);

// Text/file helpers. Unreadable files and syntactically malformed JSON both
// raise IoError (exit code 2 territory); well-formed JSON with the wrong
// shape raises the validation taxonomy above.
nlohmann::json load_json_text(const std::string& text);
nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace qdl
