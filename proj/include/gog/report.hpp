#pragma once

// JSON documents for the command-line front end, and their text rendering.
// Text is rendered from the JSON, so both forms always carry the same
// verdicts and witnesses.

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "gog/bassserre.hpp"
#include "gog/pathfinder.hpp"
#include "gog/verdicts.hpp"

namespace gog {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

Json element_json(const GraphOfGroups& g, const VertexElement& x);
Json transition_json(const GraphOfGroups& g, const Transition& t);
Json conjugacy_path_json(const GraphOfGroups& g, const ConjugacyPath& p);
Json complete_path_json(const GraphOfGroups& g, const CompletePath& c);
Json nonmaximal_path_json(const GraphOfGroups& g, const NonMaximalPath& p);

/// Every witness in the report, re-checked in a fresh engine over the reduced
/// graph.
struct WitnessCheck {
    std::string claim;
    bool holds = false;
};

/// The "analysis" and "verification" sections of a check report.
Json analysis_json(const AnalysisReport& r);
std::vector<WitnessCheck> recheck_witnesses(const AnalysisReport& r);
Json verification_json(const std::vector<WitnessCheck>& checks);

/// Header fields shared by every document, in order.
Json document_header(const std::string& command, const std::string& input_digest);

Json check_document(const GraphOfGroups& g, const std::string& input_digest, EnumerationOptions options);

enum class PathKind { complete, nonmaximal };
Json paths_document(const GraphOfGroups& g, const std::string& input_digest, PathKind kind,
                    EnumerationOptions options);

/// `oracle` is set when a bounded search should be run alongside.
Json conj_document(const BassSerreEngine& engine, const std::string& input_digest, const VertexElement& x,
                   const VertexElement& y, std::optional<OracleBounds> oracle);

/// `relation` is "<word> = <word>" in presentation syntax.
Json oracle_document(const BassSerreEngine& engine, const std::string& input_digest, const std::string& relation);

/// Parses "<vertex>:<word>". Throws ParseError.
VertexElement parse_vertex_element(const GraphOfGroups& g, std::string_view text);

std::string render_text(const Json& doc);

}  // namespace gog
