#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "homcx/cli/session.hpp"
#include "homcx/resolution.hpp"

namespace homcx::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "homcx-session/1";

struct RunOptions {
  Config config;
  std::optional<std::string> cache_dir;
};

/// The document is
///   { schema, config, records: [ {command, payload, provenance} ... ],
///     cache: {enabled, hits, misses} }.
/// Records depend only on the session and the config; cache counters live
/// outside them so cold and warm runs agree record for record.
struct RunOutput {
  Json document;
  bool had_errors = false;
  std::vector<std::string> warnings;
};

/// Executes the commands in order. A failing command yields a record whose
/// payload is {"error": "line L, column C: ..."} and the run continues.
RunOutput run_session(const Session& s, const RunOptions& opts);

/// Plain-text rendering; depends on nothing but the document.
std::string render_text(const Json& document);

}  // namespace homcx::cli
