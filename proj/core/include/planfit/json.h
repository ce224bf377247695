#pragma once

#include <nlohmann/json.hpp>

namespace planfit {

/// Insertion-ordered JSON: documents keep fields in declaration order so that
/// persisted sessions and API payloads are byte-stable.
using Json = nlohmann::ordered_json;

}  // namespace planfit
