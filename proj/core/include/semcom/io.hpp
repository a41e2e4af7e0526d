#pragma once

#include <nlohmann/json.hpp>

#include "semcom/channel.hpp"
#include "semcom/coding.hpp"
#include "semcom/context.hpp"
#include "semcom/pmf.hpp"

namespace semcom {

// JSON wire formats. All loaders validate the decoded object and throw
// ValidationError (with the offending field named) on malformed input.

// {"probs": [0.5, 0.5]}
nlohmann::json pmf_to_json(const Pmf& p);
Pmf pmf_from_json(const nlohmann::json& j);

// {"rows": [[...], ...]}, one row per conditioning letter
nlohmann::json conditional_to_json(const ConditionalPmf& c);
ConditionalPmf conditional_from_json(const nlohmann::json& j);

// {"rows": [[...], ...]}, one row per input letter
nlohmann::json dmc_to_json(const Dmc& ch);
Dmc dmc_from_json(const nlohmann::json& j);

// {"block_of": [0, 1, 0, 1]}
nlohmann::json partition_to_json(const ContextPartition& q);
ContextPartition partition_from_json(const nlohmann::json& j);

// Provenance plus the full letter matrices.
nlohmann::json codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const nlohmann::json& j);

}  // namespace semcom
