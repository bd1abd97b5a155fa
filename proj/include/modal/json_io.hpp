#pragma once

// JSON wire formats.
//
//   Frame:     {"worlds": N, "edges": [[i, j], ...]}
//   Valuation: {"x": [1, 3], ...}
//
// Input is order-insensitive and duplicate edges/worlds are ignored; output is
// sorted so that equal values serialize identically.

#include <json.hpp>

#include "modal/algebra.hpp"
#include "modal/chains.hpp"
#include "modal/consequence.hpp"
#include "modal/kripke.hpp"
#include "modal/terms.hpp"

namespace modal {

using Json = nlohmann::json;

Json to_json(const WorldSet& s);
Json to_json(const Frame& f);
Json to_json(const Valuation& v);
Json to_json(const ValidityReport& r);
Json to_json(const LemmaCertificate& c);
Json to_json(const ConsequenceResult& r);
Json to_json(const FixpointResult& r);
Json to_json(const StabilizationResult& r);

/// Throws InputError on malformed input.
WorldSet world_set_from_json(const Json& j, std::size_t worlds);
Frame frame_from_json(const Json& j, std::size_t max_worlds = kDefaultMaxWorlds);
Valuation valuation_from_json(const Json& j, std::size_t worlds);

/// {"premises": ["stmt", ...], "conclusion": "stmt", "frames": [Frame, ...],
///  "cap_bits": 24}. Statements use the canonical text form (with the
/// default macros).
ConsequenceProblem problem_from_json(TermStore& store, const Json& j);

const char* to_string(Verdict v);

}  // namespace modal
