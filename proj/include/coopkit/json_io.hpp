#pragma once

// JSON forms of sequences, matrices and cooperad tables. Parse errors throw
// ArgumentError naming the offending field.

#include <json.hpp>

#include "coopkit/cdc.hpp"
#include "coopkit/cooperad.hpp"
#include "coopkit/symseq.hpp"
#include "coopkit/zmodule.hpp"

namespace coopkit {

/// {"rows": r, "cols": c, "entries": [[row, col, value], ...]}
nlohmann::json linmap_to_json(const LinMap& m);
LinMap linmap_from_json(const nlohmann::json& j);

/// {"max_arity": N, "arity": {"<n>": {"basis": [...], "generators": [[{"to": j, "sign": s}, ...], ...]}}}
nlohmann::json symseq_to_json(const SymSeq& a);
SymSeq symseq_from_json(const nlohmann::json& j);

/// {"name": ..., "symseq": {...}, "cocomp": {"<canonical 2-chain>": matrix},
/// "counit": matrix}; chains with |S1|, |S2| <= max_set, zero maps omitted.
nlohmann::json cooperad_to_json(const Cooperad& op, int max_set);
Cooperad cooperad_from_json(const nlohmann::json& j);

/// {"vertices": [...], "edges": [[id, a, b], ...], "triangles": [[id, e1, e2, e3], ...]}
/// with edge endpoints given by vertex label.
nlohmann::json complex_to_json(const Complex& x);
Complex complex_from_json(const nlohmann::json& j);

}  // namespace coopkit
