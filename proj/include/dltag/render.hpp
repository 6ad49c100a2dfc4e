#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dltag/derivation.hpp"
#include "dltag/semantics.hpp"

namespace dltag {

// Graphviz digraph of a derivation tree: one box per instance, edges
// labelled with the combining operation and address. Node ids follow
// preorder, so output is stable for a canonicalized derivation.
std::string derivation_to_dot(const DerivationTree& d, const std::string& graph_name);

// Structured JSON forms. All top-level documents carry "format-version": 1.
std::string derivation_to_json(const DerivationTree& d);
std::string derivations_to_json(const Grammar& g, const DiscourseInput& input,
                                const std::vector<DerivationTree>& ds, bool with_ledgers,
                                std::optional<bool> bound_exceeded = std::nullopt);
std::string ledger_to_json(const MeaningLedger& l);

// Plain-text ledger: the composed term, then one line per predication,
// presupposition and hook.
std::string ledger_to_text(const MeaningLedger& l);

}  // namespace dltag
