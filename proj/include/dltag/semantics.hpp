#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dltag/derivation.hpp"

namespace dltag {

// ── Meaning terms ───────────────────────────────────────────────────────────

// A ground term over unit propositions: either a proposition leaf or a
// relation applied to two sub-terms.
struct Term {
  std::string head;
  std::vector<Term> args;

  static Term leaf(std::string proposition) { return {std::move(proposition), {}}; }
  bool is_leaf() const { return args.empty(); }
  std::string to_string() const;  // "p1" or "contrast(p1, p2)"

  friend bool operator==(const Term&, const Term&) = default;
};

// Proposition labels of every leaf under `t`.
std::set<std::string> props(const Term& t);

// ── Ledger entries ──────────────────────────────────────────────────────────
//
// Composition sorts what a derivation conveys into three layers: asserted
// relational structure, presuppositions carried in by cue choices, and
// defeasible hooks the reader may infer (and later cancel). `source` names
// the contributing instance as "#<preorder>:<tree>".

struct Predication {
  std::string predicate;
  Term arg1;
  Term arg2;
  std::string source;

  friend bool operator==(const Predication&, const Predication&) = default;
};

struct Presupposition {
  std::string cue;
  std::string template_id;
  Term scope;                       // what the presupposed content is about
  std::optional<Term> licensed_by;  // empty: left to the prior discourse
  std::string source;

  friend bool operator==(const Presupposition&, const Presupposition&) = default;
};

struct InferenceHook {
  std::string candidate;  // relation name proposed by the input
  Term arg1;
  Term arg2;
  bool cancelled = false;
  std::optional<UnitModal> modal;  // weakened when the second argument is hypothetical
  std::string source;

  friend bool operator==(const InferenceHook&, const InferenceHook&) = default;
};

struct MeaningLedger {
  Term meaning;  // the composed term for the whole discourse
  std::vector<Predication> predications;
  std::vector<Presupposition> presuppositions;
  std::vector<InferenceHook> hooks;

  friend bool operator==(const MeaningLedger&, const MeaningLedger&) = default;
};

// Composes the meaning of a complete derivation. Validates the derivation by
// replaying it first; entries land in walk order (instance preorder), so the
// ledger is deterministic for a canonicalized derivation.
MeaningLedger compose(const Grammar& g, const DiscourseInput& input, const DerivationTree& d);

// ── Cancellation ────────────────────────────────────────────────────────────

enum class CancelStatus { Cancelled, RejectedCompositional };

const char* to_string(CancelStatus s);

struct CancelResult {
  CancelStatus status;
  MeaningLedger ledger;  // updated on Cancelled, untouched otherwise
  std::string relation;  // rendering of the relation the request matched
};

// Attempts to cancel an inferred relation between the units carrying
// propositions `a` and `b` (either order). Inferential hooks cancel (a second
// cancel is a no-op); asserted predications refuse; anything else is an
// input error.
CancelResult cancel(const MeaningLedger& ledger, const std::string& a, const std::string& b);

// One human-readable line per presupposition, in ledger order.
std::vector<std::string> presupposition_report(const MeaningLedger& ledger);

}  // namespace dltag
