#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dltag/discourse_input.hpp"
#include "dltag/grammar.hpp"

namespace dltag {

// ── Derived trees ───────────────────────────────────────────────────────────
//
// The phrase-structure result of composing elementary trees. All updates are
// pure: operations return a new tree and leave the host untouched.

struct DerivedNode {
  std::string category;
  NodeKind kind = NodeKind::Interior;
  bool adjoinable = false;
  int arg_index = 0;
  std::string slot_id;
  std::string origin;  // name of the elementary tree that contributed this node

  std::string unit_id;           // bound clause unit (leaf-unit nodes)
  bool leaf_filled = false;
  bool anchor_realized = false;
  std::string cue_lexeme;        // "" when realized by the empty cue
  std::optional<SlotPosition> cue_tag;

  std::vector<DerivedNode> children;
};

struct DerivedTree {
  DerivedNode root;
  std::string base_tree;  // elementary tree instantiated at the bottom

  const DerivedNode* node_at(const Address& a) const;
};

bool derived_equal(const DerivedNode& a, const DerivedNode& b);

DerivedTree instantiate(const ElementaryTree& t);

// Replaces the substitution site at `at` with a fresh instance of `tree`
// (which must be initial and category-compatible).
DerivedTree substitute(const Grammar& g, const DerivedTree& host, const Address& at,
                       const ElementaryTree& tree);
// Same, planting an already-derived argument (its base tree must be initial).
DerivedTree substitute(const Grammar& g, const DerivedTree& host, const Address& at,
                       const DerivedTree& arg, const ElementaryTree& arg_base);

// Standard adjunction: the subtree at `at` is excised, `aux` is planted in
// its place, and the excised material hangs from the foot.
DerivedTree adjoin(const Grammar& g, const DerivedTree& host, const Address& at,
                   const ElementaryTree& aux);
DerivedTree adjoin(const Grammar& g, const DerivedTree& host, const Address& at,
                   const DerivedTree& aux, const ElementaryTree& aux_base);

DerivedTree fill_leaf(const DerivedTree& host, const Address& at, const ClauseUnit& unit);

// Binds a cue (possibly empty) to the anchor slot at `at`. Non-empty cues
// carry the position tag of the consumed cue marker.
DerivedTree realize_anchor(const Grammar& g, const DerivedTree& host, const Address& at,
                           const CueEntry& cue, std::optional<SlotPosition> tag);

// Left-to-right leaf reading of a complete tree: unit tokens and the realized
// non-empty cue tokens. Throws DerivationError on unfilled sites, leaves,
// anchors or feet.
std::vector<Token> linearize(const DerivedTree& t);

// ── Derivation trees ────────────────────────────────────────────────────────
//
// The record of how elementary trees were put together: one node per
// elementary-tree instance, child steps addressed within the parent instance.

enum class StepOp { Fill, Realize, Substitute, Adjoin };

const char* to_string(StepOp op);

struct FillStep {
  Address at;
  std::string unit;
};

struct RealizeStep {
  Address at;
  std::string slot;
  std::string lexeme;  // "" = empty cue
  std::optional<SlotPosition> tag;
};

struct DerivationChild;

struct DerivationNode {
  std::string tree;
  std::vector<FillStep> fills;
  std::vector<RealizeStep> realizes;
  std::vector<DerivationChild> children;

  using Child = DerivationChild;

  std::vector<std::string> realized_lexemes() const;
};

struct DerivationChild {
  StepOp op = StepOp::Substitute;  // Substitute or Adjoin
  Address at;
  DerivationNode node;
};

struct DerivationTree {
  DerivationNode root;

  // Sorts every step list into the canonical order (fills, realizes,
  // substitutions, adjunctions; ties broken by address, then content).
  void canonicalize();

  std::string to_bracket() const;  // multi-line, canonical once canonicalized
  int step_count() const;

  friend bool operator==(const DerivationTree&, const DerivationTree&) = default;
};

bool operator==(const DerivationNode& a, const DerivationNode& b);

// The synthesized initial tree every clause unit enters a derivation with:
// an adjoinable DU root over a single leaf-unit node.
const ElementaryTree& unit_tree();

// Looks up `name` in the grammar, falling back to the synthesized unit tree.
const ElementaryTree& resolve_tree(const Grammar& g, const std::string& name);

// Rebuilds the derived tree a derivation describes, validating every step
// (categories, slot acceptance, one adjunction per address, lexicalization).
DerivedTree replay(const Grammar& g, const DiscourseInput& input, const DerivationTree& d);

// ── Parsing ─────────────────────────────────────────────────────────────────

// All complete derivations whose derived trees linearize to the input's token
// sequence, canonically ordered and deduplicated. Chart-based.
std::vector<DerivationTree> derive(const Grammar& g, const DiscourseInput& input);

struct EnumerationResult {
  std::vector<DerivationTree> derivations;
  bool bound_exceeded = false;
};

// Exhaustive generate-and-filter search over derivations built from at most
// `bound` elementary-tree instances (default 4 x unit count: a derivation
// never needs more than one clause tree plus one extension per unit and one
// tree per cue). Slower than derive() by construction; used as its
// independent check.
EnumerationResult enumerate_all(const Grammar& g, const DiscourseInput& input);
EnumerationResult enumerate_all(const Grammar& g, const DiscourseInput& input, int bound);

int default_step_bound(const DiscourseInput& input);

}  // namespace dltag
