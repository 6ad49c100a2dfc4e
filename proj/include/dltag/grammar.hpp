#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dltag/feature_structure.hpp"

namespace dltag {

// ── Tree anatomy ────────────────────────────────────────────────────────────
//
// Elementary trees are small: a root over a flat or shallow arrangement of
// argument sites, anchor slots, a foot (auxiliary trees only), and leaf-unit
// placeholders. Clause-internal syntax is opaque; every clause is one unit.

enum class NodeKind { Interior, SubstitutionSite, Foot, AnchorSlot, LeafUnit };
enum class TreeKind { Initial, Auxiliary };
enum class SlotPosition { Initial, Medial, Final };
enum class SlotRealization { Required, Optional };
enum class CueClass {
  SubordinateConjunction,
  Adverbial,
  Conjunction,
  ParallelInitial,
  ParallelMedial,
  Empty
};

const char* to_string(NodeKind k);
const char* to_string(TreeKind k);
const char* to_string(SlotPosition p);
const char* to_string(SlotRealization r);
const char* to_string(CueClass c);

SlotPosition slot_position_from(const std::string& s);
SlotRealization slot_realization_from(const std::string& s);
CueClass cue_class_from(const std::string& s);
TreeKind tree_kind_from(const std::string& s);

// Gorn-style path from a tree root: the empty path is the root, otherwise a
// sequence of zero-based child indices.
struct Address {
  std::vector<int> path;

  static Address root() { return {}; }
  Address child(int i) const {
    Address a = *this;
    a.path.push_back(i);
    return a;
  }
  bool is_root() const { return path.empty(); }
  std::size_t depth() const { return path.size(); }

  std::string to_string() const;          // "e" for the root, else "0.2"
  static Address parse(const std::string&);

  friend bool operator==(const Address&, const Address&) = default;
  friend bool operator<(const Address& a, const Address& b) { return a.path < b.path; }
};

struct TreeNode {
  std::string category;
  NodeKind kind = NodeKind::Interior;
  bool adjoinable = false;    // interior nodes only
  int arg_index = 0;          // 1 or 2 on argument sites/leaves, else 0
  std::string slot_id;        // anchor-slot nodes only
  std::vector<TreeNode> children;
};

struct AnchorSlot {
  std::string id;
  FeatureStructure features;
  // The position, relative to its attached clause unit, of a cue realizing
  // this slot: before it (initial), inside it (medial), or after it (final).
  SlotPosition position = SlotPosition::Initial;
  SlotRealization realization = SlotRealization::Required;
  // Cue classes admitted at this slot (the empty cue is governed by
  // `realization`, not by this list).
  std::vector<CueClass> classes;

  friend bool operator==(const AnchorSlot&, const AnchorSlot&) = default;
};

struct ElementaryTree {
  std::string name;
  TreeKind kind = TreeKind::Initial;
  TreeNode root;
  std::vector<AnchorSlot> anchors;
  std::string family;
  std::string predicate;       // "none" when the tree contributes no predication
  std::string precondition;    // optional discourse-state label; stored, never evaluated

  const TreeNode* node_at(const Address& a) const;
  const AnchorSlot* slot(const std::string& id) const;

  // Addresses collected in left-to-right skeleton order.
  std::vector<Address> site_addresses() const;
  std::vector<Address> leaf_unit_addresses() const;
  std::vector<Address> anchor_addresses() const;
  std::vector<Address> interior_addresses() const;  // adjoinable interiors, pre-order
  std::optional<Address> foot_address() const;
  std::optional<Address> anchor_address(const std::string& slot_id) const;
  std::optional<Address> arg_site_address(int arg_index) const;

  // Number of argument positions (labelled sites plus labelled leaf units).
  int argument_count() const;
};

struct CueEntry {
  std::string lexeme;  // may contain spaces; "" is the distinguished empty cue
  CueClass cls = CueClass::Adverbial;
  FeatureStructure features;
  std::string presupposition;  // template id; empty = none
  std::string analysis;        // "", or an analysis tag gated by a grammar flag

  bool is_empty_cue() const { return lexeme.empty(); }

  friend bool operator==(const CueEntry&, const CueEntry&) = default;
};

struct TreeFamily {
  std::string id;
  std::vector<std::string> trees;
  std::string predicate;
  bool cue_specializes = false;  // predicate name gets "-<cue>" appended

  friend bool operator==(const TreeFamily&, const TreeFamily&) = default;
};

struct CategoryDecl {
  bool strict = false;  // strict refinements match only themselves

  friend bool operator==(const CategoryDecl&, const CategoryDecl&) = default;
};

// ── Grammar ─────────────────────────────────────────────────────────────────

class Grammar {
public:
  FeatureInventory inventory;
  std::map<std::string, CategoryDecl> categories;  // refinements of DU
  std::vector<ElementaryTree> trees;
  std::map<std::string, TreeFamily> families;
  std::vector<CueEntry> lexicon;  // all entries, active or not
  std::string so_but_analysis = "extension";
  bool allow_foot_adjunction = false;

  static const std::string base_category;  // "DU"

  const ElementaryTree* tree(const std::string& name) const;
  const TreeFamily* family(const std::string& id) const;

  // Entries whose analysis tag is empty or equals the active analysis flag.
  std::vector<const CueEntry*> active_lexicon() const;
  const CueEntry* entry(const std::string& lexeme) const;           // active only
  const CueEntry& entry_or_throw(const std::string& lexeme) const;  // GrammarError

  // Category check used by substitution and adjunction: non-strict
  // refinements are interchangeable with DU; strict ones match only
  // themselves.
  bool categories_match(const std::string& a, const std::string& b) const;

  // Structural well-formedness; throws GrammarError naming the offender.
  void validate() const;

  bool operator==(const Grammar& o) const;
};

bool tree_equal(const TreeNode& a, const TreeNode& b);

// Whether `cue` may realize `slot` of `tree`: the empty cue needs an optional
// slot; other cues need an admitted class and a non-exclusive feature
// relation.
bool anchor_accepts(const Grammar& g, const ElementaryTree& tree, const AnchorSlot& slot,
                    const CueEntry& cue);

// Trees with at least one slot accepting the cue, sorted by tree name.
std::vector<const ElementaryTree*> candidate_trees(const Grammar& g, const CueEntry& cue);
std::vector<const ElementaryTree*> candidate_trees(const Grammar& g, const std::string& lexeme);

// Realized lexemes per slot satisfy the lexicalization rule: a tree with two
// anchor slots must realize at least one with a non-empty cue.
bool anchors_lexicalized(const ElementaryTree& tree, const std::vector<std::string>& lexemes);

// ── Serialization ───────────────────────────────────────────────────────────

Grammar load_grammar(const std::string& json_text);
Grammar load_grammar_file(const std::string& path);
std::string serialize_grammar(const Grammar& g);

}  // namespace dltag
