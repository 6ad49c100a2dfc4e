#include "dltag/grammar.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace dltag {

const std::string Grammar::base_category = "DU";

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Interior: return "interior";
    case NodeKind::SubstitutionSite: return "substitution-site";
    case NodeKind::Foot: return "foot";
    case NodeKind::AnchorSlot: return "anchor-slot";
    case NodeKind::LeafUnit: return "leaf-unit";
  }
  return "?";
}

const char* to_string(TreeKind k) {
  return k == TreeKind::Initial ? "initial" : "auxiliary";
}

const char* to_string(SlotPosition p) {
  switch (p) {
    case SlotPosition::Initial: return "initial";
    case SlotPosition::Medial: return "medial";
    case SlotPosition::Final: return "final";
  }
  return "?";
}

const char* to_string(SlotRealization r) {
  return r == SlotRealization::Required ? "required" : "optional";
}

const char* to_string(CueClass c) {
  switch (c) {
    case CueClass::SubordinateConjunction: return "subordinate-conjunction";
    case CueClass::Adverbial: return "adverbial";
    case CueClass::Conjunction: return "conjunction";
    case CueClass::ParallelInitial: return "parallel-initial";
    case CueClass::ParallelMedial: return "parallel-medial";
    case CueClass::Empty: return "empty";
  }
  return "?";
}

SlotPosition slot_position_from(const std::string& s) {
  if (s == "initial") return SlotPosition::Initial;
  if (s == "medial") return SlotPosition::Medial;
  if (s == "final") return SlotPosition::Final;
  throw GrammarError("unknown position '" + s + "'");
}

SlotRealization slot_realization_from(const std::string& s) {
  if (s == "required") return SlotRealization::Required;
  if (s == "optional") return SlotRealization::Optional;
  throw GrammarError("unknown realization '" + s + "'");
}

CueClass cue_class_from(const std::string& s) {
  if (s == "subordinate-conjunction") return CueClass::SubordinateConjunction;
  if (s == "adverbial") return CueClass::Adverbial;
  if (s == "conjunction") return CueClass::Conjunction;
  if (s == "parallel-initial") return CueClass::ParallelInitial;
  if (s == "parallel-medial") return CueClass::ParallelMedial;
  if (s == "empty") return CueClass::Empty;
  throw GrammarError("unknown cue class '" + s + "'");
}

TreeKind tree_kind_from(const std::string& s) {
  if (s == "initial") return TreeKind::Initial;
  if (s == "auxiliary") return TreeKind::Auxiliary;
  throw GrammarError("unknown tree kind '" + s + "'");
}

std::string Address::to_string() const {
  if (path.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

Address Address::parse(const std::string& s) {
  Address a;
  if (s == "e" || s.empty()) return a;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("bad address '" + s + "'");
    a.path.push_back(std::stoi(part));
  }
  return a;
}

namespace {

void walk(const TreeNode& node, Address at,
          const std::function<void(const TreeNode&, const Address&)>& fn) {
  fn(node, at);
  for (std::size_t i = 0; i < node.children.size(); ++i)
    walk(node.children[i], at.child(static_cast<int>(i)), fn);
}

}  // namespace

const TreeNode* ElementaryTree::node_at(const Address& a) const {
  const TreeNode* n = &root;
  for (int i : a.path) {
    if (i < 0 || static_cast<std::size_t>(i) >= n->children.size()) return nullptr;
    n = &n->children[i];
  }
  return n;
}

const AnchorSlot* ElementaryTree::slot(const std::string& id) const {
  for (const auto& s : anchors)
    if (s.id == id) return &s;
  return nullptr;
}

std::vector<Address> ElementaryTree::site_addresses() const {
  std::vector<Address> out;
  walk(root, Address::root(), [&](const TreeNode& n, const Address& a) {
    if (n.kind == NodeKind::SubstitutionSite) out.push_back(a);
  });
  return out;
}

std::vector<Address> ElementaryTree::leaf_unit_addresses() const {
  std::vector<Address> out;
  walk(root, Address::root(), [&](const TreeNode& n, const Address& a) {
    if (n.kind == NodeKind::LeafUnit) out.push_back(a);
  });
  return out;
}

std::vector<Address> ElementaryTree::anchor_addresses() const {
  std::vector<Address> out;
  walk(root, Address::root(), [&](const TreeNode& n, const Address& a) {
    if (n.kind == NodeKind::AnchorSlot) out.push_back(a);
  });
  return out;
}

std::vector<Address> ElementaryTree::interior_addresses() const {
  std::vector<Address> out;
  walk(root, Address::root(), [&](const TreeNode& n, const Address& a) {
    if (n.kind == NodeKind::Interior && n.adjoinable) out.push_back(a);
  });
  return out;
}

std::optional<Address> ElementaryTree::foot_address() const {
  std::optional<Address> out;
  walk(root, Address::root(), [&](const TreeNode& n, const Address& a) {
    if (n.kind == NodeKind::Foot && !out) out = a;
  });
  return out;
}

std::optional<Address> ElementaryTree::anchor_address(const std::string& slot_id) const {
  std::optional<Address> out;
  walk(root, Address::root(), [&](const TreeNode& n, const Address& a) {
    if (n.kind == NodeKind::AnchorSlot && n.slot_id == slot_id && !out) out = a;
  });
  return out;
}

std::optional<Address> ElementaryTree::arg_site_address(int arg_index) const {
  std::optional<Address> out;
  walk(root, Address::root(), [&](const TreeNode& n, const Address& a) {
    if (n.arg_index == arg_index && !out &&
        (n.kind == NodeKind::SubstitutionSite || n.kind == NodeKind::LeafUnit))
      out = a;
  });
  return out;
}

int ElementaryTree::argument_count() const {
  int n = 0;
  walk(root, Address::root(), [&](const TreeNode& node, const Address&) {
    if (node.arg_index > 0) ++n;
  });
  return n;
}

bool tree_equal(const TreeNode& a, const TreeNode& b) {
  if (a.category != b.category || a.kind != b.kind || a.adjoinable != b.adjoinable ||
      a.arg_index != b.arg_index || a.slot_id != b.slot_id ||
      a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!tree_equal(a.children[i], b.children[i])) return false;
  return true;
}

const ElementaryTree* Grammar::tree(const std::string& name) const {
  for (const auto& t : trees)
    if (t.name == name) return &t;
  return nullptr;
}

const TreeFamily* Grammar::family(const std::string& id) const {
  auto it = families.find(id);
  return it == families.end() ? nullptr : &it->second;
}

std::vector<const CueEntry*> Grammar::active_lexicon() const {
  std::vector<const CueEntry*> out;
  for (const auto& e : lexicon)
    if (e.analysis.empty() || e.analysis == so_but_analysis) out.push_back(&e);
  return out;
}

const CueEntry* Grammar::entry(const std::string& lexeme) const {
  for (const auto* e : active_lexicon())
    if (e->lexeme == lexeme) return e;
  return nullptr;
}

const CueEntry& Grammar::entry_or_throw(const std::string& lexeme) const {
  const CueEntry* e = entry(lexeme);
  if (!e) throw GrammarError("unknown cue lexeme '" + lexeme + "'");
  return *e;
}

bool Grammar::categories_match(const std::string& a, const std::string& b) const {
  auto canon = [&](const std::string& c) -> const std::string& {
    auto it = categories.find(c);
    if (it != categories.end() && !it->second.strict) return base_category;
    return c;
  };
  return canon(a) == canon(b);
}

namespace {

void validate_node(const Grammar& g, const ElementaryTree& t, const TreeNode& n) {
  const std::string where = "tree '" + t.name + "'";
  if (n.category != Grammar::base_category && !g.categories.count(n.category))
    throw GrammarError(where + ": category '" + n.category + "' is not declared");
  if (n.kind != NodeKind::Interior && !n.children.empty())
    throw GrammarError(where + ": a " + std::string(to_string(n.kind)) + " node has children");
  if (n.kind == NodeKind::Interior && n.children.empty())
    throw GrammarError(where + ": an interior node has no children");
  if (n.kind == NodeKind::AnchorSlot && !t.slot(n.slot_id))
    throw GrammarError(where + ": anchor node references undeclared slot '" + n.slot_id + "'");
  for (const auto& c : n.children) validate_node(g, t, c);
}

}  // namespace

void Grammar::validate() const {
  std::set<std::string> names;
  for (const auto& t : trees) {
    const std::string where = "tree '" + t.name + "'";
    if (t.name.empty()) throw GrammarError("a tree has no name");
    if (t.name == "unit")
      throw GrammarError("the tree name 'unit' is reserved for the synthesized clause tree");
    if (!names.insert(t.name).second) throw GrammarError(where + " is declared twice");
    validate_node(*this, t, t.root);

    auto feet = [&] {
      int n = 0;
      walk(t.root, Address::root(), [&](const TreeNode& node, const Address&) {
        if (node.kind == NodeKind::Foot) ++n;
      });
      return n;
    }();
    if (t.kind == TreeKind::Initial && feet != 0)
      throw GrammarError(where + ": an initial tree may not contain a foot node");
    if (t.kind == TreeKind::Auxiliary) {
      if (feet != 1)
        throw GrammarError(where + ": an auxiliary tree needs exactly one foot node, found " +
                           std::to_string(feet));
      const TreeNode* foot = t.node_at(*t.foot_address());
      if (foot->category != t.root.category)
        throw GrammarError(where + ": foot category '" + foot->category +
                           "' differs from root category '" + t.root.category + "'");
    }

    // Anchor slots and anchor nodes must pair off exactly.
    auto anchor_nodes = t.anchor_addresses();
    if (anchor_nodes.size() != t.anchors.size())
      throw GrammarError(where + ": " + std::to_string(t.anchors.size()) +
                         " anchor slots declared but " + std::to_string(anchor_nodes.size()) +
                         " anchor nodes present");
    std::set<std::string> slot_ids;
    for (const auto& s : t.anchors) {
      if (!slot_ids.insert(s.id).second)
        throw GrammarError(where + ": anchor slot '" + s.id + "' declared twice");
      if (!t.anchor_address(s.id))
        throw GrammarError(where + ": anchor slot '" + s.id + "' has no node in the skeleton");
      inventory.validate(s.features, where + " slot '" + s.id + "'");
    }

    if (t.anchors.empty() || t.anchors.size() > 2)
      throw GrammarError(where + ": trees carry one or two anchor slots, found " +
                         std::to_string(t.anchors.size()));
    if (t.anchors.size() == 2 &&
        (t.kind != TreeKind::Initial || t.argument_count() != 2))
      throw GrammarError(where +
                         ": only two-argument initial (parallel-construction) trees may carry "
                         "two anchor slots");
    for (const auto& s : t.anchors) {
      if (s.realization == SlotRealization::Optional && t.anchors.size() != 2 &&
          !(t.kind == TreeKind::Auxiliary && !t.site_addresses().empty()))
        throw GrammarError(where + ": slot '" + s.id +
                           "' may not be optional; optional realization is reserved for "
                           "paired anchors and extension-style auxiliaries");
    }

    // Argument labels must be 1..2, each at most once.
    std::set<int> args;
    walk(t.root, Address::root(), [&](const TreeNode& node, const Address&) {
      if (node.arg_index == 0) return;
      if (node.arg_index < 1 || node.arg_index > 2)
        throw GrammarError(where + ": argument label " + std::to_string(node.arg_index) +
                           " out of range");
      if (!args.insert(node.arg_index).second)
        throw GrammarError(where + ": argument label " + std::to_string(node.arg_index) +
                           " used twice");
    });

    if (t.family.empty()) throw GrammarError(where + " names no family");
    auto fit = families.find(t.family);
    if (fit == families.end())
      throw GrammarError(where + ": family '" + t.family + "' is not declared");
    const TreeFamily& fam = fit->second;
    if (std::find(fam.trees.begin(), fam.trees.end(), t.name) == fam.trees.end())
      throw GrammarError(where + ": family '" + t.family + "' does not list it");
    if (t.predicate != fam.predicate)
      throw GrammarError(where + ": predicate '" + t.predicate + "' differs from family '" +
                         fam.predicate + "'");
  }

  for (const auto& [id, fam] : families) {
    if (id != fam.id) throw GrammarError("family '" + id + "': id mismatch");
    if (fam.trees.empty()) throw GrammarError("family '" + id + "' lists no trees");
    int argc = -1;
    for (const auto& tn : fam.trees) {
      const ElementaryTree* t = tree(tn);
      if (!t) throw GrammarError("family '" + id + "' lists unknown tree '" + tn + "'");
      if (t->family != id)
        throw GrammarError("family '" + id + "' lists tree '" + tn + "' of family '" +
                           t->family + "'");
      if (argc < 0) argc = t->argument_count();
      if (t->argument_count() != argc)
        throw GrammarError("family '" + id + "': members disagree on argument count");
      // Auxiliaries take their first argument through the foot.
      int provided = t->argument_count() + (t->kind == TreeKind::Auxiliary ? 1 : 0);
      if (fam.predicate != "none" && provided != 2)
        throw GrammarError("family '" + id + "': predicate '" + fam.predicate +
                           "' needs two argument positions, tree '" + tn + "' provides " +
                           std::to_string(provided));
    }
  }

  std::set<std::string> active;
  int empties = 0;
  for (const auto& e : lexicon) {
    const std::string where = "cue '" + e.lexeme + "'";
    inventory.validate(e.features, where);
    if ((e.cls == CueClass::Empty) != e.lexeme.empty())
      throw GrammarError(where + ": the empty class and the empty lexeme imply each other");
    if (e.is_empty_cue()) {
      ++empties;
      if (!e.features.empty()) throw GrammarError("the empty cue may not carry features");
      if (!e.presupposition.empty())
        throw GrammarError("the empty cue may not carry a presupposition template");
    }
    if (!e.presupposition.empty() && e.cls != CueClass::Adverbial &&
        e.cls != CueClass::Conjunction)
      throw GrammarError(where +
                         ": presupposition templates are limited to adverbial and "
                         "conjunction entries");
    if (e.analysis.empty() || e.analysis == so_but_analysis) {
      if (!active.insert(e.lexeme).second)
        throw GrammarError(where + " is active twice under analysis '" + so_but_analysis + "'");
    }
  }
  if (empties != 1) throw GrammarError("the lexicon needs exactly one empty-cue entry");

  if (categories.count(base_category))
    throw GrammarError("category 'DU' is built in and may not be redeclared");
}

bool Grammar::operator==(const Grammar& o) const {
  if (!(inventory == o.inventory) || !(categories == o.categories) ||
      !(families == o.families) || !(lexicon == o.lexicon) ||
      so_but_analysis != o.so_but_analysis ||
      allow_foot_adjunction != o.allow_foot_adjunction ||
      trees.size() != o.trees.size())
    return false;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const auto& a = trees[i];
    const auto& b = o.trees[i];
    if (a.name != b.name || a.kind != b.kind || a.anchors != b.anchors ||
        a.family != b.family || a.predicate != b.predicate ||
        a.precondition != b.precondition || !tree_equal(a.root, b.root))
      return false;
  }
  return true;
}

bool anchor_accepts(const Grammar& g, const ElementaryTree&, const AnchorSlot& slot,
                    const CueEntry& cue) {
  (void)g;
  if (cue.is_empty_cue()) return slot.realization == SlotRealization::Optional;
  if (std::find(slot.classes.begin(), slot.classes.end(), cue.cls) == slot.classes.end())
    return false;
  return realizable(slot.features, cue.features);
}

std::vector<const ElementaryTree*> candidate_trees(const Grammar& g, const CueEntry& cue) {
  std::vector<const ElementaryTree*> out;
  for (const auto& t : g.trees) {
    for (const auto& s : t.anchors) {
      if (anchor_accepts(g, t, s, cue)) {
        out.push_back(&t);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ElementaryTree* a, const ElementaryTree* b) { return a->name < b->name; });
  return out;
}

std::vector<const ElementaryTree*> candidate_trees(const Grammar& g, const std::string& lexeme) {
  return candidate_trees(g, g.entry_or_throw(lexeme));
}

bool anchors_lexicalized(const ElementaryTree& tree, const std::vector<std::string>& lexemes) {
  if (tree.anchors.size() < 2) return true;
  return std::any_of(lexemes.begin(), lexemes.end(),
                     [](const std::string& l) { return !l.empty(); });
}

}  // namespace dltag
