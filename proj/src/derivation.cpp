#include "dltag/derivation.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace dltag {

const char* to_string(StepOp op) {
  switch (op) {
    case StepOp::Fill: return "fill";
    case StepOp::Realize: return "realize";
    case StepOp::Substitute: return "substitute";
    case StepOp::Adjoin: return "adjoin";
  }
  return "?";
}

const DerivedNode* DerivedTree::node_at(const Address& a) const {
  const DerivedNode* n = &root;
  for (int i : a.path) {
    if (i < 0 || static_cast<std::size_t>(i) >= n->children.size()) return nullptr;
    n = &n->children[i];
  }
  return n;
}

bool derived_equal(const DerivedNode& a, const DerivedNode& b) {
  if (a.category != b.category || a.kind != b.kind || a.adjoinable != b.adjoinable ||
      a.arg_index != b.arg_index || a.slot_id != b.slot_id || a.origin != b.origin ||
      a.unit_id != b.unit_id || a.leaf_filled != b.leaf_filled ||
      a.anchor_realized != b.anchor_realized || a.cue_lexeme != b.cue_lexeme ||
      a.cue_tag != b.cue_tag || a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!derived_equal(a.children[i], b.children[i])) return false;
  return true;
}

namespace {

DerivedNode instantiate_node(const TreeNode& n, const std::string& origin) {
  DerivedNode d;
  d.category = n.category;
  d.kind = n.kind;
  d.adjoinable = n.adjoinable;
  d.arg_index = n.arg_index;
  d.slot_id = n.slot_id;
  d.origin = origin;
  for (const auto& c : n.children) d.children.push_back(instantiate_node(c, origin));
  return d;
}

DerivedNode* mutable_node_at(DerivedNode& root, const Address& a) {
  DerivedNode* n = &root;
  for (int i : a.path) {
    if (i < 0 || static_cast<std::size_t>(i) >= n->children.size()) return nullptr;
    n = &n->children[i];
  }
  return n;
}

// The unique still-open foot of a derived auxiliary subtree.
DerivedNode* find_foot(DerivedNode& n) {
  if (n.kind == NodeKind::Foot) return &n;
  for (auto& c : n.children)
    if (DerivedNode* f = find_foot(c)) return f;
  return nullptr;
}

}  // namespace

DerivedTree instantiate(const ElementaryTree& t) {
  DerivedTree d;
  d.root = instantiate_node(t.root, t.name);
  d.base_tree = t.name;
  return d;
}

DerivedTree substitute(const Grammar& g, const DerivedTree& host, const Address& at,
                       const DerivedTree& arg, const ElementaryTree& arg_base) {
  if (arg_base.kind != TreeKind::Initial)
    throw DerivationError("substitute: tree '" + arg_base.name + "' is not an initial tree");
  DerivedTree out = host;
  DerivedNode* site = mutable_node_at(out.root, at);
  if (!site) throw DerivationError("substitute: no node at address " + at.to_string());
  if (site->kind != NodeKind::SubstitutionSite)
    throw DerivationError("substitute: node at " + at.to_string() +
                          " is not an open substitution site (found " +
                          std::string(to_string(site->kind)) + ")");
  if (!g.categories_match(site->category, arg_base.root.category))
    throw DerivationError("substitute: category '" + arg_base.root.category +
                          "' does not match site category '" + site->category + "'");
  int arg_index = site->arg_index;
  *site = arg.root;
  site->arg_index = arg_index;
  return out;
}

DerivedTree substitute(const Grammar& g, const DerivedTree& host, const Address& at,
                       const ElementaryTree& tree) {
  return substitute(g, host, at, instantiate(tree), tree);
}

DerivedTree adjoin(const Grammar& g, const DerivedTree& host, const Address& at,
                   const DerivedTree& aux, const ElementaryTree& aux_base) {
  if (aux_base.kind != TreeKind::Auxiliary)
    throw DerivationError("adjoin: tree '" + aux_base.name + "' is not an auxiliary tree");
  DerivedTree out = host;
  DerivedNode* target = mutable_node_at(out.root, at);
  if (!target) throw DerivationError("adjoin: no node at address " + at.to_string());
  bool foot_target = target->kind == NodeKind::Foot;
  if (foot_target && !g.allow_foot_adjunction)
    throw DerivationError("adjoin: adjunction at a foot node is disabled");
  if (!foot_target) {
    if (target->kind != NodeKind::Interior)
      throw DerivationError("adjoin: node at " + at.to_string() + " is a " +
                            std::string(to_string(target->kind)) + ", not an interior node");
    if (!target->adjoinable)
      throw DerivationError("adjoin: node at " + at.to_string() + " does not admit adjunction");
  }
  if (!g.categories_match(target->category, aux_base.root.category))
    throw DerivationError("adjoin: category '" + aux_base.root.category +
                          "' does not match node category '" + target->category + "'");

  DerivedNode excised = *target;
  DerivedNode planted = aux.root;
  DerivedNode* foot = find_foot(planted);
  if (!foot) throw DerivationError("adjoin: tree '" + aux_base.name + "' has no open foot");
  int arg_index = excised.arg_index;
  excised.arg_index = 0;
  *foot = std::move(excised);
  planted.arg_index = arg_index;
  *target = std::move(planted);
  return out;
}

DerivedTree adjoin(const Grammar& g, const DerivedTree& host, const Address& at,
                   const ElementaryTree& aux) {
  return adjoin(g, host, at, instantiate(aux), aux);
}

DerivedTree fill_leaf(const DerivedTree& host, const Address& at, const ClauseUnit& unit) {
  DerivedTree out = host;
  DerivedNode* leaf = mutable_node_at(out.root, at);
  if (!leaf) throw DerivationError("fill: no node at address " + at.to_string());
  if (leaf->kind != NodeKind::LeafUnit)
    throw DerivationError("fill: node at " + at.to_string() + " is not a leaf-unit node");
  if (leaf->leaf_filled)
    throw DerivationError("fill: leaf at " + at.to_string() + " is already bound to unit '" +
                          leaf->unit_id + "'");
  leaf->unit_id = unit.id;
  leaf->leaf_filled = true;
  return out;
}

DerivedTree realize_anchor(const Grammar& g, const DerivedTree& host, const Address& at,
                           const CueEntry& cue, std::optional<SlotPosition> tag) {
  DerivedTree out = host;
  DerivedNode* node = mutable_node_at(out.root, at);
  if (!node) throw DerivationError("realize: no node at address " + at.to_string());
  if (node->kind != NodeKind::AnchorSlot)
    throw DerivationError("realize: node at " + at.to_string() + " is not an anchor slot");
  if (node->anchor_realized)
    throw DerivationError("realize: anchor at " + at.to_string() + " is already realized");
  const ElementaryTree& owner = resolve_tree(g, node->origin);
  const AnchorSlot* slot = owner.slot(node->slot_id);
  if (!slot)
    throw DerivationError("realize: tree '" + owner.name + "' has no slot '" + node->slot_id +
                          "'");
  if (!anchor_accepts(g, owner, *slot, cue))
    throw DerivationError("realize: cue '" + cue.lexeme + "' may not realize slot '" +
                          slot->id + "' of tree '" + owner.name + "'");
  if (!cue.is_empty_cue()) {
    if (tag && *tag != slot->position)
      throw DerivationError("realize: cue '" + cue.lexeme + "' tagged " +
                            std::string(to_string(*tag)) + " at a " +
                            std::string(to_string(slot->position)) + " slot");
    node->cue_tag = slot->position;
  }
  node->anchor_realized = true;
  node->cue_lexeme = cue.lexeme;
  return out;
}

namespace {

void linearize_node(const DerivedNode& n, std::vector<Token>& out) {
  switch (n.kind) {
    case NodeKind::Interior:
      for (const auto& c : n.children) linearize_node(c, out);
      return;
    case NodeKind::SubstitutionSite:
      throw DerivationError("linearize: unfilled substitution site (tree '" + n.origin + "')");
    case NodeKind::Foot:
      throw DerivationError("linearize: open foot node (tree '" + n.origin + "')");
    case NodeKind::LeafUnit:
      if (!n.leaf_filled)
        throw DerivationError("linearize: unbound leaf unit (tree '" + n.origin + "')");
      out.push_back({Token::Kind::Unit, n.unit_id, SlotPosition::Initial});
      return;
    case NodeKind::AnchorSlot:
      if (!n.anchor_realized)
        throw DerivationError("linearize: unrealized anchor slot '" + n.slot_id + "' (tree '" +
                              n.origin + "')");
      if (!n.cue_lexeme.empty())
        out.push_back({Token::Kind::Cue, n.cue_lexeme,
                       n.cue_tag ? *n.cue_tag : SlotPosition::Initial});
      return;
  }
}

}  // namespace

std::vector<Token> linearize(const DerivedTree& t) {
  std::vector<Token> out;
  linearize_node(t.root, out);
  return out;
}

// ── Derivation trees ────────────────────────────────────────────────────────

std::vector<std::string> DerivationNode::realized_lexemes() const {
  std::vector<std::string> out;
  for (const auto& r : realizes) out.push_back(r.lexeme);
  return out;
}

bool operator==(const DerivationNode& a, const DerivationNode& b) {
  if (a.tree != b.tree || a.fills.size() != b.fills.size() ||
      a.realizes.size() != b.realizes.size() || a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.fills.size(); ++i)
    if (a.fills[i].at != b.fills[i].at || a.fills[i].unit != b.fills[i].unit) return false;
  for (std::size_t i = 0; i < a.realizes.size(); ++i) {
    const auto& x = a.realizes[i];
    const auto& y = b.realizes[i];
    if (x.at != y.at || x.slot != y.slot || x.lexeme != y.lexeme || x.tag != y.tag) return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    const auto& x = a.children[i];
    const auto& y = b.children[i];
    if (x.op != y.op || x.at != y.at || !(x.node == y.node)) return false;
  }
  return true;
}

namespace {

void bracket_node(const DerivationNode& n, const std::string& header, std::string& out,
                  int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  out += "(" + header;
  for (const auto& f : n.fills)
    out += "\n" + pad + "  (fill " + f.unit + " @ " + f.at.to_string() + ")";
  for (const auto& r : n.realizes)
    out += "\n" + pad + "  (realize \"" + r.lexeme + "\" @ " + r.at.to_string() + ")";
  for (const auto& c : n.children) {
    out += "\n" + pad + "  ";
    bracket_node(c.node,
                 std::string(to_string(c.op)) + " " + c.node.tree + " @ " + c.at.to_string(),
                 out, indent + 1);
  }
  out += ")";
}

int count_steps(const DerivationNode& n) {
  int total = static_cast<int>(n.fills.size() + n.realizes.size() + n.children.size());
  for (const auto& c : n.children) total += count_steps(c.node);
  return total;
}

std::string node_key(const DerivationNode& n) {
  std::string s;
  bracket_node(n, n.tree, s, 0);
  return s;
}

void canonicalize_node(DerivationNode& n) {
  for (auto& c : n.children) canonicalize_node(c.node);
  std::sort(n.fills.begin(), n.fills.end(), [](const FillStep& a, const FillStep& b) {
    return std::tie(a.at, a.unit) < std::tie(b.at, b.unit);
  });
  std::sort(n.realizes.begin(), n.realizes.end(), [](const RealizeStep& a, const RealizeStep& b) {
    return std::tie(a.at, a.lexeme) < std::tie(b.at, b.lexeme);
  });
  std::stable_sort(n.children.begin(), n.children.end(),
                   [](const DerivationNode::Child& a, const DerivationNode::Child& b) {
                     int ra = a.op == StepOp::Substitute ? 0 : 1;
                     int rb = b.op == StepOp::Substitute ? 0 : 1;
                     if (ra != rb) return ra < rb;
                     if (a.at != b.at) return a.at < b.at;
                     return node_key(a.node) < node_key(b.node);
                   });
}

}  // namespace

void DerivationTree::canonicalize() { canonicalize_node(root); }

std::string DerivationTree::to_bracket() const {
  std::string out;
  bracket_node(root, root.tree, out, 0);
  return out;
}

int DerivationTree::step_count() const { return count_steps(root); }

const ElementaryTree& unit_tree() {
  static const ElementaryTree t = [] {
    ElementaryTree u;
    u.name = "unit";
    u.kind = TreeKind::Initial;
    u.family = "unit";
    u.predicate = "none";
    TreeNode leaf;
    leaf.category = Grammar::base_category;
    leaf.kind = NodeKind::LeafUnit;
    TreeNode root;
    root.category = Grammar::base_category;
    root.kind = NodeKind::Interior;
    root.adjoinable = true;
    root.children.push_back(leaf);
    u.root = root;
    return u;
  }();
  return t;
}

const ElementaryTree& resolve_tree(const Grammar& g, const std::string& name) {
  if (name == unit_tree().name) return unit_tree();
  const ElementaryTree* t = g.tree(name);
  if (!t) throw DerivationError("unknown elementary tree '" + name + "'");
  return *t;
}

namespace {

DerivedTree replay_node(const Grammar& g, const DiscourseInput& input, const DerivationNode& n) {
  const ElementaryTree& base = resolve_tree(g, n.tree);
  DerivedTree t = instantiate(base);

  for (const auto& f : n.fills) {
    const ClauseUnit* u = input.unit(f.unit);
    if (!u) throw DerivationError("replay: unknown unit '" + f.unit + "'");
    t = fill_leaf(t, f.at, *u);
  }
  for (const auto& r : n.realizes) {
    const CueEntry* e = g.entry(r.lexeme);
    if (!e) throw DerivationError("replay: unknown cue lexeme '" + r.lexeme + "'");
    t = realize_anchor(g, t, r.at, *e, r.tag);
  }
  if (n.realizes.size() == base.anchors.size() &&
      !anchors_lexicalized(base, n.realized_lexemes()))
    throw DerivationError("replay: tree '" + base.name +
                          "' realizes every anchor with the empty cue");

  std::vector<const DerivationNode::Child*> subs, adjs;
  for (const auto& c : n.children)
    (c.op == StepOp::Substitute ? subs : adjs).push_back(&c);

  for (const auto* c : subs) {
    const ElementaryTree& child_base = resolve_tree(g, c->node.tree);
    t = substitute(g, t, c->at, replay_node(g, input, c->node), child_base);
  }

  std::set<Address> used;
  for (const auto* c : adjs)
    if (!used.insert(c->at).second)
      throw DerivationError("replay: two adjunctions at address " + c->at.to_string() +
                            " of tree '" + base.name + "'");
  std::sort(adjs.begin(), adjs.end(),
            [](const DerivationNode::Child* a, const DerivationNode::Child* b) {
              return a->at.depth() > b->at.depth();
            });
  for (const auto* c : adjs) {
    const ElementaryTree& child_base = resolve_tree(g, c->node.tree);
    t = adjoin(g, t, c->at, replay_node(g, input, c->node), child_base);
  }
  return t;
}

}  // namespace

DerivedTree replay(const Grammar& g, const DiscourseInput& input, const DerivationTree& d) {
  return replay_node(g, input, d.root);
}

int default_step_bound(const DiscourseInput& input) {
  return 4 * static_cast<int>(input.units.size());
}

EnumerationResult enumerate_all(const Grammar& g, const DiscourseInput& input) {
  return enumerate_all(g, input, default_step_bound(input));
}

}  // namespace dltag
