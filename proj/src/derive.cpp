#include <algorithm>

#include "dltag/derivation.hpp"

// CKY-style chart over the input token sequence. Chart items pair a
// derivation-in-progress with the instance currently on top of its adjunction
// chain; auxiliary trees combine with an item by adjoining at that top
// instance's root, so stacked modifiers chain outward one wrap per item.
//
// The chart assumes adjunction happens only at instance roots. Grammars that
// open interior nodes below the root (or enable foot-node adjunction) are
// outside its reach and are rejected up front; the exhaustive enumerator
// handles them.

namespace dltag {

namespace {

struct Item {
  DerivationNode droot;
  std::vector<int> top_path;  // child indices from droot to the top instance
  std::string top_cat;        // category of that instance's root
  bool top_adjoinable = true;
};

struct Build {
  std::vector<FillStep> fills;
  std::vector<RealizeStep> realizes;
  std::vector<DerivationNode::Child> subs;
  std::optional<Item> foot_host;
};

DerivationNode* nav(DerivationNode& n, const std::vector<int>& path) {
  DerivationNode* p = &n;
  for (int i : path) p = &p->children[static_cast<std::size_t>(i)].node;
  return p;
}

class Chart {
public:
  Chart(const Grammar& g, const DiscourseInput& input)
      : g_(g), toks_(input_tokens(input)), m_(static_cast<int>(toks_.size())) {
    trees_.push_back(&unit_tree());
    for (const auto& t : g.trees) trees_.push_back(&t);
    cells_.assign(static_cast<std::size_t>(m_) + 1,
                  std::vector<std::vector<Item>>(static_cast<std::size_t>(m_) + 1));
  }

  std::vector<DerivationTree> run() {
    for (int len = 1; len <= m_; ++len)
      for (int i = 0; i + len <= m_; ++i)
        for (const ElementaryTree* t : trees_) apply_tree(*t, i, i + len);

    std::vector<DerivationTree> out;
    for (Item& it : cells_[0][static_cast<std::size_t>(m_)]) {
      if (!g_.categories_match(Grammar::base_category, it.top_cat)) continue;
      DerivationTree d{std::move(it.droot)};
      d.canonicalize();
      out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), [](const DerivationTree& a, const DerivationTree& b) {
      return a.to_bracket() < b.to_bracket();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const std::vector<Token>& tokens() const { return toks_; }

private:
  void apply_tree(const ElementaryTree& t, int i, int j) {
    std::vector<Build> builds;
    match_seq(t, t.root.children, 0, Address::root(), i, j, Build{}, builds);
    for (Build& b : builds) {
      if (t.anchors.size() >= 2) {
        std::vector<std::string> lex;
        for (const auto& r : b.realizes) lex.push_back(r.lexeme);
        if (!anchors_lexicalized(t, lex)) continue;
      }
      DerivationNode piece{t.name, std::move(b.fills), std::move(b.realizes),
                           std::move(b.subs)};
      if (t.kind == TreeKind::Initial) {
        cells_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(
            {std::move(piece), {}, t.root.category, t.root.adjoinable});
      } else {
        Item host = std::move(*b.foot_host);
        DerivationNode* top = nav(host.droot, host.top_path);
        host.top_path.push_back(static_cast<int>(top->children.size()));
        top->children.push_back({StepOp::Adjoin, Address::root(), std::move(piece)});
        host.top_cat = t.root.category;
        host.top_adjoinable = t.root.adjoinable;
        cells_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(
            std::move(host));
      }
    }
  }

  // Tiles token positions [pos, end) with kids[ci..], accumulating steps.
  void match_seq(const ElementaryTree& t, const std::vector<TreeNode>& kids, std::size_t ci,
                 const Address& parent, int pos, int end, Build cur,
                 std::vector<Build>& out) {
    if (ci == kids.size()) {
      if (pos == end) out.push_back(std::move(cur));
      return;
    }
    const TreeNode& c = kids[ci];
    const Address addr = parent.child(static_cast<int>(ci));
    switch (c.kind) {
      case NodeKind::Interior:
        for (int k = pos; k <= end; ++k) {
          std::vector<Build> inner;
          match_seq(t, c.children, 0, addr, pos, k, cur, inner);
          for (Build& b : inner) match_seq(t, kids, ci + 1, parent, k, end, std::move(b), out);
        }
        return;
      case NodeKind::SubstitutionSite:
        for (int k = pos + 1; k <= end; ++k)
          for (const Item& it : cells_[static_cast<std::size_t>(pos)][static_cast<std::size_t>(k)]) {
            if (!g_.categories_match(c.category, it.top_cat)) continue;
            Build b = cur;
            b.subs.push_back({StepOp::Substitute, addr, it.droot});
            match_seq(t, kids, ci + 1, parent, k, end, std::move(b), out);
          }
        return;
      case NodeKind::LeafUnit:
        if (pos < end && toks_[static_cast<std::size_t>(pos)].kind == Token::Kind::Unit) {
          Build b = std::move(cur);
          b.fills.push_back({addr, toks_[static_cast<std::size_t>(pos)].text});
          match_seq(t, kids, ci + 1, parent, pos + 1, end, std::move(b), out);
        }
        return;
      case NodeKind::AnchorSlot: {
        const AnchorSlot* slot = t.slot(c.slot_id);
        if (slot->realization == SlotRealization::Optional) {
          Build b = cur;
          b.realizes.push_back({addr, slot->id, "", std::nullopt});
          match_seq(t, kids, ci + 1, parent, pos, end, std::move(b), out);
        }
        if (pos < end) {
          const Token& tok = toks_[static_cast<std::size_t>(pos)];
          if (tok.kind == Token::Kind::Cue && tok.tag == slot->position) {
            const CueEntry* e = g_.entry(tok.text);
            if (e && anchor_accepts(g_, t, *slot, *e)) {
              Build b = std::move(cur);
              b.realizes.push_back({addr, slot->id, tok.text, tok.tag});
              match_seq(t, kids, ci + 1, parent, pos + 1, end, std::move(b), out);
            }
          }
        }
        return;
      }
      case NodeKind::Foot:
        for (int k = pos + 1; k <= end; ++k)
          for (const Item& it : cells_[static_cast<std::size_t>(pos)][static_cast<std::size_t>(k)]) {
            if (!it.top_adjoinable) continue;
            if (!g_.categories_match(it.top_cat, t.root.category)) continue;
            Build b = cur;
            b.foot_host = it;
            match_seq(t, kids, ci + 1, parent, k, end, std::move(b), out);
          }
        return;
    }
  }

  const Grammar& g_;
  std::vector<Token> toks_;
  int m_;
  std::vector<const ElementaryTree*> trees_;
  std::vector<std::vector<std::vector<Item>>> cells_;
};

}  // namespace

std::vector<DerivationTree> derive(const Grammar& g, const DiscourseInput& input) {
  input.validate(g);
  if (g.allow_foot_adjunction)
    throw DerivationError(
        "derive: foot-node adjunction is enabled; the chart cannot cover it, use the "
        "exhaustive enumerator");
  for (const auto& t : g.trees)
    for (const Address& a : t.interior_addresses())
      if (!a.is_root())
        throw DerivationError("derive: tree '" + t.name +
                              "' admits adjunction below its root; the chart cannot cover "
                              "it, use the exhaustive enumerator");

  Chart chart(g, input);
  std::vector<DerivationTree> out = chart.run();
  for (const DerivationTree& d : out)
    if (linearize(replay(g, input, d)) != chart.tokens())
      throw DerivationError("internal: derivation fails to linearize to its input");
  return out;
}

}  // namespace dltag
