#include <algorithm>

#include "dltag/derivation.hpp"

// Exhaustive search over derivation trees, bounded by the number of
// elementary-tree instances. Builds every completion of every initial tree
// top-down, threading pools of unused units and cue markers, then keeps the
// completions that consume the whole input and linearize back to it.
// Deliberately naive: this is the reference the chart parser is checked
// against.

namespace dltag {

namespace {

struct Pool {
  std::vector<bool> units;
  std::vector<bool> cues;
};

struct Partial {
  DerivationNode node;
  Pool pool;
  int steps = 0;  // tree instances in the whole derivation so far
};

class Enumerator {
public:
  Enumerator(const Grammar& g, const DiscourseInput& input, int bound)
      : g_(g), input_(input), bound_(bound) {
    initials_.push_back(&unit_tree());
    for (const auto& t : g.trees)
      (t.kind == TreeKind::Initial ? initials_ : auxiliaries_).push_back(&t);
  }

  const std::vector<const ElementaryTree*>& initials() const { return initials_; }
  bool exceeded() const { return exceeded_; }

  // Every way to finish an instance of `base` given `pool`, where `steps`
  // counts everything spent so far including the step that introduced `base`.
  std::vector<Partial> complete(const ElementaryTree& base, const Pool& pool, int steps) {
    std::vector<Partial> acc;
    acc.push_back({DerivationNode{base.name, {}, {}, {}}, pool, steps});

    for (const Address& a : base.leaf_unit_addresses()) {
      std::vector<Partial> next;
      for (const Partial& p : acc)
        for (std::size_t i = 0; i < input_.units.size(); ++i) {
          if (p.pool.units[i]) continue;
          Partial q = p;
          q.pool.units[i] = true;
          q.node.fills.push_back({a, input_.units[i].id});
          push(next, std::move(q), 0);
        }
      acc = std::move(next);
    }

    for (const Address& a : base.anchor_addresses()) {
      const AnchorSlot* slot = base.slot(base.node_at(a)->slot_id);
      std::vector<Partial> next;
      for (const Partial& p : acc) {
        if (slot->realization == SlotRealization::Optional) {
          Partial q = p;
          q.node.realizes.push_back({a, slot->id, "", std::nullopt});
          push(next, std::move(q), 0);
        }
        for (std::size_t j = 0; j < input_.cues.size(); ++j) {
          if (p.pool.cues[j]) continue;
          const CueMarker& m = input_.cues[j];
          if (m.position != slot->position) continue;
          const CueEntry* e = g_.entry(m.lexeme);
          if (!e || !anchor_accepts(g_, base, *slot, *e)) continue;
          Partial q = p;
          q.pool.cues[j] = true;
          q.node.realizes.push_back({a, slot->id, m.lexeme, m.position});
          push(next, std::move(q), 0);
        }
      }
      acc = std::move(next);
    }
    if (base.anchors.size() >= 2)
      std::erase_if(acc, [&](const Partial& p) {
        return !anchors_lexicalized(base, p.node.realized_lexemes());
      });

    for (const Address& a : base.site_addresses()) {
      const std::string& cat = base.node_at(a)->category;
      std::vector<Partial> next;
      for (const Partial& p : acc)
        for (const ElementaryTree* t : initials_) {
          if (!g_.categories_match(cat, t->root.category)) continue;
          if (p.steps + 1 > bound_) {
            exceeded_ = true;
            continue;
          }
          for (Partial& sub : complete(*t, p.pool, p.steps + 1)) {
            Partial q{p.node, std::move(sub.pool), sub.steps};
            q.node.children.push_back({StepOp::Substitute, a, std::move(sub.node)});
            next.push_back(std::move(q));
          }
        }
      acc = std::move(next);
    }

    std::vector<Address> adj_targets = base.interior_addresses();
    if (g_.allow_foot_adjunction)
      if (auto f = base.foot_address()) adj_targets.push_back(*f);
    for (const Address& a : adj_targets) {
      const std::string& cat = base.node_at(a)->category;
      std::vector<Partial> next;
      for (const Partial& p : acc) {
        next.push_back(p);
        for (const ElementaryTree* t : auxiliaries_) {
          if (!g_.categories_match(cat, t->root.category)) continue;
          if (p.steps + 1 > bound_) {
            exceeded_ = true;
            continue;
          }
          for (Partial& sub : complete(*t, p.pool, p.steps + 1)) {
            Partial q{p.node, std::move(sub.pool), sub.steps};
            q.node.children.push_back({StepOp::Adjoin, a, std::move(sub.node)});
            next.push_back(std::move(q));
          }
        }
      }
      acc = std::move(next);
    }
    return acc;
  }

private:
  void push(std::vector<Partial>& out, Partial&& q, int cost) {
    q.steps += cost;
    if (q.steps > bound_) {
      exceeded_ = true;
      return;
    }
    out.push_back(std::move(q));
  }

  const Grammar& g_;
  const DiscourseInput& input_;
  int bound_;
  bool exceeded_ = false;
  std::vector<const ElementaryTree*> initials_;
  std::vector<const ElementaryTree*> auxiliaries_;
};

}  // namespace

EnumerationResult enumerate_all(const Grammar& g, const DiscourseInput& input, int bound) {
  input.validate(g);
  const std::vector<Token> want = input_tokens(input);

  Enumerator en(g, input, bound);
  Pool fresh{std::vector<bool>(input.units.size(), false),
             std::vector<bool>(input.cues.size(), false)};

  std::vector<DerivationTree> found;
  for (const ElementaryTree* t : en.initials()) {
    if (!g.categories_match(Grammar::base_category, t->root.category)) continue;
    for (Partial& p : en.complete(*t, fresh, 1)) {
      bool all_units = std::all_of(p.pool.units.begin(), p.pool.units.end(),
                                   [](bool b) { return b; });
      bool all_cues =
          std::all_of(p.pool.cues.begin(), p.pool.cues.end(), [](bool b) { return b; });
      if (!all_units || !all_cues) continue;
      DerivationTree d{std::move(p.node)};
      if (linearize(replay(g, input, d)) != want) continue;
      d.canonicalize();
      found.push_back(std::move(d));
    }
  }

  std::sort(found.begin(), found.end(), [](const DerivationTree& a, const DerivationTree& b) {
    return a.to_bracket() < b.to_bracket();
  });
  found.erase(std::unique(found.begin(), found.end(),
                          [](const DerivationTree& a, const DerivationTree& b) {
                            return a.to_bracket() == b.to_bracket();
                          }),
              found.end());
  return {std::move(found), en.exceeded()};
}

}  // namespace dltag
