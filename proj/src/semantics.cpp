#include "dltag/semantics.hpp"

#include <algorithm>
#include <map>

namespace dltag {

std::string Term::to_string() const {
  if (is_leaf()) return head;
  std::string s = head + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += args[i].to_string();
  }
  return s + ")";
}

namespace {

void collect_props(const Term& t, std::set<std::string>& out) {
  if (t.is_leaf()) {
    out.insert(t.head);
    return;
  }
  for (const Term& a : t.args) collect_props(a, out);
}

}  // namespace

std::set<std::string> props(const Term& t) {
  std::set<std::string> out;
  collect_props(t, out);
  return out;
}

const char* to_string(CancelStatus s) {
  switch (s) {
    case CancelStatus::Cancelled: return "cancelled";
    case CancelStatus::RejectedCompositional: return "rejected-compositional";
  }
  return "?";
}

// ── Composition ─────────────────────────────────────────────────────────────

namespace {

// What a walked sub-derivation hands upward: its term, the units it covers,
// and presuppositions still waiting for an enclosing predication to license
// them (indices into the ledger under construction).
struct Bundle {
  Term term;
  std::set<std::string> units;
  std::vector<std::size_t> pending;
};

class Composer {
public:
  Composer(const Grammar& g, const DiscourseInput& input) : g_(g), input_(input) {}

  MeaningLedger run(const DerivationNode& root) {
    Bundle top = walk_initial(root);
    led_.meaning = std::move(top.term);
    return std::move(led_);
  }

private:
  Bundle walk_initial(const DerivationNode& n) {
    const ElementaryTree& base = resolve_tree(g_, n.tree);
    const std::string src = source(base);

    Bundle self;
    if (base.name == unit_tree().name) {
      const ClauseUnit* u = input_.unit(n.fills.at(0).unit);
      self.term = Term::leaf(u->proposition);
      self.units.insert(u->id);
    } else {
      std::map<int, Bundle> args = argument_bundles(base, n);
      self = predicate_instance(base, n, src, args.at(1), args.at(2));
    }
    return fold_adjunctions(n, std::move(self));
  }

  // Applies one auxiliary instance (and anything stacked on it) to the
  // meaning of the material it adjoined to.
  Bundle apply_aux(const DerivationNode& n, Bundle host) {
    const ElementaryTree& base = resolve_tree(g_, n.tree);
    const std::string src = source(base);

    Bundle self;
    if (base.predicate != "none") {
      std::map<int, Bundle> args = argument_bundles(base, n);
      auto it = args.begin();
      if (args.size() != 1)
        throw DerivationError("compose: tree '" + base.name +
                              "' should contribute exactly one argument beside its foot");
      self = predicate_instance(base, n, src, host, it->second);
    } else {
      self = std::move(host);
      for (const RealizeStep& r : n.realizes) {
        if (r.lexeme.empty()) continue;
        const CueEntry& e = g_.entry_or_throw(r.lexeme);
        if (e.presupposition.empty()) continue;
        led_.presuppositions.push_back(
            {e.lexeme, e.presupposition, self.term, std::nullopt, src});
        self.pending.push_back(led_.presuppositions.size() - 1);
      }
    }
    return fold_adjunctions(n, std::move(self));
  }

  Bundle fold_adjunctions(const DerivationNode& n, Bundle m) {
    for (const auto& c : n.children)
      if (c.op == StepOp::Adjoin) m = apply_aux(c.node, std::move(m));
    return m;
  }

  // Shared core for every predicate-bearing instance: anchor-borne
  // presuppositions, the predication, licensing of pending presuppositions,
  // and any inference hooks the input proposed for this pair.
  Bundle predicate_instance(const ElementaryTree& base, const DerivationNode& n,
                            const std::string& src, Bundle first, Bundle second) {
    for (const RealizeStep& r : n.realizes) {
      if (r.lexeme.empty()) continue;
      const CueEntry& e = g_.entry_or_throw(r.lexeme);
      if (e.presupposition.empty()) continue;
      bool scope_second = scope_is_second(base, r.at);
      const Bundle& scope = scope_second ? second : first;
      const Bundle& licensor = scope_second ? first : second;
      led_.presuppositions.push_back(
          {e.lexeme, e.presupposition, scope.term, licensor.term, src});
    }

    std::string pred = base.predicate;
    const TreeFamily* fam = g_.family(base.family);
    if (fam && fam->cue_specializes)
      for (const RealizeStep& r : n.realizes)
        if (!r.lexeme.empty()) {
          std::string suffix = r.lexeme;
          std::replace(suffix.begin(), suffix.end(), ' ', '-');
          pred += "-" + suffix;
          break;
        }

    led_.predications.push_back({pred, first.term, second.term, src});
    for (std::size_t i : first.pending) led_.presuppositions[i].licensed_by = second.term;
    for (std::size_t i : second.pending) led_.presuppositions[i].licensed_by = first.term;

    std::set<std::string> p1 = props(first.term), p2 = props(second.term);
    for (const HookCandidate& hc : input_.hook_candidates) {
      if (!p1.count(hc.first) || !p2.count(hc.second)) continue;
      std::optional<UnitModal> modal;
      for (const std::string& uid : second.units)
        if (const ClauseUnit* u = input_.unit(uid))
          if (u->modal == UnitModal::Possible) modal = UnitModal::Possible;
      led_.hooks.push_back({hc.candidate, first.term, second.term, false, modal, src});
    }

    Bundle out;
    out.term = Term{pred, {std::move(first.term), std::move(second.term)}};
    out.units = std::move(first.units);
    out.units.insert(second.units.begin(), second.units.end());
    return out;
  }

  // Argument bundles of an instance, keyed by argument label: labelled leaf
  // fills become proposition leaves, labelled substitutions are walked.
  std::map<int, Bundle> argument_bundles(const ElementaryTree& base, const DerivationNode& n) {
    std::map<int, Bundle> args;
    for (const FillStep& f : n.fills) {
      const TreeNode* node = base.node_at(f.at);
      if (!node || node->arg_index == 0) continue;
      const ClauseUnit* u = input_.unit(f.unit);
      Bundle b;
      b.term = Term::leaf(u->proposition);
      b.units.insert(u->id);
      args.emplace(node->arg_index, std::move(b));
    }
    for (const auto& c : n.children) {
      if (c.op != StepOp::Substitute) continue;
      const TreeNode* site = base.node_at(c.at);
      if (!site || site->arg_index == 0) continue;
      args.emplace(site->arg_index, walk_initial(c.node));
    }
    return args;
  }

  // Whether the anchor at `at` introduces the second argument (the argument
  // node that follows it in skeleton order) rather than the first.
  bool scope_is_second(const ElementaryTree& base, const Address& at) {
    std::vector<Address> arg_addrs;
    for (const Address& a : base.site_addresses()) arg_addrs.push_back(a);
    for (const Address& a : base.leaf_unit_addresses())
      if (base.node_at(a)->arg_index != 0) arg_addrs.push_back(a);
    std::sort(arg_addrs.begin(), arg_addrs.end());
    for (const Address& a : arg_addrs)
      if (at < a) {
        if (base.kind == TreeKind::Auxiliary) return true;  // foot side is first
        return base.node_at(a)->arg_index == 2;
      }
    return false;  // anchor after every argument: it introduced the first one
  }

  std::string source(const ElementaryTree& base) {
    return "#" + std::to_string(counter_++) + ":" + base.name;
  }

  const Grammar& g_;
  const DiscourseInput& input_;
  MeaningLedger led_;
  int counter_ = 0;
};

}  // namespace

MeaningLedger compose(const Grammar& g, const DiscourseInput& input, const DerivationTree& d) {
  linearize(replay(g, input, d));  // reject incomplete or ill-formed derivations
  DerivationTree canon = d;
  canon.canonicalize();
  return Composer(g, input).run(canon.root);
}

// ── Cancellation and reporting ──────────────────────────────────────────────

CancelResult cancel(const MeaningLedger& ledger, const std::string& a, const std::string& b) {
  auto matches = [&](const Term& t1, const Term& t2) {
    std::set<std::string> p1 = props(t1), p2 = props(t2);
    return (p1.count(a) && p2.count(b)) || (p1.count(b) && p2.count(a));
  };

  for (std::size_t i = 0; i < ledger.hooks.size(); ++i) {
    const InferenceHook& h = ledger.hooks[i];
    if (!matches(h.arg1, h.arg2)) continue;
    std::string rel = h.candidate + "(" + h.arg1.to_string() + ", " + h.arg2.to_string() + ")";
    MeaningLedger updated = ledger;
    updated.hooks[i].cancelled = true;  // idempotent when already cancelled
    return {CancelStatus::Cancelled, std::move(updated), std::move(rel)};
  }
  for (const Predication& p : ledger.predications) {
    if (!matches(p.arg1, p.arg2)) continue;
    std::string rel = p.predicate + "(" + p.arg1.to_string() + ", " + p.arg2.to_string() + ")";
    return {CancelStatus::RejectedCompositional, ledger, std::move(rel)};
  }

  std::set<std::string> known = props(ledger.meaning);
  if (!known.count(a)) throw InputError("cancel: unknown proposition '" + a + "'");
  if (!known.count(b)) throw InputError("cancel: unknown proposition '" + b + "'");
  throw InputError("cancel: no asserted or inferred relation holds between '" + a + "' and '" +
                   b + "'");
}

std::vector<std::string> presupposition_report(const MeaningLedger& ledger) {
  std::vector<std::string> out;
  for (const Presupposition& p : ledger.presuppositions) {
    std::string licensor = p.licensed_by ? p.licensed_by->to_string() : "";
    std::string line = "\"" + p.cue + "\": presupposes ";
    if (p.template_id == "defeasible-rule-failure" ||
        p.template_id == "defeasible-rule-success") {
      line += "a shared defeasible rule, licensed by " +
              (licensor.empty() ? std::string("the prior discourse") : licensor) + ", that " +
              (p.template_id == "defeasible-rule-failure" ? "fails to hold of" : "holds of") +
              " " + p.scope.to_string();
    } else {
      line += p.template_id + " of " + p.scope.to_string();
      if (!licensor.empty()) line += ", given " + licensor;
    }
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace dltag
