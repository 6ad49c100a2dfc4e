#include "dltag/render.hpp"

#include "json.hpp"

namespace dltag {

namespace {

using json = nlohmann::ordered_json;

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

int dot_node(const DerivationNode& n, int& next, std::string& out) {
  int id = next++;
  std::string label = n.tree;
  for (const auto& f : n.fills) label += "\nfill " + f.unit + " @ " + f.at.to_string();
  for (const auto& r : n.realizes)
    label += "\nrealize \"" + r.lexeme + "\" @ " + r.at.to_string();
  out += "  n" + std::to_string(id) + " [label=\"" + dot_escape(label) + "\"];\n";
  for (const auto& c : n.children) {
    int child = dot_node(c.node, next, out);
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(child) + " [label=\"" +
           std::string(to_string(c.op)) + " @ " + c.at.to_string() + "\"];\n";
  }
  return id;
}

json node_json(const DerivationNode& n) {
  json j;
  j["tree"] = n.tree;
  j["fills"] = json::array();
  for (const auto& f : n.fills)
    j["fills"].push_back({{"at", f.at.to_string()}, {"unit", f.unit}});
  j["realizes"] = json::array();
  for (const auto& r : n.realizes) {
    json rj;
    rj["at"] = r.at.to_string();
    rj["slot"] = r.slot;
    rj["lexeme"] = r.lexeme;
    rj["tag"] = r.tag ? json(to_string(*r.tag)) : json(nullptr);
    j["realizes"].push_back(std::move(rj));
  }
  j["children"] = json::array();
  for (const auto& c : n.children)
    j["children"].push_back(
        {{"op", to_string(c.op)}, {"at", c.at.to_string()}, {"node", node_json(c.node)}});
  return j;
}

json term_json(const Term& t) {
  json j;
  j["head"] = t.head;
  j["args"] = json::array();
  for (const Term& a : t.args) j["args"].push_back(term_json(a));
  return j;
}

json ledger_json(const MeaningLedger& l) {
  json j;
  j["meaning"] = l.meaning.to_string();
  j["term"] = term_json(l.meaning);
  j["predications"] = json::array();
  for (const auto& p : l.predications)
    j["predications"].push_back({{"predicate", p.predicate},
                                 {"arg1", p.arg1.to_string()},
                                 {"arg2", p.arg2.to_string()},
                                 {"source", p.source}});
  j["presuppositions"] = json::array();
  for (const auto& p : l.presuppositions)
    j["presuppositions"].push_back(
        {{"cue", p.cue},
         {"template", p.template_id},
         {"scope", p.scope.to_string()},
         {"licensed-by", p.licensed_by ? json(p.licensed_by->to_string()) : json(nullptr)},
         {"source", p.source}});
  j["hooks"] = json::array();
  for (const auto& h : l.hooks)
    j["hooks"].push_back({{"candidate", h.candidate},
                          {"arg1", h.arg1.to_string()},
                          {"arg2", h.arg2.to_string()},
                          {"cancelled", h.cancelled},
                          {"modal", h.modal ? json(to_string(*h.modal)) : json(nullptr)},
                          {"source", h.source}});
  return j;
}

}  // namespace

std::string derivation_to_dot(const DerivationTree& d, const std::string& graph_name) {
  std::string out = "digraph " + graph_name + " {\n";
  out += "  node [shape=box, fontname=\"monospace\"];\n";
  int next = 0;
  dot_node(d.root, next, out);
  out += "}\n";
  return out;
}

std::string derivation_to_json(const DerivationTree& d) {
  json j;
  j["format-version"] = 1;
  j["bracket"] = d.to_bracket();
  j["steps"] = d.step_count();
  j["tree"] = node_json(d.root);
  return j.dump(2) + "\n";
}

std::string derivations_to_json(const Grammar& g, const DiscourseInput& input,
                                const std::vector<DerivationTree>& ds, bool with_ledgers,
                                std::optional<bool> bound_exceeded) {
  json j;
  j["format-version"] = 1;
  j["count"] = ds.size();
  if (bound_exceeded) j["bound-exceeded"] = *bound_exceeded;
  j["derivations"] = json::array();
  for (const auto& d : ds) {
    json dj;
    dj["bracket"] = d.to_bracket();
    dj["steps"] = d.step_count();
    dj["tree"] = node_json(d.root);
    if (with_ledgers) dj["ledger"] = ledger_json(compose(g, input, d));
    j["derivations"].push_back(std::move(dj));
  }
  return j.dump(2) + "\n";
}

std::string ledger_to_json(const MeaningLedger& l) {
  json j;
  j["format-version"] = 1;
  j.update(ledger_json(l));
  return j.dump(2) + "\n";
}

std::string ledger_to_text(const MeaningLedger& l) {
  std::string out = "meaning: " + l.meaning.to_string() + "\n";
  out += "predications (" + std::to_string(l.predications.size()) + "):\n";
  for (const auto& p : l.predications)
    out += "  " + p.predicate + "(" + p.arg1.to_string() + ", " + p.arg2.to_string() + ")  [" +
           p.source + "]\n";
  out += "presuppositions (" + std::to_string(l.presuppositions.size()) + "):\n";
  for (const std::string& line : presupposition_report(l)) out += "  " + line + "\n";
  out += "hooks (" + std::to_string(l.hooks.size()) + "):\n";
  for (const auto& h : l.hooks) {
    out += "  " + h.candidate + "(" + h.arg1.to_string() + ", " + h.arg2.to_string() + ") [" +
           (h.cancelled ? "cancelled" : "open");
    if (h.modal) out += ", modal: " + std::string(to_string(*h.modal));
    out += "]  [" + h.source + "]\n";
  }
  return out;
}

}  // namespace dltag
