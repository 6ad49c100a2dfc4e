#include <fstream>
#include <sstream>

#include "dltag/grammar.hpp"
#include "json.hpp"

namespace dltag {

using json = nlohmann::ordered_json;

namespace {

const json& expect(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw GrammarError(where + ": missing key '" + key + "'");
  return *it;
}

std::string expect_string(const json& obj, const std::string& key, const std::string& where) {
  const json& v = expect(obj, key, where);
  if (!v.is_string()) throw GrammarError(where + ": key '" + key + "' must be a string");
  return v.get<std::string>();
}

FeatureStructure parse_features(const json& v, const std::string& where) {
  if (!v.is_object()) throw GrammarError(where + ": 'features' must be an object");
  std::map<std::string, std::string> b;
  for (const auto& [name, value] : v.items()) {
    if (!value.is_string())
      throw GrammarError(where + ": feature '" + name + "' must bind a string value");
    b[name] = value.get<std::string>();
  }
  return FeatureStructure(std::move(b));
}

// Skeleton encoding: an interior node is an array whose first element is its
// category (suffix "~" marks it non-adjoinable) followed by children; leaves
// are strings: "CAT!" substitution site ("CAT!1"/"CAT!2" with argument
// label), "CAT*" foot, "CAT." leaf unit ("CAT.1"/"CAT.2" labelled),
// "@slot-id" anchor slot.
TreeNode parse_skeleton(const json& v, const ElementaryTree& t, const std::string& where);

TreeNode parse_leaf(const std::string& s, const ElementaryTree& t, const std::string& where) {
  TreeNode n;
  if (s.empty()) throw GrammarError(where + ": empty skeleton leaf");
  if (s[0] == '@') {
    n.kind = NodeKind::AnchorSlot;
    n.slot_id = s.substr(1);
    n.category = Grammar::base_category;
    if (n.slot_id.empty()) throw GrammarError(where + ": anchor leaf '@' names no slot");
    return n;
  }
  auto mark = s.find_first_of("!*.");
  if (mark == std::string::npos)
    throw GrammarError(where + ": skeleton leaf '" + s +
                       "' has no marker (expected !, *, . or @)");
  n.category = s.substr(0, mark);
  if (n.category.empty()) throw GrammarError(where + ": skeleton leaf '" + s + "' lacks a category");
  std::string rest = s.substr(mark + 1);
  switch (s[mark]) {
    case '!': n.kind = NodeKind::SubstitutionSite; break;
    case '*': n.kind = NodeKind::Foot; break;
    case '.': n.kind = NodeKind::LeafUnit; break;
  }
  if (!rest.empty()) {
    if (s[mark] == '*' || rest.find_first_not_of("12") != std::string::npos)
      throw GrammarError(where + ": bad skeleton leaf '" + s + "'");
    n.arg_index = rest[0] - '0';
  }
  (void)t;
  return n;
}

TreeNode parse_skeleton(const json& v, const ElementaryTree& t, const std::string& where) {
  if (v.is_string()) return parse_leaf(v.get<std::string>(), t, where);
  if (!v.is_array() || v.empty() || !v[0].is_string())
    throw GrammarError(where + ": an interior skeleton node must be [category, child...]");
  TreeNode n;
  n.kind = NodeKind::Interior;
  std::string cat = v[0].get<std::string>();
  n.adjoinable = true;
  if (!cat.empty() && cat.back() == '~') {
    n.adjoinable = false;
    cat.pop_back();
  }
  if (cat.empty()) throw GrammarError(where + ": interior node lacks a category");
  n.category = cat;
  for (std::size_t i = 1; i < v.size(); ++i)
    n.children.push_back(parse_skeleton(v[i], t, where));
  return n;
}

json skeleton_to_json(const TreeNode& n) {
  switch (n.kind) {
    case NodeKind::Interior: {
      json arr = json::array();
      arr.push_back(n.adjoinable ? n.category : n.category + "~");
      for (const auto& c : n.children) arr.push_back(skeleton_to_json(c));
      return arr;
    }
    case NodeKind::SubstitutionSite:
      return n.category + "!" + (n.arg_index ? std::to_string(n.arg_index) : "");
    case NodeKind::Foot:
      return n.category + "*";
    case NodeKind::LeafUnit:
      return n.category + "." + (n.arg_index ? std::to_string(n.arg_index) : "");
    case NodeKind::AnchorSlot:
      return "@" + n.slot_id;
  }
  return nullptr;
}

json features_to_json(const FeatureStructure& fs) {
  json o = json::object();
  for (const auto& [f, v] : fs.bindings()) o[f] = v;
  return o;
}

}  // namespace

Grammar load_grammar(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw GrammarError(std::string("grammar parse error: ") + e.what());
  }
  if (!doc.is_object()) throw GrammarError("grammar file must be a JSON object");

  const json& ver = expect(doc, "format-version", "grammar");
  if (!ver.is_number_integer() || ver.get<int>() != 1)
    throw GrammarError("grammar: unsupported format-version");

  Grammar g;

  if (doc.contains("flags")) {
    const json& flags = doc["flags"];
    if (!flags.is_object()) throw GrammarError("grammar: 'flags' must be an object");
    for (const auto& [k, v] : flags.items()) {
      if (k == "so-but-analysis") {
        if (!v.is_string()) throw GrammarError("grammar: flag 'so-but-analysis' must be a string");
        g.so_but_analysis = v.get<std::string>();
      } else if (k == "allow-foot-adjunction") {
        if (!v.is_boolean())
          throw GrammarError("grammar: flag 'allow-foot-adjunction' must be a boolean");
        g.allow_foot_adjunction = v.get<bool>();
      } else {
        throw GrammarError("grammar: unknown flag '" + k + "'");
      }
    }
  }

  const json& feats = expect(doc, "features", "grammar");
  if (!feats.is_object()) throw GrammarError("grammar: 'features' must be an object");
  for (const auto& [name, vals] : feats.items()) {
    if (!vals.is_array())
      throw GrammarError("grammar: feature '" + name + "' must declare an array of values");
    std::vector<std::string> values;
    for (const auto& v : vals) {
      if (!v.is_string())
        throw GrammarError("grammar: feature '" + name + "' has a non-string value");
      values.push_back(v.get<std::string>());
    }
    g.inventory.declare(name, std::move(values));
  }

  if (doc.contains("categories")) {
    const json& cats = doc["categories"];
    if (!cats.is_object()) throw GrammarError("grammar: 'categories' must be an object");
    for (const auto& [name, decl] : cats.items()) {
      CategoryDecl d;
      if (decl.is_object() && decl.contains("strict")) {
        if (!decl["strict"].is_boolean())
          throw GrammarError("grammar: category '" + name + "': 'strict' must be boolean");
        d.strict = decl["strict"].get<bool>();
      }
      g.categories[name] = d;
    }
  }

  const json& fams = expect(doc, "families", "grammar");
  if (!fams.is_object()) throw GrammarError("grammar: 'families' must be an object");
  for (const auto& [id, f] : fams.items()) {
    TreeFamily fam;
    fam.id = id;
    const std::string where = "family '" + id + "'";
    const json& tl = expect(f, "trees", where);
    if (!tl.is_array()) throw GrammarError(where + ": 'trees' must be an array");
    for (const auto& tn : tl) fam.trees.push_back(tn.get<std::string>());
    fam.predicate = expect_string(f, "predicate", where);
    if (f.contains("cue-specializes")) fam.cue_specializes = f["cue-specializes"].get<bool>();
    g.families[id] = fam;
  }

  const json& trees = expect(doc, "trees", "grammar");
  if (!trees.is_array()) throw GrammarError("grammar: 'trees' must be an array");
  for (const auto& tj : trees) {
    ElementaryTree t;
    t.name = expect_string(tj, "name", "a tree");
    const std::string where = "tree '" + t.name + "'";
    t.kind = tree_kind_from(expect_string(tj, "kind", where));
    t.family = expect_string(tj, "family", where);
    const TreeFamily* fam = g.family(t.family);
    t.predicate = fam ? fam->predicate : "none";
    if (tj.contains("precondition")) t.precondition = tj["precondition"].get<std::string>();
    if (tj.contains("anchors")) {
      const json& slots = tj["anchors"];
      if (!slots.is_array()) throw GrammarError(where + ": 'anchors' must be an array");
      for (const auto& sj : slots) {
        AnchorSlot s;
        s.id = expect_string(sj, "id", where);
        if (sj.contains("features"))
          s.features = parse_features(sj["features"], where + " slot '" + s.id + "'");
        s.position = slot_position_from(expect_string(sj, "position", where));
        s.realization = slot_realization_from(expect_string(sj, "realization", where));
        if (sj.contains("classes")) {
          for (const auto& c : sj["classes"]) s.classes.push_back(cue_class_from(c.get<std::string>()));
        }
        t.anchors.push_back(std::move(s));
      }
    }
    t.root = parse_skeleton(expect(tj, "skeleton", where), t, where);
    g.trees.push_back(std::move(t));
  }

  const json& lex = expect(doc, "lexicon", "grammar");
  if (!lex.is_array()) throw GrammarError("grammar: 'lexicon' must be an array");
  for (const auto& ej : lex) {
    CueEntry e;
    if (!ej.contains("lexeme") || !ej["lexeme"].is_string())
      throw GrammarError("grammar: every lexicon entry needs a string 'lexeme'");
    e.lexeme = ej["lexeme"].get<std::string>();
    const std::string where = "cue '" + e.lexeme + "'";
    e.cls = cue_class_from(expect_string(ej, "class", where));
    if (ej.contains("features")) e.features = parse_features(ej["features"], where);
    if (ej.contains("presupposition")) e.presupposition = ej["presupposition"].get<std::string>();
    if (ej.contains("analysis")) e.analysis = ej["analysis"].get<std::string>();
    g.lexicon.push_back(std::move(e));
  }

  g.validate();
  return g;
}

Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GrammarError("cannot open grammar file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return load_grammar(ss.str());
  } catch (const GrammarError& e) {
    throw GrammarError(path + ": " + e.what());
  }
}

std::string serialize_grammar(const Grammar& g) {
  json doc = json::object();
  doc["format-version"] = 1;
  doc["flags"] = {{"so-but-analysis", g.so_but_analysis},
                  {"allow-foot-adjunction", g.allow_foot_adjunction}};
  json feats = json::object();
  for (const auto& [name, vals] : g.inventory.features()) feats[name] = vals;
  doc["features"] = feats;
  json cats = json::object();
  for (const auto& [name, d] : g.categories) cats[name] = {{"strict", d.strict}};
  doc["categories"] = cats;
  json fams = json::object();
  for (const auto& [id, f] : g.families) {
    json fj = json::object();
    fj["trees"] = f.trees;
    fj["predicate"] = f.predicate;
    fj["cue-specializes"] = f.cue_specializes;
    fams[id] = fj;
  }
  doc["families"] = fams;
  json trees = json::array();
  for (const auto& t : g.trees) {
    json tj = json::object();
    tj["name"] = t.name;
    tj["kind"] = to_string(t.kind);
    tj["family"] = t.family;
    if (!t.precondition.empty()) tj["precondition"] = t.precondition;
    json slots = json::array();
    for (const auto& s : t.anchors) {
      json sj = json::object();
      sj["id"] = s.id;
      sj["features"] = features_to_json(s.features);
      sj["position"] = to_string(s.position);
      sj["realization"] = to_string(s.realization);
      json cls = json::array();
      for (auto c : s.classes) cls.push_back(to_string(c));
      sj["classes"] = cls;
      slots.push_back(sj);
    }
    tj["anchors"] = slots;
    tj["skeleton"] = skeleton_to_json(t.root);
    trees.push_back(tj);
  }
  doc["trees"] = trees;
  json lex = json::array();
  for (const auto& e : g.lexicon) {
    json ej = json::object();
    ej["lexeme"] = e.lexeme;
    ej["class"] = to_string(e.cls);
    ej["features"] = features_to_json(e.features);
    if (!e.presupposition.empty()) ej["presupposition"] = e.presupposition;
    if (!e.analysis.empty()) ej["analysis"] = e.analysis;
    lex.push_back(ej);
  }
  doc["lexicon"] = lex;
  return doc.dump(2) + "\n";
}

}  // namespace dltag
