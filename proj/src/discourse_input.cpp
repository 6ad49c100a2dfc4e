#include "dltag/discourse_input.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dltag {

using json = nlohmann::ordered_json;

const char* to_string(UnitModal m) {
  return m == UnitModal::Actual ? "actual" : "possible";
}

UnitModal unit_modal_from(const std::string& s) {
  if (s == "actual") return UnitModal::Actual;
  if (s == "possible") return UnitModal::Possible;
  throw InputError("unknown modal status '" + s + "'");
}

const ClauseUnit* DiscourseInput::unit(const std::string& id) const {
  for (const auto& u : units)
    if (u.id == id) return &u;
  return nullptr;
}

void DiscourseInput::validate() const {
  std::set<std::string> ids;
  for (const auto& u : units) {
    if (u.id.empty()) throw InputError("a unit has no id");
    if (u.proposition.empty()) throw InputError("unit '" + u.id + "' has no proposition label");
    if (!ids.insert(u.id).second) throw InputError("unit id '" + u.id + "' is used twice");
  }
  for (const auto& c : cues) {
    if (!unit(c.unit))
      throw InputError("cue '" + c.lexeme + "' attaches to unknown unit '" + c.unit + "'");
    if (c.lexeme.empty()) throw InputError("a cue marker has an empty lexeme");
  }
}

void DiscourseInput::validate(const Grammar& g) const {
  validate();
  for (const auto& c : cues) g.entry_or_throw(c.lexeme);
}

std::string Token::to_string() const {
  if (kind == Kind::Unit) return text;
  return "\"" + text + "\"/" + dltag::to_string(tag);
}

std::vector<Token> input_tokens(const DiscourseInput& input) {
  std::vector<Token> out;
  for (const auto& u : input.units) {
    for (const auto& c : input.cues)
      if (c.unit == u.id && c.position == SlotPosition::Initial)
        out.push_back({Token::Kind::Cue, c.lexeme, c.position});
    for (const auto& c : input.cues)
      if (c.unit == u.id && c.position == SlotPosition::Medial)
        out.push_back({Token::Kind::Cue, c.lexeme, c.position});
    out.push_back({Token::Kind::Unit, u.id, SlotPosition::Initial});
    for (const auto& c : input.cues)
      if (c.unit == u.id && c.position == SlotPosition::Final)
        out.push_back({Token::Kind::Cue, c.lexeme, c.position});
  }
  return out;
}

DiscourseInput load_input(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("input parse error: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("input file must be a JSON object");
  if (!doc.contains("format-version") || !doc["format-version"].is_number_integer() ||
      doc["format-version"].get<int>() != 1)
    throw InputError("input: unsupported format-version");

  DiscourseInput input;
  if (!doc.contains("units") || !doc["units"].is_array())
    throw InputError("input: 'units' must be an array");
  for (const auto& uj : doc["units"]) {
    ClauseUnit u;
    if (!uj.contains("id") || !uj["id"].is_string())
      throw InputError("input: every unit needs a string 'id'");
    u.id = uj["id"].get<std::string>();
    if (!uj.contains("proposition") || !uj["proposition"].is_string())
      throw InputError("input: unit '" + u.id + "' needs a string 'proposition'");
    u.proposition = uj["proposition"].get<std::string>();
    if (uj.contains("surface")) u.surface = uj["surface"].get<std::string>();
    if (uj.contains("modal-status"))
      u.modal = unit_modal_from(uj["modal-status"].get<std::string>());
    input.units.push_back(std::move(u));
  }
  if (doc.contains("cues")) {
    if (!doc["cues"].is_array()) throw InputError("input: 'cues' must be an array");
    for (const auto& cj : doc["cues"]) {
      CueMarker c;
      if (!cj.contains("lexeme") || !cj["lexeme"].is_string())
        throw InputError("input: every cue needs a string 'lexeme'");
      c.lexeme = cj["lexeme"].get<std::string>();
      if (!cj.contains("unit") || !cj["unit"].is_string())
        throw InputError("input: cue '" + c.lexeme + "' needs a string 'unit'");
      c.unit = cj["unit"].get<std::string>();
      if (!cj.contains("position") || !cj["position"].is_string())
        throw InputError("input: cue '" + c.lexeme + "' needs a string 'position'");
      try {
        c.position = slot_position_from(cj["position"].get<std::string>());
      } catch (const GrammarError& e) {
        throw InputError(std::string("input: ") + e.what());
      }
      input.cues.push_back(std::move(c));
    }
  }
  if (doc.contains("hook-candidates")) {
    if (!doc["hook-candidates"].is_array())
      throw InputError("input: 'hook-candidates' must be an array");
    for (const auto& hj : doc["hook-candidates"]) {
      HookCandidate h;
      if (!hj.contains("between") || !hj["between"].is_array() || hj["between"].size() != 2)
        throw InputError("input: a hook candidate needs 'between': [term, term]");
      h.first = hj["between"][0].get<std::string>();
      h.second = hj["between"][1].get<std::string>();
      h.candidate = hj.value("candidate", std::string());
      if (h.candidate.empty())
        throw InputError("input: a hook candidate needs a non-empty 'candidate'");
      input.hook_candidates.push_back(std::move(h));
    }
  }
  input.validate();
  return input;
}

DiscourseInput load_input_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return load_input(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string serialize_input(const DiscourseInput& input) {
  json doc = json::object();
  doc["format-version"] = 1;
  json units = json::array();
  for (const auto& u : input.units) {
    json uj = json::object();
    uj["id"] = u.id;
    uj["proposition"] = u.proposition;
    if (!u.surface.empty()) uj["surface"] = u.surface;
    if (u.modal) uj["modal-status"] = to_string(*u.modal);
    units.push_back(uj);
  }
  doc["units"] = units;
  json cues = json::array();
  for (const auto& c : input.cues) {
    json cj = json::object();
    cj["lexeme"] = c.lexeme;
    cj["unit"] = c.unit;
    cj["position"] = to_string(c.position);
    cues.push_back(cj);
  }
  doc["cues"] = cues;
  if (!input.hook_candidates.empty()) {
    json hooks = json::array();
    for (const auto& h : input.hook_candidates) {
      json hj = json::object();
      hj["between"] = {h.first, h.second};
      hj["candidate"] = h.candidate;
      hooks.push_back(hj);
    }
    doc["hook-candidates"] = hooks;
  }
  return doc.dump(2) + "\n";
}

}  // namespace dltag
