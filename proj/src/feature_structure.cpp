#include "dltag/feature_structure.hpp"

#include <algorithm>
#include <sstream>

namespace dltag {

const char* to_string(Substitutability r) {
  switch (r) {
    case Substitutability::Synonym: return "synonym";
    case Substitutability::Exclusive: return "exclusive";
    case Substitutability::Hypernym: return "hypernym";
    case Substitutability::Hyponym: return "hyponym";
    case Substitutability::Contingent: return "contingent";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

FeatureStructure FeatureStructure::parse(const std::string& spec) {
  std::map<std::string, std::string> bindings;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw InputError("bad feature binding '" + part + "': expected feature=value");
    std::string name = trim(part.substr(0, eq));
    std::string value = trim(part.substr(eq + 1));
    if (name.empty() || value.empty())
      throw InputError("bad feature binding '" + part + "': empty name or value");
    if (bindings.count(name))
      throw InputError("feature '" + name + "' bound twice");
    bindings[name] = value;
  }
  return FeatureStructure(std::move(bindings));
}

std::string FeatureStructure::to_string() const {
  if (bindings_.empty()) return "{}";
  std::string out;
  for (const auto& [f, v] : bindings_) {
    if (!out.empty()) out += ", ";
    out += f + "=" + v;
  }
  return out;
}

bool compatible(const FeatureStructure& a, const FeatureStructure& b) {
  for (const auto& [f, v] : a.bindings()) {
    auto bv = b.value(f);
    if (bv && *bv != v) return false;
  }
  return true;
}

Substitutability classify(const FeatureStructure& a, const FeatureStructure& b) {
  for (const auto& [f, v] : a.bindings()) {
    auto bv = b.value(f);
    if (bv && *bv != v) return Substitutability::Exclusive;
  }
  bool a_extra = std::any_of(a.bindings().begin(), a.bindings().end(),
                             [&](const auto& p) { return !b.defines(p.first); });
  bool b_extra = std::any_of(b.bindings().begin(), b.bindings().end(),
                             [&](const auto& p) { return !a.defines(p.first); });
  if (!a_extra && !b_extra) return Substitutability::Synonym;
  if (!a_extra) return Substitutability::Hypernym;
  if (!b_extra) return Substitutability::Hyponym;
  return Substitutability::Contingent;
}

bool realizable(const FeatureStructure& anchor, const FeatureStructure& cue) {
  return classify(anchor, cue) != Substitutability::Exclusive;
}

void FeatureInventory::declare(const std::string& feature, std::vector<std::string> values) {
  if (feature.empty()) throw GrammarError("feature inventory: empty feature name");
  if (values.empty())
    throw GrammarError("feature inventory: feature '" + feature + "' declares no values");
  if (values_.count(feature))
    throw GrammarError("feature inventory: feature '" + feature + "' declared twice");
  for (const auto& v : values)
    if (v.empty())
      throw GrammarError("feature inventory: feature '" + feature + "' declares an empty value");
  values_[feature] = std::move(values);
}

bool FeatureInventory::admits(const std::string& feature, const std::string& value) const {
  auto it = values_.find(feature);
  if (it == values_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), value) != it->second.end();
}

void FeatureInventory::validate(const FeatureStructure& fs, const std::string& context) const {
  for (const auto& [f, v] : fs.bindings()) {
    if (!has(f))
      throw GrammarError(context + ": feature '" + f + "' is not declared in the inventory");
    if (!admits(f, v))
      throw GrammarError(context + ": value '" + v + "' is not admissible for feature '" + f +
                         "'");
  }
}

}  // namespace dltag
