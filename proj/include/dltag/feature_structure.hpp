#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dltag {

// Base error for everything the engine rejects deliberately.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GrammarError : Error {
  using Error::Error;
};

struct InputError : Error {
  using Error::Error;
};

struct DerivationError : Error {
  using Error::Error;
};

// How one cue phrase can stand in for another, judged purely on the
// features each one signals.
enum class Substitutability { Synonym, Exclusive, Hypernym, Hyponym, Contingent };

const char* to_string(Substitutability r);

// A partial map from feature names to atomic values. Features absent from the
// map are undefined, which is distinct from any value. Immutable; updates
// return copies.
class FeatureStructure {
public:
  FeatureStructure() = default;
  explicit FeatureStructure(std::map<std::string, std::string> bindings)
      : bindings_(std::move(bindings)) {}

  // Parses "feature=value,feature=value". Whitespace around names/values is
  // trimmed. Empty string gives the empty structure.
  static FeatureStructure parse(const std::string& spec);

  bool defines(const std::string& feature) const { return bindings_.count(feature) > 0; }

  std::optional<std::string> value(const std::string& feature) const {
    auto it = bindings_.find(feature);
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
  }

  FeatureStructure with(const std::string& feature, const std::string& value) const {
    auto b = bindings_;
    b[feature] = value;
    return FeatureStructure(std::move(b));
  }

  FeatureStructure without(const std::string& feature) const {
    auto b = bindings_;
    b.erase(feature);
    return FeatureStructure(std::move(b));
  }

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, std::string>& bindings() const { return bindings_; }

  // "f=v, g=w" in feature-name order; "{}" for the empty structure.
  std::string to_string() const;

  friend bool operator==(const FeatureStructure&, const FeatureStructure&) = default;
  friend bool operator<(const FeatureStructure& a, const FeatureStructure& b) {
    return a.bindings_ < b.bindings_;
  }

private:
  std::map<std::string, std::string> bindings_;
};

// True unless some feature defined in both structures carries different
// values. Undefined features never conflict.
bool compatible(const FeatureStructure& a, const FeatureStructure& b);

// Total classification of the ordered pair (a, b):
//   exclusive  - a shared feature differs
//   synonym    - same defined features, same values
//   hypernym   - a's defined features are a strict subset of b's (values agree)
//   hyponym    - converse of hypernym
//   contingent - compatible, and each side defines a feature the other lacks
//                (disjoint non-empty feature sets count as contingent;
//                 two empty structures are synonyms; empty vs non-empty is
//                 a hypernym)
Substitutability classify(const FeatureStructure& a, const FeatureStructure& b);

// Whether a cue with features `cue` may realize an anchor slot with features
// `anchor`: any relation except exclusive.
bool realizable(const FeatureStructure& anchor, const FeatureStructure& cue);

// Declared feature names with their admissible value sets. Structures used in
// a grammar must draw from the inventory.
class FeatureInventory {
public:
  void declare(const std::string& feature, std::vector<std::string> values);

  bool has(const std::string& feature) const { return values_.count(feature) > 0; }
  bool admits(const std::string& feature, const std::string& value) const;
  const std::map<std::string, std::vector<std::string>>& features() const { return values_; }

  // Throws GrammarError naming `context` when fs uses an undeclared feature
  // or a value outside its set.
  void validate(const FeatureStructure& fs, const std::string& context) const;

  friend bool operator==(const FeatureInventory&, const FeatureInventory&) = default;

private:
  std::map<std::string, std::vector<std::string>> values_;
};

}  // namespace dltag
