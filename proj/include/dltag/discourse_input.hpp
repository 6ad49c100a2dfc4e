#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dltag/grammar.hpp"

namespace dltag {

enum class UnitModal { Actual, Possible };

const char* to_string(UnitModal m);
UnitModal unit_modal_from(const std::string& s);

// One clause, opaque below the discourse level.
struct ClauseUnit {
  std::string id;
  std::string proposition;            // label its meaning contributes
  std::string surface;                // optional original text
  std::optional<UnitModal> modal;     // optional modal annotation

  friend bool operator==(const ClauseUnit&, const ClauseUnit&) = default;
};

// A cue occurrence: which unit it marks and where it sits relative to that
// unit (before it, inside it, after it).
struct CueMarker {
  std::string lexeme;
  std::string unit;
  SlotPosition position = SlotPosition::Initial;

  friend bool operator==(const CueMarker&, const CueMarker&) = default;
};

// Optional test hint naming the discourse relation a candidate pair of
// propositions might stand in.
struct HookCandidate {
  std::string first;
  std::string second;
  std::string candidate;

  friend bool operator==(const HookCandidate&, const HookCandidate&) = default;
};

struct DiscourseInput {
  std::vector<ClauseUnit> units;
  std::vector<CueMarker> cues;
  std::vector<HookCandidate> hook_candidates;

  const ClauseUnit* unit(const std::string& id) const;

  // Throws InputError on duplicate unit ids or cues naming unknown units;
  // with a grammar, also rejects lexemes outside the active lexicon.
  void validate() const;
  void validate(const Grammar& g) const;

  friend bool operator==(const DiscourseInput&, const DiscourseInput&) = default;
};

// The flattened surface order a derived tree has to reproduce. Cue tokens
// keep the position tag they were annotated with; a medial cue is flattened
// to just before its unit.
struct Token {
  enum class Kind { Unit, Cue };
  Kind kind = Kind::Unit;
  std::string text;  // unit id or cue lexeme
  SlotPosition tag = SlotPosition::Initial;  // cues only

  std::string to_string() const;

  friend bool operator==(const Token&, const Token&) = default;
};

std::vector<Token> input_tokens(const DiscourseInput& input);

DiscourseInput load_input(const std::string& json_text);
DiscourseInput load_input_file(const std::string& path);
std::string serialize_input(const DiscourseInput& input);

}  // namespace dltag
