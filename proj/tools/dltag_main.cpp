#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dltag/derivation.hpp"
#include "dltag/discourse_input.hpp"
#include "dltag/feature_structure.hpp"
#include "dltag/grammar.hpp"
#include "dltag/render.hpp"
#include "dltag/semantics.hpp"

// Exit codes: 0 success, 1 bad usage or malformed grammar/input/arguments,
// 2 when the input admits no derivation.

namespace {

using namespace dltag;

std::string grammar_path(const std::string& flag, bool use_seed) {
  if (!flag.empty()) return flag;
  if (use_seed) return DLTAG_SEED_GRAMMAR_PATH;
  if (const char* env = std::getenv("DLTAG_GRAMMAR"))
    if (*env) return env;
  return DLTAG_SEED_GRAMMAR_PATH;
}

int print_derivations(const Grammar& g, const DiscourseInput& in,
                      const std::vector<DerivationTree>& ds, const std::string& format,
                      std::optional<bool> bound_exceeded) {
  if (format == "json") {
    std::cout << derivations_to_json(g, in, ds, true, bound_exceeded);
  } else if (format == "dot") {
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (i) std::cout << "\n";
      std::cout << derivation_to_dot(ds[i], "d" + std::to_string(i));
    }
  } else {
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (i) std::cout << "\n";
      std::cout << ds[i].to_bracket() << "\n";
    }
  }
  std::cerr << ds.size() << (ds.size() == 1 ? " derivation\n" : " derivations\n");
  if (bound_exceeded && *bound_exceeded)
    std::cerr << "note: step bound exceeded; the derivation set may be incomplete\n";
  return ds.empty() ? 2 : 0;
}

// The 27 feature structures over three binary features, each bound or left
// undefined: the closed universe the pairwise relation table ranges over.
std::vector<FeatureStructure> relation_universe() {
  const std::vector<std::string> names = {"f", "g", "h"};
  const std::vector<std::optional<std::string>> choices = {std::nullopt, "1", "2"};
  std::vector<FeatureStructure> out;
  for (const auto& fv : choices)
    for (const auto& gv : choices)
      for (const auto& hv : choices) {
        FeatureStructure fs;
        if (fv) fs = fs.with(names[0], *fv);
        if (gv) fs = fs.with(names[1], *gv);
        if (hv) fs = fs.with(names[2], *hv);
        out.push_back(std::move(fs));
      }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discourse-level lexicalized TAG toolkit"};
  app.require_subcommand(1);

  std::string gpath, ipath, format = "bracket";
  int bound = -1;
  std::size_t which = 0;
  std::string fs_a, fs_b, lexeme, anchor, tree_name, slot_id, prop_a, prop_b;
  bool table = false, use_seed = false;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    sub->add_option("--grammar", gpath, "grammar file (default: $DLTAG_GRAMMAR, then seed)");
    sub->add_flag("--seed-grammar", use_seed, "use the bundled grammar even if $DLTAG_GRAMMAR is set");
    if (needs_input) sub->add_option("--input", ipath, "annotated input file")->required();
  };

  CLI::App* cmd_derive = app.add_subcommand("derive", "parse an input into derivations");
  add_common(cmd_derive, true);
  cmd_derive->add_option("--format", format, "bracket, dot or json")
      ->check(CLI::IsMember({"bracket", "dot", "json"}));

  CLI::App* cmd_enum = app.add_subcommand(
      "enumerate", "exhaustively enumerate derivations (reference algorithm)");
  add_common(cmd_enum, true);
  cmd_enum->add_option("--format", format, "bracket, dot or json")
      ->check(CLI::IsMember({"bracket", "dot", "json"}));
  cmd_enum->add_option("--bound", bound, "tree-instance bound (default: 4 x unit count)");

  CLI::App* cmd_classify =
      app.add_subcommand("classify", "relate two feature structures by substitutability");
  cmd_classify->add_option("a", fs_a, "feature structure, e.g. \"causal=yes,temporal=no\"");
  cmd_classify->add_option("b", fs_b, "feature structure");
  cmd_classify->add_flag("--table", table, "print the full pairwise table over f,g,h in {1,2}");

  CLI::App* cmd_realize =
      app.add_subcommand("realize", "test which trees or anchors a cue may realize");
  add_common(cmd_realize, false);
  cmd_realize->add_option("--lexeme", lexeme, "cue lexeme")->required();
  cmd_realize->add_option("--anchor", anchor, "anchor feature structure to test against");
  cmd_realize->add_option("--tree", tree_name, "grammar tree to test against");
  cmd_realize->add_option("--slot", slot_id, "anchor slot of --tree");

  CLI::App* cmd_cancel =
      app.add_subcommand("cancel", "try to cancel a relation between two propositions");
  add_common(cmd_cancel, true);
  cmd_cancel->add_option("--of", prop_a, "first proposition")->required();
  cmd_cancel->add_option("--and", prop_b, "second proposition")->required();
  cmd_cancel->add_option("--derivation", which, "derivation index (canonical order)");

  CLI::App* cmd_report = app.add_subcommand("report", "compose and print the meaning ledger");
  add_common(cmd_report, true);
  cmd_report->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_report->add_option("--derivation", which, "derivation index (canonical order)");

  CLI::App* cmd_show = app.add_subcommand("show-grammar", "print the grammar in canonical form");
  add_common(cmd_show, false);

  try {
    app.parse(argc, argv);

    if (app.got_subcommand(cmd_classify)) {
      if (table) {
        for (const FeatureStructure& a : relation_universe())
          for (const FeatureStructure& b : relation_universe())
            std::cout << a.to_string() << " | " << b.to_string() << " | "
                      << to_string(classify(a, b)) << "\n";
        return 0;
      }
      std::cout << to_string(classify(FeatureStructure::parse(fs_a),
                                      FeatureStructure::parse(fs_b)))
                << "\n";
      return 0;
    }

    Grammar g = load_grammar_file(grammar_path(gpath, use_seed));

    if (app.got_subcommand(cmd_show)) {
      std::cout << serialize_grammar(g);
      return 0;
    }

    if (app.got_subcommand(cmd_realize)) {
      const CueEntry& e = g.entry_or_throw(lexeme);
      if (!tree_name.empty() || !slot_id.empty()) {
        if (tree_name.empty() || slot_id.empty())
          throw InputError("realize: --tree and --slot go together");
        const ElementaryTree& t = resolve_tree(g, tree_name);
        const AnchorSlot* s = t.slot(slot_id);
        if (!s) throw InputError("realize: tree '" + tree_name + "' has no slot '" + slot_id + "'");
        std::cout << (anchor_accepts(g, t, *s, e) ? "yes" : "no") << "\n";
        return 0;
      }
      if (!anchor.empty() || cmd_realize->count("--anchor")) {
        FeatureStructure fs = FeatureStructure::parse(anchor);
        g.inventory.validate(fs, "--anchor");
        std::cout << (realizable(fs, e.features) ? "yes" : "no") << "\n";
        return 0;
      }
      for (const ElementaryTree* t : candidate_trees(g, e)) std::cout << t->name << "\n";
      return 0;
    }

    DiscourseInput in = load_input_file(ipath);
    in.validate(g);

    if (app.got_subcommand(cmd_derive))
      return print_derivations(g, in, derive(g, in), format, std::nullopt);

    if (app.got_subcommand(cmd_enum)) {
      if (bound < 0) bound = default_step_bound(in);
      EnumerationResult r = enumerate_all(g, in, bound);
      return print_derivations(g, in, r.derivations, format, r.bound_exceeded);
    }

    std::vector<DerivationTree> ds = derive(g, in);
    if (ds.empty()) {
      std::cerr << "input admits no derivation\n";
      return 2;
    }
    if (which >= ds.size())
      throw InputError("derivation index " + std::to_string(which) + " out of range (" +
                       std::to_string(ds.size()) + " derivations)");
    MeaningLedger led = compose(g, in, ds[which]);

    if (app.got_subcommand(cmd_cancel)) {
      CancelResult res = cancel(led, prop_a, prop_b);
      std::cout << to_string(res.status) << ": " << res.relation << "\n";
      std::cout << ledger_to_text(res.ledger);
      return 0;
    }

    // report
    if (format == "json")
      std::cout << ledger_to_json(led);
    else
      std::cout << ledger_to_text(led);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
