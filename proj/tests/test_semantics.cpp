#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "dltag/semantics.hpp"

using namespace dltag;

namespace {

Grammar seed() { return load_grammar_file(DLTAG_SEED_GRAMMAR_PATH); }

DiscourseInput example(const std::string& name) {
  return load_input_file(std::string(DLTAG_DATA_DIR) + "/inputs/" + name + ".json");
}

MeaningLedger compose_example(const Grammar& g, const std::string& name) {
  DiscourseInput in = example(name);
  std::vector<DerivationTree> ds = derive(g, in);
  REQUIRE(ds.size() == 1);
  return compose(g, in, ds[0]);
}

Address at(const char* s) { return Address::parse(s); }

}  // namespace

TEST_CASE("terms print and collect propositions") {
  Term t{"contrast", {Term::leaf("p1"), Term{"extends", {Term::leaf("p2"), Term::leaf("p3")}}}};
  CHECK(t.to_string() == "contrast(p1, extends(p2, p3))");
  CHECK(Term::leaf("p1").is_leaf());
  CHECK(props(t) == std::set<std::string>{"p1", "p2", "p3"});
}

TEST_CASE("an adverbial presupposition is licensed by the enclosing predication") {
  Grammar g = seed();
  MeaningLedger led = compose_example(g, "ex09");

  MeaningLedger want;
  want.meaning = Term{"extends", {Term::leaf("p1"), Term::leaf("p2")}};
  want.predications = {{"extends", Term::leaf("p1"), Term::leaf("p2"), "#1:extension"}};
  want.presuppositions = {{"however", "defeasible-rule-failure", Term::leaf("p2"),
                           Term::leaf("p1"), "#3:adv-initial"}};
  CHECK(led == want);

  auto lines = presupposition_report(led);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] ==
        "\"however\": presupposes a shared defeasible rule, licensed by p1, that fails to "
        "hold of p2");
}

TEST_CASE("stacked adverbials each contribute a presupposition over the same scope") {
  Grammar g = seed();
  MeaningLedger led = compose_example(g, "ex06");

  Term begins = Term::leaf("p-begins"), trouble = Term::leaf("p-trouble");
  MeaningLedger want;
  want.meaning = Term{"extends", {begins, trouble}};
  want.predications = {{"extends", begins, trouble, "#1:extension"}};
  want.presuppositions = {
      {"however", "defeasible-rule-failure", trouble, begins, "#3:adv-medial"},
      {"then", "temporal-succession", trouble, begins, "#4:adv-medial"}};
  CHECK(led == want);

  auto lines = presupposition_report(led);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "\"however\": presupposes a shared defeasible rule, licensed by p-begins, that "
        "fails to hold of p-trouble");
  CHECK(lines[1] == "\"then\": presupposes temporal-succession of p-trouble, given p-begins");
}

TEST_CASE("subordinating cues specialize the predicate name") {
  Grammar g = seed();
  MeaningLedger led = compose_example(g, "ex12");

  MeaningLedger want;
  want.meaning = Term{"subord-because", {Term::leaf("p-refuse"), Term::leaf("p-fear")}};
  want.predications = {{"subord-because", Term::leaf("p-refuse"), Term::leaf("p-fear"),
                        "#0:subord-post"}};
  CHECK(led == want);
}

TEST_CASE("a preposed subordinate clause licenses the matrix clause's adverbial") {
  Grammar g = seed();
  MeaningLedger led = compose_example(g, "ex07");

  Term reading = Term::leaf("p-reading"), episodic = Term::leaf("p-episodic");
  MeaningLedger want;
  want.meaning = Term{"subord-although", {reading, episodic}};
  want.predications = {{"subord-although", reading, episodic, "#0:subord-pre"}};
  want.presuppositions = {
      {"nevertheless", "defeasible-rule-failure", reading, episodic, "#3:adv-medial"}};
  CHECK(led == want);
}

TEST_CASE("anchor-borne presuppositions scope over the argument the anchor introduces") {
  Grammar g = seed();
  DiscourseInput in;
  in.units = {{"u1", "pa"}, {"u2", "pb"}};

  DerivationNode sub{"unit", {{at("0"), "u2"}}, {}, {}};
  DerivationNode ext{"extension", {}, {{at("1"), "link", "so", std::nullopt}}, {}};
  ext.children.push_back({StepOp::Substitute, at("2"), sub});
  DerivationNode root{"unit", {{at("0"), "u1"}}, {}, {}};
  root.children.push_back({StepOp::Adjoin, Address::root(), ext});

  MeaningLedger led = compose(g, in, DerivationTree{root});
  Term pa = Term::leaf("pa"), pb = Term::leaf("pb");
  MeaningLedger want;
  want.meaning = Term{"extends", {pa, pb}};
  want.predications = {{"extends", pa, pb, "#1:extension"}};
  want.presuppositions = {{"so", "defeasible-rule-success", pb, pa, "#1:extension"}};
  CHECK(led == want);

  auto lines = presupposition_report(led);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] ==
        "\"so\": presupposes a shared defeasible rule, licensed by pa, that holds of pb");
}

TEST_CASE("presuppositions with no licensor fall back to the prior discourse") {
  Grammar g = seed();
  DiscourseInput in;
  in.units = {{"u1", "p1"}};

  auto solo = [&](const char* lexeme, const char* tree) {
    DerivationNode adv{tree, {}, {{at("0"), "cue", lexeme, std::nullopt}}, {}};
    DerivationNode root{"unit", {{at("0"), "u1"}}, {}, {}};
    root.children.push_back({StepOp::Adjoin, Address::root(), adv});
    return compose(g, in, DerivationTree{root});
  };

  auto generic = presupposition_report(solo("then", "adv-medial"));
  REQUIRE(generic.size() == 1);
  CHECK(generic[0] == "\"then\": presupposes temporal-succession of p1");

  auto defeasible = presupposition_report(solo("however", "adv-medial"));
  REQUIRE(defeasible.size() == 1);
  CHECK(defeasible[0] ==
        "\"however\": presupposes a shared defeasible rule, licensed by the prior "
        "discourse, that fails to hold of p1");
}

TEST_CASE("parallel constructions keep their family predicate") {
  Grammar g = seed();
  DiscourseInput in = example("ex17");
  std::vector<DerivationTree> ds = derive(g, in);
  REQUIRE(ds.size() == 4);
  // whichever parallel family parsed it, the one over par-contrast asserts contrast()
  bool found = false;
  for (const DerivationTree& d : ds) {
    if (d.root.tree != "par-contrast") continue;
    found = true;
    MeaningLedger led = compose(g, in, d);
    CHECK(led.meaning ==
          Term{"contrast", {Term::leaf("p-generous"), Term::leaf("p-angle")}});
    REQUIRE(led.predications.size() == 1);
    CHECK(led.predications[0].predicate == "contrast");
    CHECK(led.presuppositions.empty());
  }
  CHECK(found);
}

TEST_CASE("cue specialization flattens spaces in lexemes") {
  Grammar g = seed();
  g.families["par-contrast"].cue_specializes = true;
  DiscourseInput in;
  in.units = {{"u1", "p1"}, {"u2", "p2"}};

  DerivationNode ua{"unit", {{at("0"), "u1"}}, {}, {}};
  DerivationNode ub{"unit", {{at("0"), "u2"}}, {}, {}};
  DerivationNode par{"par-contrast",
                     {},
                     {{at("0"), "initial", "", std::nullopt},
                      {at("2"), "medial", "on the other hand", std::nullopt}},
                     {}};
  par.children.push_back({StepOp::Substitute, at("1"), ua});
  par.children.push_back({StepOp::Substitute, at("3"), ub});

  MeaningLedger led = compose(g, in, DerivationTree{par});
  CHECK(led.predications.at(0).predicate == "contrast-on-the-other-hand");
  CHECK(led.meaning.head == "contrast-on-the-other-hand");
}

TEST_CASE("inference hooks: proposed, moded, cancelled, or refused") {
  Grammar g = seed();

  SUBCASE("an unmarked juxtaposition carries an open hook") {
    MeaningLedger led = compose_example(g, "ex13");
    Term refuse = Term::leaf("p-refuse"), fear = Term::leaf("p-fear");
    MeaningLedger want;
    want.meaning = Term{"extends", {refuse, fear}};
    want.predications = {{"extends", refuse, fear, "#1:extension"}};
    want.hooks = {{"explained-by", refuse, fear, false, std::nullopt, "#1:extension"}};
    CHECK(led == want);

    CancelResult r = cancel(led, "p-refuse", "p-fear");
    CHECK(r.status == CancelStatus::Cancelled);
    CHECK(r.relation == "explained-by(p-refuse, p-fear)");
    CHECK(r.ledger.hooks.at(0).cancelled);

    // either argument order, and cancelling twice is a no-op
    CancelResult swapped = cancel(led, "p-fear", "p-refuse");
    CHECK(swapped.status == CancelStatus::Cancelled);
    CancelResult again = cancel(r.ledger, "p-refuse", "p-fear");
    CHECK(again.status == CancelStatus::Cancelled);
    CHECK(again.ledger == r.ledger);
  }

  SUBCASE("a possible second clause weakens the hook's modal status") {
    MeaningLedger led = compose_example(g, "ex14");
    REQUIRE(led.hooks.size() == 1);
    CHECK(led.hooks[0].candidate == "caused-by");
    CHECK(led.hooks[0].modal == UnitModal::Possible);
    CHECK_FALSE(led.hooks[0].cancelled);

    CancelResult r = cancel(led, "p-out-of-gas", "p-wont-start");
    CHECK(r.status == CancelStatus::Cancelled);
    CHECK(r.relation == "caused-by(p-wont-start, p-out-of-gas)");
  }

  SUBCASE("a possible first clause leaves the modal alone") {
    DiscourseInput in;
    in.units = {{"u1", "p1"}, {"u2", "p2"}};
    in.units[0].modal = UnitModal::Possible;
    in.hook_candidates = {{"p1", "p2", "caused-by"}};
    std::vector<DerivationTree> ds = derive(g, in);
    REQUIRE(ds.size() == 1);
    MeaningLedger led = compose(g, in, ds[0]);
    REQUIRE(led.hooks.size() == 1);
    CHECK(led.hooks[0].modal == std::nullopt);
  }

  SUBCASE("asserted relations refuse to cancel and the ledger stands") {
    MeaningLedger led = compose_example(g, "ex12");
    CancelResult r = cancel(led, "p-fear", "p-refuse");
    CHECK(r.status == CancelStatus::RejectedCompositional);
    CHECK(r.relation == "subord-because(p-refuse, p-fear)");
    CHECK(r.ledger == led);
  }

  SUBCASE("bad cancel requests are input errors") {
    MeaningLedger led = compose_example(g, "ex09");
    CHECK_THROWS_WITH_AS(cancel(led, "zzz", "p2"),
                         doctest::Contains("unknown proposition 'zzz'"), InputError);
    CHECK_THROWS_WITH_AS(cancel(led, "p1", "zzz"),
                         doctest::Contains("unknown proposition 'zzz'"), InputError);
    CHECK_THROWS_WITH_AS(cancel(led, "p1", "p1"),
                         doctest::Contains("no asserted or inferred relation"), InputError);
  }
}

TEST_CASE("composition refuses incomplete derivations") {
  Grammar g = seed();
  DiscourseInput in;
  in.units = {{"u1", "p1"}};
  DerivationNode bare{"unit", {}, {}, {}};
  CHECK_THROWS_AS(compose(g, in, DerivationTree{bare}), DerivationError);
}
