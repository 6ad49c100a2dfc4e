#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "dltag/derivation.hpp"

using namespace dltag;

namespace {

Grammar seed() { return load_grammar_file(DLTAG_SEED_GRAMMAR_PATH); }
Address at(const char* s) { return Address::parse(s); }

}  // namespace

TEST_CASE("the synthesized clause tree") {
  Grammar g = seed();
  const ElementaryTree& u = unit_tree();
  CHECK(u.name == "unit");
  CHECK(u.kind == TreeKind::Initial);
  CHECK(u.predicate == "none");
  CHECK(u.root.adjoinable);
  REQUIRE(u.root.children.size() == 1);
  CHECK(u.root.children[0].kind == NodeKind::LeafUnit);
  CHECK(&resolve_tree(g, "unit") == &unit_tree());
  CHECK(resolve_tree(g, "extension").name == "extension");
  CHECK_THROWS_WITH_AS(resolve_tree(g, "bogus"), doctest::Contains("unknown elementary tree"),
                       DerivationError);
}

TEST_CASE("operations are pure: the host is never touched") {
  Grammar g = seed();
  DerivedTree host = instantiate(unit_tree());
  CHECK(host.base_tree == "unit");
  CHECK(host.root.origin == "unit");

  ClauseUnit u1{"u1", "p1"};
  DerivedTree filled = fill_leaf(host, at("0"), u1);
  CHECK(filled.node_at(at("0"))->leaf_filled);
  CHECK(filled.node_at(at("0"))->unit_id == "u1");
  CHECK_FALSE(host.node_at(at("0"))->leaf_filled);

  DerivedTree post = instantiate(*g.tree("subord-post"));
  DerivedTree once = substitute(g, post, at("0"), unit_tree());
  CHECK(once.node_at(at("0"))->kind == NodeKind::Interior);
  CHECK(once.node_at(at("0"))->arg_index == 1);  // the site's label survives
  CHECK(once.node_at(at("0.0"))->kind == NodeKind::LeafUnit);
  CHECK(post.node_at(at("0"))->kind == NodeKind::SubstitutionSite);

  DerivedTree wrapped = adjoin(g, filled, Address::root(), *g.tree("extension"));
  CHECK(wrapped.root.origin == "extension");
  CHECK(filled.root.origin == "unit");

  DerivedTree realized =
      realize_anchor(g, post, at("1"), g.entry_or_throw("because"), SlotPosition::Initial);
  CHECK(realized.node_at(at("1"))->anchor_realized);
  CHECK_FALSE(post.node_at(at("1"))->anchor_realized);
}

TEST_CASE("hand-scripted build matches the parser on the two-clause adverbial input") {
  Grammar g = seed();
  DiscourseInput in = load_input_file(std::string(DLTAG_DATA_DIR) + "/inputs/ex09.json");

  DerivedTree t = instantiate(unit_tree());
  t = fill_leaf(t, at("0"), *in.unit("u-zoo"));
  t = adjoin(g, t, Address::root(), *g.tree("extension"));
  // adjunction excises the clause material and hangs it from the foot
  CHECK(t.root.origin == "extension");
  CHECK(t.node_at(at("0"))->origin == "unit");
  CHECK(t.node_at(at("0.0"))->unit_id == "u-zoo");
  t = realize_anchor(g, t, at("1"), g.entry_or_throw(""), std::nullopt);
  t = substitute(g, t, at("2"), unit_tree());
  t = fill_leaf(t, at("2.0"), *in.unit("u-phone"));
  t = adjoin(g, t, at("2"), *g.tree("adv-initial"));
  t = realize_anchor(g, t, at("2.0"), g.entry_or_throw("however"), SlotPosition::Initial);

  CHECK(linearize(t) == input_tokens(in));

  std::vector<DerivationTree> ds = derive(g, in);
  REQUIRE(ds.size() == 1);
  DerivedTree replayed = replay(g, in, ds[0]);
  CHECK(derived_equal(t.root, replayed.root));
  CHECK(linearize(replayed) == input_tokens(in));
}

TEST_CASE("stacked adjunctions wrap outward: the newest lands outermost") {
  Grammar g = seed();
  ClauseUnit u{"u-trouble", "p-trouble"};

  DerivedTree t = instantiate(unit_tree());
  t = fill_leaf(t, at("0"), u);
  t = adjoin(g, t, Address::root(), *g.tree("adv-medial"));
  t = realize_anchor(g, t, at("0"), g.entry_or_throw("however"), SlotPosition::Medial);
  t = adjoin(g, t, Address::root(), *g.tree("adv-medial"));
  t = realize_anchor(g, t, at("0"), g.entry_or_throw("then"), SlotPosition::Medial);

  std::vector<Token> toks = linearize(t);
  REQUIRE(toks.size() == 3);
  CHECK(toks[0].text == "then");
  CHECK(toks[1].text == "however");
  CHECK(toks[2].text == "u-trouble");
}

TEST_CASE("substitution rejects bad targets and non-initial trees") {
  Grammar g = seed();
  DerivedTree post = instantiate(*g.tree("subord-post"));
  CHECK_THROWS_WITH_AS(substitute(g, post, Address::root(), *g.tree("subord-pre")),
                       doctest::Contains("not an open substitution site"), DerivationError);
  CHECK_THROWS_WITH_AS(substitute(g, post, at("0"), *g.tree("extension")),
                       doctest::Contains("not an initial tree"), DerivationError);
  CHECK_THROWS_WITH_AS(substitute(g, post, at("9"), unit_tree()),
                       doctest::Contains("no node at address"), DerivationError);
  DerivedTree once = substitute(g, post, at("0"), unit_tree());
  CHECK_THROWS_AS(substitute(g, once, at("0"), unit_tree()), DerivationError);
}

TEST_CASE("adjunction rejects bad targets; foot adjunction sits behind a flag") {
  Grammar g = seed();
  DerivedTree unitT = instantiate(unit_tree());
  CHECK_THROWS_WITH_AS(adjoin(g, unitT, Address::root(), *g.tree("subord-post")),
                       doctest::Contains("not an auxiliary tree"), DerivationError);
  CHECK_THROWS_WITH_AS(adjoin(g, unitT, at("0"), *g.tree("extension")),
                       doctest::Contains("not an interior node"), DerivationError);

  DerivedTree blocked = unitT;
  blocked.root.adjoinable = false;
  CHECK_THROWS_WITH_AS(adjoin(g, blocked, Address::root(), *g.tree("extension")),
                       doctest::Contains("does not admit adjunction"), DerivationError);

  DerivedTree ext = instantiate(*g.tree("extension"));
  CHECK_THROWS_WITH_AS(adjoin(g, ext, at("1"), *g.tree("adv-initial")),
                       doctest::Contains("not an interior node"), DerivationError);
  CHECK_THROWS_WITH_AS(adjoin(g, ext, at("0"), *g.tree("adv-initial")),
                       doctest::Contains("foot node is disabled"), DerivationError);

  Grammar open = g;
  open.allow_foot_adjunction = true;
  DerivedTree wrapped = adjoin(open, ext, at("0"), *g.tree("adv-initial"));
  CHECK(wrapped.node_at(at("0"))->origin == "adv-initial");
  CHECK(wrapped.node_at(at("0.1"))->kind == NodeKind::Foot);  // the excised foot stays open
}

TEST_CASE("leaf filling and anchor realization validate their targets") {
  Grammar g = seed();
  ClauseUnit u1{"u1", "p1"}, u2{"u2", "p2"};
  DerivedTree unitT = instantiate(unit_tree());
  DerivedTree filled = fill_leaf(unitT, at("0"), u1);
  CHECK_THROWS_WITH_AS(fill_leaf(filled, at("0"), u2), doctest::Contains("already bound"),
                       DerivationError);
  CHECK_THROWS_WITH_AS(fill_leaf(unitT, Address::root(), u1),
                       doctest::Contains("not a leaf-unit"), DerivationError);

  DerivedTree post = instantiate(*g.tree("subord-post"));
  CHECK_THROWS_WITH_AS(
      realize_anchor(g, post, at("0"), g.entry_or_throw("because"), std::nullopt),
      doctest::Contains("not an anchor slot"), DerivationError);
  CHECK_THROWS_WITH_AS(
      realize_anchor(g, post, at("1"), g.entry_or_throw("however"), std::nullopt),
      doctest::Contains("may not realize"), DerivationError);
  // the empty cue is rejected at a required slot
  CHECK_THROWS_WITH_AS(realize_anchor(g, post, at("1"), g.entry_or_throw(""), std::nullopt),
                       doctest::Contains("may not realize"), DerivationError);

  DerivedTree done =
      realize_anchor(g, post, at("1"), g.entry_or_throw("because"), SlotPosition::Initial);
  CHECK(done.node_at(at("1"))->cue_lexeme == "because");
  CHECK(done.node_at(at("1"))->cue_tag == SlotPosition::Initial);
  CHECK_THROWS_WITH_AS(
      realize_anchor(g, done, at("1"), g.entry_or_throw("because"), SlotPosition::Initial),
      doctest::Contains("already realized"), DerivationError);

  // a cue marker's position tag must agree with the slot it realizes
  DerivedTree wrap = instantiate(*g.tree("subord-wrap"));
  CHECK_THROWS_WITH_AS(
      realize_anchor(g, wrap, at("1"), g.entry_or_throw("because"), SlotPosition::Initial),
      doctest::Contains("tagged initial at a medial slot"), DerivationError);
  DerivedTree untagged =
      realize_anchor(g, wrap, at("1"), g.entry_or_throw("because"), std::nullopt);
  CHECK(untagged.node_at(at("1"))->cue_tag == SlotPosition::Medial);
}

TEST_CASE("linearize names the first open obligation") {
  Grammar g = seed();
  CHECK_THROWS_WITH_AS(linearize(instantiate(unit_tree())),
                       doctest::Contains("unbound leaf unit"), DerivationError);
  CHECK_THROWS_WITH_AS(linearize(instantiate(*g.tree("subord-post"))),
                       doctest::Contains("unfilled substitution site"), DerivationError);
  CHECK_THROWS_WITH_AS(linearize(instantiate(*g.tree("adv-initial"))),
                       doctest::Contains("unrealized anchor slot 'cue'"), DerivationError);
  DerivedTree adv = realize_anchor(g, instantiate(*g.tree("adv-initial")), at("0"),
                                   g.entry_or_throw("however"), std::nullopt);
  CHECK_THROWS_WITH_AS(linearize(adv), doctest::Contains("open foot node"), DerivationError);
}

TEST_CASE("replay validates the derivation it rebuilds") {
  Grammar g = seed();
  DiscourseInput in;
  in.units = {{"u1", "p1"}, {"u2", "p2"}};

  DerivationNode advThen{
      "adv-medial", {}, {{at("0"), "cue", "then", SlotPosition::Medial}}, {}};
  DerivationNode advHow{
      "adv-medial", {}, {{at("0"), "cue", "however", SlotPosition::Medial}}, {}};

  SUBCASE("one adjunction per address of an instance") {
    DerivationNode root{"unit", {{at("0"), "u1"}}, {}, {}};
    root.children.push_back({StepOp::Adjoin, Address::root(), advHow});
    root.children.push_back({StepOp::Adjoin, Address::root(), advThen});
    CHECK_THROWS_WITH_AS(replay(g, in, DerivationTree{root}),
                         doctest::Contains("two adjunctions at address e"), DerivationError);
  }

  SUBCASE("stacking instead of doubling replays fine") {
    advHow.children.push_back({StepOp::Adjoin, Address::root(), advThen});
    DerivationNode root{"unit", {{at("0"), "u1"}}, {}, {}};
    root.children.push_back({StepOp::Adjoin, Address::root(), advHow});
    std::vector<Token> toks = linearize(replay(g, in, DerivationTree{root}));
    REQUIRE(toks.size() == 3);
    CHECK(toks[0].text == "then");
    CHECK(toks[1].text == "however");
    CHECK(toks[2].text == "u1");
  }

  SUBCASE("a paired-anchor tree needs one real word") {
    DerivationNode par{"par-contrast",
                       {},
                       {{at("0"), "initial", "", std::nullopt},
                        {at("2"), "medial", "", std::nullopt}},
                       {}};
    DerivationNode ua{"unit", {{at("0"), "u1"}}, {}, {}};
    DerivationNode ub{"unit", {{at("0"), "u2"}}, {}, {}};
    par.children.push_back({StepOp::Substitute, at("1"), ua});
    par.children.push_back({StepOp::Substitute, at("3"), ub});
    CHECK_THROWS_WITH_AS(replay(g, in, DerivationTree{par}),
                         doctest::Contains("realizes every anchor with the empty cue"),
                         DerivationError);

    par.realizes[1].lexeme = "on the other hand";
    DerivedTree t = replay(g, in, DerivationTree{par});
    std::vector<Token> toks = linearize(t);
    REQUIRE(toks.size() == 3);
    CHECK(toks[1].text == "on the other hand");
  }

  SUBCASE("unknown references are refused") {
    DerivationNode root{"unit", {{at("0"), "nope"}}, {}, {}};
    CHECK_THROWS_WITH_AS(replay(g, in, DerivationTree{root}),
                         doctest::Contains("unknown unit 'nope'"), DerivationError);
    DerivationNode adv{"adv-medial", {}, {{at("0"), "cue", "zzz", std::nullopt}}, {}};
    CHECK_THROWS_WITH_AS(replay(g, in, DerivationTree{adv}),
                         doctest::Contains("unknown cue lexeme 'zzz'"), DerivationError);
  }
}

TEST_CASE("canonical order and bracket rendering") {
  Grammar g = seed();
  DerivationNode ua{"unit", {{at("0"), "u1"}}, {}, {}};
  DerivationNode ub{"unit", {{at("0"), "u2"}}, {}, {}};
  DerivationNode adv{"adv-medial", {}, {{at("0"), "cue", "then", SlotPosition::Medial}}, {}};

  DerivationNode par{"par-contrast",
                     {},
                     // scrambled on purpose
                     {{at("2"), "medial", "on the other hand", SlotPosition::Initial},
                      {at("0"), "initial", "", std::nullopt}},
                     {}};
  par.children.push_back({StepOp::Adjoin, Address::root(), adv});
  par.children.push_back({StepOp::Substitute, at("3"), ub});
  par.children.push_back({StepOp::Substitute, at("1"), ua});

  DerivationTree d{par};
  CHECK(d.step_count() == 8);  // 2 realizes + 3 children + 2 fills + 1 nested realize
  d.canonicalize();
  CHECK(d.root.realizes[0].at == at("0"));
  CHECK(d.root.children[0].op == StepOp::Substitute);
  CHECK(d.root.children[0].at == at("1"));
  CHECK(d.root.children[1].at == at("3"));
  CHECK(d.root.children[2].op == StepOp::Adjoin);

  const std::string expected =
      "(par-contrast\n"
      "  (realize \"\" @ 0)\n"
      "  (realize \"on the other hand\" @ 2)\n"
      "  (substitute unit @ 1\n"
      "    (fill u1 @ 0))\n"
      "  (substitute unit @ 3\n"
      "    (fill u2 @ 0))\n"
      "  (adjoin adv-medial @ e\n"
      "    (realize \"then\" @ 0)))";
  CHECK(d.to_bracket() == expected);

  DerivationTree again = d;
  again.canonicalize();
  CHECK(again == d);  // canonicalization is idempotent
}
