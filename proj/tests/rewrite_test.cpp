#include <gtest/gtest.h>

#include "mcg2/defs.hpp"
#include "mcg2/parse.hpp"
#include "mcg2/rewrite.hpp"
#include "mcg2/script.hpp"
#include "mcg2/symplectic.hpp"

using namespace mcg2;

namespace {

TwistWord w(const std::string& text, int genus = 2) {
  return parse_word(text, genus, standard_defs(genus));
}

} // namespace

TEST(Rules, RelationSetContents) {
  auto rules = relation_set(2);
  ASSERT_NE(rules.find("braid[i=1]"), nullptr);
  ASSERT_NE(rules.find("braid[i=4]"), nullptr);
  EXPECT_EQ(rules.find("braid[i=5]"), nullptr);
  ASSERT_NE(rules.find("comm[i=1,j=3]"), nullptr);
  EXPECT_EQ(rules.find("comm[i=1,j=2]"), nullptr);
  ASSERT_NE(rules.find("chain"), nullptr);
  ASSERT_NE(rules.find("hyper"), nullptr);
  ASSERT_NE(rules.find("central[i=3]"), nullptr);
  EXPECT_EQ(relation_set(3).find("central[i=3]"), nullptr);
  EXPECT_EQ(render(rules.find("braid[i=2]")->lhs), "w2 w3 w2");
  EXPECT_EQ(render(rules.find("braid[i=2]")->rhs), "w3 w2 w3");
  EXPECT_EQ(rules.find("chain")->lhs.size(), 30u);
  EXPECT_EQ(rule_id("comm", {{"i", 2}, {"j", 5}}), "comm[i=2,j=5]");
}

TEST(Rules, EveryRelationHoldsInSp4) {
  for (int g : {2, 3}) {
    const auto cfg = SymplecticConfig::standard(g);
    const auto rules = relation_set(g);
    for (const auto& r : rules.rules())
      EXPECT_EQ(evaluate(r.lhs, cfg), evaluate(r.rhs, cfg)) << r.id << " g=" << g;
  }
}

TEST(Rules, ApplyRuleAtPosition) {
  auto rules = relation_set(2);
  const auto* braid = rules.find("braid[i=1]");
  auto a = w("w3 w1 w2 w1 w5");
  EXPECT_EQ(render(apply_rule(a, *braid, 1, Direction::forward)), "w3 w2 w1 w2 w5");
  EXPECT_THROW(apply_rule(a, *braid, 0, Direction::forward), NoMatchError);
  auto b = w("w1^-1 w2^-1 w1^-1");
  EXPECT_EQ(render(apply_rule(b, *braid, 0, Direction::forward, true)), "w2^-1 w1^-1 w2^-1");
}

TEST(Rules, FindOccurrence) {
  auto a = w("w4 w1 w2 w4");
  EXPECT_EQ(find_occurrence(a, w("w1 w2")), 1u);
  EXPECT_EQ(find_occurrence(a, w("w2^-1 w1^-1"), true), 1u);
  EXPECT_FALSE(find_occurrence(a, w("w3")).has_value());
}

TEST(Rules, ApplyEquationInverted) {
  auto out = apply_equation(w("w5 w2^-1 w1^-1"), w("w1 w2"), w("w3"), 1, true);
  EXPECT_EQ(render(out), "w5 w3^-1");
}

TEST(Commutation, NormalForm) {
  EXPECT_TRUE(commutation_equivalent(w("w1 w3 w5"), w("w5 w3 w1")));
  EXPECT_TRUE(commutation_equivalent(w("w1 w4^-1 w2"), w("w4^-1 w1 w2")));
  EXPECT_FALSE(commutation_equivalent(w("w1 w2"), w("w2 w1")));
  EXPECT_FALSE(commutation_equivalent(w("z0 w1"), w("w1 z0")));
  EXPECT_EQ(commutation_normal_form(w("w3 w1")), commutation_normal_form(w("w1 w3")));
}

TEST(Search, FindsShortDerivation) {
  auto rules = relation_set(2);
  auto found = search_equal(w("w1 w2 w1 w4"), w("w4 w2 w1 w2"), rules, 4);
  ASSERT_TRUE(found.has_value());
  LemmaStore store;
  EXPECT_TRUE(check_script(*found, rules, store).verified);
}

TEST(Search, RespectsDepth) {
  auto rules = relation_set(2);
  EXPECT_FALSE(search_equal(w("w1 w2"), w("w2 w1"), rules, 2).has_value());
}

TEST(Search, LemmasAsMoves) {
  auto rules = relation_set(2);
  SearchOptions opts;
  const auto defs = standard_defs(2);
  opts.lemmas.emplace_back("shift", make_equation(w("w2 z"), w("z w1"), defs));
  auto found = search_equal(w("w2 z w3"), w("z w1 w3"), rules, 1, opts);
  ASSERT_TRUE(found.has_value());
  ASSERT_FALSE(found->steps.empty());
  EXPECT_EQ(found->steps[0].kind, Step::Kind::lemma);
  EXPECT_EQ(found->steps[0].ref, "shift");
}
