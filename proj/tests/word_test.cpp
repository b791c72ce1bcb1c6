#include <gtest/gtest.h>

#include "mcg2/defs.hpp"
#include "mcg2/parse.hpp"
#include "mcg2/word.hpp"

using namespace mcg2;

namespace {

TwistWord w(const std::string& text, int genus = 2) {
  static const DefTable defs2 = standard_defs(2);
  if (genus == 2)
    return parse_word(text, 2, defs2);
  return parse_word(text, genus, standard_defs(genus));
}

} // namespace

TEST(Word, ParseRenderRoundTrip) {
  for (const char* text : {"w1 w2^-1 w5", "z0 w3 z1^-1", "eta xi z"}) {
    auto a = w(text);
    EXPECT_EQ(render(a), text);
    EXPECT_EQ(w(render(a)), a);
  }
}

TEST(Word, PowersAndGroupsDistribute) {
  EXPECT_EQ(render(w("(w1 w2)^-1")), "w2^-1 w1^-1");
  EXPECT_EQ(render(w("w1^3")), "w1 w1 w1");
  EXPECT_EQ(render(w("(w1 w2^-1)^2")), "w1 w2^-1 w1 w2^-1");
  EXPECT_TRUE(w("w1^0").empty());
}

TEST(Word, ParseErrors) {
  const auto defs = standard_defs(2);
  EXPECT_THROW(parse_word("w6", 2, defs), std::exception);
  EXPECT_THROW(parse_word("w0", 2, defs), std::exception);
  EXPECT_THROW(parse_word("(w1 w2", 2, defs), ParseError);
  EXPECT_THROW(parse_word("q1", 2, defs), std::exception);
  EXPECT_NO_THROW(parse_word("w7", 3, standard_defs(3)));
}

TEST(Word, FreeReduction) {
  EXPECT_TRUE(free_reduce(w("w1 w2 w2^-1 w1^-1")).empty());
  EXPECT_EQ(render(free_reduce(w("w3 w1 w1^-1 w4"))), "w3 w4");
  EXPECT_FALSE(is_freely_reduced(w("w1 w1^-1")));
  EXPECT_TRUE(is_freely_reduced(w("w1 w2 w1")));
}

TEST(Word, InverseAndPower) {
  auto a = w("w1 w2^-1 w3");
  EXPECT_EQ(render(formal_inverse(a)), "w3^-1 w2 w1^-1");
  EXPECT_TRUE(free_reduce(a * invert(a)).empty());
  EXPECT_EQ(power(a, 2), a * a);
  EXPECT_EQ(power(a, -1), formal_inverse(a));
  EXPECT_TRUE(power(a, 0).empty());
  EXPECT_EQ(render(conjugate(w("w2"), w("w1"))), "w1 w2 w1^-1");
}

TEST(Word, SpliceAndSubword) {
  auto a = w("w1 w2 w3 w4");
  EXPECT_EQ(render(a.subword(1, 2)), "w2 w3");
  EXPECT_EQ(render(a.splice(1, 2, w("w5"))), "w1 w5 w4");
}

TEST(Word, CyclicEquivalence) {
  EXPECT_TRUE(cyclically_equivalent(w("w1 w2 w3"), w("w3 w1 w2")));
  EXPECT_TRUE(cyclically_equivalent(w("w1 w2 w3"), w("w2^-1 w1^-1 w3^-1")));
  EXPECT_TRUE(cyclically_equivalent(w("w4 w1 w2 w4^-1"), w("w1 w2")));
  EXPECT_FALSE(cyclically_equivalent(w("w1 w2 w3"), w("w1 w3 w2")));
}

TEST(Defs, StandardExpansions) {
  const auto defs = standard_defs(2);
  EXPECT_EQ(render(expand(w("z"), defs)), "w1 w2 w3 w4 w5");
  EXPECT_EQ(render(expand(w("eta"), defs)), "w1 w2 w3 w4");
  EXPECT_EQ(render(expand(w("xi"), defs)), "w1 w1 w2 w3 w4");
  EXPECT_EQ(render(expand(w("z0"), defs)), "w1 w2 w3 w4 w5 w5 w4 w3 w2 w1");
  EXPECT_EQ(expand(w("z1"), defs), expand(w("z"), defs));
  EXPECT_EQ(expand(w("z4"), defs), expand(w("eta"), defs));
  EXPECT_EQ(render(expand(w("z2"), defs)), "w1 w2 w4^-1 w5^-1");
  EXPECT_EQ(render(expand(w("z3"), defs)), "w1 w1 w2 w3 w4");
  EXPECT_EQ(render(expand(w("z5"), defs)), "w1 w2 w1 w4^-1 w5^-1 w4^-1");
}

TEST(Defs, GenericGenusHasNoPeriodicNames) {
  const auto d3 = standard_defs(3);
  EXPECT_TRUE(d3.contains("z"));
  EXPECT_TRUE(d3.contains("z0"));
  EXPECT_FALSE(d3.contains("z1"));
  EXPECT_EQ(render(expand(parse_word("eta", 3, d3), d3)), "w1 w2 w3 w4 w5 w6");
}

TEST(Defs, DefinitionRules) {
  auto defs = standard_defs(2);
  EXPECT_THROW(defs.define("z", w("w1")), WordError);
  EXPECT_THROW(defs.define("w3", w("w1")), WordError);
  defs.define("c", w("w2 w3 w5 w4 w3"));
  defs.define("u", parse_word("w1 c w1^-1", 2, defs));
  EXPECT_EQ(render(expand(parse_word("u", 2, defs), defs)), "w1 w2 w3 w5 w4 w3 w1^-1");
  EXPECT_THROW(parse_word("v", 2, defs), std::exception);
}
