#include <gtest/gtest.h>

#include "mcg2/defs.hpp"
#include "mcg2/group.hpp"
#include "mcg2/parse.hpp"
#include "mcg2/symplectic.hpp"

using namespace mcg2;

namespace {

SpMatrix m(const std::string& text) {
  static const DefTable defs = standard_defs(2);
  return evaluate(parse_word(text, 2, defs), SymplecticConfig::standard(2), &defs);
}

std::size_t tc(std::vector<std::string> gens, std::vector<std::string> rels) {
  return todd_coxeter(Presentation::parse(gens, rels));
}

} // namespace

TEST(Closure, CyclicGroups) {
  auto t = closure({m("z1")});
  EXPECT_EQ(t.order(), 6u);
  EXPECT_TRUE(t.elements[t.identity()].is_identity());
  EXPECT_EQ(t.element_order(t.generators[0]), 6);
  EXPECT_EQ(closure({m("z4")}).order(), 10u);
  EXPECT_EQ(closure({SpMatrix::identity(4)}).order(), 1u);
}

TEST(Closure, TableIsAGroup) {
  auto t = closure({m("z2^4"), m("z3^2")});
  ASSERT_EQ(t.order(), 24u);
  for (std::size_t a = 0; a < t.order(); ++a) {
    EXPECT_EQ(t.product[a][t.inverse[a]], t.identity());
    EXPECT_EQ(t.elements[a] * t.elements[t.inverse[a]], SpMatrix::identity(4));
    EXPECT_EQ(t.index_of(t.elements[a]), static_cast<int>(a));
  }
}

TEST(Closure, CapExceeded) {
  EXPECT_THROW(closure({m("w1")}, 50), CapExceeded);
}

TEST(Closure, Csv) {
  auto csv = to_csv(closure({m("z0")}));
  EXPECT_EQ(csv, "0,1\n1,0\n");
}

TEST(Invariants, KnownGroups) {
  auto q8 = invariants(closure({m("z2^-1 z3^2 z2"), m("z3^2")}));
  EXPECT_EQ(q8.order, 8u);
  EXPECT_FALSE(q8.abelian);
  EXPECT_EQ(q8.center_order, 2u);
  EXPECT_EQ(q8.derived_order, 2u);
  EXPECT_EQ(q8.order_histogram, (std::map<int, int>{{1, 1}, {2, 1}, {4, 6}}));

  auto z6 = invariants(closure({m("z1")}));
  EXPECT_TRUE(z6.abelian);
  EXPECT_EQ(z6.center_order, 6u);
  EXPECT_EQ(z6.derived_order, 1u);

  auto sl23 = invariants(closure({m("z2^4"), m("z3^2")}));
  EXPECT_EQ(sl23.center_order, 2u);
  EXPECT_EQ(sl23.derived_order, 8u);
}

TEST(Poset, CyclicSubgroupsOfZ6AndQ8) {
  auto p6 = cyclic_subgroup_poset(closure({m("z1")}));
  EXPECT_EQ(p6.subgroups.size(), 4u);
  EXPECT_EQ(p6.class_count, 4);
  auto p8 = cyclic_subgroup_poset(closure({m("z2^-1 z3^2 z2"), m("z3^2")}));
  EXPECT_EQ(p8.subgroups.size(), 5u);
  EXPECT_EQ(p8.class_count, 5);
  for (std::size_t i = 0; i < p8.subgroups.size(); ++i)
    EXPECT_TRUE(p8.contains[i][0]);
}

TEST(ToddCoxeter, SmallPresentations) {
  EXPECT_EQ(tc({"x"}, {"x^6"}), 6u);
  EXPECT_EQ(tc({"x", "y"}, {"x^2", "y^3", "x y x^-1 y"}), 6u);
  EXPECT_EQ(tc({"x", "y"}, {"x^4", "y^4", "x^2 y^-2", "x y x^-1 y"}), 8u);
  EXPECT_EQ(tc({"x", "y"}, {"x^2", "y^8", "x y x^-1 y^-3"}), 16u);
  EXPECT_EQ(tc({"x", "y"}, {"x^3", "y^4", "(x y)^3", "x y^2 x^-1 y^-2"}), 24u);
  EXPECT_EQ(tc({"a", "b"}, {"a^2", "b^3", "(a b)^5"}), 60u);
  EXPECT_EQ(tc({"x"}, {"x^1"}), 1u);
}

TEST(ToddCoxeter, InfiniteGroupHitsCap) {
  EXPECT_THROW(todd_coxeter(Presentation::parse({"x", "y"}, {"x^2"}), 1000), CapExceeded);
}

TEST(Presentation, RejectsUnknownGenerators) {
  EXPECT_THROW(Presentation::parse({"x"}, {"x y"}), std::exception);
}

TEST(Verify, CertifiesZ2xZ6) {
  const auto defs = standard_defs(2);
  std::map<std::string, TwistWord> assign{{"x", parse_word("z0", 2, defs)},
                                          {"y", parse_word("z1", 2, defs)}};
  auto p = Presentation::parse({"x", "y"}, {"x^2", "y^6", "x y x^-1 y^-1"});
  VerifyOptions opts;
  opts.certify = [](std::size_t, const TwistWord&) {
    return std::optional<std::pair<std::string, bool>>{{"stub", true}};
  };
  auto r = verify_presentation(assign, p, SymplecticConfig::standard(2), opts);
  EXPECT_TRUE(r.iso_certified);
  EXPECT_EQ(r.closure_order, 12u);
  EXPECT_EQ(r.tc_order, 12u);
}

TEST(Verify, WrongAssignmentIsAFinding) {
  const auto defs = standard_defs(2);
  std::map<std::string, TwistWord> assign{{"x", parse_word("z1", 2, defs)}};
  auto p = Presentation::parse({"x"}, {"x^2"});
  auto r = verify_presentation(assign, p, SymplecticConfig::standard(2));
  ASSERT_EQ(r.relators.size(), 1u);
  EXPECT_FALSE(r.relators[0].matrix_ok);
  EXPECT_FALSE(r.iso_certified);
  EXPECT_FALSE(r.findings.empty());
  EXPECT_EQ(r.closure_order, 6u);
  EXPECT_EQ(r.tc_order, 2u);
}

TEST(Verify, UncertifiedRelatorBlocksIsomorphism) {
  const auto defs = standard_defs(2);
  std::map<std::string, TwistWord> assign{{"x", parse_word("z0", 2, defs)}};
  auto r = verify_presentation(assign, Presentation::parse({"x"}, {"x^2"}),
                               SymplecticConfig::standard(2));
  EXPECT_TRUE(r.relators[0].matrix_ok);
  EXPECT_FALSE(r.iso_certified);
}
