#include <gtest/gtest.h>

#include "mcg2/defs.hpp"
#include "mcg2/parse.hpp"
#include "mcg2/symplectic.hpp"

using namespace mcg2;

namespace {

SpMatrix m(const std::string& text, int genus = 2) {
  const auto defs = standard_defs(genus);
  return evaluate(parse_word(text, genus, defs), SymplecticConfig::standard(genus), &defs);
}

} // namespace

TEST(Symplectic, StandardConfigIsValid) {
  for (int g = 1; g <= 5; ++g) {
    auto cfg = SymplecticConfig::standard(g);
    EXPECT_FALSE(cfg.validate().has_value()) << "g=" << g << ": " << cfg.validate().value_or("");
    EXPECT_EQ(cfg.vectors.size(), static_cast<std::size_t>(2 * g + 1));
  }
}

TEST(Symplectic, ValidateCatchesBadVectors) {
  auto cfg = SymplecticConfig::standard(2);
  cfg.vectors[2] = cfg.vectors[0];
  EXPECT_TRUE(cfg.validate().has_value());
}

TEST(Symplectic, Transvection) {
  auto cfg = SymplecticConfig::standard(2);
  auto t = transvection(cfg.vectors[0], cfg);
  auto ti = transvection(cfg.vectors[0], cfg, -1);
  EXPECT_TRUE((t * ti).is_identity());
  EXPECT_TRUE(symplectic_check(t, cfg));
  EXPECT_EQ(t.trace(), 4);
  EXPECT_EQ(m("w1"), t);
  IntVec b1{0, 1, 0, 0};
  EXPECT_EQ(t.apply(b1), (IntVec{-1, 1, 0, 0}));
}

TEST(Symplectic, PeriodicOrders) {
  const std::pair<const char*, int> table[] = {
      {"z0", 2}, {"z1", 6}, {"z2", 6}, {"z3", 8}, {"z4", 10}, {"z5", 4}};
  for (const auto& [name, n] : table)
    EXPECT_EQ(matrix_order(m(name), 100), n) << name;
  EXPECT_EQ(m("z0"), -SpMatrix::identity(4));
}

TEST(Symplectic, KnownIdentities) {
  EXPECT_EQ(m("z2^3"), m("z0"));
  EXPECT_EQ(m("z5^2"), m("z0"));
  EXPECT_EQ(m("z1^3 w4 z2 w4^-1 z1^-3"), m("w4 z2^-1 w4^-1"));
  EXPECT_EQ(m("w1 w2 w1"), m("w2 w1 w2"));
  EXPECT_TRUE(m("z^8", 3).is_identity());
  EXPECT_EQ(m("z0", 3), -SpMatrix::identity(6));
}

TEST(Symplectic, TwistHasInfiniteOrder) {
  EXPECT_FALSE(matrix_order(m("w1"), 1000).has_value());
  EXPECT_EQ(matrix_order(SpMatrix::identity(4), 5), 1);
}

TEST(Symplectic, OverflowIsReported) {
  SpMatrix big(2, {std::int64_t{1} << 40, 0, 0, std::int64_t{1} << 40});
  EXPECT_THROW(big * big, ArithmeticOverflow);
}

TEST(Symplectic, ToString) {
  EXPECT_EQ(to_string(SpMatrix::identity(2)), "[[1,0],[0,1]]");
}
