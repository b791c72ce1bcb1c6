#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <set>
#include <sys/wait.h>

#include "json.hpp"
#include "mcg2/catalog.hpp"
#include "mcg2/defs.hpp"
#include "support/checks.hpp"

using namespace mcg2;

namespace {

const char* kSmall = R"(
# two entries
group 2.a
iso Z2
gen x = z0
rel x^2
order 2
type (0;2^6)
script x2 = scripts/genus2/z0sq.drv
end

group 2.p
iso Z2xZ6
gen x = z0
gen y = z1
rel x^2
rel y^6
rel comm: x y x^-1 y^-1
order 12
type (0;2,6,6)
printed-type (0;2;6,6)
script x2 = scripts/genus2/z0sq.drv
script y6 = scripts/genus2/z1six.drv
script comm = scripts/genus2/z0z1.drv
end
)";

Catalog small() { return Catalog::parse(kSmall, checks::data_dir()); }

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(MCG2_CLI_PATH) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe.get()))
    out += buf.data();
  const int raw = pclose(pipe.release());
  return {WEXITSTATUS(raw), out};
}

} // namespace

TEST(CatalogParse, Records) {
  auto cat = small();
  ASSERT_EQ(cat.entries.size(), 2u);
  const auto* p = cat.find("2.p");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->generator_names(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(p->relators[2].name, "comm");
  EXPECT_EQ(p->relators[2].text, "x y x^-1 y^-1");
  EXPECT_EQ(p->relators[0].name, "x^2");
  EXPECT_EQ(p->order, 12u);
  EXPECT_EQ(p->type.str(), "(0;2,6,6)");
  EXPECT_EQ(p->printed_type, "(0;2;6,6)");
  EXPECT_EQ(p->scripts.size(), 3u);
  EXPECT_EQ(cat.find("2.zz"), nullptr);
}

TEST(CatalogParse, Errors) {
  const std::filesystem::path base = ".";
  EXPECT_THROW(Catalog::parse("group 2.a\ngen x = z0\nrel x^2\norder 2\n", base), CatalogError);
  EXPECT_THROW(Catalog::parse("gen x = z0\n", base), CatalogError);
  EXPECT_THROW(Catalog::parse("group 2.a\ngen x = z0\nrel x^2\ntype (0;2^6)\nend\n", base),
               CatalogError);
  EXPECT_THROW(Catalog::parse("group 2.a\nbogus 1\nend\n", base), CatalogError);
  EXPECT_THROW(Catalog::parse("group 2.a\ngen x = z0\nrel y^2\norder 2\ntype (0;2^6)\nend\n",
                              base),
               CatalogError);
  EXPECT_THROW(Catalog::parse("group 2.a\ngen x = w9\nrel x^2\norder 2\ntype (0;2^6)\nend\n",
                              base),
               CatalogError);
}

TEST(CatalogVerify, SmallCatalogPasses) {
  auto cat = small();
  ScriptLibrary lib(checks::scripts_dir());
  CatalogVerifier v(cat, lib);
  auto report = v.run();
  ASSERT_EQ(report.groups.size(), 2u);
  EXPECT_TRUE(report.all_pass());
  const auto& p = report.groups[1];
  EXPECT_EQ(p.signature->str(), "(0;2,6,6)");
  ASSERT_FALSE(p.notes.empty());
  EXPECT_NE(p.notes.back().find("(0;2;6,6)"), std::string::npos);
  for (const auto& r : p.presentation.relators) {
    EXPECT_TRUE(r.matrix_ok);
    EXPECT_TRUE(r.script_ok);
    EXPECT_TRUE(r.script_id.has_value());
  }
}

TEST(CatalogVerify, WrongAssignmentFailsWithFinding) {
  std::string text = kSmall;
  text.replace(text.find("gen x = z0"), 10, "gen x = z1");
  auto cat = Catalog::parse(text, checks::data_dir());
  ScriptLibrary lib(checks::scripts_dir());
  CatalogVerifier v(cat, lib);
  auto g = v.verify(*cat.find("2.a"));
  EXPECT_FALSE(g.pass);
  EXPECT_FALSE(g.presentation.relators[0].matrix_ok);
  EXPECT_FALSE(g.findings.empty());
}

TEST(CatalogVerify, MissingScriptIsAFinding) {
  std::string text = kSmall;
  text.replace(text.find("script comm"), std::string("script comm").size(), "# script comm");
  auto cat = Catalog::parse(text, checks::data_dir());
  ScriptLibrary lib(checks::scripts_dir());
  CatalogVerifier v(cat, lib);
  auto g = v.verify(*cat.find("2.p"));
  EXPECT_FALSE(g.pass);
  EXPECT_FALSE(g.presentation.relators[2].script_ok);
}

TEST(CatalogVerify, JsonShape) {
  auto cat = small();
  ScriptLibrary lib(checks::scripts_dir());
  CatalogVerifier v(cat, lib);
  auto j = nlohmann::json::parse(to_json(v.run()));
  ASSERT_TRUE(j.contains("_header"));
  EXPECT_EQ(j["_header"]["genus"], 2);
  const auto& p = j["2.p"];
  EXPECT_EQ(p["order"], 12);
  EXPECT_EQ(p["tc_order"], 12);
  EXPECT_EQ(p["closure_order"], 12);
  EXPECT_EQ(p["signature"], "(0;2,6,6)");
  EXPECT_EQ(p["verdict"], "PASS");
  ASSERT_EQ(p["relators"].size(), 3u);
  EXPECT_EQ(p["relators"][2]["name"], "comm");
  EXPECT_EQ(p["relators"][2]["matrix_ok"], true);
  EXPECT_EQ(p["relators"][2]["script_ok"], true);
}

TEST(CatalogShipped, AbelianColumn) {
  auto cat = checks::load_catalog();
  ScriptLibrary lib(checks::scripts_dir());
  CatalogVerifier v(cat, lib);
  const std::set<std::string> abelian = {"2.a", "2.b", "2.c", "2.e", "2.f", "2.h",
                                         "2.i", "2.k1", "2.l", "2.o", "2.p"};
  ASSERT_EQ(cat.entries.size(), 20u);
  for (const auto& e : cat.entries) {
    auto g = v.verify(e);
    EXPECT_TRUE(g.pass) << e.id;
    ASSERT_TRUE(g.invariants.has_value()) << e.id;
    EXPECT_EQ(g.invariants->abelian, abelian.count(e.id) == 1) << e.id;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("verify-group 2.a").status, 0);
  EXPECT_EQ(cli("verify-group 2.nope").status, 2);
  EXPECT_EQ(cli("frobnicate").status, 2);
  auto bad = cli("signature w1");
  EXPECT_EQ(bad.status, 1);
}

TEST(Cli, EvalAndSignature) {
  auto e = cli("eval z3");
  EXPECT_EQ(e.status, 0);
  EXPECT_NE(e.out.find("order:      8"), std::string::npos);
  auto s = cli("signature z0,z1");
  EXPECT_EQ(s.status, 0);
  EXPECT_NE(s.out.find("(0;2,6^2)"), std::string::npos);
}

TEST(Cli, CheckScriptReportsFailure) {
  auto ok = cli("check-script " + (checks::scripts_dir() / "genus2" / "z2cube.drv").string());
  EXPECT_EQ(ok.status, 0);
  EXPECT_NE(ok.out.find("PASS z2cube"), std::string::npos);
  auto generic =
      cli("check-script " + (checks::scripts_dir() / "generic" / "wfromz.drv").string() +
          " --genus 3");
  EXPECT_EQ(generic.status, 0);
  EXPECT_NE(generic.out.find("PASS wfromz[i=7]"), std::string::npos);
}

TEST(Cli, JsonReport) {
  auto r = cli("verify-group 2.aa --json");
  EXPECT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["2.aa"]["verdict"], "PASS");
  EXPECT_EQ(j["2.aa"]["signature"], "(0;2,3,8)");
}
