#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "mcg2/defs.hpp"
#include "mcg2/parse.hpp"
#include "mcg2/rewrite.hpp"
#include "mcg2/script.hpp"
#include "support/checks.hpp"

using namespace mcg2;
namespace fs = std::filesystem;

namespace {

CheckResult run(const std::string& text, LemmaStore& store, int genus = 2) {
  auto src = ScriptSource::parse(text);
  return check_script(src.instantiate(genus, {}), relation_set(genus), store);
}

CheckResult run(const std::string& text) {
  LemmaStore store;
  return run(text, store);
}

class TempDir {
public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("mcg2-test-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
  }
  const fs::path& path() const { return path_; }

private:
  fs::path path_;
};

} // namespace

TEST(Script, BraidDerivation) {
  auto r = run("lemma t genus 2\n"
               "goal w1 w2 w1 w5 = w5 w2 w1 w2\n"
               "rule braid i=1\n"
               "commute w5 w2 w1 w2\n");
  EXPECT_TRUE(r.verified);
}

TEST(Script, FailureNamesStepAndLine) {
  auto r = run("lemma t genus 2\n"
               "goal w1 w2 w1 = w2 w1 w2\n"
               "\n"
               "rule braid i=2\n");
  ASSERT_FALSE(r.verified);
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_EQ(r.failure->step_index, 0u);
  EXPECT_EQ(r.failure->line, 4);
  EXPECT_NE(r.failure->diagnosis.find("w2 w3 w2"), std::string::npos);
}

TEST(Script, FinalComparisonFailure) {
  auto r = run("lemma t genus 2\n"
               "goal w1 w2 = w2 w1\n");
  ASSERT_FALSE(r.verified);
  EXPECT_EQ(r.failure->step_index, 0u);
  EXPECT_EQ(r.failure->line, 0);
}

TEST(Script, FreeStepRequiresFreeEquality) {
  EXPECT_TRUE(run("lemma t genus 2\ngoal z w1 w1^-1 = w1 w2 w3 w4 w5\nfree z\n").verified);
  EXPECT_FALSE(run("lemma t genus 2\ngoal w1 w2 = w2 w1\nfree w2 w1\n").verified);
}

TEST(Script, CommuteRejectsBraidNeighbours) {
  EXPECT_FALSE(run("lemma t genus 2\ngoal w1 w2 = w2 w1\ncommute w2 w1\n").verified);
}

TEST(Script, ExpectCheckpoint) {
  EXPECT_FALSE(run("lemma t genus 2\ngoal w1 w3 = w3 w1\nexpect w3 w1\n").verified);
  EXPECT_TRUE(run("lemma t genus 2\ngoal w1 w3 = w3 w1\nrule comm i=1 j=3\nexpect w3 w1\n")
                  .verified);
}

TEST(Script, LemmaRequiresVerifiedEquation) {
  LemmaStore store;
  const char* use = "lemma t2 genus 2\n"
                    "goal w3 w1 w2 w1 = w3 w2 w1 w2\n"
                    "lemma t1 at 1\n";
  EXPECT_FALSE(run(use, store).verified);
  ASSERT_TRUE(run("lemma t1 genus 2\ngoal w1 w2 w1 = w2 w1 w2\nrule braid i=1\n", store)
                  .verified);
  EXPECT_TRUE(store.contains("t1", 2));
  EXPECT_TRUE(run(use, store).verified);
}

TEST(Script, GoalTransforms) {
  EXPECT_TRUE(run("lemma t genus 2\ngoal w2 w1 w2 = w1 w2 w1\nswap\nrule braid i=1\n").verified);
  EXPECT_TRUE(run("lemma t genus 2\ngoal w1^-1 w2^-1 w1^-1 = w2^-1 w1^-1 w2^-1\n"
                  "invert\nrule braid i=1\n")
                  .verified);
}

TEST(Script, ParametricInstances) {
  auto src = ScriptSource::parse("lemma p genus 2\n"
                                 "param i = 1..2*g\n"
                                 "param j = i+2..2*g+1\n"
                                 "goal w{i} w{j} = w{j} w{i}\n"
                                 "rule comm i={i} j={j}\n");
  EXPECT_TRUE(src.parametric());
  EXPECT_EQ(src.instances(2).size(), 6u);
  EXPECT_EQ(src.instances(3).size(), 15u);
  EXPECT_EQ(src.instance_id({{"i", 1}, {"j", 4}}), "p[i=1,j=4]");
  EXPECT_TRUE(src.admits(2, {{"i", 2}, {"j", 5}}));
  EXPECT_FALSE(src.admits(2, {{"i", 2}, {"j", 3}}));
  LemmaStore store;
  for (int g : {2, 3})
    for (const auto& v : src.instances(g))
      EXPECT_TRUE(check_script(src.instantiate(g, v), relation_set(g), store).verified);
}

TEST(Script, LoopsConditionalsAndRepetition) {
  EXPECT_TRUE(run("lemma t genus 2\n"
                  "goal w1 w3 w4 w5 = w3 w4 w5 w1\n"
                  "for p = 3..5\n"
                  "  if p == 3\n"
                  "    rule comm i=1 j=3 at 0\n"
                  "  else\n"
                  "    rule comm i=1 j={p} at {p-3}\n"
                  "  end\n"
                  "end\n")
                  .verified);
  auto src = ScriptSource::parse("lemma t genus 2\ngoal <t=1..3: w{t}> = w1 w2 w3\n");
  EXPECT_EQ(render(src.instantiate(2, {}).lhs), "w1 w2 w3");
}

TEST(Script, ParseErrors) {
  EXPECT_THROW(ScriptSource::parse("goal w1 = w1\n"), ScriptError);
  EXPECT_THROW(ScriptSource::parse("lemma t genus 2\ngoal w1 = w1\nfrobnicate\n")
                   .instantiate(2, {}),
               ScriptError);
  EXPECT_THROW(ScriptSource::parse("lemma t genus 2\ngoal w1 = w1\nfor p = 1..2\n"),
               ScriptError);
}

TEST(Script, SerialisesAndReparses) {
  auto src = ScriptSource::parse("lemma t genus 2\n"
                                 "goal w1 w2 w1 w3 = w3 w2 w1 w2\n"
                                 "rule braid i=1 at 0\n"
                                 "rule comm i=1 j=3 at 2 bwd\n"
                                 "commute w3 w2 w1 w2\n");
  auto s = src.instantiate(2, {});
  auto again = ScriptSource::parse(to_text(s)).instantiate(2, {});
  EXPECT_EQ(again.lhs, s.lhs);
  EXPECT_EQ(again.rhs, s.rhs);
  ASSERT_EQ(again.steps.size(), s.steps.size());
  for (std::size_t k = 0; k < s.steps.size(); ++k)
    EXPECT_EQ(to_string(again.steps[k]), to_string(s.steps[k]));
}

TEST(Script, SplitInstanceId) {
  auto [base, values] = split_instance_id("z1pow[i=2,j=3]");
  EXPECT_EQ(base, "z1pow");
  EXPECT_EQ(values.at("i"), 2);
  EXPECT_EQ(values.at("j"), 3);
  EXPECT_EQ(split_instance_id("z0sq").first, "z0sq");
}

TEST(Library, ResolvesDependenciesOnDemand) {
  TempDir dir;
  dir.write("a.drv", "lemma a genus 2\ngoal w1 w2 w1 = w2 w1 w2\nrule braid i=1\n");
  dir.write("b.drv", "lemma b genus 2\ngoal w3 w1 w2 w1 = w3 w2 w1 w2\nlemma a\n");
  ScriptLibrary lib(dir.path());
  EXPECT_EQ(lib.ids().size(), 2u);
  auto v = lib.check_instance("b", 2);
  EXPECT_TRUE(v.verified) << v.error;
  EXPECT_TRUE(lib.store().contains("a", 2));
}

TEST(Library, RejectsCycles) {
  TempDir dir;
  dir.write("a.drv", "lemma a genus 2\ngoal w1 = w1\nlemma b\n");
  dir.write("b.drv", "lemma b genus 2\ngoal w1 = w1\nlemma a\n");
  ScriptLibrary lib(dir.path());
  auto v = lib.check_instance("a", 2);
  EXPECT_FALSE(v.verified);
}

TEST(Library, ShippedScriptsReplay) {
  ScriptLibrary lib(checks::scripts_dir());
  std::size_t n = 0;
  for (const auto& id : lib.ids()) {
    const auto& src = lib.source(id);
    for (const auto& v : lib.check_source(src, src.genus())) {
      ++n;
      EXPECT_TRUE(v.verified) << v.id << " " << v.error
                              << (v.failure ? v.failure->diagnosis : "");
    }
  }
  EXPECT_GT(n, 100u);
}
