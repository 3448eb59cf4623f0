#include <gtest/gtest.h>

#include <random>

#include "pdlp/explain.h"
#include "testing/random_programs.h"

namespace pdlp {
namespace {

using testing::ReadFixture;

GroundProgram GroundFixture(const std::string& name) {
  return Ground(ParseProgram(ReadFixture(name)));
}

std::vector<HypothesisSet> Sets(const GroundProgram& gp,
                                const std::vector<std::vector<std::string>>& names) {
  std::vector<HypothesisSet> out;
  for (const auto& group : names) {
    std::vector<Atom> atoms;
    for (const auto& n : group) atoms.push_back(MakeAtom(n));
    out.push_back(MakeHypothesisSet(gp, atoms));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Formula kTrue = Formula::True();

TEST(FExplanationTest, Family) {
  GroundProgram gp = GroundFixture("family.pdlp");
  Formula f = ParseFormula("fac(alex) | staff(alex) | doc(alex)");
  EXPECT_TRUE(IsFExplanation(Sets(gp, {{"haveRel"}})[0], f, gp));
  EXPECT_FALSE(IsFExplanation(HypothesisSet{}, f, gp));
  EXPECT_EQ(FExplanations(f, gp), Sets(gp, {{"haveRel"}}));
  EXPECT_NEAR(PrFull(f, gp), 0.7, 1e-9);
}

TEST(FExplanationTest, DisjunctiveHeads) {
  GroundProgram a = GroundFixture("two_heads.pdlp");
  EXPECT_FALSE(IsFExplanation(Sets(a, {{"h1"}})[0], ParseFormula("a"), a));

  GroundProgram b = GroundFixture("shared_heads.pdlp");
  EXPECT_TRUE(FExplanations(ParseFormula("d"), b).empty());
  EXPECT_DOUBLE_EQ(PrFull(ParseFormula("d"), b), 0.0);
}

TEST(FExplanationTest, Tautology) {
  GroundProgram gp = GroundFixture("shared_heads.pdlp");
  EXPECT_TRUE(IsFExplanation(HypothesisSet{}, kTrue, gp));
  EXPECT_EQ(FExplanations(kTrue, gp), std::vector<HypothesisSet>{HypothesisSet{}});
  EXPECT_NEAR(PrFull(kTrue, gp), 1.0, 1e-9);
  EXPECT_TRUE(PExplanations(kTrue, gp).empty());
  EXPECT_DOUBLE_EQ(PrPartial(kTrue, gp), 0.0);
}

TEST(PExplanationTest, TwoHeads) {
  GroundProgram gp = GroundFixture("two_heads.pdlp");
  Formula a = ParseFormula("a");
  EXPECT_FALSE(IsSufficientPExplanation(Sets(gp, {{"h1"}})[0], a, gp));
  EXPECT_TRUE(IsSufficientPExplanation(Sets(gp, {{"h1", "h2"}})[0], a, gp));
  EXPECT_EQ(PExplanations(a, gp), Sets(gp, {{"h1", "h2"}, {"h1", "h2p"}, {"h1p", "h2"}}));

  QueryResult r = DefaultProbability(a, gp);
  EXPECT_NEAR(r.pr_partial, 0.375, 1e-9);
  ASSERT_EQ(r.expansions.size(), 3u);
  for (const auto& e : r.expansions) {
    EXPECT_NEAR(e.weight, 0.25, 1e-12);
    EXPECT_EQ(e.models, 2 * e.satisfying);
  }
}

TEST(PExplanationTest, SharedHeads) {
  GroundProgram gp = GroundFixture("shared_heads.pdlp");
  Formula d = ParseFormula("d");
  EXPECT_TRUE(IsSufficientPExplanation(Sets(gp, {{"h3"}})[0], d, gp));
  EXPECT_EQ(PExplanations(d, gp), Sets(gp, {{"h3"}, {"h4"}}));
  EXPECT_NEAR(PrPartial(d, gp), 0.5 * 0.4 * 0.5 + 0.5 * 0.6 * 0.5 + 0.5 * 0.4 * 0.5, 1e-9);

  QueryResult r = DefaultProbability(d, gp);
  auto expanded = Expd(r.explanations.p_base, gp);
  std::sort(expanded.begin(), expanded.end());
  EXPECT_EQ(expanded, Sets(gp, {{"h3", "h4p"}, {"h3", "h4"}, {"h3p", "h4"}}));
  EXPECT_NEAR(r.pr, 0.35, 1e-9);
}

TEST(DefaultProbabilityTest, ReferenceValues) {
  EXPECT_NEAR(DefaultProbability(ParseFormula("doc(alex)"), GroundFixture("employment.pdlp")).pr,
              1.0 / 5.0, 1e-9);
  EXPECT_NEAR(DefaultProbability(ParseFormula("lawyer"), GroundFixture("lawyer.pdlp")).pr, 0.5,
              1e-9);
  QueryResult r = DefaultProbability(ParseFormula("dad(alex,bob)"), GroundFixture("family.pdlp"));
  EXPECT_NEAR(r.pr, 0.2 * 0.7 * (2.0 / 4.0) + 0.8 * 0.7 * (2.0 / 3.0), 1e-9);
  EXPECT_NEAR(r.pr, r.pr_full + r.pr_partial, 1e-12);
}

TEST(DefaultProbabilityTest, RejectsHypothesisFormulas) {
  GroundProgram gp = GroundFixture("family.pdlp");
  EXPECT_THROW(DefaultProbability(ParseFormula("hasDoc"), gp), Error);
  EXPECT_EQ(Classify(ParseFormula("hasDoc | noRel"), gp), FormulaClass::kHypothesis);
  EXPECT_EQ(Classify(ParseFormula("hasDoc & doc(alex)"), gp), FormulaClass::kMixed);
  EXPECT_EQ(Classify(ParseFormula("doc(alex)"), gp), FormulaClass::kRegular);
}

TEST(DefaultProbabilityTest, MatchesNaiveOracle) {
  GroundProgram alex = GroundFixture("family_alex.pdlp");
  for (const char* text : {"dad(alex,bob)", "doc(alex)", "fac(alex) | staff(alex)",
                           "not work(alex,mcw) & staff(alex)"}) {
    Formula f = ParseFormula(text);
    EXPECT_NEAR(DefaultProbability(f, alex).pr, testing::NaiveProbability(alex, f), 1e-9) << text;
  }
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    GroundProgram gp = Ground(ParseProgram(testing::RandomProgramText(rng)));
    Formula f = testing::RandomFormula(rng, gp);
    EXPECT_NEAR(DefaultProbability(f, gp).pr, testing::NaiveProbability(gp, f), 1e-9)
        << gp.str() << f.str();
  }
}

TEST(ExplanationBaseTest, StructuralInvariants) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    GroundProgram gp = Ground(ParseProgram(testing::RandomProgramText(rng)));
    Formula f = testing::RandomFormula(rng, gp);
    QueryResult r = DefaultProbability(f, gp);
    const auto& fb = r.explanations.f_base;
    const auto& pb = r.explanations.p_base;
    for (const auto* base : {&fb, &pb})
      for (const auto& x : *base)
        for (const auto& y : *base)
          if (x != y) EXPECT_FALSE(x.includes(y));
    for (const auto& p : pb) {
      for (const auto& e : fb) {
        HypothesisSet u = p;
        for (AtomId a : e) u.insert(a);
        EXPECT_FALSE(IsConsistent(u, gp)) << gp.str() << f.str();
      }
    }
    EXPECT_GE(r.pr, -1e-9);
    EXPECT_LE(r.pr, 1.0 + 1e-9);
  }
}

}  // namespace
}  // namespace pdlp
