#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "pdlp/cli.h"
#include "testing/random_programs.h"

namespace pdlp::cli {
namespace {

using testing::FixturePath;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pdlp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(CliCheckTest, ExitCodes) {
  EXPECT_EQ(Invoke({"check", FixturePath("family.pdlp")}).code, 0);
  Outcome bad = Invoke({"check", FixturePath("head_mutant.pdlp")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("1 violation(s)"), std::string::npos);
  EXPECT_EQ(Invoke({"check", FixturePath("no_such_file.pdlp")}).code, 2);
}

TEST(CliCheckTest, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, 2);
  EXPECT_EQ(Invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(Invoke({"query", FixturePath("family.pdlp")}).code, 2);
  EXPECT_EQ(Invoke({"query", FixturePath("family.pdlp"), "a", "--method", "magic"}).code, 2);
  EXPECT_EQ(Invoke({"query", FixturePath("family.pdlp"), "work(X,uwm)"}).code, 2);
}

TEST(CliQueryTest, PlainValues) {
  for (const char* method : {"expl", "forest", "brute"}) {
    Outcome r = Invoke({"query", FixturePath("shared_heads.pdlp"), "d", "--method", method});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0.350000000\n") << method;
  }
  EXPECT_EQ(Invoke({"query", FixturePath("lawyer.pdlp"), "lawyer"}).out, "0.500000000\n");
  EXPECT_EQ(Invoke({"query", FixturePath("employment.pdlp"), "doc(alex)"}).out, "0.200000000\n");
  EXPECT_EQ(Invoke({"query", FixturePath("family.pdlp"), "hasDoc | haveRel"}).out,
            "0.760000000\n");
}

TEST(CliQueryTest, MixedFormulaFails) {
  Outcome r = Invoke({"query", FixturePath("family.pdlp"), "hasDoc & doc(alex)"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("mixes"), std::string::npos);
}

TEST(CliQueryTest, AtomLimitFails) {
  setenv("PDLP_ATOM_LIMIT", "2", 1);
  Outcome r = Invoke({"query", FixturePath("family.pdlp"), "doc(alex)"});
  unsetenv("PDLP_ATOM_LIMIT");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("PDLP_ATOM_LIMIT"), std::string::npos);
}

TEST(CliQueryTest, StructuredRecordRoundTrips) {
  Outcome r = Invoke({"query", FixturePath("shared_heads.pdlp"), "d", "--structured"});
  ASSERT_EQ(r.code, 0);
  auto rec = ParseRecord(r.out);
  EXPECT_EQ(rec["formula"], "d");
  EXPECT_EQ(rec["method"], "expl");
  EXPECT_EQ(rec["f_base"], "{}");
  EXPECT_EQ(rec["p_base"], "{{h3}, {h4}}");
  EXPECT_EQ(rec["expansions"], "3");
  double pr = std::stod(rec["pr"]);
  double full = std::stod(rec["pr_full"]);
  double partial = std::stod(rec["pr_partial"]);
  EXPECT_EQ(FormatProbability(pr), rec["pr"]);
  EXPECT_EQ(FormatProbability(full), rec["pr_full"]);
  EXPECT_EQ(FormatProbability(partial), rec["pr_partial"]);
  EXPECT_NEAR(pr, 0.35, 1e-9);
  EXPECT_NEAR(full + partial, pr, 1e-9);
  EXPECT_NE(r.out.find("expansion: {h3, h4} weight=0.200000000 m=2 m_f=1"), std::string::npos);
}

TEST(CliCrosscheckTest, Agreement) {
  Outcome r = Invoke({"crosscheck", FixturePath("family.pdlp"), "dad(alex,bob)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "expl: 0.443333333\nforest: 0.443333333\nbrute: 0.443333333\nagree\n");
  EXPECT_EQ(Invoke({"crosscheck", FixturePath("two_heads.pdlp"), "a"}).out,
            "expl: 0.375000000\nforest: 0.375000000\nbrute: 0.375000000\nagree\n");
  for (const char* name : {"employment.pdlp", "family.pdlp", "two_heads.pdlp", "shared_heads.pdlp",
                           "lawyer.pdlp", "empty.pdlp"}) {
    Outcome t = Invoke({"crosscheck", FixturePath(name), "TRUE"});
    EXPECT_EQ(t.code, 0) << name;
    EXPECT_EQ(t.out, "expl: 1.000000000\nforest: 1.000000000\nbrute: 1.000000000\nagree\n");
  }
}

TEST(CliModelsTest, Dumps) {
  Outcome r = Invoke({"models", FixturePath("family.pdlp")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, testing::ReadGolden("family_forest.txt"));
  EXPECT_EQ(Invoke({"models", FixturePath("family.pdlp")}).out, r.out);

  Outcome one = Invoke({"models", FixturePath("employment.pdlp")});
  EXPECT_EQ(one.out,
            "hypotheses: {}\n"
            "{dad(alex,bob), fac(alex), work(alex,uwm)}\n"
            "{dad(alex,bob), staff(alex), work(alex,uwm)}\n"
            "{dad(alex,helen), doc(alex), work(alex,mcw)}\n"
            "{dad(alex,helen), fac(alex), work(alex,mcw)}\n"
            "{dad(alex,helen), staff(alex), work(alex,mcw)}\n");
  EXPECT_EQ(Invoke({"models", FixturePath("empty.pdlp")}).out, "hypotheses: {}\n{}\n");
}

TEST(CliExplainTest, Bases) {
  Outcome r = Invoke({"explain", FixturePath("two_heads.pdlp"), "a"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "f_base: {}\np_base: {{h1, h2}, {h1, h2p}, {h1p, h2}}\n");
}

}  // namespace
}  // namespace pdlp::cli
