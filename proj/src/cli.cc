#include "pdlp/cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "pdlp/explain.h"
#include "pdlp/forest.h"
#include "pdlp/grounder.h"
#include "pdlp/syntax.h"

namespace pdlp::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Exit status carried out of the loading helpers.
struct Exit {
  int code;
};

std::string ReadFile(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << path << "\n";
    throw Exit{kUsage};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program LoadProgram(const std::string& path, std::ostream& err) {
  std::string text = ReadFile(path, err);
  try {
    return ParseProgram(text);
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    throw Exit{kUsage};
  }
}

void PrintViolations(const std::string& path, const ValidationReport& report, std::ostream& out) {
  for (const auto& v : report)
    out << path << ":" << v.pos.line << ":" << v.pos.column << ": " << ToString(v.kind) << ": "
        << v.message << "\n";
}

GroundProgram LoadGround(const std::string& path, std::ostream& err) {
  Program p = LoadProgram(path, err);
  auto report = Validate(p);
  if (!report.empty()) {
    PrintViolations(path, report, err);
    throw Exit{kFailure};
  }
  try {
    return Ground(p);
  } catch (const GroundingError& e) {
    err << path << ": " << e.what() << "\n";
    throw Exit{kFailure};
  }
}

Formula LoadFormula(const std::string& text, std::ostream& err) {
  try {
    return ParseFormula(text);
  } catch (const ParseError& e) {
    err << "formula:" << e.what() << "\n";
    throw Exit{kUsage};
  }
}

const char* MethodName(Method m) {
  switch (m) {
    case Method::kExpl: return "expl";
    case Method::kForest: return "forest";
    case Method::kBrute: return "brute";
  }
  return "?";
}

std::string SetList(const std::vector<HypothesisSet>& sets, const GroundProgram& gp) {
  std::string s = "{";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) s += ", ";
    s += ToString(sets[i], gp);
  }
  return s + "}";
}

// Runs fn and maps errors onto exit codes.
template <typename Fn>
int Guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Exit& e) {
    return e.code;
  } catch (const AtomLimitError& e) {
    err << "error: " << e.what() << " (raise PDLP_ATOM_LIMIT to allow more)\n";
    return kFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

double Evaluate(Method method, const Formula& f, const GroundProgram& gp, const Subspaces& s) {
  BoundFormula bound(f, gp);
  switch (method) {
    case Method::kExpl:
      return Explainer(s).DefaultProbability(bound).pr;
    case Method::kForest:
      return ForestQuery(BuildForest(gp), bound, gp);
    case Method::kBrute:
      return BruteForceProbability(bound, s);
  }
  return 0.0;
}

}  // namespace

std::string FormatProbability(double p) {
  // Avoid printing -0.000000000 for tiny negative rounding noise.
  if (std::abs(p) < 5e-10) p = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", p);
  return buf;
}

ScanOptions OptionsFromEnv() {
  ScanOptions opts;
  if (const char* v = std::getenv("PDLP_ATOM_LIMIT")) {
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) opts.atom_limit = static_cast<int>(n);
  }
  return opts;
}

int CmdCheck(const std::string& path, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    Program p = LoadProgram(path, err);
    auto report = Validate(p);
    if (!report.empty()) {
      PrintViolations(path, report, out);
      out << report.size() << " violation(s)\n";
      return kFailure;
    }
    try {
      GroundProgram gp = Ground(p);
      out << "ok: " << gp.clauses().size() << " ground clauses, " << gp.statements().size()
          << " disjoint statements, " << gp.regular_base().size() << " regular atoms\n";
    } catch (const GroundingError& e) {
      out << path << ": " << e.what() << "\n1 violation(s)\n";
      return kFailure;
    }
    return kOk;
  });
}

int CmdModels(const std::string& path, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    GroundProgram gp = LoadGround(path, err);
    out << DumpForest(BuildForest(gp), gp);
    return kOk;
  });
}

int CmdQuery(const std::string& path, const std::string& formula, Method method, bool structured,
             const ScanOptions& opts, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    GroundProgram gp = LoadGround(path, err);
    Formula f = LoadFormula(formula, err);
    switch (Classify(f, gp)) {
      case FormulaClass::kMixed:
        err << "error: " << f.str()
            << " mixes hypotheses and regular atoms; query one kind at a time\n";
        return kFailure;
      case FormulaClass::kHypothesis: {
        double p = PrStar(f, gp);
        if (structured) {
          out << "formula: " << f.str() << "\nmethod: pr_star\npr: " << FormatProbability(p)
              << "\n";
        } else {
          out << FormatProbability(p) << "\n";
        }
        return kOk;
      }
      case FormulaClass::kRegular:
        break;
    }

    if (method == Method::kForest) {
      double p = ForestQuery(BuildForest(gp), BoundFormula(f, gp), gp);
      if (structured) {
        out << "formula: " << f.str() << "\nmethod: forest\npr: " << FormatProbability(p) << "\n";
      } else {
        out << FormatProbability(p) << "\n";
      }
      return kOk;
    }

    Subspaces subspaces(gp, opts);
    if (method == Method::kBrute) {
      double p = BruteForceProbability(BoundFormula(f, gp), subspaces);
      if (structured) {
        out << "formula: " << f.str() << "\nmethod: brute\npr: " << FormatProbability(p) << "\n";
      } else {
        out << FormatProbability(p) << "\n";
      }
      return kOk;
    }

    QueryResult r = Explainer(subspaces).DefaultProbability(BoundFormula(f, gp));
    if (!structured) {
      out << FormatProbability(r.pr) << "\n";
      return kOk;
    }
    out << "formula: " << f.str() << "\n"
        << "method: expl\n"
        << "pr: " << FormatProbability(r.pr) << "\n"
        << "pr_full: " << FormatProbability(r.pr_full) << "\n"
        << "pr_partial: " << FormatProbability(r.pr_partial) << "\n"
        << "f_base: " << SetList(r.explanations.f_base, gp) << "\n"
        << "p_base: " << SetList(r.explanations.p_base, gp) << "\n"
        << "expansions: " << r.expansions.size() << "\n";
    for (const auto& e : r.expansions) {
      out << "expansion: " << ToString(e.hypotheses, gp)
          << " weight=" << FormatProbability(e.weight) << " m=" << e.models
          << " m_f=" << e.satisfying << "\n";
    }
    return kOk;
  });
}

int CmdCrosscheck(const std::string& path, const std::string& formula, const ScanOptions& opts,
                  std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    GroundProgram gp = LoadGround(path, err);
    Formula f = LoadFormula(formula, err);
    if (Classify(f, gp) != FormulaClass::kRegular) {
      err << "error: crosscheck needs a formula over regular atoms\n";
      return kFailure;
    }
    Subspaces subspaces(gp, opts);
    double values[3];
    const Method methods[3] = {Method::kExpl, Method::kForest, Method::kBrute};
    for (int i = 0; i < 3; ++i) {
      values[i] = Evaluate(methods[i], f, gp, subspaces);
      out << MethodName(methods[i]) << ": " << FormatProbability(values[i]) << "\n";
    }
    bool agree = true;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        agree = agree && std::abs(values[i] - values[j]) <= kProbabilityTolerance;
    out << (agree ? "agree" : "DISAGREE") << "\n";
    return agree ? kOk : kFailure;
  });
}

int CmdExplain(const std::string& path, const std::string& formula, const ScanOptions& opts,
               std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    GroundProgram gp = LoadGround(path, err);
    Formula f = LoadFormula(formula, err);
    if (Classify(f, gp) != FormulaClass::kRegular) {
      err << "error: explanations need a formula over regular atoms\n";
      return kFailure;
    }
    Subspaces subspaces(gp, opts);
    Explainer ex(subspaces);
    BoundFormula bound(f, gp);
    out << "f_base: " << SetList(ex.FExplanations(bound), gp) << "\n"
        << "p_base: " << SetList(ex.PExplanations(bound), gp) << "\n";
    return kOk;
  });
}

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic disjunctive logic programs: models and default probabilities"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string method = "expl";

  auto* check = app.add_subcommand("check", "Validate and ground a program");
  check->add_option("file", cfg.program_path, "Program file")->required();

  auto* models = app.add_subcommand("models", "Print the hypothetical model forest");
  models->add_option("file", cfg.program_path, "Program file")->required();

  auto* query = app.add_subcommand("query", "Default probability of a ground formula");
  query->add_option("file", cfg.program_path, "Program file")->required();
  query->add_option("formula", cfg.formula, "Ground formula")->required();
  query->add_option("--method", method, "expl, forest or brute")
      ->check(CLI::IsMember({"expl", "forest", "brute"}));
  query->add_flag("--structured", cfg.structured, "Print the full result record");

  auto* cross = app.add_subcommand("crosscheck", "Compare all three methods");
  cross->add_option("file", cfg.program_path, "Program file")->required();
  cross->add_option("formula", cfg.formula, "Ground formula")->required();

  auto* explain = app.add_subcommand("explain", "Print the explanation bases of a formula");
  explain->add_option("file", cfg.program_path, "Program file")->required();
  explain->add_option("formula", cfg.formula, "Ground formula")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  ScanOptions opts = OptionsFromEnv();
  if (method == "forest") cfg.method = Method::kForest;
  if (method == "brute") cfg.method = Method::kBrute;

  if (*check) return CmdCheck(cfg.program_path, out, err);
  if (*models) return CmdModels(cfg.program_path, out, err);
  if (*query)
    return CmdQuery(cfg.program_path, cfg.formula, cfg.method, cfg.structured, opts, out, err);
  if (*cross) return CmdCrosscheck(cfg.program_path, cfg.formula, opts, out, err);
  if (*explain) return CmdExplain(cfg.program_path, cfg.formula, opts, out, err);
  return kUsage;
}

std::map<std::string, std::string> ParseRecord(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(": ");
    if (colon == std::string::npos) continue;
    out[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return out;
}

}  // namespace pdlp::cli
