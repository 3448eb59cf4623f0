// Explanation-based default probability: full explanations, minimally
// sufficient partial explanations and Pr = Pr_full + Pr_partial.

#ifndef PDLP_EXPLAIN_H_
#define PDLP_EXPLAIN_H_

#include <cstddef>
#include <vector>

#include "pdlp/worlds.h"

namespace pdlp {

struct ExplanationBase {
  std::vector<HypothesisSet> f_base;  // minimal f-explanations
  std::vector<HypothesisSet> p_base;  // minimally sufficient p-explanations
};

// One member H of expd(p_base) and its contribution to Pr_partial.
struct Expansion {
  HypothesisSet hypotheses;
  double weight = 0.0;  // product of member probabilities
  std::size_t models = 0;
  std::size_t satisfying = 0;
};

struct QueryResult {
  Formula formula;
  double pr = 0.0;
  double pr_full = 0.0;
  double pr_partial = 0.0;
  ExplanationBase explanations;
  std::vector<Expansion> expansions;
};

// Works against precomputed basic subspaces; the free functions below build
// them on demand. Queries must mention regular atoms only.
class Explainer {
 public:
  explicit Explainer(const Subspaces& subspaces);

  bool IsFExplanation(const HypothesisSet& h, const BoundFormula& f) const;
  bool IsSufficientPExplanation(const HypothesisSet& h, const BoundFormula& f) const;
  std::vector<HypothesisSet> FExplanations(const BoundFormula& f) const;
  std::vector<HypothesisSet> PExplanations(const BoundFormula& f) const;
  double PrFull(const std::vector<HypothesisSet>& f_base) const;
  double PrPartial(const std::vector<HypothesisSet>& p_base, const BoundFormula& f,
                   std::vector<Expansion>* detail = nullptr) const;
  QueryResult DefaultProbability(const BoundFormula& f) const;

 private:
  // Consistent subsets of the hypothesis universe by increasing size, then
  // lexicographically.
  std::vector<HypothesisSet> CandidatesBySize() const;
  void RequireRegular(const BoundFormula& f) const;

  const Subspaces* subspaces_;
  const GroundProgram* gp_;
};

bool IsFExplanation(const HypothesisSet& h, const Formula& f, const GroundProgram& gp,
                    const ScanOptions& opts = {});
std::vector<HypothesisSet> FExplanations(const Formula& f, const GroundProgram& gp,
                                         const ScanOptions& opts = {});
double PrFull(const Formula& f, const GroundProgram& gp, const ScanOptions& opts = {});
bool IsSufficientPExplanation(const HypothesisSet& h, const Formula& f, const GroundProgram& gp,
                              const ScanOptions& opts = {});
std::vector<HypothesisSet> PExplanations(const Formula& f, const GroundProgram& gp,
                                         const ScanOptions& opts = {});
double PrPartial(const Formula& f, const GroundProgram& gp, const ScanOptions& opts = {});
QueryResult DefaultProbability(const Formula& f, const GroundProgram& gp,
                               const ScanOptions& opts = {});

// Which semantics a query formula falls under.
enum class FormulaClass { kRegular, kHypothesis, kMixed };
FormulaClass Classify(const Formula& f, const GroundProgram& gp);

}  // namespace pdlp

#endif  // PDLP_EXPLAIN_H_
