// Interpretations, hypothesis-set algebra, minimal-model enumeration and the
// product distribution over hypotheses.
//
// MinimalModels is the reference semantics every other route is checked
// against: for each hypothesis base compatible with the given set it scans
// all subsets of the atoms that can possibly become true and keeps the
// subset-minimal models.

#ifndef PDLP_WORLDS_H_
#define PDLP_WORLDS_H_

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include "pdlp/grounder.h"
#include "pdlp/syntax.h"

namespace pdlp {

// Sorted set of atom ids.
template <typename Tag>
class AtomSet {
 public:
  AtomSet() = default;
  AtomSet(std::initializer_list<AtomId> ids) : ids_(ids) { Normalize(); }
  explicit AtomSet(std::vector<AtomId> ids) : ids_(std::move(ids)) { Normalize(); }

  bool contains(AtomId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }
  bool includes(const AtomSet& o) const {
    return std::includes(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end());
  }
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<AtomId>& ids() const { return ids_; }

  void insert(AtomId id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) ids_.insert(it, id);
  }

  auto operator<=>(const AtomSet&) const = default;
  bool operator==(const AtomSet&) const = default;

 private:
  void Normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<AtomId> ids_;
};

using Interpretation = AtomSet<struct InterpretationTag>;
using HypothesisSet = AtomSet<struct HypothesisSetTag>;

// "{a, b(c)}" with atoms in id order.
template <typename Tag>
std::string ToString(const AtomSet<Tag>& s, const GroundProgram& gp) {
  std::string out = "{";
  bool first = true;
  for (AtomId id : s) {
    if (!first) out += ", ";
    first = false;
    out += gp.atom(id).str();
  }
  return out + "}";
}

HypothesisSet MakeHypothesisSet(const GroundProgram& gp, const std::vector<Atom>& atoms);
Interpretation MakeInterpretation(const GroundProgram& gp, const std::vector<Atom>& atoms);

// A formula with its atoms resolved against a ground program. Atoms that do
// not occur in the program are false in every interpretation.
class BoundFormula {
 public:
  static constexpr AtomId kAbsent = ~AtomId{0};

  BoundFormula(const Formula& f, const GroundProgram& gp);

  const Formula& formula() const { return formula_; }
  // Resolved ids of the distinct atoms, kAbsent when unknown.
  const std::vector<AtomId>& atom_ids() const { return ids_; }

  bool Eval(const Interpretation& w) const;
  template <typename Pred>
  bool EvalWith(Pred&& is_true) const {
    return EvalNode(0, is_true);
  }

 private:
  struct Node {
    Formula::Kind kind;
    AtomId atom = kAbsent;
    int lhs = -1, rhs = -1;
  };
  int Flatten(const Formula& f, const GroundProgram& gp);
  template <typename Pred>
  bool EvalNode(int i, Pred& is_true) const {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case Formula::Kind::kTrue: return true;
      case Formula::Kind::kFalse: return false;
      case Formula::Kind::kAtom: return n.atom != kAbsent && is_true(n.atom);
      case Formula::Kind::kNot: return !EvalNode(n.lhs, is_true);
      case Formula::Kind::kAnd: return EvalNode(n.lhs, is_true) && EvalNode(n.rhs, is_true);
      case Formula::Kind::kOr: return EvalNode(n.lhs, is_true) || EvalNode(n.rhs, is_true);
    }
    return false;
  }

  Formula formula_;
  std::vector<Node> nodes_;
  std::vector<AtomId> ids_;
};

bool EvalFormula(const BoundFormula& f, const Interpretation& w);
bool EvalFormula(const Formula& f, const Interpretation& w, const GroundProgram& gp);

class AtomLimitError : public Error {
 public:
  using Error::Error;
};

struct ScanOptions {
  // Largest number of derivable regular atoms the subset scan accepts.
  int atom_limit = 24;
  bool parallel = true;
};

// At most one hypothesis per statement. Throws if h has a non-hypothesis.
bool IsConsistent(const HypothesisSet& h, const GroundProgram& gp);

// Cartesian product of the statements, first statement varying slowest.
std::vector<HypothesisSet> HypothesisBases(const GroundProgram& gp);

// Every base that includes h.
std::vector<HypothesisSet> BasesExtending(const HypothesisSet& h, const GroundProgram& gp);

std::vector<HypothesisSet> Compl(const HypothesisSet& h, const GroundProgram& gp);
std::vector<HypothesisSet> Expd(const std::vector<HypothesisSet>& hs, const GroundProgram& gp);

// Statement indices touched by h, ascending.
std::vector<int> TouchedStatements(const HypothesisSet& h, const GroundProgram& gp);

// Minimal models of the clauses plus h plus the integrity constraints. Each
// returned model includes its hypothesis atoms.
std::vector<Interpretation> MinimalModels(const GroundProgram& gp, const HypothesisSet& h,
                                          const ScanOptions& opts = {});

// MinimalModels with hypothesis atoms removed, as a sorted set.
std::vector<Interpretation> RegularModelSet(const GroundProgram& gp, const HypothesisSet& h,
                                            const ScanOptions& opts = {});

// Probability of a formula whose atoms are all declared hypotheses.
double PrStar(const Formula& f, const GroundProgram& gp);

// Product of member probabilities; 0 for an inconsistent set.
double PrHypothesisSet(const HypothesisSet& h, const GroundProgram& gp);

// All basic subspaces of a ground program, computed once. Bases are scanned
// in parallel and stored in HypothesisBases order.
class Subspaces {
 public:
  Subspaces(const GroundProgram& gp, const ScanOptions& opts = {});

  const GroundProgram& program() const { return *gp_; }
  const std::vector<HypothesisSet>& bases() const { return bases_; }
  // Hypothesis-free minimal models of base i.
  const std::vector<Interpretation>& regular_models(std::size_t i) const { return models_[i]; }

  // Indices of bases including h.
  std::vector<std::size_t> Extending(const HypothesisSet& h) const;
  // Union of regular model sets over bases including h.
  std::vector<Interpretation> RegularModelsUnder(const HypothesisSet& h) const;

 private:
  const GroundProgram* gp_;
  std::vector<HypothesisSet> bases_;
  std::vector<std::vector<Interpretation>> models_;
};

// Sum over bases of Pr(base) times the fraction of its minimal models that
// satisfy f.
double BruteForceProbability(const BoundFormula& f, const Subspaces& s);

}  // namespace pdlp

#endif  // PDLP_WORLDS_H_
