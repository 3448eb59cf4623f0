// Model trees and hypothetical model forests: a compiled form of a ground
// program that answers any regular-atom query by counting branches.

#ifndef PDLP_FOREST_H_
#define PDLP_FOREST_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pdlp/worlds.h"

namespace pdlp {

// Trie whose root-to-leaf paths spell a finite family of models. Labels are
// atoms or epsilon; the root is always epsilon. A root-only tree stands for
// the single empty model. A tree can also stand for no model at all, which
// is a different thing.
class ModelTree {
 public:
  static constexpr AtomId kEpsilon = ~AtomId{0};

  ModelTree();  // root only
  static ModelTree NoModels();
  static ModelTree FromModels(const std::vector<Interpretation>& models);

  // Distinct branch models in increasing order.
  std::vector<Interpretation> Branches() const;
  std::size_t BranchCount() const { return Branches().size(); }
  bool has_models() const { return has_models_; }
  std::size_t node_count() const { return nodes_.size(); }

  // Splits every leaf whose branch contains all of `body` and none of
  // `head` into one child per head atom. Returns whether anything changed.
  bool Extend(const std::vector<AtomId>& head, const std::vector<AtomId>& body);

  // Path labels are unique and the branch set is well defined.
  bool WellFormed() const;

 private:
  struct Node {
    AtomId label = kEpsilon;
    int parent = -1;
    std::vector<int> children;
  };

  std::vector<AtomId> PathAtoms(int leaf) const;
  std::vector<int> Leaves() const;

  std::vector<Node> nodes_;
  bool has_models_ = true;
};

struct ForestPair {
  ModelTree tree;
  HypothesisSet hypotheses;
};

struct HypotheticalModelForest {
  std::vector<ForestPair> pairs;  // ordered by hypothesis set
};

// Runs the clause-by-clause update to a fixpoint. `clause_order` permutes
// the ground clauses; empty means program order.
HypotheticalModelForest BuildForest(const GroundProgram& gp,
                                    std::span<const std::size_t> clause_order = {});

// Sum over pairs of Pr*(H) times the fraction of branches satisfying f.
double ForestQuery(const HypotheticalModelForest& forest, const BoundFormula& f,
                   const GroundProgram& gp);

// One block per pair: "hypotheses: {...}" followed by one branch per line.
std::string DumpForest(const HypotheticalModelForest& forest, const GroundProgram& gp);

}  // namespace pdlp

#endif  // PDLP_FOREST_H_
