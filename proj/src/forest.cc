#include "pdlp/forest.h"

#include <numeric>
#include <set>

namespace pdlp {

// {{{ ModelTree

ModelTree::ModelTree() : nodes_(1) {}

ModelTree ModelTree::NoModels() {
  ModelTree t;
  t.has_models_ = false;
  return t;
}

ModelTree ModelTree::FromModels(const std::vector<Interpretation>& models) {
  if (models.empty()) return NoModels();
  ModelTree t;
  std::vector<bool> ends(1, false);
  for (const auto& m : models) {
    int at = 0;
    for (AtomId a : m) {
      int next = -1;
      for (int c : t.nodes_[at].children)
        if (t.nodes_[c].label == a) next = c;
      if (next < 0) {
        next = static_cast<int>(t.nodes_.size());
        t.nodes_.push_back({a, at, {}});
        t.nodes_[at].children.push_back(next);
        ends.push_back(false);
      }
      at = next;
    }
    ends[at] = true;
  }
  // A model ending at an inner node keeps its own branch via an epsilon leaf.
  const std::size_t n = t.nodes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (ends[i] && !t.nodes_[i].children.empty()) {
      int leaf = static_cast<int>(t.nodes_.size());
      t.nodes_.push_back({kEpsilon, static_cast<int>(i), {}});
      t.nodes_[i].children.push_back(leaf);
    }
  }
  return t;
}

std::vector<int> ModelTree::Leaves() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].children.empty()) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<AtomId> ModelTree::PathAtoms(int leaf) const {
  std::vector<AtomId> out;
  for (int at = leaf; at >= 0; at = nodes_[at].parent)
    if (nodes_[at].label != kEpsilon) out.push_back(nodes_[at].label);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Interpretation> ModelTree::Branches() const {
  if (!has_models_) return {};
  std::set<Interpretation> out;
  for (int leaf : Leaves()) out.emplace(PathAtoms(leaf));
  return {out.begin(), out.end()};
}

bool ModelTree::Extend(const std::vector<AtomId>& head, const std::vector<AtomId>& body) {
  if (!has_models_) return false;
  bool changed = false;
  for (int leaf : Leaves()) {
    const auto path = PathAtoms(leaf);
    if (!std::includes(path.begin(), path.end(), body.begin(), body.end())) continue;
    bool satisfied = std::any_of(head.begin(), head.end(), [&](AtomId a) {
      return std::binary_search(path.begin(), path.end(), a);
    });
    if (satisfied) continue;
    for (AtomId a : head) {
      int child = static_cast<int>(nodes_.size());
      nodes_.push_back({a, leaf, {}});
      nodes_[leaf].children.push_back(child);
    }
    changed = true;
  }
  return changed;
}

bool ModelTree::WellFormed() const {
  if (nodes_.empty() || nodes_[0].label != kEpsilon || nodes_[0].parent != -1) return false;
  for (int leaf : Leaves()) {
    std::vector<AtomId> labels;
    for (int at = leaf; at >= 0; at = nodes_[at].parent)
      if (nodes_[at].label != kEpsilon) labels.push_back(nodes_[at].label);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
  }
  return true;
}

// }}}

// {{{ Forest construction

namespace {

enum class BodyStatus { kEnabled, kContradicted, kPending };

// Classifies a clause against the hypotheses of a pair. For pending clauses
// `open` receives the undecided statements of its body hypotheses.
BodyStatus Status(const GroundClause& c, const HypothesisSet& h, const GroundProgram& gp,
                  std::vector<int>* open = nullptr) {
  bool pending = false;
  for (AtomId a : c.body) {
    if (!gp.is_hypothesis(a) || h.contains(a)) continue;
    int s = gp.statement_of(a);
    bool decided = std::any_of(h.begin(), h.end(),
                               [&](AtomId x) { return gp.statement_of(x) == s; });
    if (decided) return BodyStatus::kContradicted;
    pending = true;
    if (open) open->push_back(s);
  }
  return pending ? BodyStatus::kPending : BodyStatus::kEnabled;
}

std::vector<AtomId> RegularBody(const GroundClause& c, const GroundProgram& gp) {
  std::vector<AtomId> out;
  for (AtomId a : c.body)
    if (!gp.is_hypothesis(a)) out.push_back(a);
  return out;
}

bool Violates(const Interpretation& w, const std::vector<AtomId>& head,
              const std::vector<AtomId>& body) {
  return std::all_of(body.begin(), body.end(), [&](AtomId a) { return w.contains(a); }) &&
         std::none_of(head.begin(), head.end(), [&](AtomId a) { return w.contains(a); });
}

// Keeps the subset-minimal branches. At a fixpoint every branch is a model
// of the enabled clauses and every minimal model sits above some branch, so
// what survives is exactly the minimal model set.
void Minimize(ForestPair& pair, const std::vector<GroundClause>& clauses,
              const GroundProgram& gp) {
  auto branches = pair.tree.Branches();
  std::vector<Interpretation> keep;
  for (const auto& b : branches) {
    bool dominated = std::any_of(branches.begin(), branches.end(), [&](const Interpretation& o) {
      return o != b && b.includes(o);
    });
    if (dominated) continue;
    for (const auto& c : clauses) {
      if (Status(c, pair.hypotheses, gp) != BodyStatus::kEnabled) continue;
      if (Violates(b, c.head, RegularBody(c, gp)))
        throw Error("internal error: forest branch " + ToString(b, gp) +
                    " is not a model under " + ToString(pair.hypotheses, gp));
    }
    keep.push_back(b);
  }
  pair.tree = ModelTree::FromModels(keep);
}

}  // namespace

HypotheticalModelForest BuildForest(const GroundProgram& gp,
                                    std::span<const std::size_t> clause_order) {
  std::vector<GroundClause> clauses;
  if (clause_order.empty()) {
    clauses = gp.clauses();
  } else {
    if (clause_order.size() != gp.clauses().size())
      throw Error("clause order must be a permutation of the ground clauses");
    for (std::size_t i : clause_order) clauses.push_back(gp.clauses().at(i));
  }
  std::vector<std::vector<AtomId>> bodies;
  for (const auto& c : clauses) bodies.push_back(RegularBody(c, gp));

  std::vector<ForestPair> pairs{{ModelTree(), HypothesisSet{}}};
  for (bool modified = true; modified;) {
    modified = false;
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
      for (auto& pair : pairs) {
        if (Status(clauses[ci], pair.hypotheses, gp) != BodyStatus::kEnabled) continue;
        modified = pair.tree.Extend(clauses[ci].head, bodies[ci]) || modified;
      }
    }
    if (modified) continue;

    // Enabled clauses are saturated everywhere. Split a pair on the lowest
    // undecided statement whose clause some minimal branch violates.
    std::vector<ForestPair> next;
    for (auto& pair : pairs) {
      Minimize(pair, clauses, gp);
      const auto branches = pair.tree.Branches();
      int split = -1;
      for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
        std::vector<int> open;
        if (Status(clauses[ci], pair.hypotheses, gp, &open) != BodyStatus::kPending) continue;
        bool violated = std::any_of(branches.begin(), branches.end(), [&](const auto& b) {
          return Violates(b, clauses[ci].head, bodies[ci]);
        });
        if (!violated) continue;
        int lowest = *std::min_element(open.begin(), open.end());
        if (split < 0 || lowest < split) split = lowest;
      }
      if (split < 0) {
        next.push_back(std::move(pair));
        continue;
      }
      for (AtomId h : gp.statements()[static_cast<std::size_t>(split)].hypotheses) {
        ForestPair child{pair.tree, pair.hypotheses};
        child.hypotheses.insert(h);
        next.push_back(std::move(child));
      }
      modified = true;
    }
    pairs = std::move(next);
  }

  for (auto& pair : pairs) Minimize(pair, clauses, gp);
  std::sort(pairs.begin(), pairs.end(), [](const ForestPair& a, const ForestPair& b) {
    return a.hypotheses < b.hypotheses;
  });
  return {std::move(pairs)};
}

// }}}

double ForestQuery(const HypotheticalModelForest& forest, const BoundFormula& f,
                   const GroundProgram& gp) {
  double prob = 0.0;
  for (const auto& pair : forest.pairs) {
    const auto branches = pair.tree.Branches();
    const std::size_t q = branches.size();
    if (q == 0) continue;
    std::size_t p = 0;
    for (const auto& b : branches) p += f.Eval(b) ? 1 : 0;
    prob += static_cast<double>(p) / static_cast<double>(q) * PrHypothesisSet(pair.hypotheses, gp);
  }
  return prob;
}

std::string DumpForest(const HypotheticalModelForest& forest, const GroundProgram& gp) {
  std::string out;
  for (std::size_t i = 0; i < forest.pairs.size(); ++i) {
    const auto& pair = forest.pairs[i];
    if (i) out += "\n";
    out += "hypotheses: " + ToString(pair.hypotheses, gp) + "\n";
    if (!pair.tree.has_models()) out += "(no models)\n";
    for (const auto& b : pair.tree.Branches()) out += ToString(b, gp) + "\n";
  }
  return out;
}

}  // namespace pdlp
