#include "pdlp/explain.h"

namespace pdlp {

Explainer::Explainer(const Subspaces& subspaces)
    : subspaces_(&subspaces), gp_(&subspaces.program()) {}

void Explainer::RequireRegular(const BoundFormula& f) const {
  for (AtomId id : f.atom_ids())
    if (id != BoundFormula::kAbsent && gp_->is_hypothesis(id))
      throw Error("explanations are defined for formulas over regular atoms, got " +
                  f.formula().str());
}

bool Explainer::IsFExplanation(const HypothesisSet& h, const BoundFormula& f) const {
  if (!IsConsistent(h, *gp_)) return false;
  for (const auto& w : subspaces_->RegularModelsUnder(h))
    if (!f.Eval(w)) return false;
  return true;
}

bool Explainer::IsSufficientPExplanation(const HypothesisSet& h, const BoundFormula& f) const {
  if (!IsConsistent(h, *gp_)) return false;
  const auto under = subspaces_->RegularModelsUnder(h);

  bool some_true = false, some_false = false;
  for (const auto& w : under) (f.Eval(w) ? some_true : some_false) = true;
  if (!some_true || !some_false) return false;

  // Bases dominate every intermediate consistent superset: f-explanations
  // are closed upwards and model sets only shrink along inclusion.
  for (std::size_t i : subspaces_->Extending(h)) {
    const auto& models = subspaces_->regular_models(i);
    bool all_true = std::all_of(models.begin(), models.end(),
                                [&](const Interpretation& w) { return f.Eval(w); });
    if (all_true) return false;
    if (models != under) return false;
  }
  return true;
}

std::vector<HypothesisSet> Explainer::CandidatesBySize() const {
  std::vector<HypothesisSet> out{HypothesisSet{}};
  for (const auto& st : gp_->statements()) {
    std::vector<HypothesisSet> next;
    for (const auto& partial : out) {
      next.push_back(partial);
      for (AtomId h : st.hypotheses) {
        HypothesisSet ext = partial;
        ext.insert(h);
        next.push_back(std::move(ext));
      }
    }
    out = std::move(next);
  }
  std::stable_sort(out.begin(), out.end(), [](const HypothesisSet& a, const HypothesisSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

namespace {

template <typename Accept>
std::vector<HypothesisSet> MinimalMembers(const std::vector<HypothesisSet>& candidates,
                                          Accept&& accept) {
  std::vector<HypothesisSet> found;
  for (const auto& c : candidates) {
    bool subsumed = std::any_of(found.begin(), found.end(),
                                [&](const HypothesisSet& m) { return c.includes(m); });
    if (!subsumed && accept(c)) found.push_back(c);
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

std::vector<HypothesisSet> Explainer::FExplanations(const BoundFormula& f) const {
  RequireRegular(f);
  return MinimalMembers(CandidatesBySize(),
                        [&](const HypothesisSet& h) { return IsFExplanation(h, f); });
}

std::vector<HypothesisSet> Explainer::PExplanations(const BoundFormula& f) const {
  RequireRegular(f);
  return MinimalMembers(CandidatesBySize(),
                        [&](const HypothesisSet& h) { return IsSufficientPExplanation(h, f); });
}

double Explainer::PrFull(const std::vector<HypothesisSet>& f_base) const {
  std::vector<Formula> disjuncts;
  for (const auto& h : f_base) {
    std::vector<Formula> conj;
    for (AtomId id : h) conj.push_back(Formula::Of(gp_->atom(id)));
    disjuncts.push_back(Formula::AndAll(conj));
  }
  return PrStar(Formula::OrAll(disjuncts), *gp_);
}

double Explainer::PrPartial(const std::vector<HypothesisSet>& p_base, const BoundFormula& f,
                            std::vector<Expansion>* detail) const {
  double total = 0.0;
  for (const auto& h : Expd(p_base, *gp_)) {
    Expansion e;
    e.hypotheses = h;
    e.weight = PrHypothesisSet(h, *gp_);
    for (const auto& w : subspaces_->RegularModelsUnder(h)) {
      ++e.models;
      if (f.Eval(w)) ++e.satisfying;
    }
    if (e.models == 0)
      throw Error("internal error: no minimal models under " + ToString(h, *gp_));
    total += e.weight * static_cast<double>(e.satisfying) / static_cast<double>(e.models);
    if (detail) detail->push_back(std::move(e));
  }
  return total;
}

QueryResult Explainer::DefaultProbability(const BoundFormula& f) const {
  QueryResult r{f.formula(), 0.0, 0.0, 0.0, {}, {}};
  r.explanations.f_base = FExplanations(f);
  r.explanations.p_base = PExplanations(f);
  r.pr_full = PrFull(r.explanations.f_base);
  r.pr_partial = PrPartial(r.explanations.p_base, f, &r.expansions);
  r.pr = r.pr_full + r.pr_partial;
  return r;
}

bool IsFExplanation(const HypothesisSet& h, const Formula& f, const GroundProgram& gp,
                    const ScanOptions& opts) {
  Subspaces s(gp, opts);
  return Explainer(s).IsFExplanation(h, BoundFormula(f, gp));
}

std::vector<HypothesisSet> FExplanations(const Formula& f, const GroundProgram& gp,
                                         const ScanOptions& opts) {
  Subspaces s(gp, opts);
  return Explainer(s).FExplanations(BoundFormula(f, gp));
}

double PrFull(const Formula& f, const GroundProgram& gp, const ScanOptions& opts) {
  Subspaces s(gp, opts);
  Explainer e(s);
  return e.PrFull(e.FExplanations(BoundFormula(f, gp)));
}

bool IsSufficientPExplanation(const HypothesisSet& h, const Formula& f, const GroundProgram& gp,
                              const ScanOptions& opts) {
  Subspaces s(gp, opts);
  return Explainer(s).IsSufficientPExplanation(h, BoundFormula(f, gp));
}

std::vector<HypothesisSet> PExplanations(const Formula& f, const GroundProgram& gp,
                                         const ScanOptions& opts) {
  Subspaces s(gp, opts);
  return Explainer(s).PExplanations(BoundFormula(f, gp));
}

double PrPartial(const Formula& f, const GroundProgram& gp, const ScanOptions& opts) {
  Subspaces s(gp, opts);
  Explainer e(s);
  BoundFormula bound(f, gp);
  return e.PrPartial(e.PExplanations(bound), bound);
}

QueryResult DefaultProbability(const Formula& f, const GroundProgram& gp,
                               const ScanOptions& opts) {
  Subspaces s(gp, opts);
  return Explainer(s).DefaultProbability(BoundFormula(f, gp));
}

FormulaClass Classify(const Formula& f, const GroundProgram& gp) {
  bool hyp = false, reg = false;
  for (const auto& a : f.atoms()) {
    auto id = gp.find(a);
    (id && gp.is_hypothesis(*id) ? hyp : reg) = true;
  }
  if (hyp && reg) return FormulaClass::kMixed;
  return hyp ? FormulaClass::kHypothesis : FormulaClass::kRegular;
}

}  // namespace pdlp
