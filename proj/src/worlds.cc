#include "pdlp/worlds.h"

#include <exception>
#include <map>
#include <set>

#include "pdlp/model_scan.h"

namespace pdlp {

HypothesisSet MakeHypothesisSet(const GroundProgram& gp, const std::vector<Atom>& atoms) {
  std::vector<AtomId> ids;
  for (const auto& a : atoms) {
    auto id = gp.find(a);
    if (!id || !gp.is_hypothesis(*id)) throw Error(a.str() + " is not a declared hypothesis");
    ids.push_back(*id);
  }
  return HypothesisSet(std::move(ids));
}

Interpretation MakeInterpretation(const GroundProgram& gp, const std::vector<Atom>& atoms) {
  std::vector<AtomId> ids;
  for (const auto& a : atoms) {
    auto id = gp.find(a);
    if (!id) throw Error(a.str() + " does not occur in the program");
    ids.push_back(*id);
  }
  return Interpretation(std::move(ids));
}

// {{{ BoundFormula

BoundFormula::BoundFormula(const Formula& f, const GroundProgram& gp) : formula_(f) {
  Flatten(f, gp);
  for (const auto& a : f.atoms()) {
    auto id = gp.find(a);
    ids_.push_back(id ? *id : kAbsent);
  }
}

int BoundFormula::Flatten(const Formula& f, const GroundProgram& gp) {
  int self = static_cast<int>(nodes_.size());
  nodes_.push_back({f.kind()});
  switch (f.kind()) {
    case Formula::Kind::kAtom: {
      auto id = gp.find(f.atom());
      nodes_[self].atom = id ? *id : kAbsent;
      break;
    }
    case Formula::Kind::kNot: {
      int l = Flatten(f.operand(), gp);
      nodes_[self].lhs = l;
      break;
    }
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      int l = Flatten(f.lhs(), gp);
      int r = Flatten(f.rhs(), gp);
      nodes_[self].lhs = l;
      nodes_[self].rhs = r;
      break;
    }
    default:
      break;
  }
  return self;
}

bool BoundFormula::Eval(const Interpretation& w) const {
  return EvalWith([&](AtomId id) { return w.contains(id); });
}

bool EvalFormula(const BoundFormula& f, const Interpretation& w) { return f.Eval(w); }

bool EvalFormula(const Formula& f, const Interpretation& w, const GroundProgram& gp) {
  return BoundFormula(f, gp).Eval(w);
}

// }}}

// {{{ Hypothesis-set algebra

namespace {

const std::vector<AtomId>& Alternatives(const GroundProgram& gp, int statement) {
  return gp.statements()[static_cast<std::size_t>(statement)].hypotheses;
}

// Every set choosing one hypothesis from each listed statement, first
// statement varying slowest.
std::vector<HypothesisSet> Product(const GroundProgram& gp, const std::vector<int>& statements,
                                   const HypothesisSet& seed = {}) {
  std::vector<HypothesisSet> out{seed};
  for (int s : statements) {
    std::vector<HypothesisSet> next;
    next.reserve(out.size() * Alternatives(gp, s).size());
    for (const auto& partial : out) {
      for (AtomId h : Alternatives(gp, s)) {
        HypothesisSet ext = partial;
        ext.insert(h);
        next.push_back(std::move(ext));
      }
    }
    out = std::move(next);
  }
  return out;
}

void RequireConsistent(const HypothesisSet& h, const GroundProgram& gp) {
  if (!IsConsistent(h, gp)) throw Error("inconsistent hypothesis set " + ToString(h, gp));
}

}  // namespace

bool IsConsistent(const HypothesisSet& h, const GroundProgram& gp) {
  std::set<int> seen;
  for (AtomId id : h) {
    if (id >= gp.atoms().size() || !gp.is_hypothesis(id))
      throw Error("atom " + (id < gp.atoms().size() ? gp.atom(id).str() : std::to_string(id)) +
                  " is not a hypothesis");
    if (!seen.insert(gp.statement_of(id)).second) return false;
  }
  return true;
}

std::vector<int> TouchedStatements(const HypothesisSet& h, const GroundProgram& gp) {
  std::set<int> s;
  for (AtomId id : h) s.insert(gp.statement_of(id));
  return {s.begin(), s.end()};
}

std::vector<HypothesisSet> HypothesisBases(const GroundProgram& gp) {
  std::vector<int> all;
  for (std::size_t s = 0; s < gp.statements().size(); ++s) all.push_back(static_cast<int>(s));
  return Product(gp, all);
}

std::vector<HypothesisSet> BasesExtending(const HypothesisSet& h, const GroundProgram& gp) {
  RequireConsistent(h, gp);
  std::vector<int> touched = TouchedStatements(h, gp), open;
  for (std::size_t s = 0; s < gp.statements().size(); ++s)
    if (!std::binary_search(touched.begin(), touched.end(), static_cast<int>(s)))
      open.push_back(static_cast<int>(s));
  return Product(gp, open, h);
}

std::vector<HypothesisSet> Compl(const HypothesisSet& h, const GroundProgram& gp) {
  RequireConsistent(h, gp);
  auto out = Product(gp, TouchedStatements(h, gp));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HypothesisSet> Expd(const std::vector<HypothesisSet>& hs, const GroundProgram& gp) {
  HypothesisSet all;
  for (const auto& h : hs) {
    RequireConsistent(h, gp);
    for (AtomId id : h) all.insert(id);
  }
  if (hs.empty()) return {};
  // Any maximal consistent subset of `all` touches exactly these statements.
  std::vector<HypothesisSet> out;
  for (auto& c : Product(gp, TouchedStatements(all, gp))) {
    if (std::any_of(hs.begin(), hs.end(), [&](const HypothesisSet& h) { return c.includes(h); }))
      out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// }}}

// {{{ Minimal models

namespace {

bool SatisfiesIntegrityConstraints(const HypothesisSet& h, const GroundProgram& gp) {
  for (const auto& disj : gp.ic().exhaustive)
    if (std::none_of(disj.begin(), disj.end(), [&](AtomId a) { return h.contains(a); }))
      return false;
  for (const auto& [a, b] : gp.ic().denials)
    if (h.contains(a) && h.contains(b)) return false;
  return true;
}

// Regular parts of the minimal models under one hypothesis base.
std::vector<Interpretation> BaseRegularModels(const GroundProgram& gp, const HypothesisSet& base,
                                              const ScanOptions& opts) {
  if (!SatisfiesIntegrityConstraints(base, gp))
    throw Error("not a hypothesis base: " + ToString(base, gp));

  // A clause is live when all its body hypotheses are in the base.
  std::vector<const GroundClause*> live;
  for (const auto& c : gp.clauses()) {
    bool ok = std::all_of(c.body.begin(), c.body.end(),
                          [&](AtomId a) { return !gp.is_hypothesis(a) || base.contains(a); });
    if (ok) live.push_back(&c);
  }

  // Every minimal model lies inside the least fixpoint of the relaxation
  // that makes all head atoms of a firing clause true.
  std::set<AtomId> reach;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto* c : live) {
      bool fires = std::all_of(c->body.begin(), c->body.end(), [&](AtomId a) {
        return gp.is_hypothesis(a) || reach.count(a);
      });
      if (!fires) continue;
      for (AtomId a : c->head) changed = reach.insert(a).second || changed;
    }
  }
  if (static_cast<int>(reach.size()) > opts.atom_limit ||
      static_cast<int>(reach.size()) > scan::kMaxAtoms) {
    throw AtomLimitError("minimal-model scan needs " + std::to_string(reach.size()) +
                         " regular atoms under " + ToString(base, gp) + ", limit is " +
                         std::to_string(std::min(opts.atom_limit, scan::kMaxAtoms)));
  }

  std::vector<AtomId> local(reach.begin(), reach.end());
  std::map<AtomId, int> bit;
  for (std::size_t i = 0; i < local.size(); ++i) bit[local[i]] = static_cast<int>(i);

  scan::LocalProgram prog;
  prog.num_atoms = static_cast<int>(local.size());
  for (const auto* c : live) {
    scan::MaskClause mc;
    bool inside = true;
    for (AtomId a : c->body) {
      if (gp.is_hypothesis(a)) continue;
      auto it = bit.find(a);
      if (it == bit.end()) {
        inside = false;
        break;
      }
      mc.body |= scan::Mask{1} << it->second;
    }
    // A body outside the reachable atoms never holds in a candidate.
    if (!inside) continue;
    for (AtomId a : c->head) mc.head |= scan::Mask{1} << bit.at(a);
    prog.clauses.push_back(mc);
  }

  auto masks = opts.parallel ? scan::MinimalModelsParallel(prog) : scan::MinimalModelsSerial(prog);
  std::vector<Interpretation> out;
  out.reserve(masks.size());
  for (scan::Mask m : masks) {
    std::vector<AtomId> ids;
    for (std::size_t i = 0; i < local.size(); ++i)
      if (m >> i & 1) ids.push_back(local[i]);
    out.emplace_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Interpretation> MinimalModels(const GroundProgram& gp, const HypothesisSet& h,
                                          const ScanOptions& opts) {
  RequireConsistent(h, gp);
  // Models under different bases carry different hypotheses and are never
  // comparable, so the union over bases is already subset-minimal.
  std::vector<Interpretation> out;
  for (const auto& base : BasesExtending(h, gp)) {
    for (const auto& m : BaseRegularModels(gp, base, opts)) {
      Interpretation w = m;
      for (AtomId id : base) w.insert(id);
      out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Interpretation> RegularModelSet(const GroundProgram& gp, const HypothesisSet& h,
                                            const ScanOptions& opts) {
  std::set<Interpretation> out;
  for (const auto& w : MinimalModels(gp, h, opts)) {
    std::vector<AtomId> ids;
    for (AtomId id : w)
      if (!gp.is_hypothesis(id)) ids.push_back(id);
    out.emplace(std::move(ids));
  }
  return {out.begin(), out.end()};
}

// }}}

// {{{ Probabilities

double PrStar(const Formula& f, const GroundProgram& gp) {
  std::set<int> statements;
  for (const auto& a : f.atoms()) {
    auto id = gp.find(a);
    if (!id) throw Error("undeclared atom " + a.str());
    if (!gp.is_hypothesis(*id)) throw Error(a.str() + " is not a hypothesis");
    statements.insert(gp.statement_of(*id));
  }
  BoundFormula bound(f, gp);
  double total = 0.0;
  for (const auto& choice : Product(gp, {statements.begin(), statements.end()})) {
    if (bound.Eval(Interpretation(choice.ids()))) total += PrHypothesisSet(choice, gp);
  }
  return total;
}

double PrHypothesisSet(const HypothesisSet& h, const GroundProgram& gp) {
  if (!IsConsistent(h, gp)) return 0.0;
  double p = 1.0;
  for (AtomId id : h) p *= gp.probability(id);
  return p;
}

Subspaces::Subspaces(const GroundProgram& gp, const ScanOptions& opts)
    : gp_(&gp), bases_(HypothesisBases(gp)), models_(bases_.size()) {
  const std::int64_t n = static_cast<std::int64_t>(bases_.size());
  std::exception_ptr failure;
  ScanOptions inner = opts;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      models_[i] = BaseRegularModels(gp, bases_[i], inner);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::size_t> Subspaces::Extending(const HypothesisSet& h) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bases_.size(); ++i)
    if (bases_[i].includes(h)) out.push_back(i);
  return out;
}

std::vector<Interpretation> Subspaces::RegularModelsUnder(const HypothesisSet& h) const {
  std::set<Interpretation> out;
  for (std::size_t i : Extending(h)) out.insert(models_[i].begin(), models_[i].end());
  return {out.begin(), out.end()};
}

double BruteForceProbability(const BoundFormula& f, const Subspaces& s) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.bases().size(); ++i) {
    const auto& models = s.regular_models(i);
    if (models.empty()) continue;
    std::size_t hits = 0;
    for (const auto& w : models) hits += f.Eval(w) ? 1 : 0;
    total += PrHypothesisSet(s.bases()[i], s.program()) * static_cast<double>(hits) /
             static_cast<double>(models.size());
  }
  return total;
}

// }}}

}  // namespace pdlp
