#include "pdlp/grounder.h"

#include <algorithm>
#include <map>

namespace pdlp {

namespace {

using Binding = std::map<std::string, std::string>;

void CollectVariables(const Atom& a, std::vector<std::string>& out) {
  for (const auto& t : a.args)
    if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end())
      out.push_back(t.name);
}

Atom Apply(const Atom& a, const Binding& b) {
  Atom g = a;
  for (auto& t : g.args) {
    if (t.is_variable()) t = {Term::Kind::kConstant, b.at(t.name)};
  }
  return g;
}

// Calls fn(binding) for every assignment of constants to vars, odometer
// order with the last variable fastest.
template <typename Fn>
void ForEachBinding(const std::vector<std::string>& vars,
                    const std::set<std::string>& constants, Fn&& fn) {
  std::vector<std::string> pool(constants.begin(), constants.end());
  if (!vars.empty() && pool.empty()) return;
  std::vector<std::size_t> idx(vars.size(), 0);
  for (;;) {
    Binding b;
    for (std::size_t i = 0; i < vars.size(); ++i) b[vars[i]] = pool[idx[i]];
    fn(b);
    std::size_t k = vars.size();
    while (k > 0) {
      --k;
      if (++idx[k] < pool.size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (vars.empty()) return;
  }
}

}  // namespace

std::optional<AtomId> GroundProgram::find(const Atom& a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) return std::nullopt;
  return static_cast<AtomId>(it - atoms_.begin());
}

std::string GroundProgram::str() const {
  std::string s;
  for (const auto& st : statements_) {
    DisjointDecl d;
    for (std::size_t i = 0; i < st.hypotheses.size(); ++i)
      d.entries.push_back({atoms_[st.hypotheses[i]], st.probabilities[i]});
    s += d.str() + "\n";
  }
  for (const auto& c : clauses_) {
    Clause out;
    for (AtomId a : c.head) out.head.push_back(atoms_[a]);
    for (AtomId a : c.body) out.body.push_back(atoms_[a]);
    s += out.str() + "\n";
  }
  return s;
}

std::set<std::string> HerbrandConstants(const Program& program) {
  std::set<std::string> out;
  auto add = [&](const Atom& a) {
    for (const auto& t : a.args)
      if (!t.is_variable()) out.insert(t.name);
  };
  for (const auto& c : program.clauses) {
    for (const auto& a : c.head) add(a);
    for (const auto& a : c.body) add(a);
  }
  for (const auto& d : program.declarations)
    for (const auto& e : d.entries) add(e.atom);
  return out;
}

std::vector<Clause> Instantiate(const Clause& clause, const std::set<std::string>& constants) {
  std::vector<std::string> vars;
  for (const auto& a : clause.head) CollectVariables(a, vars);
  for (const auto& a : clause.body) CollectVariables(a, vars);
  std::vector<Clause> out;
  ForEachBinding(vars, constants, [&](const Binding& b) {
    Clause g;
    g.pos = clause.pos;
    for (const auto& a : clause.head) g.head.push_back(Apply(a, b));
    for (const auto& a : clause.body) g.body.push_back(Apply(a, b));
    out.push_back(std::move(g));
  });
  return out;
}

GroundProgram Ground(const Program& program) {
  const std::set<std::string> constants = HerbrandConstants(program);

  bool has_variables = false;
  for (const auto& c : program.clauses)
    for (const auto* part : {&c.head, &c.body})
      for (const auto& a : *part) has_variables = has_variables || !a.is_ground();
  for (const auto& d : program.declarations)
    for (const auto& e : d.entries) has_variables = has_variables || !e.atom.is_ground();
  if (has_variables && constants.empty())
    throw GroundingError("program has variables but no constants to ground them with");

  // Ground declarations first; their atoms decide which atoms are hypotheses.
  struct RawStatement {
    std::vector<Atom> atoms;
    std::vector<double> probabilities;
  };
  std::vector<RawStatement> raw_statements;
  std::map<Atom, std::size_t> owner;
  for (const auto& d : program.declarations) {
    std::vector<std::string> vars;
    for (const auto& e : d.entries) CollectVariables(e.atom, vars);
    ForEachBinding(vars, constants, [&](const Binding& b) {
      RawStatement st;
      for (const auto& e : d.entries) {
        Atom g = Apply(e.atom, b);
        if (owner.count(g) ||
            std::find(st.atoms.begin(), st.atoms.end(), g) != st.atoms.end())
          throw GroundingError("ground hypothesis " + g.str() +
                               " belongs to more than one disjoint statement");
        st.atoms.push_back(std::move(g));
        st.probabilities.push_back(e.probability);
      }
      for (const auto& a : st.atoms) owner[a] = raw_statements.size();
      raw_statements.push_back(std::move(st));
    });
  }

  std::vector<Clause> ground;
  for (const auto& c : program.clauses) {
    for (auto& g : Instantiate(c, constants)) {
      for (const auto& h : g.head)
        if (owner.count(h))
          throw GroundingError("hypothesis " + h.str() + " appears in the head of " + g.str());
      ground.push_back(std::move(g));
    }
  }

  std::set<Atom> all_atoms;
  for (const auto& [a, _] : owner) all_atoms.insert(a);
  for (const auto& c : ground) {
    all_atoms.insert(c.head.begin(), c.head.end());
    all_atoms.insert(c.body.begin(), c.body.end());
  }

  GroundProgram gp;
  gp.atoms_.assign(all_atoms.begin(), all_atoms.end());
  gp.statement_of_.assign(gp.atoms_.size(), GroundProgram::kRegular);
  gp.probability_.assign(gp.atoms_.size(), 0.0);

  for (std::size_t s = 0; s < raw_statements.size(); ++s) {
    GroundStatement st;
    st.id = s;
    st.probabilities = raw_statements[s].probabilities;
    for (std::size_t i = 0; i < raw_statements[s].atoms.size(); ++i) {
      AtomId id = *gp.find(raw_statements[s].atoms[i]);
      st.hypotheses.push_back(id);
      gp.statement_of_[id] = static_cast<int>(s);
      gp.probability_[id] = st.probabilities[i];
    }
    gp.ic_.exhaustive.push_back(st.hypotheses);
    for (std::size_t i = 0; i < st.hypotheses.size(); ++i)
      for (std::size_t j = i + 1; j < st.hypotheses.size(); ++j)
        gp.ic_.denials.emplace_back(st.hypotheses[i], st.hypotheses[j]);
    gp.statements_.push_back(std::move(st));
  }

  std::set<GroundClause> unique;
  for (const auto& c : ground) {
    GroundClause gc;
    for (const auto& a : c.head) gc.head.push_back(*gp.find(a));
    for (const auto& a : c.body) gc.body.push_back(*gp.find(a));
    for (auto* v : {&gc.head, &gc.body}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    unique.insert(std::move(gc));
  }
  gp.clauses_.assign(unique.begin(), unique.end());

  for (AtomId id = 0; id < gp.atoms_.size(); ++id) {
    if (gp.is_hypothesis(id)) {
      gp.hypotheses_.push_back(id);
    } else {
      gp.regular_base_.push_back(id);
    }
  }
  return gp;
}

}  // namespace pdlp
