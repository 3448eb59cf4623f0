#include "testing/random_programs.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pdlp::testing {

std::string RandomProgramText(std::mt19937& rng, const RandomProgramShape& shape) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::ostringstream out;

  const int statements = uniform(0, shape.max_statements);
  std::vector<std::vector<std::string>> hyps(statements);
  for (int s = 0; s < statements; ++s) {
    const int n = uniform(2, 3);
    // Split ten tenths among n entries.
    std::vector<int> tenths(n, 0);
    for (int k = 0; k < 10; ++k) ++tenths[uniform(0, n - 1)];
    out << "disjoint(";
    for (int i = 0; i < n; ++i) {
      hyps[s].push_back("h" + std::to_string(s) + "_" + std::to_string(i));
      out << (i ? ", " : "") << hyps[s].back() << ": " << (tenths[i] == 10 ? "1.0" : "0." + std::to_string(tenths[i]));
    }
    out << ").\n";
  }

  const int atoms = uniform(1, shape.max_regular_atoms);
  auto regular = [&] { return "r" + std::to_string(uniform(0, atoms - 1)); };
  const int clauses = uniform(1, shape.max_clauses);
  for (int c = 0; c < clauses; ++c) {
    std::set<std::string> head;
    const int k = uniform(1, 3);
    for (int i = 0; i < k; ++i) head.insert(regular());
    std::vector<std::string> body;
    const int regular_body = uniform(0, 2);
    for (int i = 0; i < regular_body; ++i) {
      std::string a = regular();
      if (!head.count(a)) body.push_back(a);
    }
    if (statements > 0) {
      const int hyp_body = uniform(0, 2);
      for (int i = 0; i < hyp_body; ++i) {
        const auto& st = hyps[uniform(0, statements - 1)];
        body.push_back(st[uniform(0, static_cast<int>(st.size()) - 1)]);
      }
    }
    bool first = true;
    for (const auto& h : head) {
      out << (first ? "" : " ; ") << h;
      first = false;
    }
    for (std::size_t i = 0; i < body.size(); ++i) out << (i ? ", " : " :- ") << body[i];
    out << ".\n";
  }
  return out.str();
}

Formula RandomFormula(std::mt19937& rng, const GroundProgram& gp, int depth) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const auto& base = gp.regular_base();
  if (depth <= 0 || uniform(0, 3) == 0) {
    if (base.empty() || uniform(0, 9) == 0) return uniform(0, 1) ? Formula::True() : Formula::False();
    return Formula::Of(gp.atom(base[uniform(0, static_cast<int>(base.size()) - 1)]));
  }
  switch (uniform(0, 2)) {
    case 0: return Formula::Not(RandomFormula(rng, gp, depth - 1));
    case 1: return Formula::And(RandomFormula(rng, gp, depth - 1), RandomFormula(rng, gp, depth - 1));
    default: return Formula::Or(RandomFormula(rng, gp, depth - 1), RandomFormula(rng, gp, depth - 1));
  }
}

namespace {

bool Holds(const std::vector<bool>& truth, const GroundProgram& gp) {
  for (const auto& c : gp.clauses()) {
    bool body = true;
    for (AtomId a : c.body) body = body && truth[a];
    if (!body) continue;
    bool head = false;
    for (AtomId a : c.head) head = head || truth[a];
    if (!head) return false;
  }
  for (const auto& disj : gp.ic().exhaustive) {
    bool any = false;
    for (AtomId a : disj) any = any || truth[a];
    if (!any) return false;
  }
  for (const auto& [a, b] : gp.ic().denials)
    if (truth[a] && truth[b]) return false;
  return true;
}

}  // namespace

std::vector<Interpretation> NaiveMinimalModels(const GroundProgram& gp, const HypothesisSet& h) {
  const std::size_t n = gp.atoms().size();
  if (n > 22) throw std::length_error("naive oracle limited to 22 atoms");
  std::vector<std::vector<AtomId>> models;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    std::vector<bool> truth(n);
    for (std::size_t i = 0; i < n; ++i) truth[i] = (s >> i) & 1;
    bool has_h = true;
    for (AtomId a : h) has_h = has_h && truth[a];
    if (!has_h || !Holds(truth, gp)) continue;
    std::vector<AtomId> m;
    for (std::size_t i = 0; i < n; ++i)
      if (truth[i]) m.push_back(static_cast<AtomId>(i));
    models.push_back(std::move(m));
  }
  std::vector<Interpretation> out;
  for (const auto& m : models) {
    bool minimal = true;
    for (const auto& o : models) {
      if (o.size() < m.size() && std::includes(m.begin(), m.end(), o.begin(), o.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.emplace_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double NaiveProbability(const GroundProgram& gp, const Formula& f) {
  BoundFormula bound(f, gp);
  // Odometer over statements.
  const auto& sts = gp.statements();
  std::vector<std::size_t> pick(sts.size(), 0);
  double total = 0.0;
  for (;;) {
    std::vector<AtomId> base;
    double weight = 1.0;
    for (std::size_t s = 0; s < sts.size(); ++s) {
      base.push_back(sts[s].hypotheses[pick[s]]);
      weight *= sts[s].probabilities[pick[s]];
    }
    auto models = NaiveMinimalModels(gp, HypothesisSet(base));
    if (!models.empty()) {
      std::size_t hits = 0;
      for (const auto& m : models) hits += bound.Eval(m) ? 1 : 0;
      total += weight * static_cast<double>(hits) / static_cast<double>(models.size());
    }
    std::size_t k = sts.size();
    while (k > 0 && ++pick[k - 1] == sts[k - 1].hypotheses.size()) pick[--k] = 0;
    if (k == 0) break;
  }
  return total;
}

std::string FixturePath(const std::string& name) {
  return std::string(PDLP_FIXTURE_DIR) + "/" + name;
}

namespace {

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string ReadFixture(const std::string& name) { return Slurp(FixturePath(name)); }

std::string ReadGolden(const std::string& name) {
  return Slurp(std::string(PDLP_GOLDEN_DIR) + "/" + name);
}

}  // namespace pdlp::testing
