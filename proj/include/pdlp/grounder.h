// Finite grounding of a program over its Herbrand constants.

#ifndef PDLP_GROUNDER_H_
#define PDLP_GROUNDER_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdlp/syntax.h"

namespace pdlp {

using AtomId = std::uint32_t;

class GroundingError : public Error {
 public:
  using Error::Error;
};

struct GroundClause {
  std::vector<AtomId> head;  // sorted, unique
  std::vector<AtomId> body;  // sorted, unique
  auto operator<=>(const GroundClause&) const = default;
  bool operator==(const GroundClause&) const = default;
};

// One ground instance of a disjoint declaration: a random variable whose
// states are `hypotheses`.
struct GroundStatement {
  std::size_t id = 0;
  std::vector<AtomId> hypotheses;  // declaration order
  std::vector<double> probabilities;
};

struct IntegrityConstraints {
  std::vector<std::vector<AtomId>> exhaustive;     // h1 v ... v hn
  std::vector<std::pair<AtomId, AtomId>> denials;  // <- hi, hj
};

class GroundProgram {
 public:
  static constexpr int kRegular = -1;

  // Atom ids follow the lexicographic order of atoms.
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& atom(AtomId id) const { return atoms_[id]; }
  std::optional<AtomId> find(const Atom& a) const;

  const std::vector<GroundClause>& clauses() const { return clauses_; }
  const std::vector<GroundStatement>& statements() const { return statements_; }
  const IntegrityConstraints& ic() const { return ic_; }
  const std::vector<AtomId>& regular_base() const { return regular_base_; }
  const std::vector<AtomId>& hypotheses() const { return hypotheses_; }

  bool is_hypothesis(AtomId id) const { return statement_of_[id] != kRegular; }
  // Statement index of a hypothesis, kRegular otherwise.
  int statement_of(AtomId id) const { return statement_of_[id]; }
  double probability(AtomId id) const { return probability_[id]; }

  // One ground clause per line in input syntax, declarations first.
  std::string str() const;

 private:
  friend GroundProgram Ground(const Program& program);

  std::vector<Atom> atoms_;
  std::vector<GroundClause> clauses_;
  std::vector<GroundStatement> statements_;
  IntegrityConstraints ic_;
  std::vector<AtomId> regular_base_;
  std::vector<AtomId> hypotheses_;
  std::vector<int> statement_of_;
  std::vector<double> probability_;
};

std::set<std::string> HerbrandConstants(const Program& program);

// Every instance of `clause` under substitutions of `constants` for its
// variables, before any deduplication.
std::vector<Clause> Instantiate(const Clause& clause, const std::set<std::string>& constants);

GroundProgram Ground(const Program& program);

}  // namespace pdlp

#endif  // PDLP_GROUNDER_H_
