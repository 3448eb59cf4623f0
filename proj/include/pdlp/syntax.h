// Surface syntax of probabilistic disjunctive logic programs: terms, atoms,
// clauses, disjoint declarations and ground query formulas.

#ifndef PDLP_SYNTAX_H_
#define PDLP_SYNTAX_H_

#include <compare>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdlp {

struct SourcePos {
  int line = 1;
  int column = 1;
};

// Base for every error the engine reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourcePos pos);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct Term {
  enum class Kind { kConstant, kVariable };
  Kind kind = Kind::kConstant;
  std::string name;

  bool is_variable() const { return kind == Kind::kVariable; }
  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  std::string str() const;
  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

Atom MakeAtom(std::string predicate, std::vector<std::string> constants = {});

struct Clause {
  std::vector<Atom> head;  // disjuncts, never empty
  std::vector<Atom> body;
  SourcePos pos;

  std::string str() const;
  bool operator==(const Clause& o) const {
    return head == o.head && body == o.body;
  }
};

struct DisjointEntry {
  Atom atom;
  double probability = 0.0;
  bool operator==(const DisjointEntry&) const = default;
};

struct DisjointDecl {
  std::vector<DisjointEntry> entries;  // at least two
  SourcePos pos;

  std::string str() const;
  bool operator==(const DisjointDecl& o) const { return entries == o.entries; }
};

struct Program {
  std::vector<Clause> clauses;
  std::vector<DisjointDecl> declarations;

  std::string str() const;
  bool operator==(const Program&) const = default;
};

// Ground query formula. Immutable; subterms are shared.
class Formula {
 public:
  enum class Kind { kTrue, kFalse, kAtom, kNot, kAnd, kOr };

  static Formula True();
  static Formula False();
  static Formula Of(Atom atom);
  static Formula Not(Formula f);
  static Formula And(Formula l, Formula r);
  static Formula Or(Formula l, Formula r);
  // Folds with the neutral element for empty input.
  static Formula AndAll(const std::vector<Formula>& fs);
  static Formula OrAll(const std::vector<Formula>& fs);

  Kind kind() const { return node_->kind; }
  const Atom& atom() const { return node_->atom; }
  const Formula& lhs() const { return node_->children[0]; }
  const Formula& rhs() const { return node_->children[1]; }
  const Formula& operand() const { return node_->children[0]; }

  // Distinct atoms in order of first occurrence.
  std::vector<Atom> atoms() const;
  std::string str() const;

  bool operator==(const Formula& o) const;

 private:
  struct Node {
    Kind kind;
    Atom atom;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

Program ParseProgram(std::string_view text);
Formula ParseFormula(std::string_view text);

struct Violation {
  enum class Kind {
    kHypothesisInHead,
    kOverlappingDeclarations,
    kProbabilitySum,
    kProbabilityRange,
    kUndeclaredHypothesis,
  };
  Kind kind;
  SourcePos pos;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

ValidationReport Validate(const Program& program);

const char* ToString(Violation::Kind kind);

// Probability comparisons throughout the engine use this tolerance.
inline constexpr double kProbabilityTolerance = 1e-9;

}  // namespace pdlp

#endif  // PDLP_SYNTAX_H_
