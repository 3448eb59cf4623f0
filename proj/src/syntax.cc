#include "pdlp/syntax.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace pdlp {

ParseError::ParseError(const std::string& what, SourcePos pos)
    : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
            ": " + what),
      pos_(pos) {}

bool Atom::is_ground() const {
  return std::none_of(args.begin(), args.end(),
                      [](const Term& t) { return t.is_variable(); });
}

std::string Atom::str() const {
  std::string s = predicate;
  if (!args.empty()) {
    s += '(';
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) s += ',';
      s += args[i].name;
    }
    s += ')';
  }
  return s;
}

Atom MakeAtom(std::string predicate, std::vector<std::string> constants) {
  Atom a{std::move(predicate), {}};
  for (auto& c : constants) a.args.push_back({Term::Kind::kConstant, std::move(c)});
  return a;
}

std::string Clause::str() const {
  std::string s;
  for (size_t i = 0; i < head.size(); ++i) {
    if (i) s += " ; ";
    s += head[i].str();
  }
  if (!body.empty()) {
    s += " :- ";
    for (size_t i = 0; i < body.size(); ++i) {
      if (i) s += ", ";
      s += body[i].str();
    }
  }
  return s + ".";
}

namespace {

std::string FormatProbability(double p) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p);
  return std::string(buf, end);
}

}  // namespace

std::string DisjointDecl::str() const {
  std::string s = "disjoint(";
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ", ";
    s += entries[i].atom.str() + ": " + FormatProbability(entries[i].probability);
  }
  return s + ").";
}

std::string Program::str() const {
  std::string s;
  for (const auto& d : declarations) s += d.str() + "\n";
  for (const auto& c : clauses) s += c.str() + "\n";
  return s;
}

// {{{ Formula

Formula Formula::True() {
  return Formula(std::make_shared<Node>(Node{Kind::kTrue, {}, {}}));
}
Formula Formula::False() {
  return Formula(std::make_shared<Node>(Node{Kind::kFalse, {}, {}}));
}
Formula Formula::Of(Atom atom) {
  return Formula(std::make_shared<Node>(Node{Kind::kAtom, std::move(atom), {}}));
}
Formula Formula::Not(Formula f) {
  return Formula(std::make_shared<Node>(Node{Kind::kNot, {}, {std::move(f)}}));
}
Formula Formula::And(Formula l, Formula r) {
  return Formula(std::make_shared<Node>(
      Node{Kind::kAnd, {}, {std::move(l), std::move(r)}}));
}
Formula Formula::Or(Formula l, Formula r) {
  return Formula(std::make_shared<Node>(
      Node{Kind::kOr, {}, {std::move(l), std::move(r)}}));
}

Formula Formula::AndAll(const std::vector<Formula>& fs) {
  if (fs.empty()) return True();
  Formula acc = fs.front();
  for (size_t i = 1; i < fs.size(); ++i) acc = And(acc, fs[i]);
  return acc;
}

Formula Formula::OrAll(const std::vector<Formula>& fs) {
  if (fs.empty()) return False();
  Formula acc = fs.front();
  for (size_t i = 1; i < fs.size(); ++i) acc = Or(acc, fs[i]);
  return acc;
}

std::vector<Atom> Formula::atoms() const {
  std::vector<Atom> out;
  std::vector<const Formula*> stack{this};
  // Preorder, left to right.
  while (!stack.empty()) {
    const Formula* f = stack.back();
    stack.pop_back();
    if (f->kind() == Kind::kAtom) {
      if (std::find(out.begin(), out.end(), f->atom()) == out.end())
        out.push_back(f->atom());
    }
    for (auto it = f->node_->children.rbegin(); it != f->node_->children.rend(); ++it)
      stack.push_back(&*it);
  }
  return out;
}

std::string Formula::str() const {
  switch (kind()) {
    case Kind::kTrue: return "TRUE";
    case Kind::kFalse: return "FALSE";
    case Kind::kAtom: return atom().str();
    case Kind::kNot: return "not " + (operand().kind() == Kind::kAtom ||
                                              operand().kind() == Kind::kNot
                                          ? operand().str()
                                          : "(" + operand().str() + ")");
    case Kind::kAnd: return "(" + lhs().str() + " & " + rhs().str() + ")";
    case Kind::kOr: return "(" + lhs().str() + " | " + rhs().str() + ")";
  }
  return {};
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  if (kind() == Kind::kAtom) return atom() == o.atom();
  return node_->children == o.node_->children;
}

// }}}

// {{{ Lexer

namespace {

enum class Tok {
  kIdent,     // lowercase-initial
  kVariable,  // uppercase- or underscore-initial
  kNumber,
  kLParen,
  kRParen,
  kComma,
  kSemicolon,
  kDot,
  kColon,
  kImplies,  // :-
  kBar,
  kAmp,
  kTilde,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    for (;;) {
      SkipSpace();
      SourcePos start = pos_;
      if (i_ >= src_.size()) {
        out.push_back({Tok::kEnd, "", start});
        return out;
      }
      char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t b = i_;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
                                    src_[i_] == '_'))
          Advance();
        std::string text(src_.substr(b, i_ - b));
        bool var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
        out.push_back({var ? Tok::kVariable : Tok::kIdent, std::move(text), start});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && i_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
        size_t b = i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) Advance();
        if (i_ + 1 < src_.size() && src_[i_] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[i_ + 1]))) {
          Advance();
          while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) Advance();
        } else if (i_ < src_.size() && src_[i_] == '.' && b == i_) {
          Advance();
          while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) Advance();
        }
        out.push_back({Tok::kNumber, std::string(src_.substr(b, i_ - b)), start});
      } else {
        Advance();
        switch (c) {
          case '(': out.push_back({Tok::kLParen, "(", start}); break;
          case ')': out.push_back({Tok::kRParen, ")", start}); break;
          case ',': out.push_back({Tok::kComma, ",", start}); break;
          case ';': out.push_back({Tok::kSemicolon, ";", start}); break;
          case '.': out.push_back({Tok::kDot, ".", start}); break;
          case '|': out.push_back({Tok::kBar, "|", start}); break;
          case '&': out.push_back({Tok::kAmp, "&", start}); break;
          case '~': out.push_back({Tok::kTilde, "~", start}); break;
          case ':':
            if (i_ < src_.size() && src_[i_] == '-') {
              Advance();
              out.push_back({Tok::kImplies, ":-", start});
            } else {
              out.push_back({Tok::kColon, ":", start});
            }
            break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
      }
    }
  }

 private:
  void Advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void SkipSpace() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '%') {
        while (i_ < src_.size() && src_[i_] != '\n') Advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  size_t i_ = 0;
  SourcePos pos_;
};

const char* Describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kVariable: return "variable";
    case Tok::kNumber: return "number";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kComma: return "','";
    case Tok::kSemicolon: return "';'";
    case Tok::kDot: return "'.'";
    case Tok::kColon: return "':'";
    case Tok::kImplies: return "':-'";
    case Tok::kBar: return "'|'";
    case Tok::kAmp: return "'&'";
    case Tok::kTilde: return "'~'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

// }}}

// {{{ Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).Run()) {}

  Program ParseProgram() {
    Program p;
    while (Peek().kind != Tok::kEnd) {
      if (Peek().kind == Tok::kIdent && Peek().text == "disjoint" &&
          Peek(1).kind == Tok::kLParen) {
        p.declarations.push_back(ParseDeclaration());
      } else {
        p.clauses.push_back(ParseClause());
      }
    }
    return p;
  }

  Formula ParseFormulaText() {
    Formula f = ParseOr();
    Expect(Tok::kEnd);
    return f;
  }

 private:
  const Token& Peek(size_t k = 0) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }

  Token Expect(Tok t) {
    if (Peek().kind != t)
      throw ParseError(std::string("expected ") + Describe(t) + ", found " +
                           Describe(Peek().kind),
                       Peek().pos);
    return toks_[i_++];
  }

  bool Accept(Tok t) {
    if (Peek().kind != t) return false;
    ++i_;
    return true;
  }

  Atom ParseAtom() {
    Token name = Expect(Tok::kIdent);
    Atom a{name.text, {}};
    if (Accept(Tok::kLParen)) {
      do {
        const Token& t = Peek();
        if (t.kind == Tok::kIdent) {
          a.args.push_back({Term::Kind::kConstant, t.text});
        } else if (t.kind == Tok::kVariable) {
          a.args.push_back({Term::Kind::kVariable, t.text});
        } else {
          throw ParseError(std::string("expected term, found ") + Describe(t.kind), t.pos);
        }
        ++i_;
      } while (Accept(Tok::kComma));
      Expect(Tok::kRParen);
    }
    return a;
  }

  Clause ParseClause() {
    Clause c;
    c.pos = Peek().pos;
    do {
      Atom a = ParseAtom();
      if (std::find(c.head.begin(), c.head.end(), a) == c.head.end())
        c.head.push_back(std::move(a));
    } while (Accept(Tok::kSemicolon));
    if (Accept(Tok::kImplies)) {
      do c.body.push_back(ParseAtom());
      while (Accept(Tok::kComma));
    }
    Expect(Tok::kDot);
    return c;
  }

  DisjointDecl ParseDeclaration() {
    DisjointDecl d;
    d.pos = Peek().pos;
    Expect(Tok::kIdent);
    Expect(Tok::kLParen);
    do {
      SourcePos at = Peek().pos;
      Atom a = ParseAtom();
      Expect(Tok::kColon);
      Token num = Expect(Tok::kNumber);
      double p = 0.0;
      auto [ptr, ec] = std::from_chars(num.text.data(), num.text.data() + num.text.size(), p);
      if (ec != std::errc() || ptr != num.text.data() + num.text.size())
        throw ParseError("malformed probability '" + num.text + "'", num.pos);
      for (const auto& e : d.entries)
        if (e.atom == a)
          throw ParseError("duplicate hypothesis '" + a.str() + "' in declaration", at);
      d.entries.push_back({std::move(a), p});
    } while (Accept(Tok::kComma));
    Expect(Tok::kRParen);
    Expect(Tok::kDot);
    if (d.entries.size() < 2)
      throw ParseError("a disjoint declaration needs at least two hypotheses", d.pos);
    return d;
  }

  Formula ParseOr() {
    Formula f = ParseAnd();
    while (Accept(Tok::kBar)) f = Formula::Or(f, ParseAnd());
    return f;
  }

  Formula ParseAnd() {
    Formula f = ParseUnary();
    while (Peek().kind == Tok::kAmp || Peek().kind == Tok::kComma) {
      ++i_;
      f = Formula::And(f, ParseUnary());
    }
    return f;
  }

  Formula ParseUnary() {
    if (Accept(Tok::kTilde)) return Formula::Not(ParseUnary());
    if (Peek().kind == Tok::kIdent && Peek().text == "not") {
      Tok next = Peek(1).kind;
      if (next == Tok::kIdent || next == Tok::kVariable || next == Tok::kLParen ||
          next == Tok::kTilde) {
        ++i_;
        return Formula::Not(ParseUnary());
      }
    }
    return ParsePrimary();
  }

  Formula ParsePrimary() {
    const Token& t = Peek();
    if (Accept(Tok::kLParen)) {
      Formula f = ParseOr();
      Expect(Tok::kRParen);
      return f;
    }
    if (t.kind == Tok::kVariable) {
      if (t.text == "TRUE") { ++i_; return Formula::True(); }
      if (t.text == "FALSE") { ++i_; return Formula::False(); }
      throw ParseError("query formulas must be ground (found variable " + t.text + ")",
                       t.pos);
    }
    if (t.kind == Tok::kIdent && (t.text == "true" || t.text == "false") &&
        Peek(1).kind != Tok::kLParen) {
      ++i_;
      return t.text == "true" ? Formula::True() : Formula::False();
    }
    SourcePos at = t.pos;
    Atom a = ParseAtom();
    if (!a.is_ground())
      throw ParseError("query formulas must be ground: " + a.str(), at);
    return Formula::Of(std::move(a));
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

// }}}

}  // namespace

Program ParseProgram(std::string_view text) { return Parser(text).ParseProgram(); }

Formula ParseFormula(std::string_view text) { return Parser(text).ParseFormulaText(); }

// {{{ Validation

namespace {

using Subst = std::map<std::string, Term>;

Term Walk(Term t, const Subst& s) {
  while (t.is_variable()) {
    auto it = s.find(t.name);
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

// Variables of `b` are renamed apart from those of `a`.
bool Unifiable(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
  Subst s;
  for (size_t i = 0; i < a.args.size(); ++i) {
    Term x = a.args[i], y = b.args[i];
    if (x.is_variable()) x.name = "L" + x.name;
    if (y.is_variable()) y.name = "R" + y.name;
    x = Walk(x, s);
    y = Walk(y, s);
    if (x == y) continue;
    if (x.is_variable()) {
      s[x.name] = y;
    } else if (y.is_variable()) {
      s[y.name] = x;
    } else {
      return false;
    }
  }
  return true;
}

void CollectVariables(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.args)
    if (t.is_variable()) out.insert(t.name);
}

}  // namespace

const char* ToString(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kHypothesisInHead: return "hypothesis-in-head";
    case Violation::Kind::kOverlappingDeclarations: return "overlapping-declarations";
    case Violation::Kind::kProbabilitySum: return "probability-sum";
    case Violation::Kind::kProbabilityRange: return "probability-range";
    case Violation::Kind::kUndeclaredHypothesis: return "undeclared-hypothesis";
  }
  return "?";
}

ValidationReport Validate(const Program& program) {
  ValidationReport report;
  const auto& decls = program.declarations;

  std::set<std::string> constants;
  auto add_constants = [&](const Atom& a) {
    for (const auto& t : a.args)
      if (!t.is_variable()) constants.insert(t.name);
  };
  for (const auto& c : program.clauses) {
    for (const auto& a : c.head) add_constants(a);
    for (const auto& a : c.body) add_constants(a);
  }
  for (const auto& d : decls)
    for (const auto& e : d.entries) add_constants(e.atom);

  for (const auto& c : program.clauses) {
    for (const auto& h : c.head) {
      for (const auto& d : decls) {
        for (const auto& e : d.entries) {
          if (Unifiable(h, e.atom)) {
            report.push_back({Violation::Kind::kHypothesisInHead, c.pos,
                              "hypothesis " + e.atom.str() + " appears in the head of " +
                                  c.str()});
          }
        }
      }
    }
    for (const auto& b : c.body) {
      bool same_signature = false, declared = false;
      for (const auto& d : decls) {
        for (const auto& e : d.entries) {
          if (e.atom.predicate == b.predicate && e.atom.args.size() == b.args.size()) {
            same_signature = true;
            declared = declared || Unifiable(b, e.atom);
          }
        }
      }
      if (same_signature && !declared) {
        report.push_back({Violation::Kind::kUndeclaredHypothesis, c.pos,
                          "body atom " + b.str() +
                              " uses a hypothesis predicate but matches no declaration"});
      }
    }
  }

  for (size_t i = 0; i < decls.size(); ++i) {
    const auto& d = decls[i];
    double sum = 0.0;
    bool range_ok = true;
    for (const auto& e : d.entries) {
      sum += e.probability;
      if (e.probability < 0.0 || e.probability > 1.0 + kProbabilityTolerance) range_ok = false;
    }
    if (!range_ok) {
      report.push_back({Violation::Kind::kProbabilityRange, d.pos,
                        "probabilities must lie in [0,1]: " + d.str()});
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
      std::ostringstream msg;
      msg << "probabilities sum to " << sum << ", not 1: " << d.str();
      report.push_back({Violation::Kind::kProbabilitySum, d.pos, msg.str()});
    }

    // Distinct ground instances of one declaration must not share hypotheses.
    std::set<std::string> vars;
    for (const auto& e : d.entries) CollectVariables(e.atom, vars);
    bool self_overlap = false;
    for (size_t a = 0; a < d.entries.size() && !self_overlap; ++a) {
      for (size_t b = a + 1; b < d.entries.size(); ++b) {
        if (Unifiable(d.entries[a].atom, d.entries[b].atom)) {
          self_overlap = true;
          break;
        }
      }
      std::set<std::string> own;
      CollectVariables(d.entries[a].atom, own);
      if (own.size() < vars.size() && constants.size() > 1) self_overlap = true;
    }
    if (self_overlap) {
      report.push_back({Violation::Kind::kOverlappingDeclarations, d.pos,
                        "ground instances of " + d.str() + " share hypotheses"});
    }

    for (size_t j = i + 1; j < decls.size(); ++j) {
      bool overlap = false;
      for (const auto& e : d.entries)
        for (const auto& f : decls[j].entries) overlap = overlap || Unifiable(e.atom, f.atom);
      if (overlap) {
        report.push_back({Violation::Kind::kOverlappingDeclarations, decls[j].pos,
                          d.str() + " and " + decls[j].str() + " share hypotheses"});
      }
    }
  }
  return report;
}

// }}}

}  // namespace pdlp
