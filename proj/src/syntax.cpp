#include "doxa/syntax.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

#include "doxa/error.hpp"

namespace doxa {

namespace {

enum class Tok { Not, And, Or, Arrow, Iff, LParen, RParen, KOpen, BOpen, RBracket, Ident, False, True, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    switch (c) {
      case '~': out.push_back({Tok::Not, at, "~"}); ++i; continue;
      case '&': out.push_back({Tok::And, at, "&"}); ++i; continue;
      case '|': out.push_back({Tok::Or, at, "|"}); ++i; continue;
      case '(': out.push_back({Tok::LParen, at, "("}); ++i; continue;
      case ')': out.push_back({Tok::RParen, at, ")"}); ++i; continue;
      case ']': out.push_back({Tok::RBracket, at, "]"}); ++i; continue;
      case '-':
        if (s.substr(i, 2) == "->") {
          out.push_back({Tok::Arrow, at, "->"});
          i += 2;
          continue;
        }
        break;
      case '<':
        if (s.substr(i, 3) == "<->") {
          out.push_back({Tok::Iff, at, "<->"});
          i += 3;
          continue;
        }
        break;
      default:
        break;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string word(s.substr(i, j - i));
      if ((word == "K" || word == "B") && j < s.size() && s[j] == '[') {
        out.push_back({word == "K" ? Tok::KOpen : Tok::BOpen, at, word + "["});
        i = j + 1;
      } else if (word == "false") {
        out.push_back({Tok::False, at, word});
        i = j;
      } else if (word == "true") {
        out.push_back({Tok::True, at, word});
        i = j;
      } else {
        out.push_back({Tok::Ident, at, std::move(word)});
        i = j;
      }
      continue;
    }
    std::size_t len = 1;
    if (c == '-' || c == '<' || c == '=' || c == '!') {
      while (i + len < s.size() && std::string_view("-<>=!").find(s[i + len]) != std::string_view::npos) ++len;
    }
    throw ParseError("unknown operator '" + std::string(s.substr(i, len)) + "'", at);
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

const std::vector<std::string> kFormulaStart = {"~", "K[", "B[", "false", "true", "identifier", "("};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse() {
    Formula f = iff();
    const Token& t = peek();
    if (t.kind == Tok::RParen) throw ParseError("unbalanced parenthesis: unexpected ')'", t.offset);
    if (t.kind == Tok::RBracket) throw ParseError("unbalanced bracket: unexpected ']'", t.offset);
    if (t.kind != Tok::End)
      throw ParseError("unexpected '" + t.text + "'", t.offset, {"&", "|", "->", "<->", "end of input"});
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  static bool starts_formula(Tok k) {
    switch (k) {
      case Tok::Not:
      case Tok::KOpen:
      case Tok::BOpen:
      case Tok::False:
      case Tok::True:
      case Tok::Ident:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  Formula iff() {
    Formula f = impl();
    while (accept(Tok::Iff)) f = Formula::equivalence(f, impl());
    return f;
  }

  Formula impl() {
    Formula f = disj();
    if (accept(Tok::Arrow)) return Formula::implies(f, impl());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Or)) f = Formula::disjunction(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    const Token t = peek();
    if (t.kind == Tok::Not) {
      ++pos_;
      require_operand("expected formula after '~'");
      return Formula::negation(unary());
    }
    if (t.kind == Tok::KOpen || t.kind == Tok::BOpen) {
      ++pos_;
      const Token agent = next();
      if (agent.kind != Tok::Ident)
        throw ParseError("expected agent identifier", agent.offset, {"identifier"});
      if (!accept(Tok::RBracket))
        throw ParseError("unbalanced bracket: expected ']'", peek().offset, {"]"});
      require_operand("expected formula after modality");
      Formula body = unary();
      return t.kind == Tok::KOpen ? Formula::knows(agent.text, std::move(body))
                                  : Formula::believes(agent.text, std::move(body));
    }
    return atomexp();
  }

  Formula atomexp() {
    const Token t = next();
    switch (t.kind) {
      case Tok::False:
        return Formula::falsum();
      case Tok::True:
        return Formula::verum();
      case Tok::Ident:
        return Formula::atom(t.text);
      case Tok::LParen: {
        require_operand("expected formula after '('");
        Formula f = iff();
        if (!accept(Tok::RParen))
          throw ParseError("unbalanced parenthesis: expected ')'", peek().offset, {")"});
        return f;
      }
      case Tok::RParen:
        throw ParseError("unbalanced parenthesis: unexpected ')'", t.offset, kFormulaStart);
      default:
        throw ParseError(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'",
                         t.offset, kFormulaStart);
    }
  }

  void require_operand(const char* message) {
    if (!starts_formula(peek().kind)) throw ParseError(message, peek().offset, kFormulaStart);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Binding strength, loosest first.
enum Prec : int { kIff = 1, kImpl, kOr, kAnd, kUnary, kAtom };

struct Rendered {
  std::string text;
  int prec;
};

std::optional<Formula> negated(const Formula& f) {
  if (f.is_implies() && f.rhs().is_falsum()) return f.lhs();
  return std::nullopt;
}

std::optional<std::pair<Formula, Formula>> conjuncts(const Formula& f) {
  auto inner = negated(f);
  if (!inner || !inner->is_implies()) return std::nullopt;
  auto second = negated(inner->rhs());
  if (!second) return std::nullopt;
  return std::pair{inner->lhs(), *second};
}

std::optional<std::pair<Formula, Formula>> biconditional(const Formula& f) {
  auto parts = conjuncts(f);
  if (!parts) return std::nullopt;
  const auto& [l, r] = *parts;
  if (!l.is_implies() || !r.is_implies()) return std::nullopt;
  if (l.lhs() == r.rhs() && l.rhs() == r.lhs()) return std::pair{l.lhs(), l.rhs()};
  return std::nullopt;
}

Rendered render(const Formula& f);

std::string at_least(const Formula& f, int prec) {
  Rendered r = render(f);
  return r.prec < prec ? "(" + r.text + ")" : r.text;
}

Rendered render(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return {f.label(), kAtom};
    case FormulaKind::Falsum:
      return {"false", kAtom};
    case FormulaKind::Knows:
      return {"K[" + f.label() + "] " + at_least(f.body(), kUnary), kUnary};
    case FormulaKind::Believes:
      return {"B[" + f.label() + "] " + at_least(f.body(), kUnary), kUnary};
    case FormulaKind::Implies:
      break;
  }
  if (f.lhs().is_falsum() && f.rhs().is_falsum()) return {"true", kAtom};
  if (auto p = biconditional(f)) return {at_least(p->first, kIff) + " <-> " + at_least(p->second, kImpl), kIff};
  if (auto p = conjuncts(f)) return {at_least(p->first, kAnd) + " & " + at_least(p->second, kUnary), kAnd};
  if (auto inner = negated(f)) return {"~" + at_least(*inner, kUnary), kUnary};
  if (auto inner = negated(f.lhs()); inner && !inner->is_falsum() && !conjuncts(f.lhs()))
    return {at_least(*inner, kOr) + " | " + at_least(f.rhs(), kAnd), kOr};
  return {at_least(f.lhs(), kOr) + " -> " + at_least(f.rhs(), kImpl), kImpl};
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::string render_formula(const Formula& f) { return render(f).text; }

}  // namespace doxa
