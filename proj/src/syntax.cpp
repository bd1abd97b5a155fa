#include "modal/syntax.hpp"

#include <charconv>

#include "modal/error.hpp"

namespace modal {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string describe(const Token& t) {
  if (t.kind == TokenKind::End) return "end of input";
  return "'" + t.text + "'";
}

class Parser {
 public:
  Parser(TermStore& store, std::string_view text, const MacroTable& macros)
      : store_(store), tokens_(tokenize(text)), macros_(macros) {}

  Term formula_only() {
    Term t = formula();
    expect_end({"'->'", "'|'", "'&'"});
    return t;
  }

  Statement statement() {
    Term lhs = formula();
    Relation kind;
    if (peek().kind == TokenKind::Eq) {
      kind = Relation::Eq;
    } else if (peek().kind == TokenKind::Leq) {
      kind = Relation::Leq;
    } else {
      fail({"'='", "'<='", "'->'", "'|'", "'&'"});
    }
    ++pos_;
    Term rhs = formula();
    expect_end({"'->'", "'|'", "'&'"});
    return {kind, lhs, rhs};
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw SyntaxError(t.span.line, t.span.column, std::move(expected), describe(t));
  }

  void expect_end(std::vector<std::string> continuations) {
    if (peek().kind != TokenKind::End) {
      continuations.push_back("end of input");
      fail(std::move(continuations));
    }
  }

  Term formula() {
    Term lhs = disj();
    if (peek().kind == TokenKind::Imp) {
      ++pos_;
      return store_.imp(lhs, formula());
    }
    return lhs;
  }

  Term disj() {
    Term lhs = conj();
    while (peek().kind == TokenKind::Or) {
      ++pos_;
      lhs = store_.disj(lhs, conj());
    }
    return lhs;
  }

  Term conj() {
    Term lhs = unary();
    while (peek().kind == TokenKind::And) {
      ++pos_;
      lhs = store_.conj(lhs, unary());
    }
    return lhs;
  }

  Term unary() {
    // Prefix chains are iterative so "~~~...x" cannot exhaust the stack.
    std::vector<Op> prefix;
    for (;;) {
      TokenKind k = peek().kind;
      if (k == TokenKind::Not) {
        prefix.push_back(Op::Not);
      } else if (k == TokenKind::Box) {
        prefix.push_back(Op::Box);
      } else if (k == TokenKind::Dia) {
        prefix.push_back(Op::Dia);
      } else {
        break;
      }
      ++pos_;
    }
    Term t = atom();
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) t = store_.mk(*it, t);
    return t;
  }

  Term atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::Top:
        ++pos_;
        return store_.top();
      case TokenKind::Bot:
        ++pos_;
        return store_.bot();
      case TokenKind::LParen: {
        ++pos_;
        Term t = formula();
        if (peek().kind != TokenKind::RParen) fail({"')'", "'->'", "'|'", "'&'"});
        ++pos_;
        return t;
      }
      case TokenKind::Ident: {
        ++pos_;
        if (peek().kind == TokenKind::LParen) {
          auto it = macros_.find(tok.text);
          if (it == macros_.end()) {
            throw SyntaxError(tok.span.line, tok.span.column, {"a macro name"},
                              "unknown macro '" + tok.text + "'");
          }
          ++pos_;
          const Token& arg = peek();
          if (arg.kind != TokenKind::Integer) fail({"integer"});
          std::uint64_t value = 0;
          auto [end, ec] = std::from_chars(arg.text.data(), arg.text.data() + arg.text.size(), value);
          if (ec != std::errc() || value > kMaxMacroArgument) {
            throw SyntaxError(arg.span.line, arg.span.column,
                              {"integer <= " + std::to_string(kMaxMacroArgument)}, describe(arg));
          }
          ++pos_;
          if (peek().kind != TokenKind::RParen) fail({"')'"});
          ++pos_;
          return it->second(store_, value);
        }
        return store_.var(tok.text);
      }
      default:
        fail({"variable", "'T'", "'F'", "'~'", "'[]'", "'<>'", "'('"});
    }
  }

  TermStore& store_;
  std::vector<Token> tokens_;
  const MacroTable& macros_;
  std::size_t pos_ = 0;
};

enum Prec { kImp = 1, kOr = 2, kAnd = 3, kUnary = 4, kAtom = 5 };

Prec precedence(Op op) {
  switch (op) {
    case Op::Imp:
      return kImp;
    case Op::Or:
      return kOr;
    case Op::And:
      return kAnd;
    case Op::Not:
    case Op::Box:
    case Op::Dia:
      return kUnary;
    default:
      return kAtom;
  }
}

void print(const TermStore& store, Term t, int min_prec, std::string& out) {
  Op op = store.op(t);
  bool parens = precedence(op) < min_prec;
  if (parens) out += '(';
  switch (op) {
    case Op::Var:
      out += store.name(t);
      break;
    case Op::Top:
      out += 'T';
      break;
    case Op::Bot:
      out += 'F';
      break;
    case Op::Not:
      out += '~';
      print(store, store.child(t), kUnary, out);
      break;
    case Op::Box:
      out += "[]";
      print(store, store.child(t), kUnary, out);
      break;
    case Op::Dia:
      out += "<>";
      print(store, store.child(t), kUnary, out);
      break;
    case Op::And:
      print(store, store.left(t), kAnd, out);
      out += " & ";
      print(store, store.right(t), kAnd + 1, out);
      break;
    case Op::Or:
      print(store, store.left(t), kOr, out);
      out += " | ";
      print(store, store.right(t), kOr + 1, out);
      break;
    case Op::Imp:
      print(store, store.left(t), kImp + 1, out);
      out += " -> ";
      print(store, store.right(t), kImp, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto push = [&](TokenKind kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(i, len)), Span{i, len, line, col}});
    i += len;
    col += len;
  };
  while (i < text.size()) {
    char c = text[i];
    char next = i + 1 < text.size() ? text[i + 1] : '\0';
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
    } else if (is_lower(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && (is_lower(text[j]) || is_digit(text[j]) || text[j] == '_')) ++j;
      push(TokenKind::Ident, j - i);
    } else if (is_digit(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && is_digit(text[j])) ++j;
      push(TokenKind::Integer, j - i);
    } else if (c == 'T') {
      push(TokenKind::Top, 1);
    } else if (c == 'F') {
      push(TokenKind::Bot, 1);
    } else if (c == '~') {
      push(TokenKind::Not, 1);
    } else if (c == '&') {
      push(TokenKind::And, 1);
    } else if (c == '|') {
      push(TokenKind::Or, 1);
    } else if (c == '(') {
      push(TokenKind::LParen, 1);
    } else if (c == ')') {
      push(TokenKind::RParen, 1);
    } else if (c == '=') {
      push(TokenKind::Eq, 1);
    } else if (c == '[' && next == ']') {
      push(TokenKind::Box, 2);
    } else if (c == '<' && next == '>') {
      push(TokenKind::Dia, 2);
    } else if (c == '<' && next == '=') {
      push(TokenKind::Leq, 2);
    } else if (c == '-' && next == '>') {
      push(TokenKind::Imp, 2);
    } else {
      std::vector<std::string> expected;
      if (c == '[') expected = {"'[]'"};
      if (c == '<') expected = {"'<>'", "'<='"};
      if (c == '-') expected = {"'->'"};
      throw SyntaxError(line, col, std::move(expected), "'" + std::string(1, c) + "'");
    }
  }
  out.push_back({TokenKind::End, "", Span{i, 0, line, col}});
  return out;
}

MacroTable default_macros() {
  MacroTable m;
  m.emplace("tpow", [](TermStore& store, std::uint64_t k) {
    return iterate(store, chain_term(store), store.var("x"), k);
  });
  m.emplace("spow", [](TermStore& store, std::uint64_t k) { return s_term(store, k); });
  return m;
}

Term parse_formula(TermStore& store, std::string_view text, const MacroTable& macros) {
  return Parser(store, text, macros).formula_only();
}

Statement parse_statement(TermStore& store, std::string_view text, const MacroTable& macros) {
  return Parser(store, text, macros).statement();
}

std::string to_string(const TermStore& store, Term t, std::uint64_t cap) {
  if (tree_size(store, t, cap + 1) > cap) {
    throw CapExceeded("textual expansion exceeds " + std::to_string(cap) + " nodes");
  }
  std::string out;
  print(store, t, kImp, out);
  return out;
}

std::string to_string(const TermStore& store, const Statement& s, std::uint64_t cap) {
  return to_string(store, s.lhs, cap) + (s.kind == Relation::Eq ? " = " : " <= ") +
         to_string(store, s.rhs, cap);
}

}  // namespace modal
