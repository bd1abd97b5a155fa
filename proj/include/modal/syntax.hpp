#pragma once

// Canonical text form of terms and statements.
//
//   statement := formula ('=' | '<=') formula
//   formula   := disj ('->' formula)?            right-associative
//   disj      := conj ('|' conj)*
//   conj      := unary ('&' unary)*
//   unary     := ('~' | '[]' | '<>') unary | atom
//   atom      := var | 'T' | 'F' | macro '(' integer ')' | '(' formula ')'
//   var       := [a-z][a-z0-9_]*
//
// The printer emits the fewest parentheses that reparse to the same term.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "modal/terms.hpp"

namespace modal {

enum class TokenKind {
  Ident,
  Integer,
  Top,
  Bot,
  Not,
  Box,
  Dia,
  And,
  Or,
  Imp,
  Eq,
  Leq,
  LParen,
  RParen,
  End,
};

struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Token {
  TokenKind kind;
  std::string text;
  Span span;
};

/// Throws SyntaxError on characters outside the grammar.
std::vector<Token> tokenize(std::string_view text);

/// Macro name -> builder taking the integer argument.
using MacroTable = std::map<std::string, std::function<Term(TermStore&, std::uint64_t)>, std::less<>>;

/// tpow(k): the chain term iterated k times in x. spow(m): s_m.
MacroTable default_macros();

inline constexpr std::uint64_t kMaxMacroArgument = 100000;

Term parse_formula(TermStore& store, std::string_view text, const MacroTable& macros = {});
Statement parse_statement(TermStore& store, std::string_view text, const MacroTable& macros = {});

/// Textual expansion is refused (CapExceeded) past this many tree nodes.
inline constexpr std::uint64_t kDefaultPrintCap = 10000;

std::string to_string(const TermStore& store, Term t, std::uint64_t cap = kDefaultPrintCap);
std::string to_string(const TermStore& store, const Statement& s,
                      std::uint64_t cap = kDefaultPrintCap);

}  // namespace modal
