#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modal {

enum class Op : std::uint8_t { Var, Top, Bot, Not, And, Or, Imp, Box, Dia };

constexpr int arity(Op op) {
  switch (op) {
    case Op::Var:
    case Op::Top:
    case Op::Bot:
      return 0;
    case Op::Not:
    case Op::Box:
    case Op::Dia:
      return 1;
    default:
      return 2;
  }
}

/// Handle to a hash-consed node. Two handles from the same store are equal
/// iff the terms are structurally equal.
class Term {
 public:
  static constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();

  constexpr Term() = default;

  constexpr std::uint32_t id() const { return id_; }
  constexpr bool valid() const { return id_ != kInvalid; }

  friend constexpr bool operator==(Term, Term) = default;
  friend constexpr auto operator<=>(Term, Term) = default;

 private:
  friend class TermStore;
  constexpr explicit Term(std::uint32_t id) : id_(id) {}

  std::uint32_t id_ = kInvalid;
};

/// Owns all nodes of one session. Children always have smaller ids than their
/// parents, so id order is a topological order of every DAG in the store.
///
/// Insertion is not synchronized: a store belongs to one worker. Terms from
/// different stores must not be mixed.
class TermStore {
 public:
  TermStore();

  Term var(std::string_view name);
  Term top() const { return top_; }
  Term bot() const { return bot_; }

  Term mk(Op op, Term lhs = {}, Term rhs = {});
  Term neg(Term a) { return mk(Op::Not, a); }
  Term conj(Term a, Term b) { return mk(Op::And, a, b); }
  Term disj(Term a, Term b) { return mk(Op::Or, a, b); }
  Term imp(Term a, Term b) { return mk(Op::Imp, a, b); }
  Term box(Term a) { return mk(Op::Box, a); }
  Term dia(Term a) { return mk(Op::Dia, a); }

  Op op(Term t) const { return nodes_[t.id()].op; }
  Term child(Term t) const { return Term(nodes_[t.id()].lhs); }
  Term left(Term t) const { return Term(nodes_[t.id()].lhs); }
  Term right(Term t) const { return Term(nodes_[t.id()].rhs); }

  /// Variable name; only meaningful for Op::Var.
  const std::string& name(Term t) const { return symbols_[nodes_[t.id()].lhs]; }
  bool is_var(Term t) const { return op(t) == Op::Var; }

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Op op;
    std::uint32_t lhs;  // symbol index for Var
    std::uint32_t rhs;
  };

  Term intern(Op op, std::uint32_t lhs, std::uint32_t rhs);

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::uint32_t> symbol_index_;
  Term top_;
  Term bot_;
};

struct TermHash {
  std::size_t operator()(Term t) const noexcept { return std::hash<std::uint32_t>{}(t.id()); }
};

using Substitution = std::unordered_map<Term, Term, TermHash>;

/// Simultaneous substitution of variables. Unmapped variables are kept.
Term substitute(TermStore& store, Term t, const Substitution& map);

/// t^0 = pivot, t^(k+1) = t[pivot := t^k]. Shared subterms keep the DAG
/// linear in k.
Term iterate(TermStore& store, Term t, Term pivot, std::size_t k);

bool occurs(const TermStore& store, Term var, Term t);

/// Distinct variables of t, sorted by name.
std::vector<Term> variables(const TermStore& store, Term t);
std::vector<Term> variables(const TermStore& store, const std::vector<Term>& terms);

/// Number of distinct nodes reachable from t.
std::size_t dag_size(const TermStore& store, Term t);

/// Number of nodes of the fully expanded tree, saturating at `limit`.
std::uint64_t tree_size(const TermStore& store, Term t,
                        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max());

// Named term families.

/// []( y | [](z | x) ) | x
Term chain_term(TermStore& store);
/// <>x | x
Term diamond_term(TermStore& store);
/// phi & []phi
Term boxdot(TermStore& store, Term phi);
/// boxdot applied n times to phi (default x).
Term boxdot_power(TermStore& store, std::size_t n);
Term boxdot_power(TermStore& store, std::size_t n, Term phi);
/// boxdot^n x -> boxdot^(n+1) x
Term weak_transitivity_axiom(TermStore& store, std::size_t n);
/// s_0 = F, s_(m+1) = []( y | [](z | s_m) )
Term s_term(TermStore& store, std::size_t m);
/// pivot | t
Term plus_closure(TermStore& store, Term t, Term pivot);

enum class Relation : std::uint8_t { Eq, Leq };

/// lhs = rhs, or lhs <= rhs read in the lattice order (lhs | rhs = rhs).
struct Statement {
  Relation kind = Relation::Eq;
  Term lhs;
  Term rhs;

  static Statement eq(Term l, Term r) { return {Relation::Eq, l, r}; }
  static Statement leq(Term l, Term r) { return {Relation::Leq, l, r}; }

  friend bool operator==(const Statement&, const Statement&) = default;
};

/// Rewrites s <= t as s | t = t; equations are returned unchanged.
Statement as_equation(TermStore& store, const Statement& s);

std::vector<Term> variables(const TermStore& store, const Statement& s);
std::vector<Term> variables(const TermStore& store, const std::vector<Statement>& statements);

}  // namespace modal

template <>
struct std::hash<modal::Term> : modal::TermHash {};
