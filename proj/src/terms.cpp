#include "modal/terms.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "modal/diagnostics.hpp"

namespace modal {

namespace {

constexpr std::uint32_t kKeyLimit = 1u << 30;

std::uint64_t node_key(Op op, std::uint32_t lhs, std::uint32_t rhs) {
  return (static_cast<std::uint64_t>(op) << 60) | (static_cast<std::uint64_t>(lhs) << 30) | rhs;
}

// Reachable nodes of the given roots in increasing id order.
std::vector<Term> reachable(const TermStore& store, const std::vector<Term>& roots) {
  std::vector<char> seen(store.size(), 0);
  std::vector<Term> stack(roots.begin(), roots.end());
  std::vector<Term> out;
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    if (seen[t.id()]) continue;
    seen[t.id()] = 1;
    out.push_back(t);
    int n = arity(store.op(t));
    if (n >= 1) stack.push_back(store.left(t));
    if (n == 2) stack.push_back(store.right(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TermStore::TermStore() {
  top_ = intern(Op::Top, 0, 0);
  bot_ = intern(Op::Bot, 0, 0);
}

Term TermStore::intern(Op op, std::uint32_t lhs, std::uint32_t rhs) {
  assert(lhs < kKeyLimit && rhs < kKeyLimit);
  auto key = node_key(op, lhs, rhs);
  if (auto it = index_.find(key); it != index_.end()) return Term(it->second);
  auto id = static_cast<std::uint32_t>(nodes_.size());
  if (id >= kKeyLimit) throw std::length_error("term store exhausted");
  nodes_.push_back({op, lhs, rhs});
  index_.emplace(key, id);
  return Term(id);
}

Term TermStore::var(std::string_view name) {
  std::string key(name);
  auto it = symbol_index_.find(key);
  std::uint32_t sym;
  if (it == symbol_index_.end()) {
    sym = static_cast<std::uint32_t>(symbols_.size());
    symbols_.push_back(key);
    symbol_index_.emplace(std::move(key), sym);
  } else {
    sym = it->second;
  }
  return intern(Op::Var, sym, 0);
}

Term TermStore::mk(Op op, Term lhs, Term rhs) {
  switch (arity(op)) {
    case 0:
      assert(op != Op::Var && "use TermStore::var for variables");
      return op == Op::Top ? top_ : bot_;
    case 1:
      assert(lhs.valid() && lhs.id() < nodes_.size());
      return intern(op, lhs.id(), 0);
    default:
      assert(lhs.valid() && rhs.valid() && lhs.id() < nodes_.size() && rhs.id() < nodes_.size());
      return intern(op, lhs.id(), rhs.id());
  }
}

Term substitute(TermStore& store, Term t, const Substitution& map) {
  if (map.empty()) return t;
  std::unordered_map<std::uint32_t, Term> done;
  for (Term n : reachable(store, {t})) {
    Term out;
    switch (arity(store.op(n))) {
      case 0:
        if (auto it = map.find(n); it != map.end()) {
          out = it->second;
        } else {
          out = n;
        }
        break;
      case 1:
        out = store.mk(store.op(n), done.at(store.child(n).id()));
        break;
      default:
        out = store.mk(store.op(n), done.at(store.left(n).id()), done.at(store.right(n).id()));
        break;
    }
    done.emplace(n.id(), out);
  }
  return done.at(t.id());
}

Term iterate(TermStore& store, Term t, Term pivot, std::size_t k) {
  if (k > 0 && !occurs(store, pivot, t)) {
    std::ostringstream os;
    os << "iterate: pivot variable '" << store.name(pivot) << "' does not occur in the term";
    warn(os.str());
  }
  Term cur = pivot;
  for (std::size_t i = 0; i < k; ++i) cur = substitute(store, t, {{pivot, cur}});
  return cur;
}

bool occurs(const TermStore& store, Term var, Term t) {
  if (var.id() > t.id()) return false;
  auto nodes = reachable(store, {t});
  return std::binary_search(nodes.begin(), nodes.end(), var);
}

std::vector<Term> variables(const TermStore& store, const std::vector<Term>& terms) {
  std::vector<Term> out;
  for (Term n : reachable(store, terms)) {
    if (store.is_var(n)) out.push_back(n);
  }
  std::sort(out.begin(), out.end(),
            [&](Term a, Term b) { return store.name(a) < store.name(b); });
  return out;
}

std::vector<Term> variables(const TermStore& store, Term t) {
  return variables(store, std::vector<Term>{t});
}

std::size_t dag_size(const TermStore& store, Term t) { return reachable(store, {t}).size(); }

std::uint64_t tree_size(const TermStore& store, Term t, std::uint64_t limit) {
  std::unordered_map<std::uint32_t, std::uint64_t> size;
  auto add = [limit](std::uint64_t a, std::uint64_t b) {
    return (a >= limit || b >= limit - a) ? limit : a + b;
  };
  for (Term n : reachable(store, {t})) {
    std::uint64_t s = 1;
    int k = arity(store.op(n));
    if (k >= 1) s = add(s, size.at(store.left(n).id()));
    if (k == 2) s = add(s, size.at(store.right(n).id()));
    size.emplace(n.id(), s);
  }
  return size.at(t.id());
}

Term chain_term(TermStore& store) {
  Term x = store.var("x");
  Term y = store.var("y");
  Term z = store.var("z");
  return store.disj(store.box(store.disj(y, store.box(store.disj(z, x)))), x);
}

Term diamond_term(TermStore& store) {
  Term x = store.var("x");
  return store.disj(store.dia(x), x);
}

Term boxdot(TermStore& store, Term phi) { return store.conj(phi, store.box(phi)); }

Term boxdot_power(TermStore& store, std::size_t n, Term phi) {
  for (std::size_t i = 0; i < n; ++i) phi = boxdot(store, phi);
  return phi;
}

Term boxdot_power(TermStore& store, std::size_t n) {
  return boxdot_power(store, n, store.var("x"));
}

Term weak_transitivity_axiom(TermStore& store, std::size_t n) {
  Term lower = boxdot_power(store, n);
  return store.imp(lower, boxdot(store, lower));
}

Term s_term(TermStore& store, std::size_t m) {
  Term y = store.var("y");
  Term z = store.var("z");
  Term s = store.bot();
  for (std::size_t i = 0; i < m; ++i) s = store.box(store.disj(y, store.box(store.disj(z, s))));
  return s;
}

Term plus_closure(TermStore& store, Term t, Term pivot) { return store.disj(pivot, t); }

Statement as_equation(TermStore& store, const Statement& s) {
  if (s.kind == Relation::Eq) return s;
  return Statement::eq(store.disj(s.lhs, s.rhs), s.rhs);
}

std::vector<Term> variables(const TermStore& store, const Statement& s) {
  return variables(store, std::vector<Term>{s.lhs, s.rhs});
}

std::vector<Term> variables(const TermStore& store, const std::vector<Statement>& statements) {
  std::vector<Term> roots;
  for (const auto& s : statements) {
    roots.push_back(s.lhs);
    roots.push_back(s.rhs);
  }
  return variables(store, roots);
}

}  // namespace modal
