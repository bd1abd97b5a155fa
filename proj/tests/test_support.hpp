#pragma once

// Oracles and generators shared by the test suites. Nothing here uses the
// bitset evaluator: truth is computed world by world from the relation.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "modal/kripke.hpp"
#include "modal/terms.hpp"

namespace modal::testing {

/// Naive recursive truth of t at world w. No memoization, no set operations.
inline bool naive_holds(const TermStore& store, const Frame& frame, const Valuation& v, Term t,
                        std::size_t w) {
  switch (store.op(t)) {
    case Op::Var: {
      const WorldSet* s = v.find(store.name(t));
      return s != nullptr && s->contains(w);
    }
    case Op::Top:
      return true;
    case Op::Bot:
      return false;
    case Op::Not:
      return !naive_holds(store, frame, v, store.child(t), w);
    case Op::And:
      return naive_holds(store, frame, v, store.left(t), w) &&
             naive_holds(store, frame, v, store.right(t), w);
    case Op::Or:
      return naive_holds(store, frame, v, store.left(t), w) ||
             naive_holds(store, frame, v, store.right(t), w);
    case Op::Imp:
      return !naive_holds(store, frame, v, store.left(t), w) ||
             naive_holds(store, frame, v, store.right(t), w);
    case Op::Box:
      for (std::size_t u = 0; u < frame.world_count(); ++u) {
        if (frame.related(w, u) && !naive_holds(store, frame, v, store.child(t), u)) return false;
      }
      return true;
    case Op::Dia:
      for (std::size_t u = 0; u < frame.world_count(); ++u) {
        if (frame.related(w, u) && naive_holds(store, frame, v, store.child(t), u)) return true;
      }
      return false;
  }
  return false;
}

inline std::vector<bool> naive_eval(const TermStore& store, const Frame& frame, const Valuation& v,
                                    Term t) {
  std::vector<bool> out(frame.world_count());
  for (std::size_t w = 0; w < frame.world_count(); ++w) out[w] = naive_holds(store, frame, v, t, w);
  return out;
}

inline std::vector<bool> as_bools(const WorldSet& s) {
  std::vector<bool> out(s.universe());
  for (std::size_t w = 0; w < s.universe(); ++w) out[w] = s.contains(w);
  return out;
}

/// Naive validity of lhs (=|<=) rhs over every valuation of vars, by counting
/// through valuation indices.
inline bool naive_valid(const TermStore& store, const Frame& frame, const Statement& s,
                        const std::vector<Term>& vars) {
  const std::size_t n = frame.world_count();
  const std::size_t bits = vars.size() * n;
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << bits); ++idx) {
    Valuation::Map m;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      WorldSet set(n);
      for (std::size_t w = 0; w < n; ++w) {
        if ((idx >> (j * n + w)) & 1u) set.insert(w);
      }
      m.emplace(store.name(vars[j]), set);
    }
    Valuation v(std::move(m));
    for (std::size_t w = 0; w < n; ++w) {
      bool l = naive_holds(store, frame, v, s.lhs, w);
      bool r = naive_holds(store, frame, v, s.rhs, w);
      if (s.kind == Relation::Eq ? l != r : (l && !r)) return false;
    }
  }
  return true;
}

/// Existence of a path a = a0 R a1 R ... R a_2m with y false at odd steps and
/// z false at even steps i >= 2. This is exactly when s_m fails at a.
inline bool alternating_path_exists(const Frame& frame, const WorldSet& y, const WorldSet& z,
                                    std::size_t a, std::size_t m) {
  std::vector<std::size_t> frontier{a};
  for (std::size_t step = 1; step <= 2 * m; ++step) {
    std::vector<char> next(frame.world_count(), 0);
    for (std::size_t u : frontier) {
      for (std::size_t v = 0; v < frame.world_count(); ++v) {
        if (!frame.related(u, v)) continue;
        bool ok = (step % 2 == 1) ? !y.contains(v) : !z.contains(v);
        if (ok) next[v] = 1;
      }
    }
    frontier.clear();
    for (std::size_t v = 0; v < next.size(); ++v) {
      if (next[v]) frontier.push_back(v);
    }
    if (frontier.empty()) return false;
  }
  return true;
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Frame frame(std::size_t worlds, double density = 0.35) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < worlds; ++i) {
      for (std::size_t j = 0; j < worlds; ++j) {
        if (coin(density)) edges.emplace_back(i, j);
      }
    }
    return Frame::from_edges(worlds, edges);
  }

  WorldSet set(std::size_t worlds) {
    WorldSet s(worlds);
    for (std::size_t w = 0; w < worlds; ++w) {
      if (coin()) s.insert(w);
    }
    return s;
  }

  Valuation valuation(std::size_t worlds, const std::vector<std::string>& names) {
    Valuation::Map m;
    for (const auto& n : names) m.emplace(n, set(worlds));
    return Valuation(std::move(m));
  }

  /// Random term over the given variable names with depth <= depth.
  Term term(TermStore& store, const std::vector<std::string>& names, std::size_t depth) {
    if (depth == 0 || coin(0.2)) {
      std::size_t pick = below(names.size() + 2);
      if (pick == names.size()) return store.top();
      if (pick == names.size() + 1) return store.bot();
      return store.var(names[pick]);
    }
    static constexpr Op kOps[] = {Op::Not, Op::And, Op::Or, Op::Imp, Op::Box, Op::Dia};
    Op op = kOps[below(6)];
    Term a = term(store, names, depth - 1);
    if (arity(op) == 1) return store.mk(op, a);
    return store.mk(op, a, term(store, names, depth - 1));
  }

 private:
  std::mt19937_64 rng_;
};

/// Every frame on n worlds, indexed by its n*n-bit adjacency mask.
inline Frame frame_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((mask >> (i * n + j)) & 1u) edges.emplace_back(i, j);
    }
  }
  return Frame::from_edges(n, edges);
}

}  // namespace modal::testing
