#include "modal/algebra.hpp"

#include <sstream>

#include "modal/error.hpp"
#include "sliced.hpp"

namespace modal {

namespace {

ValidityReport to_report(const detail::SearchOutcome& o) {
  ValidityReport r;
  r.exhaustive = o.exhaustive;
  r.valuations_tried = o.valuations_tried;
  if (o.found) {
    r.verdict = Verdict::Countermodel;
    r.countermodel = o.valuation;
    r.failing_world = o.failing_world;
  } else {
    r.verdict = o.exhaustive ? Verdict::Valid : Verdict::Unknown;
  }
  return r;
}

std::string fresh_name(const TermStore& store, Term t, const std::string& stem) {
  auto vars = variables(store, t);
  for (std::size_t i = 1;; ++i) {
    std::string candidate = stem + "_" + std::to_string(i);
    bool clash = false;
    for (Term v : vars) clash = clash || store.name(v) == candidate;
    if (!clash) return candidate;
  }
}

}  // namespace

ValidityReport check_validity(const TermStore& store, const Frame& frame, const Statement& s,
                              const std::vector<Term>& vars, const SearchOptions& opts) {
  return to_report(detail::search_countermodel(store, frame, {}, s, vars, {}, opts));
}

ValidityReport check_validity(const TermStore& store, const Frame& frame, const Statement& s,
                              const SearchOptions& opts) {
  return check_validity(store, frame, s, variables(store, s), opts);
}

std::optional<std::size_t> transitivity_degree(const Frame& frame, std::size_t max_n) {
  const std::size_t n = frame.world_count();
  std::vector<WorldSet> closure(n);
  std::vector<WorldSet> power(n);
  for (std::size_t w = 0; w < n; ++w) {
    closure[w] = frame.successors(w);
    closure[w].insert(w);
    power[w] = WorldSet(n);
    power[w].insert(w);
  }
  for (std::size_t k = 0; k <= max_n; ++k) {
    std::vector<WorldSet> next(n, WorldSet(n));
    bool contained = true;
    for (std::size_t w = 0; w < n; ++w) {
      power[w].for_each([&](std::size_t v) { next[w] |= closure[v]; });
      contained = contained && next[w].is_subset_of(power[w]);
    }
    if (contained) return k;
    power = std::move(next);
  }
  return std::nullopt;
}

bool frame_validates(TermStore& store, const Frame& frame, const std::vector<Term>& axioms,
                     const SearchOptions& opts) {
  SearchOptions exhaustive = opts;
  exhaustive.allow_sampling = false;
  for (Term phi : axioms) {
    if (check_validity(store, frame, Statement::eq(phi, store.top()), exhaustive).verdict !=
        Verdict::Valid) {
      return false;
    }
  }
  return true;
}

FixpointResult fixpoint_index(TermStore& store, const Frame& frame, Term t, Term pivot,
                              const WorldSet& base, const Valuation& params,
                              const SearchOptions& opts) {
  if (!store.is_var(pivot)) throw InputError("fixpoint pivot must be a variable");
  if (base.universe() != frame.world_count()) {
    throw InputError("base set does not range over the frame's worlds");
  }

  std::vector<detail::Binding> fixed;
  for (const auto& [name, set] : params.entries()) {
    Term v = store.var(name);
    if (v == pivot) continue;
    if (set.universe() != frame.world_count()) {
      throw InputError("parameter '" + name + "' does not range over the frame's worlds");
    }
    fixed.push_back({v, set});
  }
  SearchOptions exhaustive = opts;
  exhaustive.allow_sampling = false;

  auto increasing = detail::search_countermodel(store, frame, {}, Statement::leq(pivot, t),
                                                {pivot}, fixed, exhaustive);
  if (increasing.found) {
    std::ostringstream os;
    os << "term is not increasing in '" << store.name(pivot) << "' on this frame (fails at world "
       << increasing.failing_world << ")";
    throw PreconditionError(os.str());
  }
  Term up = store.var(fresh_name(store, t, store.name(pivot)));
  Term raised = substitute(store, t, {{pivot, store.disj(pivot, up)}});
  auto monotone = detail::search_countermodel(store, frame, {}, Statement::leq(t, raised),
                                              {pivot, up}, fixed, exhaustive);
  if (monotone.found) {
    std::ostringstream os;
    os << "term is not monotone in '" << store.name(pivot) << "' on this frame (fails at world "
       << monotone.failing_world << ")";
    throw PreconditionError(os.str());
  }

  FixpointResult r;
  WorldSet cur = base;
  const std::string& name = store.name(pivot);
  for (;;) {
    r.orbit.push_back(cur);
    WorldSet next = eval(store, Model(frame, params.with(name, cur)), t);
    if (next == cur) break;
    cur = next;
  }
  r.index = r.orbit.size() - 1;
  r.fixpoint = cur;
  return r;
}

StabilizationResult uniform_stabilization(TermStore& store, const std::vector<Frame>& frames,
                                          Term t, Term pivot, std::size_t max_n,
                                          const SearchOptions& opts) {
  auto vars = variables(store, std::vector<Term>{t, pivot});
  StabilizationResult result;
  Term lower = pivot;
  for (std::size_t k = 0; k <= max_n; ++k) {
    Term upper = substitute(store, t, {{pivot, lower}});
    Statement candidate = Statement::eq(lower, upper);
    bool refuted = false;
    bool unsettled = false;
    for (std::size_t i = 0; i < frames.size() && !refuted; ++i) {
      auto o = detail::search_countermodel(store, frames[i], {}, candidate, vars, {}, opts);
      if (o.found) {
        refuted = true;
        result.refutations.push_back({k, i, o.valuation, o.failing_world});
      } else if (!o.exhaustive) {
        unsettled = true;
      }
    }
    if (!refuted) {
      result.status = unsettled ? StabilizationResult::Status::Inconclusive
                                : StabilizationResult::Status::Found;
      result.n = k;
      return result;
    }
    lower = upper;
  }
  result.status = StabilizationResult::Status::NotFound;
  result.n = max_n;
  return result;
}

}  // namespace modal
