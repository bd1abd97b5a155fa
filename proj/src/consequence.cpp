#include "modal/consequence.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "modal/error.hpp"
#include "sliced.hpp"

namespace modal {

namespace {

std::string fresh(const std::string& stem, const std::set<std::string>& taken) {
  if (!taken.contains(stem)) return stem;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = stem + "_" + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

}  // namespace

Statement SigmaPi::pi_at(TermStore& store, std::size_t k) const {
  Term tk = iterate(store, term, x, k);
  return Statement::leq(substitute(store, tk, {{x, y}}), z);
}

SigmaPi build_sigma_pi(TermStore& store, Term t, Term pivot, std::size_t k_max) {
  SigmaPi sp;
  sp.x = pivot;

  std::set<std::string> taken{store.name(pivot)};
  std::string y_name = fresh("y", taken);
  taken.insert(y_name);
  std::string z_name = fresh("z", taken);
  taken.insert(z_name);

  auto params = variables(store, t);
  for (Term v : params) taken.insert(store.name(v));
  for (Term v : params) {
    if (v == pivot) continue;
    const std::string& name = store.name(v);
    if (name == y_name || name == z_name) {
      std::string renamed = fresh(name, taken);
      taken.insert(renamed);
      sp.renaming.emplace(v, store.var(renamed));
    }
  }
  sp.y = store.var(y_name);
  sp.z = store.var(z_name);
  sp.term = substitute(store, t, sp.renaming);

  sp.sigma = {
      Statement::leq(sp.y, sp.x),
      Statement::leq(sp.x, sp.z),
      Statement::eq(sp.x, sp.term),
  };
  for (std::size_t k = 0; k <= k_max; ++k) sp.pi.push_back(sp.pi_at(store, k));
  return sp;
}

ConsequenceResult check_consequence(const TermStore& store, const ConsequenceProblem& problem) {
  std::vector<Statement> all = problem.premises;
  all.push_back(problem.conclusion);
  auto vars = variables(store, all);

  SearchOptions opts = problem.options;
  opts.allow_sampling = false;

  // Refuse up front rather than after searching the small frames.
  for (const auto& f : problem.frames) {
    if (vars.size() * f.world_count() > opts.cap_bits) {
      throw CapExceeded("consequence search over " + std::to_string(vars.size()) +
                        " variables on a frame with " + std::to_string(f.world_count()) +
                        " worlds exceeds the cap of " + std::to_string(opts.cap_bits) + " bits");
    }
  }

  ConsequenceResult result;
  for (std::size_t i = 0; i < problem.frames.size(); ++i) {
    auto o = detail::search_countermodel(store, problem.frames[i], problem.premises,
                                         problem.conclusion, vars, {}, opts);
    result.pairs_tried += o.valuations_tried;
    if (o.found) {
      result.holds = false;
      result.countermodel = ConsequenceCountermodel{i, o.valuation, o.failing_world};
      return result;
    }
  }
  return result;
}

}  // namespace modal
