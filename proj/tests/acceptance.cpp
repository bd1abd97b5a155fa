// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "modal/algebra.hpp"
#include "modal/chains.hpp"
#include "modal/consequence.hpp"
#include "modal/error.hpp"
#include "modal/kripke.hpp"
#include "modal/terms.hpp"
#include "test_support.hpp"

namespace {

using namespace modal;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool fails_at(const TermStore& store, const Frame& f, const Valuation& v, const Statement& s, std::size_t w) {
  bool l = testing::naive_holds(store, f, v, s.lhs, w);
  bool r = testing::naive_holds(store, f, v, s.rhs, w);
  return s.kind == Relation::Eq ? l != r : (l && !r);
}

bool holds_everywhere(const TermStore& store, const Frame& f, const Valuation& v, const Statement& s) {
  for (std::size_t w = 0; w < f.world_count(); ++w) {
    if (fails_at(store, f, v, s, w)) return false;
  }
  return true;
}

std::vector<Frame> chains_up_to(std::size_t n) {
  std::vector<Frame> out;
  for (std::size_t i = 1; i <= n; ++i) {
    for (auto& f : enumerate_chains(i)) out.push_back(std::move(f));
  }
  return out;
}

void lemma_reproduction(Outcome& o) {
  auto start = Clock::now();
  TermStore store;
  std::size_t frames = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t size = 2 * n + 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
      auto c = check_lemma(store, n, points_of_mask(size, mask));
      ++frames;
      if (!c.valid()) o.fail("invalid certificate n=" + std::to_string(n) + " mask=" + std::to_string(mask));
    }
  }
  double secs = seconds_since(start);
  if (secs >= 30.0) o.fail("took " + std::to_string(secs) + " s");
  o.detail << (o.pass ? "" : "; ") << frames << " frames, " << secs << " s";
}

void non_stabilization(Outcome& o) {
  TermStore store;
  Term t = chain_term(store);
  Term x = store.var("x");
  SearchOptions opts;
  opts.allow_sampling = true;
  opts.sample_batches = std::uint64_t{1} << 14;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto frames = enumerate_chains(2 * n + 1);
    auto r = uniform_stabilization(store, frames, t, x, n, opts);
    if (r.status != StabilizationResult::Status::NotFound) {
      o.fail("n=" + std::to_string(n) + " did not report NotFound");
      continue;
    }
    for (const auto& ref : r.refutations) {
      Statement eq = Statement::eq(iterate(store, t, x, ref.k), iterate(store, t, x, ref.k + 1));
      if (!fails_at(store, frames[ref.frame_index], ref.valuation, eq, ref.failing_world)) {
        o.fail("refutation at n=" + std::to_string(n) + " k=" + std::to_string(ref.k) + " does not re-verify");
      }
    }
    std::size_t bits = 3 * (2 * n + 1);
    if (bits > kDefaultExhaustionCapBits) {
      // Without sampling the exhaustive search must refuse.
      bool refused = false;
      try {
        uniform_stabilization(store, frames, t, x, n);
      } catch (const CapExceeded&) {
        refused = true;
      }
      if (!refused) o.fail("exhaustive search over " + std::to_string(bits) + " bits was not refused");
    }
  }
  o.detail << (o.pass ? "" : "; ") << "n=1..4 NotFound; n=4 (27 bits) refuted by sampling, exhaustive refused";
}

void s_bound(Outcome& o) {
  TermStore store;
  Term t = chain_term(store);
  Term x = store.var("x");
  std::vector<Term> vars = {x, store.var("y"), store.var("z")};
  std::vector<Statement> bounds;
  for (std::size_t m = 0; m <= 4; ++m) bounds.push_back(Statement::leq(s_term(store, m), iterate(store, t, x, m)));
  std::size_t frames = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
      Frame f = testing::frame_from_mask(n, mask);
      ++frames;
      for (std::size_t m = 0; m < bounds.size(); ++m) {
        auto r = check_validity(store, f, bounds[m], vars);
        if (r.verdict != Verdict::Valid || !r.exhaustive) {
          o.fail("m=" + std::to_string(m) + " frame mask=" + std::to_string(mask));
        }
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << frames << " frames, m=0..4";
}

void transitivity_cross_check(Outcome& o) {
  TermStore store;
  std::vector<Statement> axioms;
  for (std::size_t n = 0; n <= 4; ++n) axioms.push_back(Statement::eq(weak_transitivity_axiom(store, n), store.top()));
  std::size_t not_found = 0;
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    Frame f = testing::frame_from_mask(3, mask);
    auto degree = transitivity_degree(f, 4);
    std::optional<std::size_t> by_axiom;
    for (std::size_t n = 0; n <= 4 && !by_axiom; ++n) {
      if (check_validity(store, f, axioms[n]).verdict == Verdict::Valid) by_axiom = n;
    }
    if (degree != by_axiom) o.fail("mismatch at mask=" + std::to_string(mask));
    if (!degree) ++not_found;
  }
  o.detail << (o.pass ? "" : "; ") << "512 frames, " << not_found << " NotFound on both sides";
}

void fixpoint_property(Outcome& o) {
  TermStore store;
  Term t = diamond_term(store);
  Term x = store.var("x");
  Term a = store.var("a");
  std::size_t cases = 0;
  for (const Frame& f : chains_up_to(5)) {
    std::size_t n = f.world_count();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      WorldSet base = WorldSet::from_mask(n, bits);
      auto r = fixpoint_index(store, f, t, x, base, Valuation());
      ++cases;
      auto image = testing::naive_eval(store, f, Valuation().with("x", r.fixpoint), t);
      if (image != testing::as_bools(r.fixpoint)) o.fail("t(F) != F");
      if (!base.is_subset_of(r.fixpoint)) o.fail("base not below F");
      WorldSet join(n);
      Model with_base(f, Valuation().with("a", base));
      for (std::size_t k = 0; k <= n + 1; ++k) join |= eval_iterated(store, with_base, t, x, a, k);
      // Also join the naive iterates, independent of eval_iterated.
      WorldSet naive_join = base;
      WorldSet cur = base;
      for (std::size_t k = 0; k <= n; ++k) {
        auto next = testing::naive_eval(store, f, Valuation().with("x", cur), t);
        cur = WorldSet(n);
        for (std::size_t w = 0; w < n; ++w) {
          if (next[w]) cur.insert(w);
        }
        naive_join |= cur;
      }
      if (join != r.fixpoint || naive_join != r.fixpoint) o.fail("join of iterates differs from F");
    }
  }
  o.detail << (o.pass ? "" : "; ") << cases << " (chain, base) pairs";
}

void consequence_soundness(Outcome& o) {
  auto start = Clock::now();
  TermStore store;
  Term x = store.var("x");
  std::vector<Frame> frames = chains_up_to(5);
  std::size_t confirmed = 0;
  std::size_t countermodels = 0;
  auto expect_holds = [&](const ConsequenceProblem& p, const std::string& what) {
    auto r = check_consequence(store, p);
    if (!r.holds) {
      o.fail(what + " refuted");
    } else {
      ++confirmed;
    }
  };
  auto verify_countermodel = [&](const ConsequenceProblem& p, const std::string& what) {
    auto r = check_consequence(store, p);
    if (r.holds) return false;
    ++countermodels;
    const auto& cm = *r.countermodel;
    const Frame& f = p.frames[cm.frame_index];
    bool ok = fails_at(store, f, cm.valuation, p.conclusion, cm.failing_world);
    for (const auto& s : p.premises) ok = ok && holds_everywhere(store, f, cm.valuation, s);
    if (!ok) o.fail(what + " countermodel does not re-verify");
    return true;
  };

  for (Term t : {diamond_term(store), chain_term(store)}) {
    const char* name = t == diamond_term(store) ? "diamond" : "chain";
    auto sp = build_sigma_pi(store, t, x, 4);
    for (std::size_t k = 0; k <= 3; ++k) {
      std::string tag = std::string(name) + " k=" + std::to_string(k);
      ConsequenceProblem sigma{sp.sigma, sp.pi[k], frames, {}};
      // Five variables on five worlds.
      sigma.options.cap_bits = 25;
      expect_holds(sigma, "sigma " + tag);
      expect_holds({{sp.pi[k + 1]}, sp.pi[k], frames, {}}, "step " + tag);

      // Perturbed conclusions.
      verify_countermodel({{sp.pi[k]}, sp.pi[k + 1], frames, {}}, "reverse step " + tag);
      ConsequenceProblem swapped{sp.sigma, Statement::leq(sp.z, substitute(store, iterate(store, sp.term, x, k), {{x, sp.y}})),
                                 frames, {}};
      swapped.options.cap_bits = 25;
      if (!verify_countermodel(swapped, "swapped " + tag)) o.fail("swapped " + tag + " not refuted");
    }
  }
  o.detail << (o.pass ? "" : "; ") << confirmed << " consequences confirmed, " << countermodels
           << " countermodels re-verified, " << seconds_since(start) << " s";
}

void oracle_equivalence(Outcome& o) {
  testing::Generator gen(0x5eed);
  std::size_t pairs = 0;
  for (int i = 0; i < 10000; ++i) {
    TermStore store;
    std::size_t n = 1 + gen.below(8);
    Frame f = gen.frame(n, 0.1 + 0.8 * static_cast<double>(gen.below(100)) / 100.0);
    Valuation v = gen.valuation(n, {"x", "y", "z"});
    Term t = gen.term(store, {"x", "y", "z"}, 1 + gen.below(6));
    Model m(f, v);
    Evaluator ev(store, m);
    if (testing::as_bools(ev.eval(t)) != testing::naive_eval(store, f, v, t)) {
      o.fail("mismatch on pair " + std::to_string(i));
    }
    ++pairs;
  }
  o.detail << (o.pass ? "" : "; ") << pairs << " pairs";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> criteria = {
      {1, "lemma reproduction", lemma_reproduction},
      {2, "non-stabilization", non_stabilization},
      {3, "s_m bound", s_bound},
      {4, "transitivity cross-check", transitivity_cross_check},
      {5, "fixpoint property", fixpoint_property},
      {6, "consequence soundness", consequence_soundness},
      {7, "oracle equivalence", oracle_equivalence},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
