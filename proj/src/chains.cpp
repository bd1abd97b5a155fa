#include "modal/chains.hpp"

#include <sstream>

#include "modal/error.hpp"

namespace modal {

Frame make_chain(const ChainSpec& spec) {
  std::vector<WorldSet> succ;
  succ.reserve(spec.size);
  if (spec.size > WorldSet::kCapacity) throw InputError("chain too large");
  for (std::size_t i = 0; i < spec.size; ++i) {
    WorldSet s(spec.size);
    for (std::size_t j = i + 1; j < spec.size; ++j) s.insert(j);
    succ.push_back(s);
  }
  for (auto p : spec.reflexive_points) {
    if (p >= spec.size) {
      std::ostringstream os;
      os << "reflexive point " << p << " out of range for a chain of size " << spec.size;
      throw InputError(os.str());
    }
    succ[p].insert(p);
  }
  return Frame::from_successors(std::move(succ), WorldSet::kCapacity);
}

Frame make_chain(std::size_t size, const std::vector<std::size_t>& reflexive_points) {
  return make_chain(ChainSpec{size, reflexive_points});
}

std::vector<std::size_t> points_of_mask(std::size_t n, std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n && i < 64; ++i) {
    if ((mask >> i) & 1u) out.push_back(i);
  }
  return out;
}

std::vector<Frame> enumerate_chains(std::size_t n, std::size_t cap) {
  if (n > cap || n >= 64) {
    std::ostringstream os;
    os << "enumerating chains on " << n << " points exceeds the cap of " << cap;
    throw CapExceeded(os.str());
  }
  std::vector<Frame> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    out.push_back(make_chain(n, points_of_mask(n, mask)));
  }
  return out;
}

Valuation lemma_valuation(std::size_t n) {
  if (n == 0) throw InputError("lemma valuation needs n >= 1");
  std::size_t worlds = 2 * n + 1;
  WorldSet odd(worlds);
  WorldSet even(worlds);
  for (std::size_t w = 0; w < worlds; ++w) {
    if (w % 2) {
      odd.insert(w);
    } else {
      even.insert(w);
    }
  }
  return Valuation({{"x", odd}, {"y", even}, {"z", odd}});
}

bool LemmaCertificate::valid() const {
  if (!fails_at_zero || !global_next) return false;
  for (const auto& [m, holds] : s_global) {
    if (m > n && !holds) return false;
  }
  for (std::size_t l = 0; l <= n; ++l) {
    auto it = claim_table.find(l);
    if (it == claim_table.end()) return false;
    for (std::size_t k = 0; k <= n - l; ++k) {
      if (!it->second.contains(2 * k)) return false;
    }
  }
  return true;
}

LemmaCertificate check_lemma(TermStore& store, std::size_t n,
                             const std::vector<std::size_t>& reflexive_points) {
  if (n == 0) throw InputError("check_lemma needs n >= 1");
  LemmaCertificate cert;
  cert.n = n;
  cert.chain = ChainSpec{2 * n + 1, reflexive_points};
  cert.valuation = lemma_valuation(n);
  Model model(make_chain(cert.chain), cert.valuation);

  Term t = chain_term(store);
  Term x = store.var("x");
  for (std::size_t l = 0; l <= n + 1; ++l) {
    cert.iterates.push_back(eval_iterated(store, model, t, x, x, l));
  }
  Evaluator ev(store, model);
  for (std::size_t m = 0; m <= n + 2; ++m) {
    cert.s_values.push_back(ev.eval(s_term(store, m)));
    cert.s_global[m] = cert.s_values.back().is_full();
  }

  cert.fails_at_zero = !cert.iterates[n].contains(0);
  cert.global_next = cert.iterates[n + 1].is_full();
  for (std::size_t l = 0; l <= n; ++l) {
    WorldSet falsified(2 * n + 1);
    for (std::size_t w = 0; w <= 2 * n; w += 2) {
      if (!cert.iterates[l].contains(w)) falsified.insert(w);
    }
    cert.claim_table[l] = falsified;
  }
  return cert;
}

}  // namespace modal
