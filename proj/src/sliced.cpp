#include "sliced.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>
#include <cassert>
#include <unordered_map>

#include "modal/diagnostics.hpp"
#include "modal/error.hpp"

namespace modal::detail {

namespace {

constexpr std::array<Lanes, 6> kLanePattern = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

SlicedProgram::SlicedProgram(const TermStore& store, const Frame& frame,
                             const std::vector<Statement>& statements,
                             const std::vector<Term>& enumerated,
                             const std::vector<Binding>& fixed)
    : store_(&store), worlds_(frame.world_count()), enumerated_(enumerated), fixed_(fixed) {
  for (const auto& b : fixed_) {
    if (b.set.universe() != worlds_) throw InputError("fixed binding has the wrong universe");
  }

  succ_offsets_.push_back(0);
  for (std::size_t w = 0; w < worlds_; ++w) {
    frame.successors(w).for_each([&](std::size_t v) { succ_.push_back(static_cast<std::uint32_t>(v)); });
    succ_offsets_.push_back(static_cast<std::uint32_t>(succ_.size()));
  }

  std::vector<Term> roots;
  for (const auto& s : statements) {
    roots.push_back(s.lhs);
    roots.push_back(s.rhs);
  }

  // Collect reachable nodes; id order is topological.
  std::vector<char> seen(store.size(), 0);
  std::vector<Term> stack = roots;
  std::vector<Term> nodes;
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    if (seen[t.id()]) continue;
    seen[t.id()] = 1;
    nodes.push_back(t);
    int n = arity(store.op(t));
    if (n >= 1) stack.push_back(store.left(t));
    if (n == 2) stack.push_back(store.right(t));
  }
  std::sort(nodes.begin(), nodes.end());

  std::unordered_map<std::uint32_t, std::uint32_t> local;
  for (Term t : nodes) {
    Instr in{store.op(t), 0, 0};
    int n = arity(in.op);
    if (in.op == Op::Var) {
      in.a = kAbsent;
      for (std::size_t j = 0; j < enumerated_.size(); ++j) {
        if (enumerated_[j] == t) in.a = static_cast<std::uint32_t>(j);
      }
      for (std::size_t j = 0; j < fixed_.size() && in.a == kAbsent; ++j) {
        if (fixed_[j].var == t) in.a = static_cast<std::uint32_t>(enumerated_.size() + j);
      }
      if (in.a == kAbsent) {
        warn("variable '" + store.name(t) + "' is neither enumerated nor bound; treating it as empty");
      }
    }
    if (n >= 1) in.a = local.at(store.left(t).id());
    if (n == 2) in.b = local.at(store.right(t).id());
    local.emplace(t.id(), static_cast<std::uint32_t>(code_.size()));
    code_.push_back(in);
  }
  for (const auto& s : statements) {
    roots_.emplace_back(local.at(s.lhs.id()), local.at(s.rhs.id()));
    kinds_.push_back(s.kind);
  }
}

std::uint64_t SlicedProgram::batch_count() const {
  std::size_t b = bits();
  if (b <= 6) return 1;
  assert(b - 6 < 64);
  return std::uint64_t{1} << (b - 6);
}

Lanes SlicedProgram::valid_lanes() const {
  std::size_t b = bits();
  if (b >= 6) return ~Lanes{0};
  return (Lanes{1} << (std::size_t{1} << b)) - 1;
}

SlicedProgram::Scratch SlicedProgram::make_scratch() const {
  Scratch s;
  s.vars.assign((enumerated_.size() + fixed_.size()) * worlds_, 0);
  s.values.assign(code_.size() * worlds_, 0);
  for (std::size_t j = 0; j < fixed_.size(); ++j) {
    for (std::size_t w = 0; w < worlds_; ++w) {
      s.vars[(enumerated_.size() + j) * worlds_ + w] = fixed_[j].set.contains(w) ? ~Lanes{0} : 0;
    }
  }
  return s;
}

void SlicedProgram::load_exhaustive(Scratch& s, std::uint64_t batch) const {
  std::size_t n = bits();
  std::size_t low = n < 6 ? n : 6;
  for (std::size_t p = 0; p < n; ++p) {
    s.vars[p] = p < low ? kLanePattern[p] : (((batch >> (p - low)) & 1u) ? ~Lanes{0} : 0);
  }
}

void SlicedProgram::load_random(Scratch& s, std::uint64_t seed, std::uint64_t batch) const {
  std::size_t n = bits();
  std::uint64_t base = splitmix64(seed ^ splitmix64(batch));
  for (std::size_t p = 0; p < n; ++p) s.vars[p] = splitmix64(base + p);
}

void SlicedProgram::run(Scratch& s) const {
  const std::size_t W = worlds_;
  Lanes* values = s.values.data();
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    Lanes* dst = values + i * W;
    const Lanes* a = values + std::size_t{in.a} * W;
    const Lanes* b = values + std::size_t{in.b} * W;
    switch (in.op) {
      case Op::Var:
        if (in.a == kAbsent) {
          for (std::size_t w = 0; w < W; ++w) dst[w] = 0;
        } else {
          const Lanes* src = s.vars.data() + std::size_t{in.a} * W;
          for (std::size_t w = 0; w < W; ++w) dst[w] = src[w];
        }
        break;
      case Op::Top:
        for (std::size_t w = 0; w < W; ++w) dst[w] = ~Lanes{0};
        break;
      case Op::Bot:
        for (std::size_t w = 0; w < W; ++w) dst[w] = 0;
        break;
      case Op::Not:
        for (std::size_t w = 0; w < W; ++w) dst[w] = ~a[w];
        break;
      case Op::And:
        for (std::size_t w = 0; w < W; ++w) dst[w] = a[w] & b[w];
        break;
      case Op::Or:
        for (std::size_t w = 0; w < W; ++w) dst[w] = a[w] | b[w];
        break;
      case Op::Imp:
        for (std::size_t w = 0; w < W; ++w) dst[w] = ~a[w] | b[w];
        break;
      case Op::Box:
        for (std::size_t w = 0; w < W; ++w) {
          Lanes acc = ~Lanes{0};
          for (auto k = succ_offsets_[w]; k < succ_offsets_[w + 1]; ++k) acc &= a[succ_[k]];
          dst[w] = acc;
        }
        break;
      case Op::Dia:
        for (std::size_t w = 0; w < W; ++w) {
          Lanes acc = 0;
          for (auto k = succ_offsets_[w]; k < succ_offsets_[w + 1]; ++k) acc |= a[succ_[k]];
          dst[w] = acc;
        }
        break;
    }
  }
}

Lanes SlicedProgram::fail_lanes(const Scratch& s, std::size_t i) const {
  const Lanes* l = node(s, roots_[i].first);
  const Lanes* r = node(s, roots_[i].second);
  Lanes fail = 0;
  if (kinds_[i] == Relation::Eq) {
    for (std::size_t w = 0; w < worlds_; ++w) fail |= l[w] ^ r[w];
  } else {
    for (std::size_t w = 0; w < worlds_; ++w) fail |= l[w] & ~r[w];
  }
  return fail;
}

std::size_t SlicedProgram::fail_world(const Scratch& s, std::size_t i, unsigned lane) const {
  const Lanes* l = node(s, roots_[i].first);
  const Lanes* r = node(s, roots_[i].second);
  for (std::size_t w = 0; w < worlds_; ++w) {
    Lanes bad = kinds_[i] == Relation::Eq ? (l[w] ^ r[w]) : (l[w] & ~r[w]);
    if ((bad >> lane) & 1u) return w;
  }
  return worlds_;
}

Valuation SlicedProgram::decode(const Scratch& s, unsigned lane) const {
  Valuation::Map m;
  for (std::size_t j = 0; j < enumerated_.size(); ++j) {
    WorldSet set(worlds_);
    for (std::size_t w = 0; w < worlds_; ++w) {
      if ((s.vars[j * worlds_ + w] >> lane) & 1u) set.insert(w);
    }
    m.insert_or_assign(store_->name(enumerated_[j]), set);
  }
  for (const auto& b : fixed_) m.insert_or_assign(store_->name(b.var), b.set);
  return Valuation(std::move(m));
}

}  // namespace modal::detail

namespace modal::detail {

SearchOutcome search_countermodel(const TermStore& store, const Frame& frame,
                                  const std::vector<Statement>& premises,
                                  const Statement& conclusion,
                                  const std::vector<Term>& enumerated,
                                  const std::vector<Binding>& fixed, const SearchOptions& opts) {
  std::vector<Statement> statements = premises;
  statements.push_back(conclusion);
  const std::size_t concl = premises.size();

  std::size_t bits = enumerated.size() * frame.world_count();
  bool sampling = bits > opts.cap_bits;
  if (sampling && !opts.allow_sampling) {
    throw CapExceeded("exhaustive search over " + std::to_string(bits) +
                      " valuation bits exceeds the cap of " + std::to_string(opts.cap_bits) +
                      " bits");
  }
  if (bits >= 64 + 6 && !sampling) throw CapExceeded("valuation space too large");

  SlicedProgram prog(store, frame, statements, enumerated, fixed);
  const Lanes valid = sampling ? ~Lanes{0} : prog.valid_lanes();
  const std::uint64_t batches = sampling ? opts.sample_batches : prog.batch_count();

  auto load = [&](SlicedProgram::Scratch& s, std::uint64_t b) {
    if (sampling) {
      prog.load_random(s, opts.seed, b);
    } else {
      prog.load_exhaustive(s, b);
    }
    prog.run(s);
  };
  auto probe = [&](SlicedProgram::Scratch& s, std::uint64_t b) -> Lanes {
    load(s, b);
    Lanes ok = valid;
    for (std::size_t i = 0; i < concl && ok; ++i) ok &= ~prog.fail_lanes(s, i);
    return ok ? ok & prog.fail_lanes(s, concl) : 0;
  };

  std::uint64_t processed = 0;
  auto hit = scan_batches(
      batches, opts.threads, [&] { return prog.make_scratch(); }, probe, &processed);

  SearchOutcome out;
  out.exhaustive = !sampling;
  std::uint64_t per_batch = static_cast<std::uint64_t>(std::popcount(valid));
  out.valuations_tried = processed * per_batch;
  if (hit) {
    auto s = prog.make_scratch();
    load(s, hit->batch);
    out.found = true;
    out.valuation = prog.decode(s, hit->lane);
    out.failing_world = prog.fail_world(s, concl, hit->lane);
    if (!sampling) {
      // Count up to and including the hit, for a reproducible statistic.
      out.valuations_tried = hit->batch * per_batch +
                             static_cast<std::uint64_t>(std::popcount(valid & ((Lanes{2} << hit->lane) - 1)));
    }
  }
  return out;
}

}  // namespace modal::detail
