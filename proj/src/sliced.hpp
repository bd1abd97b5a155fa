#pragma once

// Bit-sliced evaluation: 64 valuations are evaluated at once, one per bit
// lane. Each DAG node holds one 64-bit word per world; bit l of the word for
// world w says whether w satisfies the node under valuation l.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "modal/algebra.hpp"
#include "modal/kripke.hpp"
#include "modal/terms.hpp"

namespace modal::detail {

using Lanes = std::uint64_t;

struct Binding {
  Term var;
  WorldSet set;
};

class SlicedProgram {
 public:
  /// Enumerated variables occupy bits [j*W, (j+1)*W) of the valuation index,
  /// world w at bit j*W + w. Variables that are neither enumerated nor fixed
  /// evaluate to the empty set.
  SlicedProgram(const TermStore& store, const Frame& frame, const std::vector<Statement>& statements,
                const std::vector<Term>& enumerated, const std::vector<Binding>& fixed = {});

  std::size_t worlds() const { return worlds_; }
  std::size_t bits() const { return enumerated_.size() * worlds_; }

  /// Number of 64-lane batches covering all 2^bits valuations.
  std::uint64_t batch_count() const;
  /// Lanes that carry a real valuation in exhaustive mode (all 64 unless
  /// bits < 6).
  Lanes valid_lanes() const;

  class Scratch {
    friend class SlicedProgram;
    std::vector<Lanes> vars;
    std::vector<Lanes> values;
  };
  Scratch make_scratch() const;

  void load_exhaustive(Scratch& s, std::uint64_t batch) const;
  void load_random(Scratch& s, std::uint64_t seed, std::uint64_t batch) const;
  void run(Scratch& s) const;

  /// Lanes in which statement i fails globally.
  Lanes fail_lanes(const Scratch& s, std::size_t i) const;
  /// Lowest world at which statement i fails in the given lane.
  std::size_t fail_world(const Scratch& s, std::size_t i, unsigned lane) const;

  /// Valuation carried by a lane after load_exhaustive/load_random.
  Valuation decode(const Scratch& s, unsigned lane) const;

 private:
  struct Instr {
    Op op;
    std::uint32_t a;
    std::uint32_t b;
  };
  static constexpr std::uint32_t kAbsent = 0xffffffffu;

  const Lanes* node(const Scratch& s, std::uint32_t i) const { return &s.values[i * worlds_]; }

  const TermStore* store_;
  std::size_t worlds_;
  std::vector<Term> enumerated_;
  std::vector<Binding> fixed_;
  std::vector<Instr> code_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> roots_;  // (lhs, rhs) per statement
  std::vector<Relation> kinds_;
  std::vector<std::uint32_t> succ_offsets_;
  std::vector<std::uint32_t> succ_;
};

struct Hit {
  std::uint64_t batch;
  unsigned lane;
};

struct SearchOutcome {
  bool found = false;
  Valuation valuation;
  std::size_t failing_world = 0;
  std::uint64_t valuations_tried = 0;
  bool exhaustive = true;
};

/// Looks for a valuation of `enumerated` (with `fixed` held constant) under
/// which every premise holds globally and the conclusion fails. Exhaustive up
/// to opts.cap_bits; beyond it either throws CapExceeded or samples.
SearchOutcome search_countermodel(const TermStore& store, const Frame& frame,
                                  const std::vector<Statement>& premises,
                                  const Statement& conclusion,
                                  const std::vector<Term>& enumerated,
                                  const std::vector<Binding>& fixed, const SearchOptions& opts);

/// Scans batches [0, batch_count) and returns the lowest (batch, lane) for
/// which probe reports a lane, independent of the thread count. probe has the
/// signature Lanes(SlicedProgram::Scratch&, std::uint64_t batch) and is given
/// per-thread scratch created by make_scratch. `processed` receives the number
/// of batches examined.
template <class MakeScratch, class Probe>
std::optional<Hit> scan_batches(std::uint64_t batch_count, unsigned threads,
                                MakeScratch make_scratch, Probe probe,
                                std::uint64_t* processed);

}  // namespace modal::detail

#include "sliced_scan.ipp"
