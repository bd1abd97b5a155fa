#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "modal/kripke.hpp"
#include "modal/terms.hpp"

namespace modal {

/// The complex algebra of a frame: all subsets of worlds with the Boolean
/// operations and the box/diamond induced by the relation. Elements are never
/// materialized.
class ComplexAlgebra {
 public:
  explicit ComplexAlgebra(Frame frame) : frame_(std::move(frame)) {}

  const Frame& frame() const { return frame_; }
  /// log2 of the number of elements.
  std::size_t dimension() const { return frame_.world_count(); }

  WorldSet top() const { return frame_.all(); }
  WorldSet bottom() const { return frame_.none(); }
  WorldSet join(const WorldSet& a, const WorldSet& b) const { return a | b; }
  WorldSet meet(const WorldSet& a, const WorldSet& b) const { return a & b; }
  WorldSet complement(const WorldSet& a) const { return ~a; }
  WorldSet box(const WorldSet& a) const { return frame_.box(a); }
  WorldSet dia(const WorldSet& a) const { return frame_.dia(a); }
  bool leq(const WorldSet& a, const WorldSet& b) const { return a.is_subset_of(b); }

 private:
  Frame frame_;
};

inline constexpr std::size_t kDefaultExhaustionCapBits = 24;

struct SearchOptions {
  /// Exhaustive search is refused when variables * worlds exceeds this.
  std::size_t cap_bits = kDefaultExhaustionCapBits;
  /// Past the cap, sample random valuations instead of refusing. A sampled
  /// search never reports Valid.
  bool allow_sampling = false;
  /// Sampled batches of 64 valuations each.
  std::uint64_t sample_batches = std::uint64_t{1} << 14;
  std::uint64_t seed = 0x6d6f64616cull;
  unsigned threads = 1;
};

enum class Verdict { Valid, Countermodel, Unknown };

struct ValidityReport {
  Verdict verdict = Verdict::Valid;
  /// Lowest-index falsifying valuation (exhaustive mode) or first sampled one.
  std::optional<Valuation> countermodel;
  std::optional<std::size_t> failing_world;
  std::uint64_t valuations_tried = 0;
  bool exhaustive = true;
};

/// Truth of s under every valuation of `vars` on the frame. Variables of s
/// outside `vars` are treated as empty. Throws CapExceeded when
/// |vars| * worlds > cap_bits and sampling is off.
ValidityReport check_validity(const TermStore& store, const Frame& frame, const Statement& s,
                              const std::vector<Term>& vars, const SearchOptions& opts = {});
/// Enumerates the variables of s.
ValidityReport check_validity(const TermStore& store, const Frame& frame, const Statement& s,
                              const SearchOptions& opts = {});

/// Least n <= max_n with Q^(n+1) contained in Q^n, Q the reflexive closure of
/// the relation; nullopt if none.
std::optional<std::size_t> transitivity_degree(const Frame& frame, std::size_t max_n);

/// Every axiom phi is valid on the frame (phi = T under all valuations).
bool frame_validates(TermStore& store, const Frame& frame, const std::vector<Term>& axioms,
                     const SearchOptions& opts = {});

struct FixpointResult {
  /// Least N with t^N(base) = t^(N+1)(base).
  std::size_t index = 0;
  WorldSet fixpoint;
  /// t^0(base), ..., t^N(base).
  std::vector<WorldSet> orbit;
};

/// Iterates a -> t(a, params) from base until stable. First checks,
/// exhaustively over the pivot with params fixed, that t is increasing and
/// monotone in the pivot on this frame; throws PreconditionError otherwise and
/// CapExceeded if that check does not fit the cap.
FixpointResult fixpoint_index(TermStore& store, const Frame& frame, Term t, Term pivot,
                              const WorldSet& base, const Valuation& params,
                              const SearchOptions& opts = {});

struct Refutation {
  std::size_t k = 0;
  std::size_t frame_index = 0;
  Valuation valuation;
  std::size_t failing_world = 0;
};

struct StabilizationResult {
  enum class Status { Found, NotFound, Inconclusive };
  Status status = Status::NotFound;
  /// Found: least n with t^n = t^(n+1) valid on every frame. Inconclusive:
  /// the first n that was neither refuted nor exhaustively confirmed.
  std::size_t n = 0;
  /// One refutation for each k < n (for NotFound, each k <= max_n).
  std::vector<Refutation> refutations;
};

/// Least n <= max_n such that t^n = t^(n+1) (in the pivot) is valid on all
/// given frames. The variables of t are enumerated. Sampling (if enabled) is
/// only ever used to refute a candidate n.
StabilizationResult uniform_stabilization(TermStore& store, const std::vector<Frame>& frames,
                                          Term t, Term pivot, std::size_t max_n,
                                          const SearchOptions& opts = {});

}  // namespace modal
