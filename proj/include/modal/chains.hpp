#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "modal/kripke.hpp"
#include "modal/terms.hpp"

namespace modal {

/// A finite chain on {0, ..., size-1}: the strict order i < j plus a loop at
/// every reflexive point. Its reflexive closure is the total order <=.
struct ChainSpec {
  std::size_t size = 0;
  std::vector<std::size_t> reflexive_points;
};

/// Throws InputError if a reflexive point is out of range.
Frame make_chain(const ChainSpec& spec);
Frame make_chain(std::size_t size, const std::vector<std::size_t>& reflexive_points = {});

/// Reflexive subsets for which enumerate_chains will materialize all frames.
inline constexpr std::size_t kDefaultChainEnumerationCap = 16;

/// All 2^n chains on n points, ordered by the bitmask of reflexive points.
/// Throws CapExceeded if n > cap.
std::vector<Frame> enumerate_chains(std::size_t n, std::size_t cap = kDefaultChainEnumerationCap);

/// Reflexive points encoded by bit i of mask.
std::vector<std::size_t> points_of_mask(std::size_t n, std::uint64_t mask);

/// Valuation on 2n+1 worlds: x = z = odd points, y = even points.
/// Throws InputError for n = 0.
Valuation lemma_valuation(std::size_t n);

struct LemmaCertificate {
  std::size_t n = 0;
  ChainSpec chain;
  Valuation valuation;
  /// eval of t^l for l = 0 .. n+1
  std::vector<WorldSet> iterates;
  /// eval of s_m for m = 0 .. n+2
  std::vector<WorldSet> s_values;

  /// Point 0 falsifies t^n.
  bool fails_at_zero = false;
  /// t^(n+1) holds at every point.
  bool global_next = false;
  /// m -> s_m holds at every point, for m = 0 .. n+2.
  std::map<std::size_t, bool> s_global;
  /// l -> exact set of even points falsifying t^l, for l = 0 .. n.
  std::map<std::size_t, WorldSet> claim_table;

  bool valid() const;
};

/// Builds the (2n+1)-chain with the given reflexive points, the lemma
/// valuation, and records the evaluation facts. Throws InputError for n = 0 or
/// out-of-range points.
LemmaCertificate check_lemma(TermStore& store, std::size_t n,
                             const std::vector<std::size_t>& reflexive_points);

}  // namespace modal
