#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "modal/algebra.hpp"
#include "modal/kripke.hpp"
#include "modal/terms.hpp"

namespace modal {

/// Sigma = {y <= x, x <= z, x = t(x, u)} and Pi = {t^k(y, u) <= z : k <= k_max}
/// for a term t(x, u) iterated in x. y and z are fresh; parameters of t that
/// collide with them are renamed.
struct SigmaPi {
  Term x;  // the pivot
  Term y;
  Term z;
  /// t with clashing parameters renamed.
  Term term;
  /// Original parameter -> renamed parameter, for renamed ones only.
  Substitution renaming;
  std::vector<Statement> sigma;
  std::vector<Statement> pi;

  /// t^k(y, u) <= z
  Statement pi_at(TermStore& store, std::size_t k) const;
};

/// Renaming appends "_1", "_2", ... to the clashing name, taking the first
/// suffix unused in t.
SigmaPi build_sigma_pi(TermStore& store, Term t, Term pivot, std::size_t k_max);

struct ConsequenceProblem {
  std::vector<Statement> premises;
  Statement conclusion;
  std::vector<Frame> frames;
  SearchOptions options;
};

struct ConsequenceCountermodel {
  std::size_t frame_index = 0;
  Valuation valuation;
  /// Lowest world at which the conclusion fails.
  std::size_t failing_world = 0;
};

struct ConsequenceResult {
  /// No countermodel exists among the supplied frames.
  bool holds = true;
  /// Always false: only the supplied finite frames were searched.
  bool complete = false;
  std::optional<ConsequenceCountermodel> countermodel;
  std::uint64_t pairs_tried = 0;
};

/// Searches every (frame, valuation) pair, frames in order, for one where all
/// premises hold globally and the conclusion does not. Throws CapExceeded if a
/// frame's valuation space exceeds options.cap_bits; sampling is never used.
ConsequenceResult check_consequence(const TermStore& store, const ConsequenceProblem& problem);

}  // namespace modal
