#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modal/terms.hpp"
#include "modal/world_set.hpp"

namespace modal {

/// Default limit on the number of worlds a frame may have. The hard limit is
/// WorldSet::kCapacity.
inline constexpr std::size_t kDefaultMaxWorlds = 64;

using Edge = std::pair<std::size_t, std::size_t>;

/// Finite Kripke frame. Immutable once built.
class Frame {
 public:
  Frame() = default;
  /// Frame without edges.
  explicit Frame(std::size_t worlds, std::size_t max_worlds = kDefaultMaxWorlds);

  /// Duplicate edges are ignored; out-of-range endpoints throw InputError.
  static Frame from_edges(std::size_t worlds, const std::vector<Edge>& edges,
                          std::size_t max_worlds = kDefaultMaxWorlds);
  static Frame from_successors(std::vector<WorldSet> successors,
                               std::size_t max_worlds = kDefaultMaxWorlds);

  std::size_t world_count() const { return succ_.size(); }
  const WorldSet& successors(std::size_t w) const { return succ_[w]; }
  const WorldSet& predecessors(std::size_t w) const { return pred_[w]; }
  bool related(std::size_t from, std::size_t to) const { return succ_[from].contains(to); }

  WorldSet none() const { return WorldSet(world_count()); }
  WorldSet all() const { return WorldSet::full(world_count()); }

  /// {w : every successor of w is in s}
  WorldSet box(const WorldSet& s) const;
  /// {w : some successor of w is in s}
  WorldSet dia(const WorldSet& s) const;

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Frame& a, const Frame& b) { return a.succ_ == b.succ_; }

 private:
  std::vector<WorldSet> succ_;
  std::vector<WorldSet> pred_;
};

/// Variable name -> world set. Copy-on-write: copies share storage until one
/// of them is modified through with().
class Valuation {
 public:
  using Map = std::map<std::string, WorldSet, std::less<>>;

  Valuation() : map_(std::make_shared<const Map>()) {}
  explicit Valuation(Map m) : map_(std::make_shared<const Map>(std::move(m))) {}

  /// Returns a valuation that additionally (or instead) maps name to set.
  Valuation with(std::string_view name, WorldSet set) const;

  const WorldSet* find(std::string_view name) const {
    auto it = map_->find(name);
    return it == map_->end() ? nullptr : &it->second;
  }

  const Map& entries() const { return *map_; }
  std::size_t size() const { return map_->size(); }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.map_ == b.map_ || *a.map_ == *b.map_;
  }

 private:
  std::shared_ptr<const Map> map_;
};

/// A frame with a valuation. Every world set in the valuation must range over
/// exactly the frame's worlds.
class Model {
 public:
  Model(Frame frame, Valuation valuation);

  const Frame& frame() const { return frame_; }
  const Valuation& valuation() const { return valuation_; }

 private:
  Frame frame_;
  Valuation valuation_;
};

/// Memoizing evaluator bound to one model. Each DAG node is evaluated at most
/// once per evaluator; the model is fixed for the evaluator's lifetime, so the
/// cache never goes stale.
///
/// Variables the valuation does not mention evaluate to the empty set; a
/// warning is issued once per variable.
class Evaluator {
 public:
  Evaluator(const TermStore& store, Model model);

  WorldSet eval(Term t);
  const Model& model() const { return model_; }

 private:
  const WorldSet& value(Term t) const { return values_[t.id()]; }

  const TermStore* store_;
  Model model_;
  std::vector<WorldSet> values_;
  std::vector<char> known_;
  std::vector<std::string> warned_;
};

/// {w : w satisfies t}
WorldSet eval(const TermStore& store, const Model& model, Term t);

/// Semantic iteration: evaluates base_term, then applies the term function of
/// t (in the pivot argument) k times. Equal to eval of iterate(t, pivot, k)
/// with pivot bound to base_term.
WorldSet eval_iterated(const TermStore& store, const Model& model, Term t, Term pivot,
                       Term base_term, std::size_t k);

/// Global truth: Eq compares extensions, Leq requires inclusion.
bool holds_globally(const TermStore& store, const Model& model, const Statement& s);
bool holds_globally(Evaluator& ev, const Statement& s);

}  // namespace modal
