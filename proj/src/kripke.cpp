#include "modal/kripke.hpp"

#include <algorithm>
#include <sstream>

#include "modal/diagnostics.hpp"
#include "modal/error.hpp"

namespace modal {

WorldSet WorldSet::from_indices(std::size_t universe, std::span<const std::size_t> worlds) {
  if (universe > kCapacity) throw InputError("world set universe exceeds capacity");
  WorldSet s(universe);
  for (auto w : worlds) {
    if (w >= universe) {
      std::ostringstream os;
      os << "world " << w << " out of range for a frame with " << universe << " worlds";
      throw InputError(os.str());
    }
    s.insert(w);
  }
  return s;
}

namespace {

void check_world_count(std::size_t worlds, std::size_t max_worlds) {
  std::size_t limit = std::min(max_worlds, WorldSet::kCapacity);
  if (worlds > limit) {
    std::ostringstream os;
    os << "frame has " << worlds << " worlds; the limit is " << limit;
    throw InputError(os.str());
  }
}

}  // namespace

Frame::Frame(std::size_t worlds, std::size_t max_worlds) {
  check_world_count(worlds, max_worlds);
  succ_.assign(worlds, WorldSet(worlds));
  pred_.assign(worlds, WorldSet(worlds));
}

Frame Frame::from_edges(std::size_t worlds, const std::vector<Edge>& edges,
                        std::size_t max_worlds) {
  Frame f(worlds, max_worlds);
  for (auto [from, to] : edges) {
    if (from >= worlds || to >= worlds) {
      std::ostringstream os;
      os << "edge [" << from << "," << to << "] out of range for a frame with " << worlds
         << " worlds";
      throw InputError(os.str());
    }
    f.succ_[from].insert(to);
    f.pred_[to].insert(from);
  }
  return f;
}

Frame Frame::from_successors(std::vector<WorldSet> successors, std::size_t max_worlds) {
  std::size_t n = successors.size();
  Frame f(n, max_worlds);
  for (std::size_t w = 0; w < n; ++w) {
    if (successors[w].universe() != n) throw InputError("successor set has the wrong universe");
    successors[w].for_each([&](std::size_t v) { f.pred_[v].insert(w); });
  }
  f.succ_ = std::move(successors);
  return f;
}

WorldSet Frame::box(const WorldSet& s) const {
  WorldSet out(world_count());
  for (std::size_t w = 0; w < world_count(); ++w) {
    if (succ_[w].is_subset_of(s)) out.insert(w);
  }
  return out;
}

WorldSet Frame::dia(const WorldSet& s) const {
  WorldSet out(world_count());
  s.for_each([&](std::size_t v) { out |= pred_[v]; });
  return out;
}

std::vector<Edge> Frame::edges() const {
  std::vector<Edge> out;
  for (std::size_t w = 0; w < world_count(); ++w) {
    succ_[w].for_each([&](std::size_t v) { out.emplace_back(w, v); });
  }
  return out;
}

Valuation Valuation::with(std::string_view name, WorldSet set) const {
  Map copy = *map_;
  copy.insert_or_assign(std::string(name), std::move(set));
  return Valuation(std::move(copy));
}

Model::Model(Frame frame, Valuation valuation)
    : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (const auto& [name, set] : valuation_.entries()) {
    if (set.universe() != frame_.world_count()) {
      std::ostringstream os;
      os << "valuation of '" << name << "' ranges over " << set.universe()
         << " worlds but the frame has " << frame_.world_count();
      throw InputError(os.str());
    }
  }
}

Evaluator::Evaluator(const TermStore& store, Model model)
    : store_(&store), model_(std::move(model)) {}

WorldSet Evaluator::eval(Term root) {
  if (values_.size() < store_->size()) {
    values_.resize(store_->size());
    known_.resize(store_->size(), 0);
  }
  const Frame& frame = model_.frame();
  std::vector<Term> stack{root};
  while (!stack.empty()) {
    Term t = stack.back();
    if (known_[t.id()]) {
      stack.pop_back();
      continue;
    }
    Op op = store_->op(t);
    int n = arity(op);
    if (n >= 1 && !known_[store_->left(t).id()]) {
      stack.push_back(store_->left(t));
      continue;
    }
    if (n == 2 && !known_[store_->right(t).id()]) {
      stack.push_back(store_->right(t));
      continue;
    }
    stack.pop_back();
    WorldSet r;
    switch (op) {
      case Op::Var:
        if (const WorldSet* s = model_.valuation().find(store_->name(t))) {
          r = *s;
        } else {
          r = frame.none();
          const std::string& name = store_->name(t);
          if (std::find(warned_.begin(), warned_.end(), name) == warned_.end()) {
            warned_.push_back(name);
            warn("variable '" + name + "' is not in the valuation; treating it as empty");
          }
        }
        break;
      case Op::Top:
        r = frame.all();
        break;
      case Op::Bot:
        r = frame.none();
        break;
      case Op::Not:
        r = ~value(store_->child(t));
        break;
      case Op::And:
        r = value(store_->left(t)) & value(store_->right(t));
        break;
      case Op::Or:
        r = value(store_->left(t)) | value(store_->right(t));
        break;
      case Op::Imp:
        r = ~value(store_->left(t)) | value(store_->right(t));
        break;
      case Op::Box:
        r = frame.box(value(store_->child(t)));
        break;
      case Op::Dia:
        r = frame.dia(value(store_->child(t)));
        break;
    }
    values_[t.id()] = r;
    known_[t.id()] = 1;
  }
  return values_[root.id()];
}

WorldSet eval(const TermStore& store, const Model& model, Term t) {
  return Evaluator(store, model).eval(t);
}

WorldSet eval_iterated(const TermStore& store, const Model& model, Term t, Term pivot,
                       Term base_term, std::size_t k) {
  WorldSet cur = eval(store, model, base_term);
  const std::string& name = store.name(pivot);
  for (std::size_t i = 0; i < k; ++i) {
    Model step(model.frame(), model.valuation().with(name, cur));
    WorldSet next = eval(store, step, t);
    if (next == cur) break;  // fixpoint: every further step is the identity
    cur = next;
  }
  return cur;
}

bool holds_globally(Evaluator& ev, const Statement& s) {
  WorldSet l = ev.eval(s.lhs);
  WorldSet r = ev.eval(s.rhs);
  return s.kind == Relation::Eq ? l == r : l.is_subset_of(r);
}

bool holds_globally(const TermStore& store, const Model& model, const Statement& s) {
  Evaluator ev(store, model);
  return holds_globally(ev, s);
}

}  // namespace modal
