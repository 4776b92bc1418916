#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "conseq/clause.hpp"
#include "conseq/ontology.hpp"
#include "conseq/orders.hpp"

namespace conseq {

enum class StrategyKind : std::uint8_t { Eager, Cautious, Trivial };

enum class AddResult : std::uint8_t { Added, Redundant };

struct Edge {
  ContextId from = kInvalidId;
  ContextId to = kInvalidId;
  FunctionId label = kInvalidId;
};

/// The clause set of one context, with the retrieval indexes the rules need:
/// exact duplicates by hash, clauses by head literal, by (predicate, shape)
/// for the wildcard patterns of hyperresolution, by mentioned function symbol
/// for paramodulation and Succ, unit top-bodied clauses for K1, and the
/// clauses whose head consists solely of predecessor-trigger atoms for Pred.
///
/// Removed clauses stay in the vector (tombstoned) so derivation records can
/// be replayed; all retrieval skips them.
class ClauseStore {
 public:
  using ClauseIdx = std::uint32_t;

  struct AddOutcome {
    AddResult result = AddResult::Redundant;
    ClauseIdx idx = kInvalidId;
    ClauseIdx subsumer = kInvalidId;          // set when result == Redundant via subsumption
    std::vector<ClauseIdx> removed;           // backward-subsumed clauses
  };

  const ContextClause& clause(ClauseIdx i) const { return clauses_[i].clause; }
  bool is_live(ClauseIdx i) const { return !clauses_[i].removed; }
  std::size_t size() const { return clauses_.size(); }
  std::size_t live_count() const { return live_; }

  std::vector<ClauseIdx> live_indices() const {
    std::vector<ClauseIdx> out;
    out.reserve(live_);
    for (ClauseIdx i = 0; i < clauses_.size(); ++i) {
      if (!clauses_[i].removed) out.push_back(i);
    }
    return out;
  }

  bool contains_up_to_redundancy(const ContextClause& c) const {
    if (is_head_tautology(c)) return true;
    return find_subsumer(c).has_value();
  }

  std::optional<ClauseIdx> find_subsumer(const ContextClause& c) const {
    for (ClauseIdx i = 0; i < clauses_.size(); ++i) {
      if (!clauses_[i].removed && subsumes(clauses_[i].clause, c)) return i;
    }
    return std::nullopt;
  }

  /// Inserts the clause unless it is contained up to redundancy, then
  /// eagerly removes every stored clause the new one subsumes (backward
  /// subsumption, the Elim rule applied greedily).
  AddOutcome add(ContextClause c, const TriggerSets& triggers) {
    AddOutcome out;
    if (is_head_tautology(c)) {
      out.result = AddResult::Redundant;
      return out;
    }
    if (auto dup = find_exact(c)) {
      out.result = AddResult::Redundant;
      out.subsumer = *dup;
      return out;
    }
    if (auto sub = find_subsumer(c)) {
      out.result = AddResult::Redundant;
      out.subsumer = *sub;
      return out;
    }

    auto idx = static_cast<ClauseIdx>(clauses_.size());
    for (ClauseIdx i = 0; i < clauses_.size(); ++i) {
      if (!clauses_[i].removed && subsumes(c, clauses_[i].clause)) {
        remove(i);
        out.removed.push_back(i);
      }
    }
    clauses_.push_back(Stored{std::move(c), false, false});
    ++live_;
    index_clause(idx, triggers);
    out.result = AddResult::Added;
    out.idx = idx;
    return out;
  }

  /// Live clauses with the given literal in the head.
  std::vector<ClauseIdx> with_literal(const ContextLiteral& l) const {
    return filter_live(by_literal_, l.encode());
  }

  /// Live clauses with a head atom of the given predicate and shape.
  std::vector<ClauseIdx> with_atom_shape(PredicateId pred, PShape shape) const {
    return filter_live(by_shape_, shape_key(pred, shape));
  }

  /// Live clauses whose head mentions the function symbol anywhere.
  std::vector<ClauseIdx> with_function(FunctionId f) const {
    return filter_live(by_fn_, f);
  }

  /// Is the exact clause (true -> l) stored and live?
  bool has_unit_top(const ContextLiteral& l) const {
    auto it = unit_top_.find(l.encode());
    return it != unit_top_.end() && !clauses_[it->second].removed;
  }

  /// Live clauses whose head consists entirely of predecessor-trigger atoms
  /// (the clause form the Pred rule propagates; an empty head qualifies).
  std::vector<ClauseIdx> pred_eligible() const {
    std::vector<ClauseIdx> out;
    for (ClauseIdx i : pred_eligible_) {
      if (!clauses_[i].removed) out.push_back(i);
    }
    return out;
  }

  bool is_pred_eligible(ClauseIdx i) const { return clauses_[i].pred_eligible; }

 private:
  struct Stored {
    ContextClause clause;
    bool removed = false;
    bool pred_eligible = false;
  };

  static std::uint64_t shape_key(PredicateId pred, PShape shape) {
    return (static_cast<std::uint64_t>(pred) << 3) | static_cast<std::uint64_t>(shape);
  }

  std::optional<ClauseIdx> find_exact(const ContextClause& c) const {
    auto it = by_hash_.find(c.hash());
    if (it == by_hash_.end()) return std::nullopt;
    for (ClauseIdx i : it->second) {
      if (!clauses_[i].removed && clauses_[i].clause == c) return i;
    }
    return std::nullopt;
  }

  void index_clause(ClauseIdx idx, const TriggerSets& triggers) {
    const ContextClause& c = clauses_[idx].clause;
    by_hash_[c.hash()].push_back(idx);
    bool all_pr = true;
    std::vector<FunctionId> fns;
    for (const ContextLiteral& l : c.head) {
      by_literal_[l.encode()].push_back(idx);
      if (l.kind == LitKind::Atom) {
        by_shape_[shape_key(l.atom.pred, l.atom.shape)].push_back(idx);
        if (l.atom.has_fn()) fns.push_back(l.atom.fn);
        if (!triggers.in_pr(l.atom)) all_pr = false;
      } else {
        all_pr = false;
        if (l.lhs.is_fn()) fns.push_back(l.lhs.fn);
        if (l.rhs.is_fn()) fns.push_back(l.rhs.fn);
      }
    }
    detail::sort_unique(fns);
    for (FunctionId f : fns) by_fn_[f].push_back(idx);
    if (c.body.empty() && c.head.size() == 1) {
      unit_top_[c.head[0].encode()] = idx;
    }
    if (all_pr) {
      pred_eligible_.push_back(idx);
      clauses_[idx].pred_eligible = true;
    }
  }

  void remove(ClauseIdx i) {
    clauses_[i].removed = true;
    --live_;
  }

  template <typename K>
  std::vector<ClauseIdx> filter_live(const std::unordered_map<K, std::vector<ClauseIdx>>& index,
                                     K key) const {
    std::vector<ClauseIdx> out;
    auto it = index.find(key);
    if (it == index.end()) return out;
    for (ClauseIdx i : it->second) {
      if (!clauses_[i].removed) out.push_back(i);
    }
    return out;
  }

  std::vector<Stored> clauses_;
  std::size_t live_ = 0;
  std::unordered_map<std::uint64_t, std::vector<ClauseIdx>> by_hash_;
  std::unordered_map<std::uint64_t, std::vector<ClauseIdx>> by_literal_;
  std::unordered_map<std::uint64_t, std::vector<ClauseIdx>> by_shape_;
  std::unordered_map<FunctionId, std::vector<ClauseIdx>> by_fn_;
  std::unordered_map<std::uint64_t, ClauseIdx> unit_top_;
  std::vector<ClauseIdx> pred_eligible_;
};

struct Context {
  ContextId id = kInvalidId;
  std::vector<PTerm> core;  // sorted unique, trigger-shaped atoms
  ContextTermOrder order;
  ClauseStore store;
  bool is_query_context = false;

  Context(ContextId i, std::vector<PTerm> c, ContextTermOrder o)
      : id(i), core(std::move(c)), order(std::move(o)) {
    detail::sort_unique(core);
    for (const PTerm& a : core) {
      CONSEQ_CHECK(a.is_trigger_shaped(), "core atoms must be trigger-shaped");
    }
  }

  bool core_contains(const PTerm& a) const {
    return std::binary_search(core.begin(), core.end(), a);
  }

  /// Clauses with an eligible occurrence of the literal: the literal is in
  /// the head and no other head literal is greater or equal under this
  /// context's order.
  std::vector<std::pair<ClauseStore::ClauseIdx, std::size_t>> eligible_with_literal(
      const ContextLiteral& l) const {
    std::vector<std::pair<ClauseStore::ClauseIdx, std::size_t>> out;
    for (auto idx : store.with_literal(l)) {
      const ContextClause& c = store.clause(idx);
      auto it = std::find(c.head.begin(), c.head.end(), l);
      auto li = static_cast<std::size_t>(it - c.head.begin());
      if (order.no_literal_geq(c.head, li, l)) out.emplace_back(idx, li);
    }
    return out;
  }

  /// Clauses with an eligible head atom matching (pred, shape); for shapes
  /// with a function position this is a wildcard over all function symbols.
  std::vector<std::pair<ClauseStore::ClauseIdx, std::size_t>> eligible_with_atom_shape(
      PredicateId pred, PShape shape) const {
    std::vector<std::pair<ClauseStore::ClauseIdx, std::size_t>> out;
    for (auto idx : store.with_atom_shape(pred, shape)) {
      const ContextClause& c = store.clause(idx);
      for (std::size_t li = 0; li < c.head.size(); ++li) {
        const ContextLiteral& l = c.head[li];
        if (l.kind != LitKind::Atom || l.atom.pred != pred || l.atom.shape != shape) continue;
        if (order.no_literal_geq(c.head, li, l)) out.emplace_back(idx, li);
      }
    }
    return out;
  }
};

struct StrategyResult {
  ContextId context = kInvalidId;
  bool fresh = false;
};

/// The context graph: contexts, f-labelled edges, the shared trigger sets and
/// the per-ontology data the expansion strategies consult. Single writer (the
/// saturation engine); reads are safe at engine-controlled points.
class ContextStructure {
 public:
  ContextStructure(std::shared_ptr<SymbolTable> symbols, TriggerSets triggers)
      : symbols_(std::move(symbols)), triggers_(std::move(triggers)) {}

  const SymbolTable& symbols() const { return *symbols_; }
  const TriggerSets& triggers() const { return triggers_; }

  /// Populates the map used by the cautious strategy: function symbols that
  /// occur in the ontology in exactly one atom of the form B(f(x)).
  void compute_unique_fillers(const Ontology& onto) {
    std::unordered_map<FunctionId, std::vector<PredicateId>> fillers;
    for (const DLClause& c : onto.clauses) {
      for (const DLLiteral& l : c.head) {
        if (l.kind == LitKind::Atom && l.atom.shape == DLAtomShape::BF) {
          auto& v = fillers[l.atom.fn];
          if (std::find(v.begin(), v.end(), l.atom.pred) == v.end()) v.push_back(l.atom.pred);
        }
      }
    }
    unique_filler_.clear();
    for (const auto& [f, preds] : fillers) {
      if (preds.size() == 1) unique_filler_[f] = preds[0];
    }
  }

  std::optional<PredicateId> unique_filler(FunctionId f) const {
    auto it = unique_filler_.find(f);
    if (it == unique_filler_.end()) return std::nullopt;
    return it->second;
  }

  Context& context(ContextId id) { return *contexts_[id]; }
  const Context& context(ContextId id) const { return *contexts_[id]; }
  std::size_t context_count() const { return contexts_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }

  /// The order the strategies hand out: the uniform family with exactly the
  /// predecessor triggers minimal.
  ContextTermOrder strategy_order() const {
    return ContextTermOrder(symbols_.get(), triggers_.pr, {});
  }

  Context& create_context(std::vector<PTerm> core, ContextTermOrder order, bool is_query) {
    auto id = static_cast<ContextId>(contexts_.size());
    contexts_.push_back(std::make_unique<Context>(id, std::move(core), std::move(order)));
    Context& ctx = *contexts_.back();
    ctx.is_query_context = is_query;
    core_map_[core_key(ctx.core)] = id;
    return ctx;
  }

  std::optional<ContextId> find_by_core(const std::vector<PTerm>& core) const {
    std::vector<PTerm> c = core;
    detail::sort_unique(c);
    auto it = core_map_.find(core_key(c));
    if (it == core_map_.end()) return std::nullopt;
    return it->second;
  }

  /// Def.-5 strategies. K1 are the certain successor atoms; the result's core
  /// is always a subset of K1.
  StrategyResult strategy_apply(StrategyKind kind, FunctionId f, const std::vector<PTerm>& k1) {
    switch (kind) {
      case StrategyKind::Eager: return reuse_or_create(k1);
      case StrategyKind::Cautious: {
        auto filler = unique_filler(f);
        if (filler) {
          PTerm core_atom = PTerm::b_x(*filler);
          if (std::find(k1.begin(), k1.end(), core_atom) != k1.end()) {
            return reuse_or_create({core_atom});
          }
        }
        return reuse_or_create({});
      }
      case StrategyKind::Trivial: return reuse_or_create({});
    }
    throw InvariantViolation("bad strategy kind");
  }

  /// True if the edge is new. Edges form a set.
  bool add_edge(ContextId u, ContextId v, FunctionId f) {
    for (std::uint32_t i : out_edges_of(u, f)) {
      if (edges_[i].to == v) return false;
    }
    auto idx = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back(Edge{u, v, f});
    out_index_[out_key(u, f)].push_back(idx);
    in_index_[v].push_back(idx);
    return true;
  }

  /// All f-labelled out-edges of u, for the Succ applicability test.
  std::vector<Edge> find_existing_edge(ContextId u, FunctionId f) const {
    std::vector<Edge> out;
    for (std::uint32_t i : out_edges_of(u, f)) out.push_back(edges_[i]);
    return out;
  }

  std::vector<Edge> out_edges(ContextId u) const {
    std::vector<Edge> out;
    for (const Edge& e : edges_) {
      if (e.from == u) out.push_back(e);
    }
    return out;
  }

  std::vector<Edge> in_edges(ContextId v) const {
    std::vector<Edge> out;
    auto it = in_index_.find(v);
    if (it == in_index_.end()) return out;
    for (std::uint32_t i : it->second) out.push_back(edges_[i]);
    return out;
  }

  std::size_t total_live_clauses() const {
    std::size_t n = 0;
    for (const auto& c : contexts_) n += c->store.live_count();
    return n;
  }

  // ---- exports -------------------------------------------------------------

  std::string core_label(const Context& ctx) const {
    if (ctx.core.empty()) return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < ctx.core.size(); ++i) {
      if (i) out += ", ";
      out += to_string(*symbols_, ctx.core[i]);
    }
    return out;
  }

  /// One line per context (id, core, clause count), one line per edge.
  std::string export_text() const {
    std::ostringstream os;
    os << "contexts " << contexts_.size() << " edges " << edges_.size() << "\n";
    for (const auto& c : contexts_) {
      os << "context v" << c->id << " core={" << core_label(*c) << "} clauses="
         << c->store.live_count() << "\n";
    }
    for (const Edge& e : edges_) {
      os << "edge v" << e.from << " " << symbols_->function_name(e.label) << " v" << e.to << "\n";
    }
    return os.str();
  }

  std::string export_dot() const {
    std::ostringstream os;
    os << "digraph contexts {\n  rankdir=LR;\n  node [shape=box];\n";
    for (const auto& c : contexts_) {
      os << "  v" << c->id << " [label=\"v" << c->id << "\\n" << core_label(*c) << "\"];\n";
    }
    for (const Edge& e : edges_) {
      os << "  v" << e.from << " -> v" << e.to << " [label=\""
         << symbols_->function_name(e.label) << "\"];\n";
    }
    os << "}\n";
    return os.str();
  }

 private:
  StrategyResult reuse_or_create(std::vector<PTerm> core) {
    detail::sort_unique(core);
    auto it = core_map_.find(core_key(core));
    if (it != core_map_.end()) return {it->second, false};
    Context& ctx = create_context(std::move(core), strategy_order(), false);
    return {ctx.id, true};
  }

  static std::vector<std::uint64_t> core_key(const std::vector<PTerm>& core) {
    std::vector<std::uint64_t> key;
    key.reserve(core.size());
    for (const PTerm& a : core) key.push_back(a.encode());
    return key;
  }

  static std::uint64_t out_key(ContextId u, FunctionId f) {
    return (static_cast<std::uint64_t>(u) << 32) | f;
  }

  std::vector<std::uint32_t> out_edges_of(ContextId u, FunctionId f) const {
    auto it = out_index_.find(out_key(u, f));
    if (it == out_index_.end()) return {};
    return it->second;
  }

  std::shared_ptr<SymbolTable> symbols_;
  TriggerSets triggers_;
  std::vector<std::unique_ptr<Context>> contexts_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> out_index_;
  std::unordered_map<ContextId, std::vector<std::uint32_t>> in_index_;
  std::map<std::vector<std::uint64_t>, ContextId> core_map_;
  std::unordered_map<FunctionId, PredicateId> unique_filler_;
};

}  // namespace conseq
