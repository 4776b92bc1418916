#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <unordered_set>
#include <vector>

#include "conseq/symbols.hpp"
#include "conseq/terms.hpp"

namespace conseq {

enum class OrderResult : std::uint8_t { LT, EQ, GT, INCOMPARABLE };

inline OrderResult flip(OrderResult r) {
  switch (r) {
    case OrderResult::LT: return OrderResult::GT;
    case OrderResult::GT: return OrderResult::LT;
    default: return r;
  }
}

/// A term as seen by the orders: a context F-term, a context P-term, or the
/// distinguished top constant that atoms are implicitly equated with. Top
/// only ever appears in literal multisets and is smaller than everything.
struct OrdTerm {
  enum class Kind : std::uint8_t { Top = 0, F = 1, P = 2 };
  Kind kind = Kind::Top;
  FTerm f;
  PTerm p;

  static OrdTerm top() { return {}; }
  static OrdTerm of(FTerm t) {
    OrdTerm o;
    o.kind = Kind::F;
    o.f = t;
    return o;
  }
  static OrdTerm of(PTerm t) {
    OrdTerm o;
    o.kind = Kind::P;
    o.p = t;
    return o;
  }

  std::uint64_t encode() const {
    switch (kind) {
      case Kind::Top: return 0;
      case Kind::F: return (1ull << 62) | f.encode();
      case Kind::P: return (2ull << 62) | p.encode();
    }
    return 0;
  }
  friend bool operator==(const OrdTerm& a, const OrdTerm& b) { return a.encode() == b.encode(); }
};

/// Total well-founded symbol precedence: interning order, with predicate
/// symbols ranked above all function symbols and the top constant below
/// everything. Fixed this way for determinism; the calculus permits any
/// total well-founded choice.
class Precedence {
 public:
  explicit Precedence(const SymbolTable* st) : st_(st) {}

  std::uint64_t function_rank(FunctionId f) const { return st_->function_rank(f); }
  std::uint64_t head_rank(const PTerm& a) const {
    // All predicates outrank all function symbols; within the predicate band,
    // interning order decides.
    return (1ull << 32) + (a.is_binary() ? st_->binary_rank(a.pred) : st_->unary_rank(a.pred));
  }
  bool fn_greater(FunctionId f, FunctionId g) const { return function_rank(f) > function_rank(g); }

  const SymbolTable* symbols() const { return st_; }

 private:
  const SymbolTable* st_;
};

/// A context term order: a lexicographic path order over the closed context
/// term shapes (x and y treated as constants with x above y), relaxed so that
/// designated minimal atoms are never strictly above any context term other
/// than x and y.
///
/// Minimal atoms come in two tiers:
///  - pr-tier: the predecessor-trigger atoms (shapes B(y), S(x,y), S(y,x)).
///    These are never above anything outside {x, y}.
///  - query-tier: goal atoms of shape B(x). These may additionally be above
///    other minimal atoms, which keeps the order monotone under argument
///    replacement (B(x) must stay above the pr-tier atom B(y)); every B(x)
///    in the query tier must have B(y) in the pr tier.
///
/// Orders are immutable values; intersecting two orders unions their minimal
/// sets (more minimal atoms = strictly fewer comparable pairs).
class ContextTermOrder {
 public:
  ContextTermOrder(const SymbolTable* st, std::vector<PTerm> pr_minimal,
                   std::vector<PTerm> query_minimal)
      : prec_(st) {
    auto sets = std::make_shared<Sets>();
    for (const PTerm& a : pr_minimal) {
      CONSEQ_CHECK(a.is_trigger_shaped() && a.shape != PShape::BX,
                   "pr-tier minimal atoms must have shape B(y), S(x,y) or S(y,x)");
      sets->pr.insert(a.encode());
    }
    for (const PTerm& a : query_minimal) {
      CONSEQ_CHECK(a.shape == PShape::BX, "query-tier minimal atoms must have shape B(x)");
      CONSEQ_CHECK(sets->pr.count(PTerm::b_y(a.pred).encode()) != 0,
                   "query-tier atom without matching B(y) in the pr tier");
      sets->query.insert(a.encode());
    }
    sets_ = std::move(sets);
  }

  const Precedence& precedence() const { return prec_; }

  bool is_minimal(const PTerm& a) const {
    return sets_->pr.count(a.encode()) != 0 || sets_->query.count(a.encode()) != 0;
  }
  bool is_pr_minimal(const PTerm& a) const { return sets_->pr.count(a.encode()) != 0; }
  bool is_query_minimal(const PTerm& a) const { return sets_->query.count(a.encode()) != 0; }

  /// Order intersection, realized as a union of the minimal-atom sets.
  /// Idempotent and commutative; returns *this unchanged when nothing is new.
  ContextTermOrder intersect(const ContextTermOrder& other) const {
    bool subset = true;
    for (std::uint64_t e : other.sets_->pr) {
      if (sets_->pr.count(e) == 0) { subset = false; break; }
    }
    if (subset) {
      for (std::uint64_t e : other.sets_->query) {
        if (sets_->query.count(e) == 0) { subset = false; break; }
      }
    }
    if (subset) return *this;
    auto sets = std::make_shared<Sets>(*sets_);
    sets->pr.insert(other.sets_->pr.begin(), other.sets_->pr.end());
    sets->query.insert(other.sets_->query.begin(), other.sets_->query.end());
    ContextTermOrder merged = *this;
    merged.sets_ = std::move(sets);
    return merged;
  }

  bool same_relation(const ContextTermOrder& other) const {
    return sets_ == other.sets_ ||
           (sets_->pr == other.sets_->pr && sets_->query == other.sets_->query);
  }

  // ---- term comparison -----------------------------------------------------

  OrderResult compare_terms(const OrdTerm& s, const OrdTerm& t) const {
    if (s == t) return OrderResult::EQ;
    if (t.kind == OrdTerm::Kind::Top) return OrderResult::GT;
    if (s.kind == OrdTerm::Kind::Top) return OrderResult::LT;
    OrderResult r = lpo(s, t);
    if (r == OrderResult::GT && !allowed_above(s, t)) return OrderResult::INCOMPARABLE;
    if (r == OrderResult::LT && !allowed_above(t, s)) return OrderResult::INCOMPARABLE;
    return r;
  }

  OrderResult compare_terms(const PTerm& s, const PTerm& t) const {
    return compare_terms(OrdTerm::of(s), OrdTerm::of(t));
  }
  OrderResult compare_terms(const FTerm& s, const FTerm& t) const {
    return compare_terms(OrdTerm::of(s), OrdTerm::of(t));
  }

  // ---- literal comparison via the multiset extension ------------------------

  /// Literal order: s != t is identified with {s,s,t,t}, s = t with {s,t}, and
  /// an atom A with {A, top}; the results are compared with the multiset
  /// extension of the term order.
  OrderResult compare_literals(const ContextLiteral& a, const ContextLiteral& b) const {
    if (a == b) return OrderResult::EQ;
    std::vector<OrdTerm> ma = literal_multiset(a);
    std::vector<OrdTerm> mb = literal_multiset(b);
    if (multiset_greater(ma, mb)) return OrderResult::GT;
    if (multiset_greater(mb, ma)) return OrderResult::LT;
    return OrderResult::INCOMPARABLE;
  }

  /// Literal transcription of the multiset extension: M > N iff M != N and for
  /// each n in N \ M some m in M \ N exists with m > n (multiset difference).
  bool multiset_greater(std::span<const OrdTerm> m, std::span<const OrdTerm> n) const {
    std::vector<OrdTerm> mOnly, nOnly;
    multiset_difference(m, n, mOnly, nOnly);
    if (mOnly.empty() && nOnly.empty()) return false;  // M == N
    for (const OrdTerm& nt : nOnly) {
      bool dominated = false;
      for (const OrdTerm& mt : mOnly) {
        if (compare_terms(mt, nt) == OrderResult::GT) {
          dominated = true;
          break;
        }
      }
      if (!dominated) return false;
    }
    return true;
  }

  /// True iff no literal of `d` (skipping index `skip` when in range) is
  /// greater than or equal to `l`. This is the maximality test written as
  /// "Delta not >= L" in the rule side conditions.
  bool no_literal_geq(std::span<const ContextLiteral> d, std::size_t skip,
                      const ContextLiteral& l) const {
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i == skip) continue;
      OrderResult r = compare_literals(d[i], l);
      if (r == OrderResult::GT || r == OrderResult::EQ) return false;
    }
    return true;
  }
  bool no_literal_geq(std::span<const ContextLiteral> d, const ContextLiteral& l) const {
    return no_literal_geq(d, d.size(), l);
  }

  static std::vector<OrdTerm> literal_multiset(const ContextLiteral& l) {
    if (l.kind == LitKind::Atom) return {OrdTerm::of(l.atom), OrdTerm::top()};
    if (l.kind == LitKind::Eq) return {OrdTerm::of(l.lhs), OrdTerm::of(l.rhs)};
    return {OrdTerm::of(l.lhs), OrdTerm::of(l.lhs), OrdTerm::of(l.rhs), OrdTerm::of(l.rhs)};
  }

 private:
  struct Sets {
    std::unordered_set<std::uint64_t> pr;
    std::unordered_set<std::uint64_t> query;
  };

  enum class MinClass : std::uint8_t { None, Pr, Query };

  MinClass min_class(const PTerm& a) const {
    if (sets_->pr.count(a.encode()) != 0) return MinClass::Pr;
    if (sets_->query.count(a.encode()) != 0) return MinClass::Query;
    return MinClass::None;
  }

  /// May `a` be strictly above `b` despite the minimal-atom relaxation?
  bool allowed_above(const OrdTerm& a, const OrdTerm& b) const {
    if (a.kind != OrdTerm::Kind::P) return true;
    MinClass c = min_class(a.p);
    if (c == MinClass::None) return true;
    if (b.kind == OrdTerm::Kind::F && b.f.kind != FKind::Fn) return true;  // x and y
    if (c == MinClass::Query && b.kind == OrdTerm::Kind::P &&
        min_class(b.p) != MinClass::None) {
      return true;
    }
    return false;
  }

  // Plain LPO over the closed shapes, before the relaxation. Total on the
  // shapes that actually occur (x and y are constants below every function
  // symbol, predicates are above function symbols).
  OrderResult lpo(const OrdTerm& s, const OrdTerm& t) const {
    if (s.kind == OrdTerm::Kind::F && t.kind == OrdTerm::Kind::F) return lpo_f(s.f, t.f);
    if (s.kind == OrdTerm::Kind::P && t.kind == OrdTerm::Kind::F) return OrderResult::GT;
    if (s.kind == OrdTerm::Kind::F && t.kind == OrdTerm::Kind::P) return OrderResult::LT;
    return lpo_p(s.p, t.p);
  }

  OrderResult lpo_f(const FTerm& s, const FTerm& t) const {
    // y < x < f(x) for every f; f(x) vs g(x) by symbol precedence.
    auto key = [&](const FTerm& u) -> std::uint64_t {
      switch (u.kind) {
        case FKind::Y: return 0;
        case FKind::X: return 1;
        case FKind::Fn: return 2 + prec_.function_rank(u.fn);
      }
      return 0;
    };
    std::uint64_t a = key(s), b = key(t);
    return a > b ? OrderResult::GT : OrderResult::LT;  // equality handled by caller
  }

  OrderResult lpo_p(const PTerm& s, const PTerm& t) const {
    std::uint64_t hs = prec_.head_rank(s), ht = prec_.head_rank(t);
    if (hs != ht) return hs > ht ? OrderResult::GT : OrderResult::LT;
    // Same head symbol: lexicographic comparison of the argument tuples. A
    // P-term is above every F-term, so the subterm side conditions of the LPO
    // hold automatically.
    auto args = [](const PTerm& a) -> std::array<FTerm, 2> {
      switch (a.shape) {
        case PShape::BY: return {FTerm::y(), FTerm::y()};
        case PShape::BX: return {FTerm::x(), FTerm::x()};
        case PShape::BF: return {FTerm::f(a.fn), FTerm::f(a.fn)};
        case PShape::SXY: return {FTerm::x(), FTerm::y()};
        case PShape::SYX: return {FTerm::y(), FTerm::x()};
        case PShape::SXF: return {FTerm::x(), FTerm::f(a.fn)};
        case PShape::SFX: return {FTerm::f(a.fn), FTerm::x()};
      }
      return {FTerm::y(), FTerm::y()};
    };
    auto as = args(s), at = args(t);
    if (!(as[0] == at[0])) return lpo_f(as[0], at[0]);
    return lpo_f(as[1], at[1]);
  }

  static void multiset_difference(std::span<const OrdTerm> m, std::span<const OrdTerm> n,
                                  std::vector<OrdTerm>& mOnly, std::vector<OrdTerm>& nOnly) {
    std::vector<bool> used(n.size(), false);
    for (const OrdTerm& mt : m) {
      bool matched = false;
      for (std::size_t j = 0; j < n.size(); ++j) {
        if (!used[j] && n[j] == mt) {
          used[j] = true;
          matched = true;
          break;
        }
      }
      if (!matched) mOnly.push_back(mt);
    }
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (!used[j]) nOnly.push_back(n[j]);
    }
  }

  Precedence prec_;
  std::shared_ptr<const Sets> sets_;
};

}  // namespace conseq
