#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "conseq/clause.hpp"
#include "conseq/symbols.hpp"

namespace conseq {

// ---------------------------------------------------------------------------
// Normalized axioms. Inputs must already be in this normal form; arbitrary
// concept expressions and role chains are out of scope and rejected by the
// parser with a diagnostic.
// ---------------------------------------------------------------------------

struct NormalizedAxiom {
  enum class Kind : std::uint8_t {
    Subclass,        // conj of concepts subsumed by disj of concepts
    AtLeast,         // b1 subsumed by >= n role.b2, n >= 1
    ExistsSubclass,  // exists role.b1 subsumed by b2
    AtMost,          // b1 subsumed by <= n role.b2, n >= 1
    SubRole,         // role1 subsumed by role2
    SubRoleInv,      // role1 subsumed by inverse of role2
  };

  Kind kind = Kind::Subclass;
  std::vector<PredicateId> conjuncts;  // Subclass lhs; empty means Top
  std::vector<PredicateId> disjuncts;  // Subclass rhs; empty means Bottom
  PredicateId b1 = kInvalidId;
  PredicateId b2 = kInvalidId;
  PredicateId role = kInvalidId;
  PredicateId role2 = kInvalidId;
  std::uint32_t n = 0;

  static NormalizedAxiom subclass(std::vector<PredicateId> lhs, std::vector<PredicateId> rhs) {
    NormalizedAxiom a;
    a.kind = Kind::Subclass;
    a.conjuncts = std::move(lhs);
    a.disjuncts = std::move(rhs);
    return a;
  }
  static NormalizedAxiom at_least(PredicateId b1, std::uint32_t n, PredicateId role,
                                  PredicateId b2) {
    NormalizedAxiom a;
    a.kind = Kind::AtLeast;
    a.b1 = b1;
    a.n = n;
    a.role = role;
    a.b2 = b2;
    return a;
  }
  static NormalizedAxiom exists_subclass(PredicateId role, PredicateId b1, PredicateId b2) {
    NormalizedAxiom a;
    a.kind = Kind::ExistsSubclass;
    a.role = role;
    a.b1 = b1;
    a.b2 = b2;
    return a;
  }
  static NormalizedAxiom at_most(PredicateId b1, std::uint32_t n, PredicateId role,
                                 PredicateId b2) {
    NormalizedAxiom a;
    a.kind = Kind::AtMost;
    a.b1 = b1;
    a.n = n;
    a.role = role;
    a.b2 = b2;
    return a;
  }
  static NormalizedAxiom sub_role(PredicateId r1, PredicateId r2, bool inverse) {
    NormalizedAxiom a;
    a.kind = inverse ? Kind::SubRoleInv : Kind::SubRole;
    a.role = r1;
    a.role2 = r2;
    return a;
  }
};

struct Ontology {
  std::shared_ptr<SymbolTable> symbols;
  std::vector<DLClause> clauses;
};

// ---------------------------------------------------------------------------
// Clausification. Fresh function symbols and fresh roles are named
// deterministically from the axiom index so traces are reproducible; the '@'
// in their names keeps them disjoint from user identifiers.
// ---------------------------------------------------------------------------

inline Ontology clausify(const std::vector<NormalizedAxiom>& axioms,
                         std::vector<DLClause> raw_clauses,
                         std::shared_ptr<SymbolTable> symbols) {
  Ontology onto;
  onto.symbols = std::move(symbols);
  SymbolTable& st = *onto.symbols;
  onto.clauses = std::move(raw_clauses);

  for (std::size_t ai = 0; ai < axioms.size(); ++ai) {
    const NormalizedAxiom& ax = axioms[ai];
    const std::string tag = "@" + std::to_string(ai + 1);
    switch (ax.kind) {
      case NormalizedAxiom::Kind::Subclass: {
        std::vector<DLAtom> body;
        std::vector<DLLiteral> head;
        for (PredicateId p : ax.conjuncts) body.push_back(DLAtom::b_x(p));
        for (PredicateId p : ax.disjuncts) head.push_back(DLLiteral::make_atom(DLAtom::b_x(p)));
        onto.clauses.emplace_back(std::move(body), std::move(head));
        break;
      }
      case NormalizedAxiom::Kind::AtLeast: {
        CONSEQ_CHECK(ax.n >= 1, "at-least restriction requires a positive count");
        std::vector<FunctionId> fs;
        for (std::uint32_t i = 1; i <= ax.n; ++i) {
          fs.push_back(st.intern_function("f" + std::to_string(i) + tag));
        }
        for (FunctionId f : fs) {
          onto.clauses.emplace_back(std::vector{DLAtom::b_x(ax.b1)},
                                    std::vector{DLLiteral::make_atom(DLAtom::s_xf(ax.role, f))});
          onto.clauses.emplace_back(std::vector{DLAtom::b_x(ax.b1)},
                                    std::vector{DLLiteral::make_atom(DLAtom::b_f(ax.b2, f))});
        }
        for (std::uint32_t i = 0; i < fs.size(); ++i) {
          for (std::uint32_t j = i + 1; j < fs.size(); ++j) {
            onto.clauses.emplace_back(
                std::vector{DLAtom::b_x(ax.b1)},
                std::vector{DLLiteral::make_neq(DLFTerm::f(fs[i]), DLFTerm::f(fs[j]))});
          }
        }
        break;
      }
      case NormalizedAxiom::Kind::ExistsSubclass: {
        onto.clauses.emplace_back(std::vector{DLAtom::s_zx(ax.role, 0), DLAtom::b_x(ax.b1)},
                                  std::vector{DLLiteral::make_atom(DLAtom::b_z(ax.b2, 0))});
        break;
      }
      case NormalizedAxiom::Kind::AtMost: {
        CONSEQ_CHECK(ax.n >= 1, "at-most restriction requires a positive count");
        // Qualified at-most needs the filler in clause bodies, which DL-clause
        // bodies cannot express; a fresh filtering role takes its place.
        PredicateId fresh = st.intern_binary(st.binary_name(ax.role) + "_" +
                                             st.unary_name(ax.b2) + tag);
        onto.clauses.emplace_back(std::vector{DLAtom::s_zx(ax.role, 0), DLAtom::b_x(ax.b2)},
                                  std::vector{DLLiteral::make_atom(DLAtom::s_zx(fresh, 0))});
        std::vector<DLAtom> body{DLAtom::b_x(ax.b1)};
        std::vector<DLLiteral> head;
        for (std::uint32_t i = 0; i <= ax.n; ++i) body.push_back(DLAtom::s_xz(fresh, i));
        for (std::uint32_t i = 0; i <= ax.n; ++i) {
          for (std::uint32_t j = i + 1; j <= ax.n; ++j) {
            head.push_back(DLLiteral::make_eq(DLFTerm::z(i), DLFTerm::z(j)));
          }
        }
        onto.clauses.emplace_back(std::move(body), std::move(head));
        break;
      }
      case NormalizedAxiom::Kind::SubRole: {
        onto.clauses.emplace_back(std::vector{DLAtom::s_zx(ax.role, 0)},
                                  std::vector{DLLiteral::make_atom(DLAtom::s_zx(ax.role2, 0))});
        break;
      }
      case NormalizedAxiom::Kind::SubRoleInv: {
        onto.clauses.emplace_back(std::vector{DLAtom::s_zx(ax.role, 0)},
                                  std::vector{DLLiteral::make_atom(DLAtom::s_xz(ax.role2, 0))});
        break;
      }
    }
  }

  for (const DLClause& c : onto.clauses) {
    auto violations = validate_dl_clause(c);
    CONSEQ_CHECK(violations.empty(), "clausification produced an invalid DL-clause: " +
                                         to_string(st, c) + " (" + violations.front() + ")");
  }
  return onto;
}

// ---------------------------------------------------------------------------
// Successor and predecessor triggers: the atom shapes exchanged between
// adjacent contexts by the Succ and Pred rules.
// ---------------------------------------------------------------------------

struct TriggerSets {
  std::vector<PTerm> su;  // shapes B(x), S(x,y), S(y,x); sorted unique
  std::vector<PTerm> pr;  // shapes B(y), S(x,y), S(y,x); sorted unique

  bool in_pr(const PTerm& a) const { return pr_set.count(a.encode()) != 0; }
  bool in_su(const PTerm& a) const { return su_set.count(a.encode()) != 0; }

  void rebuild_index() {
    su_set.clear();
    pr_set.clear();
    for (const PTerm& a : su) su_set.insert(a.encode());
    for (const PTerm& a : pr) pr_set.insert(a.encode());
  }

  std::unordered_set<std::uint64_t> su_set, pr_set;
};

inline PTerm swap_xy(const PTerm& a) {
  switch (a.shape) {
    case PShape::BX: return PTerm::b_y(a.pred);
    case PShape::BY: return PTerm::b_x(a.pred);
    case PShape::SXY: return PTerm::s_yx(a.pred);
    case PShape::SYX: return PTerm::s_xy(a.pred);
    default: break;
  }
  throw InvariantViolation("swap_xy requires a function-free atom");
}

/// Su is the smallest set with, per clause body: B(x) in the body adds B(x);
/// S(x,z) adds S(x,y); S(z,x) adds S(y,x). Pr is Su with x and y swapped,
/// plus B(y) for every unary predicate occurring in the ontology.
inline TriggerSets compute_triggers(const Ontology& onto) {
  TriggerSets t;
  std::unordered_set<std::uint64_t> seen_su;
  std::unordered_set<PredicateId> unary_preds;
  auto add_su = [&](PTerm a) {
    if (seen_su.insert(a.encode()).second) t.su.push_back(a);
  };
  for (const DLClause& c : onto.clauses) {
    for (const DLAtom& a : c.body) {
      switch (a.shape) {
        case DLAtomShape::BX:
          unary_preds.insert(a.pred);
          add_su(PTerm::b_x(a.pred));
          break;
        case DLAtomShape::SXZ: add_su(PTerm::s_xy(a.pred)); break;
        case DLAtomShape::SZX: add_su(PTerm::s_yx(a.pred)); break;
        default: break;
      }
    }
    for (const DLLiteral& l : c.head) {
      if (l.kind == LitKind::Atom && !l.atom.is_binary()) unary_preds.insert(l.atom.pred);
    }
  }
  std::unordered_set<std::uint64_t> seen_pr;
  for (const PTerm& a : t.su) {
    PTerm s = swap_xy(a);
    if (seen_pr.insert(s.encode()).second) t.pr.push_back(s);
  }
  for (PredicateId b : unary_preds) {
    PTerm a = PTerm::b_y(b);
    if (seen_pr.insert(a.encode()).second) t.pr.push_back(a);
  }
  detail::sort_unique(t.su);
  detail::sort_unique(t.pr);
  t.rebuild_index();
  return t;
}

/// Extends Pr with B(y) for additional predicates (the query predicates of a
/// reasoning task, which need not occur in the ontology). A superset of Pr
/// preserves soundness and completeness; it only widens what the Pred rule
/// may propagate and what the orders keep minimal.
inline void extend_pr_with_predicates(TriggerSets& t, const std::vector<PredicateId>& preds) {
  bool changed = false;
  for (PredicateId b : preds) {
    PTerm a = PTerm::b_y(b);
    if (!t.in_pr(a)) {
      t.pr.push_back(a);
      changed = true;
    }
  }
  if (changed) {
    detail::sort_unique(t.pr);
    t.rebuild_index();
  }
}

}  // namespace conseq
