#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "conseq/terms.hpp"

namespace conseq {

namespace detail {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

/// 64-bit feature mask: one bit per element hash. If subset(a, b) fails on the
/// masks it fails on the sets, which prunes most subsumption candidates.
template <typename T>
std::uint64_t feature_mask(const std::vector<T>& v) {
  std::uint64_t m = 0;
  for (const T& e : v) m |= 1ull << (e.encode() % 64);
  return m;
}

inline bool mask_subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

template <typename T>
bool sorted_subset(const std::vector<T>& a, const std::vector<T>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// DL-clauses: bodies contain only atoms of shape B(x), S(x,z), S(z,x); heads
// contain arbitrary DL-literals; every head z also occurs in the body.
// ---------------------------------------------------------------------------

struct DLClause {
  std::vector<DLAtom> body;     // sorted, duplicate-free
  std::vector<DLLiteral> head;  // sorted, duplicate-free

  DLClause() = default;
  DLClause(std::vector<DLAtom> b, std::vector<DLLiteral> h)
      : body(std::move(b)), head(std::move(h)) {
    detail::sort_unique(body);
    detail::sort_unique(head);
  }

  friend bool operator==(const DLClause& a, const DLClause& b) {
    return a.body == b.body && a.head == b.head;
  }
};

/// Checks the DL-clause well-formedness constraints and returns the violated
/// ones, empty when the clause is fine.
inline std::vector<std::string> validate_dl_clause(const DLClause& c) {
  std::vector<std::string> out;
  std::vector<bool> body_z;
  auto see_z = [&](std::uint32_t z) {
    if (z >= body_z.size()) body_z.resize(z + 1, false);
    body_z[z] = true;
  };
  for (const DLAtom& a : c.body) {
    switch (a.shape) {
      case DLAtomShape::BX: break;
      case DLAtomShape::SXZ:
      case DLAtomShape::SZX: see_z(a.z); break;
      default:
        out.push_back("body atom not of shape B(x), S(x,z) or S(z,x)");
        break;
    }
  }
  auto z_ok = [&](std::uint32_t z) { return z < body_z.size() && body_z[z]; };
  for (const DLLiteral& l : c.head) {
    if (l.kind == LitKind::Atom) {
      if (l.atom.has_z() && !z_ok(l.atom.z)) out.push_back("head variable z not bound in body");
    } else {
      for (const DLFTerm* t : {&l.lhs, &l.rhs}) {
        if (t->kind == DLFKind::Z && !z_ok(t->z)) out.push_back("head variable z not bound in body");
      }
      if (l.lhs.kind == DLFKind::X || l.rhs.kind == DLFKind::X) {
        out.push_back("head equality over x is not a DL-literal");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Context clauses: function-free context atoms in the body, context literals
// in the head. Bodies and heads are duplicate-free canonical sets so that
// exact duplicates hash equal.
// ---------------------------------------------------------------------------

struct ContextClause {
  std::vector<PTerm> body;            // sorted, duplicate-free, function-free shapes
  std::vector<ContextLiteral> head;   // sorted, duplicate-free

  ContextClause() = default;
  ContextClause(std::vector<PTerm> b, std::vector<ContextLiteral> h)
      : body(std::move(b)), head(std::move(h)) {
    for (const PTerm& a : body) {
      CONSEQ_CHECK(a.is_function_free(), "context clause body atom must be function-free");
    }
    detail::sort_unique(body);
    detail::sort_unique(head);
    body_mask_ = detail::feature_mask(body);
    head_mask_ = detail::feature_mask(head);
    std::uint64_t h64 = 0xcbf29ce484222325ull;
    for (const PTerm& a : body) h64 = detail::mix(h64, a.encode());
    h64 = detail::mix(h64, 0x51ull);
    for (const ContextLiteral& l : head) h64 = detail::mix(h64, l.encode());
    hash_ = h64;
  }

  std::uint64_t hash() const { return hash_; }
  std::uint64_t body_mask() const { return body_mask_; }
  std::uint64_t head_mask() const { return head_mask_; }

  bool body_empty() const { return body.empty(); }
  bool head_empty() const { return head.empty(); }

  friend bool operator==(const ContextClause& a, const ContextClause& b) {
    return a.hash_ == b.hash_ && a.body == b.body && a.head == b.head;
  }
  friend bool operator!=(const ContextClause& a, const ContextClause& b) { return !(a == b); }

 private:
  std::uint64_t hash_ = 0;
  std::uint64_t body_mask_ = 0;
  std::uint64_t head_mask_ = 0;
};

/// True iff the head contains s = s, or both s = t and s != t. Clauses with
/// such heads can be eliminated outright. Initialization tautologies A -> A
/// are not of this form and are deliberately kept.
inline bool is_head_tautology(const ContextClause& c) {
  for (const ContextLiteral& l : c.head) {
    if (l.kind == LitKind::Eq) {
      if (l.lhs == l.rhs) return true;
      if (std::find(c.head.begin(), c.head.end(), ContextLiteral::make_neq(l.lhs, l.rhs)) !=
          c.head.end()) {
        return true;
      }
    }
  }
  return false;
}

/// `sub` subsumes `sup` when its body and head are subsets of the other's.
inline bool subsumes(const ContextClause& sub, const ContextClause& sup) {
  if (!detail::mask_subset(sub.body_mask(), sup.body_mask())) return false;
  if (!detail::mask_subset(sub.head_mask(), sup.head_mask())) return false;
  return detail::sorted_subset(sub.body, sup.body) && detail::sorted_subset(sub.head, sup.head);
}

/// Containment up to redundancy: the clause is a head tautology, or some
/// clause of U subsumes it.
inline bool contains_up_to_redundancy(std::span<const ContextClause> u, const ContextClause& c) {
  if (is_head_tautology(c)) return true;
  for (const ContextClause& d : u) {
    if (subsumes(d, c)) return true;
  }
  return false;
}

struct SimplifiedClause {
  bool tombstone = false;   // head tautology; drop the clause
  ContextClause clause;     // valid iff !tombstone
};

/// Canonicalizes (deduplicates) a clause and tombstones head tautologies.
inline SimplifiedClause simplify_head(ContextClause c) {
  SimplifiedClause out;
  if (is_head_tautology(c)) {
    out.tombstone = true;
    return out;
  }
  out.clause = std::move(c);  // construction already deduplicated
  return out;
}

// ---------------------------------------------------------------------------
// Query clauses: all literals are atoms of shape B(x).
// ---------------------------------------------------------------------------

struct QueryClause {
  std::vector<PredicateId> body;  // unary predicates, sorted unique
  std::vector<PredicateId> head;  // unary predicates, sorted unique; empty = bottom

  QueryClause() = default;
  QueryClause(std::vector<PredicateId> b, std::vector<PredicateId> h)
      : body(std::move(b)), head(std::move(h)) {
    detail::sort_unique(body);
    detail::sort_unique(head);
  }

  ContextClause to_context_clause() const {
    std::vector<PTerm> b;
    std::vector<ContextLiteral> h;
    for (PredicateId p : body) b.push_back(PTerm::b_x(p));
    for (PredicateId p : head) h.push_back(ContextLiteral::make_atom(PTerm::b_x(p)));
    return ContextClause(std::move(b), std::move(h));
  }
};

// ---------------------------------------------------------------------------
// Printing.
// ---------------------------------------------------------------------------

inline std::string to_string(const SymbolTable& st, const ContextClause& c) {
  std::string out;
  if (c.body.empty()) {
    out += "true";
  } else {
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ", ";
      out += to_string(st, c.body[i]);
    }
  }
  out += " -> ";
  if (c.head.empty()) {
    out += "false";
  } else {
    for (std::size_t i = 0; i < c.head.size(); ++i) {
      if (i) out += " v ";
      out += to_string(st, c.head[i]);
    }
  }
  return out;
}

inline std::string to_string(const SymbolTable& st, const DLClause& c) {
  std::string out;
  if (c.body.empty()) {
    out += "true";
  } else {
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ", ";
      out += to_string(st, c.body[i]);
    }
  }
  out += " -> ";
  if (c.head.empty()) {
    out += "false";
  } else {
    for (std::size_t i = 0; i < c.head.size(); ++i) {
      if (i) out += " v ";
      out += to_string(st, c.head[i]);
    }
  }
  return out;
}

}  // namespace conseq
