#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "conseq/common.hpp"
#include "conseq/symbols.hpp"

namespace conseq {

// ---------------------------------------------------------------------------
// Context terms. The derivable terms form a small closed family: function
// terms are x, y or f(x), and predicate terms come in exactly seven shapes.
// Representing them as tagged shapes instead of general trees keeps all
// pattern matching exhaustive and every rewrite result well-formed by
// construction.
// ---------------------------------------------------------------------------

enum class FKind : std::uint8_t { Y = 0, X = 1, Fn = 2 };

struct FTerm {
  FKind kind = FKind::Y;
  FunctionId fn = kInvalidId;

  static FTerm y() { return {FKind::Y, kInvalidId}; }
  static FTerm x() { return {FKind::X, kInvalidId}; }
  static FTerm f(FunctionId id) { return {FKind::Fn, id}; }

  bool is_fn() const { return kind == FKind::Fn; }

  // 26-bit injective encoding (symbol ids are bounded well below 2^24).
  std::uint64_t encode() const {
    return (static_cast<std::uint64_t>(kind) << 24) | (is_fn() ? fn + 1ull : 0ull);
  }
  friend bool operator==(const FTerm& a, const FTerm& b) { return a.encode() == b.encode(); }
  friend bool operator!=(const FTerm& a, const FTerm& b) { return !(a == b); }
  friend bool operator<(const FTerm& a, const FTerm& b) { return a.encode() < b.encode(); }
};

/// The seven context P-term shapes. B is a unary predicate, S a binary one.
enum class PShape : std::uint8_t {
  BY = 0,   // B(y)
  BX = 1,   // B(x)
  BF = 2,   // B(f(x))
  SXY = 3,  // S(x,y)
  SYX = 4,  // S(y,x)
  SXF = 5,  // S(x,f(x))
  SFX = 6,  // S(f(x),x)
};

inline bool pshape_is_binary(PShape s) { return s >= PShape::SXY; }
inline bool pshape_has_fn(PShape s) {
  return s == PShape::BF || s == PShape::SXF || s == PShape::SFX;
}

struct PTerm {
  PShape shape = PShape::BX;
  PredicateId pred = kInvalidId;  // unary id for B shapes, binary id for S shapes
  FunctionId fn = kInvalidId;     // set iff the shape contains f(x)

  static PTerm b_y(PredicateId b) { return {PShape::BY, b, kInvalidId}; }
  static PTerm b_x(PredicateId b) { return {PShape::BX, b, kInvalidId}; }
  static PTerm b_f(PredicateId b, FunctionId f) { return {PShape::BF, b, f}; }
  static PTerm s_xy(PredicateId s) { return {PShape::SXY, s, kInvalidId}; }
  static PTerm s_yx(PredicateId s) { return {PShape::SYX, s, kInvalidId}; }
  static PTerm s_xf(PredicateId s, FunctionId f) { return {PShape::SXF, s, f}; }
  static PTerm s_fx(PredicateId s, FunctionId f) { return {PShape::SFX, s, f}; }

  bool is_binary() const { return pshape_is_binary(shape); }
  bool has_fn() const { return pshape_has_fn(shape); }

  /// Function-free shapes are the only ones admitted in clause bodies.
  bool is_function_free() const { return !has_fn(); }

  /// Su/Pr exchange is defined over the four function-free shapes.
  bool is_trigger_shaped() const { return is_function_free(); }

  std::uint64_t encode() const {
    return (static_cast<std::uint64_t>(shape) << 48) |
           (static_cast<std::uint64_t>(pred) << 24) |
           (has_fn() ? (fn + 1ull) : 0ull);
  }
  friend bool operator==(const PTerm& a, const PTerm& b) { return a.encode() == b.encode(); }
  friend bool operator!=(const PTerm& a, const PTerm& b) { return !(a == b); }
  friend bool operator<(const PTerm& a, const PTerm& b) { return a.encode() < b.encode(); }
};

// ---------------------------------------------------------------------------
// Context literals: atoms A (implicitly equated with the top constant) and
// equalities/inequalities between function terms of the restricted shapes
// f(x)~g(x), f(x)~y, y~y. Equality is implicitly symmetric, so arguments are
// stored in a canonical order fixed at construction: the structurally larger
// side first (function terms before y; among function terms, higher
// precedence first, which coincides with later interning rank).
// ---------------------------------------------------------------------------

enum class LitKind : std::uint8_t { Atom = 0, Eq = 1, Neq = 2 };

struct ContextLiteral {
  LitKind kind = LitKind::Atom;
  PTerm atom;            // valid iff kind == Atom
  FTerm lhs, rhs;        // valid iff kind != Atom; lhs is the canonical larger side

  static ContextLiteral make_atom(PTerm a) {
    ContextLiteral l;
    l.kind = LitKind::Atom;
    l.atom = a;
    return l;
  }

  static ContextLiteral make_eq(FTerm a, FTerm b) { return make(LitKind::Eq, a, b); }
  static ContextLiteral make_neq(FTerm a, FTerm b) { return make(LitKind::Neq, a, b); }

  bool is_atom() const { return kind == LitKind::Atom; }

  std::uint64_t encode() const {
    if (kind == LitKind::Atom) return atom.encode() | (1ull << 63);
    return (static_cast<std::uint64_t>(kind) << 56) | (lhs.encode() << 26) | rhs.encode();
  }
  friend bool operator==(const ContextLiteral& a, const ContextLiteral& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == LitKind::Atom) return a.atom == b.atom;
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
  friend bool operator!=(const ContextLiteral& a, const ContextLiteral& b) { return !(a == b); }
  friend bool operator<(const ContextLiteral& a, const ContextLiteral& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == LitKind::Atom) return a.atom < b.atom;
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
  }

 private:
  static ContextLiteral make(LitKind k, FTerm a, FTerm b) {
    CONSEQ_CHECK(a.kind != FKind::X && b.kind != FKind::X,
                 "x cannot occur in an equality literal");
    CONSEQ_CHECK(a.is_fn() || b.is_fn() || (a.kind == FKind::Y && b.kind == FKind::Y),
                 "malformed equality literal");
    ContextLiteral l;
    l.kind = k;
    if (b.encode() > a.encode()) std::swap(a, b);
    l.lhs = a;
    l.rhs = b;
    return l;
  }
};

// ---------------------------------------------------------------------------
// DL-terms and DL-clauses operate over the central variable x and variables
// z_i; z_i refers to either the predecessor or a successor of x, which is
// resolved only when a hyperresolution substitution is applied.
// ---------------------------------------------------------------------------

enum class DLFKind : std::uint8_t { X = 0, Z = 1, Fn = 2 };

struct DLFTerm {
  DLFKind kind = DLFKind::X;
  std::uint32_t z = 0;           // z index, valid iff kind == Z
  FunctionId fn = kInvalidId;    // valid iff kind == Fn

  static DLFTerm x() { return {DLFKind::X, 0, kInvalidId}; }
  static DLFTerm z(std::uint32_t i) { return {DLFKind::Z, i, kInvalidId}; }
  static DLFTerm f(FunctionId id) { return {DLFKind::Fn, 0, id}; }

  // 30-bit injective encoding.
  std::uint64_t encode() const {
    return (static_cast<std::uint64_t>(kind) << 28) |
           (kind == DLFKind::Z ? z + 1ull : (kind == DLFKind::Fn ? fn + 1ull : 0ull));
  }
  friend bool operator==(const DLFTerm& a, const DLFTerm& b) { return a.encode() == b.encode(); }
  friend bool operator<(const DLFTerm& a, const DLFTerm& b) { return a.encode() < b.encode(); }
};

/// DL-P-term shapes: B(z), B(x), B(f(x)), S(x,z), S(z,x), S(x,f(x)), S(f(x),x).
enum class DLAtomShape : std::uint8_t {
  BZ = 0,
  BX = 1,
  BF = 2,
  SXZ = 3,
  SZX = 4,
  SXF = 5,
  SFX = 6,
};

struct DLAtom {
  DLAtomShape shape = DLAtomShape::BX;
  PredicateId pred = kInvalidId;
  FunctionId fn = kInvalidId;
  std::uint32_t z = 0;

  static DLAtom b_z(PredicateId b, std::uint32_t z) { return {DLAtomShape::BZ, b, kInvalidId, z}; }
  static DLAtom b_x(PredicateId b) { return {DLAtomShape::BX, b, kInvalidId, 0}; }
  static DLAtom b_f(PredicateId b, FunctionId f) { return {DLAtomShape::BF, b, f, 0}; }
  static DLAtom s_xz(PredicateId s, std::uint32_t z) { return {DLAtomShape::SXZ, s, kInvalidId, z}; }
  static DLAtom s_zx(PredicateId s, std::uint32_t z) { return {DLAtomShape::SZX, s, kInvalidId, z}; }
  static DLAtom s_xf(PredicateId s, FunctionId f) { return {DLAtomShape::SXF, s, f, 0}; }
  static DLAtom s_fx(PredicateId s, FunctionId f) { return {DLAtomShape::SFX, s, f, 0}; }

  bool is_binary() const { return shape >= DLAtomShape::SXZ; }
  bool has_z() const {
    return shape == DLAtomShape::BZ || shape == DLAtomShape::SXZ || shape == DLAtomShape::SZX;
  }
  bool has_fn() const {
    return shape == DLAtomShape::BF || shape == DLAtomShape::SXF || shape == DLAtomShape::SFX;
  }

  std::uint64_t encode() const {
    return (static_cast<std::uint64_t>(shape) << 60) |
           (static_cast<std::uint64_t>(pred) << 36) |
           (static_cast<std::uint64_t>(has_fn() ? fn + 1 : 0) << 12) |
           (has_z() ? z + 1ull : 0ull);
  }
  friend bool operator==(const DLAtom& a, const DLAtom& b) { return a.encode() == b.encode(); }
  friend bool operator<(const DLAtom& a, const DLAtom& b) { return a.encode() < b.encode(); }
};

struct DLLiteral {
  LitKind kind = LitKind::Atom;
  DLAtom atom;          // valid iff kind == Atom
  DLFTerm lhs, rhs;     // valid iff kind != Atom; restricted to f(x)~g(x), f(x)~z, z~z

  static DLLiteral make_atom(DLAtom a) {
    DLLiteral l;
    l.kind = LitKind::Atom;
    l.atom = a;
    return l;
  }
  static DLLiteral make_eq(DLFTerm a, DLFTerm b) { return make(LitKind::Eq, a, b); }
  static DLLiteral make_neq(DLFTerm a, DLFTerm b) { return make(LitKind::Neq, a, b); }

  bool is_atom() const { return kind == LitKind::Atom; }

  std::uint64_t encode() const {
    if (kind == LitKind::Atom) return atom.encode() | (1ull << 63);
    return (static_cast<std::uint64_t>(kind) << 60) | (lhs.encode() << 30) | rhs.encode();
  }
  friend bool operator==(const DLLiteral& a, const DLLiteral& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == LitKind::Atom) return a.atom == b.atom;
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
  friend bool operator<(const DLLiteral& a, const DLLiteral& b) { return a.encode() < b.encode(); }

 private:
  static DLLiteral make(LitKind k, DLFTerm a, DLFTerm b) {
    CONSEQ_CHECK(a.kind != DLFKind::X && b.kind != DLFKind::X,
                 "x cannot occur in a DL equality literal");
    DLLiteral l;
    l.kind = k;
    if (b.encode() > a.encode()) std::swap(a, b);
    l.lhs = a;
    l.rhs = b;
    return l;
  }
};

// ---------------------------------------------------------------------------
// The hyperresolution substitution family: x stays fixed and every z index
// maps to y or to an f(x) term.
// ---------------------------------------------------------------------------

class HyperSubstitution {
 public:
  void bind_y(std::uint32_t z) { set(z, FTerm::y()); }
  void bind_fn(std::uint32_t z, FunctionId f) { set(z, FTerm::f(f)); }
  void unbind(std::uint32_t z) {
    if (z < bindings_.size()) bindings_[z].reset();
  }

  bool is_bound(std::uint32_t z) const { return z < bindings_.size() && bindings_[z].has_value(); }

  FTerm get(std::uint32_t z) const {
    CONSEQ_CHECK(is_bound(z), "unbound z-variable in substitution");
    return *bindings_[z];
  }

 private:
  void set(std::uint32_t z, FTerm t) {
    if (z >= bindings_.size()) bindings_.resize(z + 1);
    bindings_[z] = t;
  }
  std::vector<std::optional<FTerm>> bindings_;
};

/// Applies a hyperresolution substitution to a DL-literal. The result is a
/// well-formed context literal for every DL-literal shape and every binding,
/// which is what keeps the calculus inside the closed term family.
inline ContextLiteral apply_hyper_subst(const DLLiteral& lit, const HyperSubstitution& sigma) {
  auto subst_f = [&](const DLFTerm& t) -> FTerm {
    switch (t.kind) {
      case DLFKind::X: return FTerm::x();
      case DLFKind::Fn: return FTerm::f(t.fn);
      case DLFKind::Z: return sigma.get(t.z);
    }
    throw InvariantViolation("bad DLFTerm");
  };
  if (lit.kind != LitKind::Atom) {
    FTerm a = subst_f(lit.lhs);
    FTerm b = subst_f(lit.rhs);
    return lit.kind == LitKind::Eq ? ContextLiteral::make_eq(a, b)
                                   : ContextLiteral::make_neq(a, b);
  }
  const DLAtom& a = lit.atom;
  switch (a.shape) {
    case DLAtomShape::BX: return ContextLiteral::make_atom(PTerm::b_x(a.pred));
    case DLAtomShape::BF: return ContextLiteral::make_atom(PTerm::b_f(a.pred, a.fn));
    case DLAtomShape::SXF: return ContextLiteral::make_atom(PTerm::s_xf(a.pred, a.fn));
    case DLAtomShape::SFX: return ContextLiteral::make_atom(PTerm::s_fx(a.pred, a.fn));
    case DLAtomShape::BZ: {
      FTerm t = sigma.get(a.z);
      return ContextLiteral::make_atom(t.kind == FKind::Y ? PTerm::b_y(a.pred)
                                                          : PTerm::b_f(a.pred, t.fn));
    }
    case DLAtomShape::SXZ: {
      FTerm t = sigma.get(a.z);
      return ContextLiteral::make_atom(t.kind == FKind::Y ? PTerm::s_xy(a.pred)
                                                          : PTerm::s_xf(a.pred, t.fn));
    }
    case DLAtomShape::SZX: {
      FTerm t = sigma.get(a.z);
      return ContextLiteral::make_atom(t.kind == FKind::Y ? PTerm::s_yx(a.pred)
                                                          : PTerm::s_fx(a.pred, t.fn));
    }
  }
  throw InvariantViolation("bad DLAtom shape");
}

/// The substitution {x -> f(x), y -> x} shared by the Succ and Pred rules,
/// restricted to the four trigger shapes. Maps an atom expressed in a
/// successor's frame to the predecessor's frame.
inline PTerm shift_to_successor(const PTerm& atom, FunctionId f) {
  switch (atom.shape) {
    case PShape::BX: return PTerm::b_f(atom.pred, f);
    case PShape::BY: return PTerm::b_x(atom.pred);
    case PShape::SXY: return PTerm::s_fx(atom.pred, f);
    case PShape::SYX: return PTerm::s_xf(atom.pred, f);
    default: break;
  }
  throw InvariantViolation("shift_to_successor requires a trigger-shaped atom");
}

/// Replaces the occurrence of `oldTerm` (an f(x) term) inside `target` with
/// `newTerm`. Returns nullopt when `oldTerm` does not occur, so callers can
/// treat absence as a no-op instead of an error.
inline std::optional<FTerm> replace_f_subterm(const FTerm& target, const FTerm& oldTerm,
                                              const FTerm& newTerm) {
  CONSEQ_CHECK(oldTerm.is_fn(), "replace_f_subterm: pattern must be f(x)");
  if (target == oldTerm) return newTerm;
  return std::nullopt;
}

inline std::optional<PTerm> replace_f_subterm(const PTerm& target, const FTerm& oldTerm,
                                              const FTerm& newTerm) {
  CONSEQ_CHECK(oldTerm.is_fn(), "replace_f_subterm: pattern must be f(x)");
  if (!target.has_fn() || target.fn != oldTerm.fn) return std::nullopt;
  switch (target.shape) {
    case PShape::BF:
      return newTerm.kind == FKind::Y ? PTerm::b_y(target.pred)
             : newTerm.kind == FKind::X ? PTerm::b_x(target.pred)
                                        : PTerm::b_f(target.pred, newTerm.fn);
    case PShape::SXF:
      return newTerm.kind == FKind::Y ? PTerm::s_xy(target.pred)
             : newTerm.kind == FKind::Fn ? PTerm::s_xf(target.pred, newTerm.fn)
                                         : std::optional<PTerm>{};
    case PShape::SFX:
      return newTerm.kind == FKind::Y ? PTerm::s_yx(target.pred)
             : newTerm.kind == FKind::Fn ? PTerm::s_fx(target.pred, newTerm.fn)
                                         : std::optional<PTerm>{};
    default: break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Printing, mainly for traces, diagnostics and the graph exports.
// ---------------------------------------------------------------------------

inline std::string to_string(const SymbolTable& st, const FTerm& t) {
  switch (t.kind) {
    case FKind::Y: return "y";
    case FKind::X: return "x";
    case FKind::Fn: return st.function_name(t.fn) + "(x)";
  }
  return "?";
}

inline std::string to_string(const SymbolTable& st, const PTerm& a) {
  switch (a.shape) {
    case PShape::BY: return st.unary_name(a.pred) + "(y)";
    case PShape::BX: return st.unary_name(a.pred) + "(x)";
    case PShape::BF: return st.unary_name(a.pred) + "(" + st.function_name(a.fn) + "(x))";
    case PShape::SXY: return st.binary_name(a.pred) + "(x,y)";
    case PShape::SYX: return st.binary_name(a.pred) + "(y,x)";
    case PShape::SXF: return st.binary_name(a.pred) + "(x," + st.function_name(a.fn) + "(x))";
    case PShape::SFX: return st.binary_name(a.pred) + "(" + st.function_name(a.fn) + "(x),x)";
  }
  return "?";
}

inline std::string to_string(const SymbolTable& st, const ContextLiteral& l) {
  if (l.kind == LitKind::Atom) return to_string(st, l.atom);
  return to_string(st, l.lhs) + (l.kind == LitKind::Eq ? " = " : " != ") + to_string(st, l.rhs);
}

inline std::string to_string(const SymbolTable& st, const DLFTerm& t) {
  switch (t.kind) {
    case DLFKind::X: return "x";
    case DLFKind::Z: return "z" + std::to_string(t.z + 1);
    case DLFKind::Fn: return st.function_name(t.fn) + "(x)";
  }
  return "?";
}

inline std::string to_string(const SymbolTable& st, const DLAtom& a) {
  switch (a.shape) {
    case DLAtomShape::BZ: return st.unary_name(a.pred) + "(z" + std::to_string(a.z + 1) + ")";
    case DLAtomShape::BX: return st.unary_name(a.pred) + "(x)";
    case DLAtomShape::BF: return st.unary_name(a.pred) + "(" + st.function_name(a.fn) + "(x))";
    case DLAtomShape::SXZ: return st.binary_name(a.pred) + "(x,z" + std::to_string(a.z + 1) + ")";
    case DLAtomShape::SZX: return st.binary_name(a.pred) + "(z" + std::to_string(a.z + 1) + ",x)";
    case DLAtomShape::SXF: return st.binary_name(a.pred) + "(x," + st.function_name(a.fn) + "(x))";
    case DLAtomShape::SFX: return st.binary_name(a.pred) + "(" + st.function_name(a.fn) + "(x),x)";
  }
  return "?";
}

inline std::string to_string(const SymbolTable& st, const DLLiteral& l) {
  if (l.kind == LitKind::Atom) return to_string(st, l.atom);
  return to_string(st, l.lhs) + (l.kind == LitKind::Eq ? " = " : " != ") + to_string(st, l.rhs);
}

}  // namespace conseq
