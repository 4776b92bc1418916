#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conseq/common.hpp"

namespace conseq {

enum class SymbolSort : std::uint8_t { UnaryPredicate, BinaryPredicate, Function };

/// Interned signature symbols: unary predicates (concepts), binary predicates
/// (roles) and unary function symbols. Identifiers are dense per sort and
/// stable for the lifetime of a reasoning session; the table is append-only,
/// so concurrent readers are safe once parsing is done.
///
/// Every symbol also receives a global rank in interning order. The rank is
/// the symbol precedence used by the term orders, which makes runs
/// reproducible: precedence is declaration order in the input file.
///
/// The distinguished predicate constant that atoms are implicitly equated
/// with is not interned; it is structurally smaller than everything else and
/// is handled directly by the orders.
class SymbolTable {
 public:
  PredicateId intern_unary(std::string_view name) { return intern(name, SymbolSort::UnaryPredicate); }
  PredicateId intern_binary(std::string_view name) { return intern(name, SymbolSort::BinaryPredicate); }
  FunctionId intern_function(std::string_view name) { return intern(name, SymbolSort::Function); }

  std::optional<std::pair<SymbolSort, std::uint32_t>> lookup(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& unary_name(PredicateId id) const { return sorts_[0].names.at(id); }
  const std::string& binary_name(PredicateId id) const { return sorts_[1].names.at(id); }
  const std::string& function_name(FunctionId id) const { return sorts_[2].names.at(id); }

  std::uint32_t unary_count() const { return static_cast<std::uint32_t>(sorts_[0].names.size()); }
  std::uint32_t binary_count() const { return static_cast<std::uint32_t>(sorts_[1].names.size()); }
  std::uint32_t function_count() const { return static_cast<std::uint32_t>(sorts_[2].names.size()); }

  std::uint32_t unary_rank(PredicateId id) const { return sorts_[0].ranks.at(id); }
  std::uint32_t binary_rank(PredicateId id) const { return sorts_[1].ranks.at(id); }
  std::uint32_t function_rank(FunctionId id) const { return sorts_[2].ranks.at(id); }

  /// Names reserved by the surface syntax; never interned.
  static bool is_reserved(std::string_view name) {
    for (const char* kw : {"SubClassOf", "SubRoleOf", "AtLeast", "AtMost", "Exists",
                           "Inv", "And", "Or", "Top", "Bottom"}) {
      if (name == kw) return true;
    }
    return false;
  }

 private:
  struct Sort {
    std::vector<std::string> names;
    std::vector<std::uint32_t> ranks;
  };

  std::uint32_t intern(std::string_view name, SymbolSort sort) {
    CONSEQ_CHECK(!is_reserved(name), "reserved name cannot be interned: " + std::string(name));
    std::string key(name);
    auto it = by_name_.find(key);
    if (it != by_name_.end()) {
      CONSEQ_CHECK(it->second.first == sort, "symbol used with conflicting sorts: " + key);
      return it->second.second;
    }
    Sort& s = sorts_[static_cast<int>(sort)];
    auto id = static_cast<std::uint32_t>(s.names.size());
    s.names.push_back(key);
    s.ranks.push_back(next_rank_++);
    by_name_.emplace(std::move(key), std::make_pair(sort, id));
    return id;
  }

  Sort sorts_[3];
  std::unordered_map<std::string, std::pair<SymbolSort, std::uint32_t>> by_name_;
  std::uint32_t next_rank_ = 0;
};

}  // namespace conseq
