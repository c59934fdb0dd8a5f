#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "formula.hpp"

namespace ltlfo {

/// Partial map from variable names to values, kept sorted by name.
class Valuation {
public:
  Valuation() = default;
  Valuation(std::initializer_list<std::pair<std::string, std::string>> init) {
    for (const auto& [k, v] : init)
      bind(k, v);
  }

  std::optional<std::string_view> lookup(std::string_view var) const {
    auto it = find(var);
    if (it != bindings_.end() && it->first == var)
      return std::string_view(it->second);
    return std::nullopt;
  }

  bool contains(std::string_view var) const { return lookup(var).has_value(); }

  /// p ∪ {(var, value)}. Rebinding an existing name replaces it, which
  /// well-formed formulas never need.
  Valuation extended(const std::string& var, const std::string& value) const {
    Valuation out = *this;
    out.bind(var, value);
    return out;
  }

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  const std::vector<std::pair<std::string, std::string>>& bindings() const noexcept { return bindings_; }

  std::size_t hash() const noexcept {
    std::size_t h = 0x7a1;
    for (const auto& [k, v] : bindings_) {
      h = detail::hash_mix(h, std::hash<std::string>{}(k));
      h = detail::hash_mix(h, std::hash<std::string>{}(v));
    }
    return h;
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < bindings_.size(); ++i) {
      if (i)
        out += ", ";
      out += bindings_[i].first + "->" + detail::quote(bindings_[i].second);
    }
    return out + "}";
  }

  friend auto operator<=>(const Valuation&, const Valuation&) = default;
  friend bool operator==(const Valuation&, const Valuation&) = default;

private:
  using Bindings = std::vector<std::pair<std::string, std::string>>;

  Bindings::const_iterator find(std::string_view var) const {
    return std::lower_bound(bindings_.begin(), bindings_.end(), var,
                            [](const auto& b, std::string_view v) { return b.first < v; });
  }

  void bind(const std::string& var, const std::string& value) {
    auto it = bindings_.begin() + (find(var) - bindings_.cbegin());
    if (it != bindings_.end() && it->first == var)
      it->second = value;
    else
      bindings_.insert(it, {var, value});
  }

  Bindings bindings_;
};

/// Index into an automaton's state table. Slots 0 and 1 are the pits.
struct StateRef {
  std::uint32_t index = 0;

  static constexpr StateRef top() { return {0}; }
  static constexpr StateRef bottom() { return {1}; }

  constexpr bool is_top() const noexcept { return index == 0; }
  constexpr bool is_bottom() const noexcept { return index == 1; }
  constexpr bool is_pit() const noexcept { return index < 2; }

  friend constexpr auto operator<=>(StateRef, StateRef) = default;
  friend constexpr bool operator==(StateRef, StateRef) = default;
};

/// A pair (valuation, state): the state's formula must hold on the rest of
/// the trace under the valuation.
struct Obligation {
  StateRef state;
  Valuation valuation;

  friend auto operator<=>(const Obligation&, const Obligation&) = default;
  friend bool operator==(const Obligation&, const Obligation&) = default;
};

/// Sorted, duplicate-free set of obligations.
using Conjunct = std::vector<Obligation>;

/// Disjunction of conjuncts of obligations.
///
/// Normal form: no conjunct mentions a pit, no conjunct is a superset of
/// another, conjuncts are sorted. The empty conjunct is `true`; the empty
/// disjunction is `false`.
class TransitionDnf {
public:
  TransitionDnf() = default;

  static TransitionDnf truth() { return TransitionDnf({Conjunct{}}); }
  static TransitionDnf falsity() { return TransitionDnf(); }

  /// Single obligation; pits collapse to truth/falsity.
  static TransitionDnf atom(Obligation o) {
    if (o.state.is_top())
      return truth();
    if (o.state.is_bottom())
      return falsity();
    return TransitionDnf({Conjunct{std::move(o)}});
  }

  /// Normalizes an arbitrary family of obligation sets.
  static TransitionDnf from_conjuncts(std::vector<Conjunct> conjuncts) {
    std::vector<Conjunct> cleaned;
    cleaned.reserve(conjuncts.size());
    for (auto& c : conjuncts) {
      bool dead = false;
      Conjunct kept;
      for (auto& o : c) {
        if (o.state.is_bottom()) {
          dead = true;
          break;
        }
        if (!o.state.is_top())
          kept.push_back(std::move(o));
      }
      if (dead)
        continue;
      std::sort(kept.begin(), kept.end());
      kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
      cleaned.push_back(std::move(kept));
    }
    return TransitionDnf(minimize(std::move(cleaned)));
  }

  const std::vector<Conjunct>& conjuncts() const noexcept { return conjuncts_; }
  bool is_true() const noexcept { return conjuncts_.size() == 1 && conjuncts_.front().empty(); }
  bool is_false() const noexcept { return conjuncts_.empty(); }
  std::size_t size() const noexcept { return conjuncts_.size(); }

  friend TransitionDnf operator|(const TransitionDnf& a, const TransitionDnf& b) {
    std::vector<Conjunct> all = a.conjuncts_;
    all.insert(all.end(), b.conjuncts_.begin(), b.conjuncts_.end());
    return TransitionDnf(minimize(std::move(all)));
  }

  friend TransitionDnf operator&(const TransitionDnf& a, const TransitionDnf& b) {
    std::vector<Conjunct> all;
    all.reserve(a.size() * b.size());
    for (const auto& x : a.conjuncts_)
      for (const auto& y : b.conjuncts_) {
        Conjunct c;
        c.reserve(x.size() + y.size());
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
        all.push_back(std::move(c));
      }
    return TransitionDnf(minimize(std::move(all)));
  }

  friend bool operator==(const TransitionDnf&, const TransitionDnf&) = default;

private:
  explicit TransitionDnf(std::vector<Conjunct> c) : conjuncts_(std::move(c)) {}

  // Sorts, deduplicates and removes every conjunct that strictly contains
  // another one. Inputs must be individually sorted and pit-free.
  static std::vector<Conjunct> minimize(std::vector<Conjunct> cs) {
    std::sort(cs.begin(), cs.end(), [](const Conjunct& a, const Conjunct& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<Conjunct> kept;
    for (auto& c : cs) {
      bool subsumed = std::any_of(kept.begin(), kept.end(), [&c](const Conjunct& k) {
        return std::includes(c.begin(), c.end(), k.begin(), k.end());
      });
      if (!subsumed)
        kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
  }

  std::vector<Conjunct> conjuncts_;
};

/// Positive Boolean combination of obligations, as produced literally by the
/// transition rules before normalization.
struct PositiveExpr {
  enum class Kind : std::uint8_t { atom, all, any };

  Kind kind = Kind::atom;
  Obligation atom;
  std::vector<PositiveExpr> operands;

  static PositiveExpr leaf(Obligation o) { return {Kind::atom, std::move(o), {}}; }
  static PositiveExpr conj(std::vector<PositiveExpr> ops) { return {Kind::all, {}, std::move(ops)}; }
  static PositiveExpr disj(std::vector<PositiveExpr> ops) { return {Kind::any, {}, std::move(ops)}; }
};

/// Distributes & over |, drops (_, TOP) atoms, deletes conjuncts holding
/// (_, BOTTOM) and removes subsumed conjuncts.
inline TransitionDnf to_dnf(const PositiveExpr& e) {
  switch (e.kind) {
  case PositiveExpr::Kind::atom: return TransitionDnf::atom(e.atom);
  case PositiveExpr::Kind::all: {
    TransitionDnf acc = TransitionDnf::truth();
    for (const auto& op : e.operands) {
      acc = acc & to_dnf(op);
      if (acc.is_false())
        break;
    }
    return acc;
  }
  case PositiveExpr::Kind::any: {
    TransitionDnf acc = TransitionDnf::falsity();
    for (const auto& op : e.operands)
      acc = acc | to_dnf(op);
    return acc;
  }
  }
  return TransitionDnf::falsity();
}

} // namespace ltlfo

template <>
struct std::hash<ltlfo::Valuation> {
  std::size_t operator()(const ltlfo::Valuation& v) const noexcept { return v.hash(); }
};
