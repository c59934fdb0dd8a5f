#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dnf.hpp"
#include "errors.hpp"
#include "events.hpp"
#include "formula.hpp"

namespace ltlfo {

/// Modified alternating Büchi automaton of an NNF formula.
///
/// States are the subformula closure plus the pits TOP (slot 0) and BOTTOM
/// (slot 1); the initial state is slot 2. The alphabet is implicit: every
/// message. Transitions are computed on demand by delta().
class Automaton {
public:
  struct State {
    std::optional<Formula> formula; // empty for the pits
    StateRef left, right;           // operands / body, when the formula has them
  };

  explicit Automaton(Formula phi) : source_(std::move(phi)) {
    if (!is_nnf(source_))
      throw error("automaton input must be in negation normal form");
    states_.push_back({});
    states_.push_back({});
    for (const Formula& f : subformulas(source_)) {
      index_.emplace(f, StateRef{static_cast<std::uint32_t>(states_.size())});
      states_.push_back({f, {}, {}});
    }
    for (auto& st : states_) {
      if (!st.formula || is_atom(st.formula->op()))
        continue;
      st.left = index_.at(st.formula->left());
      if (is_binary(st.formula->op()))
        st.right = index_.at(st.formula->right());
    }
    variables_ = quantified_variables(source_);
    auto acc = accepting_set(initial());
    accepting_.assign(states_.size(), false);
    for (StateRef s : acc)
      accepting_[s.index] = true;
  }

  const Formula& source() const noexcept { return source_; }
  const std::vector<State>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  StateRef initial() const noexcept { return {2}; }
  Obligation initial_obligation() const { return {initial(), Valuation{}}; }
  const std::set<std::string>& variables() const noexcept { return variables_; }

  const Formula& formula(StateRef s) const {
    if (s.is_pit())
      throw error("pit states carry no formula");
    return *states_.at(s.index).formula;
  }

  std::optional<StateRef> find(const Formula& f) const {
    auto it = index_.find(f);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  bool is_accepting(StateRef s) const { return accepting_.at(s.index); }

  std::set<StateRef> accepting() const {
    std::set<StateRef> out;
    for (std::uint32_t i = 0; i < accepting_.size(); ++i)
      if (accepting_[i])
        out.insert({i});
    return out;
  }

  /// Accepting set of the automaton built from the subformula at `s`:
  ///   atoms -> {TOP}; X, quantifiers -> that of the body;
  ///   &, |, U -> union of the operands'; R -> union plus the R state itself.
  std::set<StateRef> accepting_set(StateRef s) const {
    std::set<StateRef> out{StateRef::top()};
    collect_accepting(s, out);
    return out;
  }

  std::string label(StateRef s) const {
    if (s.is_top())
      return "TOP";
    if (s.is_bottom())
      return "BOTTOM";
    return to_string(formula(s));
  }

  /// The raw transition formula rho(p, s, m), before normalization.
  ///
  /// Throws undefined_variable when an (in)equality mentions a variable p
  /// does not assign.
  PositiveExpr delta_expr(const Valuation& p, StateRef s, const Message& m) const {
    using E = PositiveExpr;
    if (s.is_pit())
      return E::leaf({s, {}});
    const State& st = states_.at(s.index);
    const Formula& f = *st.formula;
    switch (f.op()) {
    case Op::eq:
    case Op::neq: {
      const bool same = value_of(f.lhs(), p) == value_of(f.rhs(), p);
      const bool holds = f.op() == Op::eq ? same : !same;
      return E::leaf({holds ? StateRef::top() : StateRef::bottom(), {}});
    }
    case Op::lor: return E::disj({delta_expr(p, st.left, m), delta_expr(p, st.right, m)});
    case Op::land: return E::conj({delta_expr(p, st.left, m), delta_expr(p, st.right, m)});
    case Op::next: return E::leaf({st.left, p});
    case Op::until:
      return E::disj({delta_expr(p, st.right, m), E::conj({delta_expr(p, st.left, m), E::leaf({s, p})})});
    case Op::release:
      return E::disj({E::conj({delta_expr(p, st.left, m), delta_expr(p, st.right, m)}),
                      E::conj({delta_expr(p, st.right, m), E::leaf({s, p})})});
    case Op::exists:
    case Op::forall: {
      const bool ex = f.op() == Op::exists;
      std::vector<E> ops;
      for (const std::string& v : dom(m, f.path()))
        ops.push_back(delta_expr(p.extended(f.var(), v), st.left, m));
      // The trailing pit makes the empty expansion false (exists) / true (forall).
      ops.push_back(E::leaf({ex ? StateRef::bottom() : StateRef::top(), {}}));
      return ex ? E::disj(std::move(ops)) : E::conj(std::move(ops));
    }
    default: break;
    }
    throw error("state formula is not in negation normal form");
  }

  /// rho(p, s, m) in normalized disjunctive form.
  TransitionDnf delta(const Valuation& p, StateRef s, const Message& m) const { return to_dnf(delta_expr(p, s, m)); }
  TransitionDnf delta(const Obligation& o, const Message& m) const { return delta(o.valuation, o.state, m); }

private:
  static const std::string& value_of(const Term& t, const Valuation& p) {
    if (!t.is_variable())
      return t.text;
    for (const auto& [k, v] : p.bindings())
      if (k == t.text)
        return v;
    throw undefined_variable(t.text);
  }

  void collect_accepting(StateRef s, std::set<StateRef>& out) const {
    const State& st = states_.at(s.index);
    const Op op = st.formula->op();
    if (is_atom(op))
      return;
    if (op == Op::release)
      out.insert(s);
    collect_accepting(st.left, out);
    if (is_binary(op))
      collect_accepting(st.right, out);
  }

  Formula source_;
  std::vector<State> states_;
  std::unordered_map<Formula, StateRef, FormulaHash> index_;
  std::vector<bool> accepting_;
  std::set<std::string> variables_;
};

/// Builds the automaton of an NNF formula (run to_nnf first).
inline Automaton build_automaton(const Formula& phi) { return Automaton(phi); }

/// Memoizes delta per (position, state, valuation) for one trace run.
/// Not thread-safe; use one cache per run.
class TransitionCache {
public:
  explicit TransitionCache(const Automaton& a) : automaton_(a) {}

  const TransitionDnf& delta(const Obligation& o, std::size_t position, const Message& m) {
    Key key{position, o.state.index, o.valuation};
    auto it = memo_.find(key);
    if (it == memo_.end())
      it = memo_.emplace(std::move(key), automaton_.delta(o, m)).first;
    return it->second;
  }

  std::size_t size() const noexcept { return memo_.size(); }
  void clear() { memo_.clear(); }

private:
  using Key = std::tuple<std::size_t, std::uint32_t, Valuation>;
  const Automaton& automaton_;
  std::map<Key, TransitionDnf> memo_;
};

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

} // namespace detail

/// Graphviz rendering of the state table: initial arrow, accepting states
/// double-circled. Transitions are data-dependent and are not drawn.
inline std::string to_dot(const Automaton& a) {
  std::string out = "digraph automaton {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    StateRef s{i};
    out += "  s" + std::to_string(i) + " [label=\"" + detail::dot_escape(a.label(s)) + "\", shape=" +
           (a.is_accepting(s) ? "doublecircle" : "circle") + "];\n";
  }
  out += "  init -> s" + std::to_string(a.initial().index) + ";\n}\n";
  return out;
}

} // namespace ltlfo
