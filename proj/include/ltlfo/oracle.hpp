#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "dnf.hpp"
#include "errors.hpp"
#include "events.hpp"
#include "formula.hpp"

namespace ltlfo {

/// Direct evaluator of the satisfaction relation on a lasso trace.
///
/// Shares nothing with the automaton besides dom(). Positions are folded
/// into [0, prefix + loop); every U/F table is the least and every R/G table
/// the greatest fixpoint of its one-step unfolding over those positions.
/// Accepts formulas with !, ->, F, G, true and false as well as NNF.
class Oracle {
public:
  struct Stats {
    std::size_t keys = 0;       // distinct (formula, valuation, position) results
    std::size_t sweeps = 0;     // fixpoint passes over all positions
    std::size_t fixpoints = 0;  // temporal tables computed
  };

  explicit Oracle(const LassoTrace& trace) : trace_(trace) {}

  bool eval(const Valuation& p, const Formula& f, std::size_t position) {
    roots_.push_back(f); // memo keys point into the tree
    return holds(p, f, trace_.canonical(position));
  }

  const Stats& stats() const noexcept { return stats_; }

private:
  using Key = std::tuple<const void*, Valuation, std::size_t>;
  using TableKey = std::pair<const void*, Valuation>;

  static const std::string& value(const Term& t, const Valuation& p) {
    if (!t.is_variable())
      return t.text;
    for (const auto& [k, v] : p.bindings())
      if (k == t.text)
        return v;
    throw undefined_variable(t.text);
  }

  bool holds(const Valuation& p, const Formula& f, std::size_t i) {
    Key key{f.identity(), p, i};
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    const bool r = compute(p, f, i);
    memo_.emplace(std::move(key), r);
    stats_.keys = memo_.size();
    return r;
  }

  bool compute(const Valuation& p, const Formula& f, std::size_t i) {
    switch (f.op()) {
    case Op::eq: return value(f.lhs(), p) == value(f.rhs(), p);
    case Op::neq: return value(f.lhs(), p) != value(f.rhs(), p);
    case Op::truth: return true;
    case Op::falsity: return false;
    case Op::lnot: return !holds(p, f.body(), i);
    case Op::land: return holds(p, f.left(), i) && holds(p, f.right(), i);
    case Op::lor: return holds(p, f.left(), i) || holds(p, f.right(), i);
    case Op::implies: return !holds(p, f.left(), i) || holds(p, f.right(), i);
    case Op::next: return holds(p, f.body(), trace_.successor(i));
    case Op::until:
    case Op::release:
    case Op::finally:
    case Op::globally: return table(p, f)[i];
    case Op::exists:
    case Op::forall: {
      const bool ex = f.op() == Op::exists;
      // Empty domain: exists is false, forall is true.
      for (const std::string& v : dom(position_message(trace_, i), f.path()))
        if (holds(p.extended(f.var(), v), f.body(), i) == ex)
          return ex;
      return !ex;
    }
    }
    return false;
  }

  const std::vector<bool>& table(const Valuation& p, const Formula& f) {
    TableKey key{f.identity(), p};
    if (auto it = tables_.find(key); it != tables_.end())
      return it->second;
    const std::size_t n = trace_.period_end();
    const bool greatest = f.op() == Op::release || f.op() == Op::globally;
    std::vector<bool> cur(n, greatest);
    ++stats_.fixpoints;
    for (bool changed = true; changed;) {
      changed = false;
      ++stats_.sweeps;
      for (std::size_t j = n; j-- > 0;) {
        const bool later = cur[trace_.successor(j)];
        bool v = false;
        switch (f.op()) {
        case Op::until: v = holds(p, f.right(), j) || (holds(p, f.left(), j) && later); break;
        case Op::release:
          v = (holds(p, f.left(), j) && holds(p, f.right(), j)) || (holds(p, f.right(), j) && later);
          break;
        case Op::finally: v = holds(p, f.body(), j) || later; break;
        case Op::globally: v = holds(p, f.body(), j) && later; break;
        default: break;
        }
        if (v != cur[j]) {
          cur[j] = v;
          changed = true;
        }
      }
    }
    return tables_.emplace(std::move(key), std::move(cur)).first->second;
  }

  const LassoTrace& trace_;
  std::vector<Formula> roots_;
  std::map<Key, bool> memo_;
  std::map<TableKey, std::vector<bool>> tables_;
  Stats stats_;
};

/// Truth of f under p on the lasso trace, from position i.
inline bool oracle_eval(const Valuation& p, const Formula& f, const LassoTrace& t, std::size_t i = 0) {
  return Oracle(t).eval(p, f, i);
}

} // namespace ltlfo
