#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "automaton.hpp"
#include "dnf.hpp"
#include "errors.hpp"
#include "events.hpp"

namespace ltlfo {

/// Derived state of the breakpoint construction: every pending obligation,
/// and the subset that still owes a visit to an accepting state since the
/// last breakpoint.
struct BreakpointState {
  std::vector<Obligation> all;   // sorted
  std::vector<Obligation> owing; // sorted, subset of all

  bool is_breakpoint() const noexcept { return owing.empty(); }

  friend auto operator<=>(const BreakpointState&, const BreakpointState&) = default;
  friend bool operator==(const BreakpointState&, const BreakpointState&) = default;
};

struct LassoOptions {
  std::size_t state_limit = 200'000;
  /// Drop successors (A, B) dominated by another (A', B') with A' ⊆ A and
  /// B' ⊆ B. Does not change the answer.
  bool prune_dominated = true;
};

struct LassoResult {
  bool accepted = false;
  std::size_t product_states = 0;
  std::size_t product_edges = 0;
};

namespace detail {

inline std::vector<Obligation> merge(const std::vector<Obligation>& a, const std::vector<Obligation>& b) {
  std::vector<Obligation> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset(const std::vector<Obligation>& a, const std::vector<Obligation>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline void keep_minimal(std::vector<BreakpointState>& xs) {
  std::sort(xs.begin(), xs.end(), [](const BreakpointState& a, const BreakpointState& b) {
    const auto sa = a.all.size() + a.owing.size(), sb = b.all.size() + b.owing.size();
    return sa != sb ? sa < sb : a < b;
  });
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<BreakpointState> kept;
  for (auto& x : xs) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&x](const BreakpointState& k) {
      return subset(k.all, x.all) && subset(k.owing, x.owing);
    });
    if (!dominated)
      kept.push_back(std::move(x));
  }
  xs = std::move(kept);
}

// Tarjan's algorithm, iterative. Returns the component id of every vertex.
inline std::vector<std::size_t> strongly_connected(const std::vector<std::vector<std::size_t>>& adj,
                                                   std::size_t& components) {
  const std::size_t n = adj.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call; // (vertex, next edge)
  std::size_t counter = 0;
  components = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset)
      continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e == 0 && index[v] == unset) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (e < adj[v].size()) {
        const std::size_t w = adj[v][e++];
        if (index[w] == unset)
          call.push_back({w, 0});
        else if (on_stack[w])
          low[v] = std::min(low[v], index[w]);
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty())
        low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

} // namespace detail

/// Successors of a breakpoint state on the message at `position`: choose
/// one conjunct of delta for every pending obligation and take the union.
inline std::vector<BreakpointState> breakpoint_successors(const Automaton& a, TransitionCache& cache,
                                                          const BreakpointState& s, std::size_t position,
                                                          const Message& m, bool prune = true) {
  const bool reset = s.is_breakpoint();
  std::vector<BreakpointState> partial{{}};
  auto non_accepting = [&a](const Conjunct& c) {
    std::vector<Obligation> out;
    for (const auto& o : c)
      if (!a.is_accepting(o.state))
        out.push_back(o);
    return out;
  };
  for (const Obligation& o : s.all) {
    const TransitionDnf& d = cache.delta(o, position, m);
    if (d.is_false())
      return {};
    const bool owes = !reset && std::binary_search(s.owing.begin(), s.owing.end(), o);
    std::vector<BreakpointState> next;
    next.reserve(partial.size() * d.size());
    for (const auto& p : partial)
      for (const auto& c : d.conjuncts()) {
        BreakpointState q{detail::merge(p.all, c), p.owing};
        if (owes)
          q.owing = detail::merge(q.owing, non_accepting(c));
        next.push_back(std::move(q));
      }
    if (prune)
      detail::keep_minimal(next);
    else {
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
    }
    partial = std::move(next);
  }
  if (reset)
    for (auto& q : partial)
      q.owing = non_accepting(q.all);
  std::sort(partial.begin(), partial.end());
  partial.erase(std::unique(partial.begin(), partial.end()), partial.end());
  return partial;
}

/// Decides whether the automaton accepts prefix . loop^omega.
///
/// Explores the product of canonical positions with breakpoint states and
/// looks for a reachable cycle through a breakpoint. Throws resource_limit
/// when more than `state_limit` product states are reached.
inline LassoResult check_lasso(const Automaton& a, const LassoTrace& t, const LassoOptions& opts = {}) {
  using Vertex = std::pair<std::size_t, BreakpointState>;
  std::map<Vertex, std::size_t> ids;
  std::vector<const Vertex*> vertices;
  std::vector<std::vector<std::size_t>> adj;
  TransitionCache cache(a);

  auto intern = [&](Vertex v, bool& fresh) {
    auto [it, inserted] = ids.emplace(std::move(v), vertices.size());
    fresh = inserted;
    if (inserted) {
      if (vertices.size() >= opts.state_limit)
        throw resource_limit(vertices.size() + 1);
      vertices.push_back(&it->first);
      adj.emplace_back();
    }
    return it->second;
  };

  BreakpointState start;
  start.all = {a.initial_obligation()};
  if (!a.is_accepting(a.initial()))
    start.owing = start.all;
  bool fresh = false;
  std::vector<std::size_t> work{intern({0, std::move(start)}, fresh)};
  LassoResult result;
  while (!work.empty()) {
    const std::size_t id = work.back();
    work.pop_back();
    const auto& [pos, state] = *vertices[id];
    const std::size_t next_pos = t.successor(pos);
    for (auto& succ : breakpoint_successors(a, cache, state, pos, position_message(t, pos), opts.prune_dominated)) {
      const std::size_t to = intern({next_pos, std::move(succ)}, fresh);
      adj[id].push_back(to);
      ++result.product_edges;
      if (fresh)
        work.push_back(to);
    }
  }
  result.product_states = vertices.size();

  std::size_t components = 0;
  const auto comp = detail::strongly_connected(adj, components);
  std::vector<bool> cyclic(components, false);
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (std::size_t w : adj[v])
      if (comp[v] == comp[w])
        cyclic[comp[v]] = true;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (cyclic[comp[v]] && vertices[v]->second.is_breakpoint()) {
      result.accepted = true;
      break;
    }
  return result;
}

inline bool lasso_accepts(const Automaton& a, const LassoTrace& t, const LassoOptions& opts = {}) {
  return check_lasso(a, t, opts).accepted;
}

} // namespace ltlfo
