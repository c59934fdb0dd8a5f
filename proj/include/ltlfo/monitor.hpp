#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "automaton.hpp"
#include "dnf.hpp"
#include "events.hpp"
#include "formula.hpp"

namespace ltlfo {

enum class Verdict { true_, false_, inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::true_: return "TRUE";
  case Verdict::false_: return "FALSE";
  case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

/// Frontier of every candidate run after a consumed prefix.
using Configuration = TransitionDnf;

inline Configuration init(const Automaton& a) { return TransitionDnf::atom(a.initial_obligation()); }

/// TRUE once some conjunct has no obligation left, FALSE once no conjunct
/// survives. Impartial: no verdict is promoted by looking ahead.
inline Verdict verdict(const Configuration& c) {
  if (c.is_false())
    return Verdict::false_;
  for (const auto& conj : c.conjuncts())
    if (conj.empty())
      return Verdict::true_;
  return Verdict::inconclusive;
}

namespace detail {

template <class Delta>
Configuration step_with(const Configuration& c, Delta&& delta) {
  if (verdict(c) != Verdict::inconclusive)
    return c;
  TransitionDnf next = TransitionDnf::falsity();
  for (const auto& conj : c.conjuncts()) {
    TransitionDnf acc = TransitionDnf::truth();
    for (const auto& o : conj) {
      acc = acc & delta(o);
      if (acc.is_false())
        break;
    }
    next = next | acc;
    if (next.is_true())
      break;
  }
  return next;
}

} // namespace detail

/// Replaces every obligation by its transition, conjoins within each
/// conjunct and disjoins across conjuncts.
inline Configuration step(const Automaton& a, const Configuration& c, const Message& m) {
  return detail::step_with(c, [&](const Obligation& o) { return a.delta(o, m); });
}

/// Incremental monitor holding only the current configuration.
class Monitor {
public:
  explicit Monitor(const Formula& phi) : automaton_(to_nnf(phi)), config_(init(automaton_)), cache_(automaton_) {}

  Monitor(const Monitor&) = delete;
  Monitor& operator=(const Monitor&) = delete;

  Verdict step(const Message& m) {
    const std::size_t pos = position_++;
    // Entries for earlier positions can never be hit again.
    cache_.clear();
    config_ = detail::step_with(config_, [&](const Obligation& o) { return cache_.delta(o, pos, m); });
    return verdict(config_);
  }

  Verdict current() const { return verdict(config_); }
  const Configuration& configuration() const noexcept { return config_; }
  const Automaton& automaton() const noexcept { return automaton_; }
  std::size_t consumed() const noexcept { return position_; }

private:
  Automaton automaton_;
  Configuration config_;
  TransitionCache cache_;
  std::size_t position_ = 0;
};

/// One verdict per message of t.
inline std::vector<Verdict> monitor_trace(const Formula& phi, const Trace& t) {
  Monitor mon(phi);
  std::vector<Verdict> out;
  out.reserve(t.size());
  for (const auto& m : t)
    out.push_back(mon.step(m));
  return out;
}

} // namespace ltlfo
