#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "events.hpp"
#include "formula.hpp"
#include "lasso.hpp"
#include "oracle.hpp"

namespace ltlfo {

struct FuzzBounds {
  std::size_t max_depth = 3;       // temporal depth
  std::size_t max_quantifiers = 2;
  std::size_t alphabet = 3;        // distinct leaf values
  std::size_t max_prefix = 4;
  std::size_t max_loop = 3;
  std::size_t max_nodes = 12;      // AST size budget
};

/// Deterministic random formulas, messages and traces.
///
/// Messages have the shape {"m": {"a": [...], "b": [...]}} with up to two
/// values per child; quantifiers range over /m/a, /m/b and the never
/// present /m/c.
class Generator {
public:
  Generator(std::uint64_t seed, FuzzBounds bounds) : rng_(seed), bounds_(bounds) {}

  /// Case-independent stream for (seed, index).
  static Generator for_case(std::uint64_t seed, std::uint64_t index, FuzzBounds bounds) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 mixer(seq);
    return Generator(mixer(), bounds);
  }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }

  /// Well-formed formula that may use every connective, including !, ->, F, G.
  Formula formula() {
    quantifiers_left_ = bounds_.max_quantifiers;
    next_var_ = 0;
    std::vector<std::string> scope;
    return gen(bounds_.max_depth, bounds_.max_nodes, scope);
  }

  std::string value() { return "v" + std::to_string(below(std::max<std::size_t>(bounds_.alphabet, 1))); }

  Message message() {
    std::vector<Node> children;
    for (const char* name : {"a", "b"}) {
      const std::size_t n = below(3);
      for (std::size_t i = 0; i < n; ++i)
        children.push_back(Node::element(name, {Node::text(value())}));
    }
    return Message(Node::element("m", std::move(children)));
  }

  Trace trace(std::size_t length) {
    Trace out;
    for (std::size_t i = 0; i < length; ++i)
      out.push_back(message());
    return out;
  }

  LassoTrace lasso() {
    auto prefix = trace(below(bounds_.max_prefix + 1));
    auto loop = trace(1 + below(std::max<std::size_t>(bounds_.max_loop, 1)));
    return LassoTrace(std::move(prefix), std::move(loop));
  }

private:
  Term term(const std::vector<std::string>& scope) {
    if (!scope.empty() && chance(70))
      return Term::variable(scope[below(scope.size())]);
    return Term::constant(value());
  }

  Formula atom(const std::vector<std::string>& scope) {
    if (chance(8))
      return chance(50) ? Formula::truth() : Formula::falsity();
    Term l = term(scope);
    Term r = term(scope);
    return chance(50) ? Formula::equal(std::move(l), std::move(r)) : Formula::not_equal(std::move(l), std::move(r));
  }

  Formula gen(std::size_t depth, std::size_t budget, std::vector<std::string>& scope) {
    if (budget <= 1 || chance(budget <= 3 ? 50 : 15))
      return atom(scope);
    enum Choice { neg, conj, disj, impl, next, fin, glob, until, release, quant };
    std::vector<Choice> options{neg, conj, disj, impl};
    if (depth > 0)
      options.insert(options.end(), {next, fin, glob, until, release, until, release});
    if (quantifiers_left_ > 0)
      options.insert(options.end(), {quant, quant, quant});
    const Choice c = options[below(options.size())];
    const std::size_t rest = budget - 1;
    auto binary = [&](std::size_t d) {
      const std::size_t lb = 1 + below(rest > 1 ? rest - 1 : 1);
      Formula l = gen(d, lb, scope);
      Formula r = gen(d, rest > lb ? rest - lb : 1, scope);
      return std::pair{l, r};
    };
    switch (c) {
    case neg: return Formula::negation(gen(depth, rest, scope));
    case conj: { auto [l, r] = binary(depth); return Formula::conjunction(l, r); }
    case disj: { auto [l, r] = binary(depth); return Formula::disjunction(l, r); }
    case impl: { auto [l, r] = binary(depth); return Formula::implication(l, r); }
    case next: return Formula::next(gen(depth - 1, rest, scope));
    case fin: return Formula::finally(gen(depth - 1, rest, scope));
    case glob: return Formula::globally(gen(depth - 1, rest, scope));
    case until: { auto [l, r] = binary(depth - 1); return Formula::until(l, r); }
    case release: { auto [l, r] = binary(depth - 1); return Formula::release(l, r); }
    case quant: {
      --quantifiers_left_;
      std::string var = "x" + std::to_string(next_var_++);
      static const char* const paths[] = {"/m/a", "/m/a", "/m/b", "/m/b", "/m/c"};
      Path path = Path::parse(paths[below(5)]);
      scope.push_back(var);
      Formula body = gen(depth, rest, scope);
      scope.pop_back();
      return chance(50) ? Formula::exists(var, path, body) : Formula::forall(var, path, body);
    }
    }
    return atom(scope);
  }

  std::mt19937_64 rng_;
  FuzzBounds bounds_;
  std::size_t quantifiers_left_ = 0;
  std::size_t next_var_ = 0;
};

struct FuzzCase {
  Formula formula;
  LassoTrace lasso;
};

/// The index-th case of a seeded run; independent of every other index.
inline FuzzCase fuzz_case(std::uint64_t seed, std::uint64_t index, const FuzzBounds& bounds = {}) {
  Generator g = Generator::for_case(seed, index, bounds);
  Formula f = g.formula();
  return {f, g.lasso()};
}

struct FuzzFailure {
  std::size_t index;
  std::string formula;
  std::string lasso;
  std::string automaton; // "true", "false" or "limit"
  bool oracle;
};

struct FuzzReport {
  std::size_t total = 0;
  std::size_t agreements = 0;
  std::vector<FuzzFailure> failures;
  std::size_t max_states = 0;
  std::size_t total_states = 0;
  std::size_t max_product_states = 0;
  std::size_t total_product_states = 0;
  std::size_t accepted = 0;
  /// Cases where |states| exceeded node count + 2.
  std::size_t state_bound_violations = 0;
  double seconds = 0.0;

  bool ok() const noexcept { return agreements == total; }
};

/// Compares lasso acceptance against the oracle on `count` random cases.
inline FuzzReport fuzz_compare(std::uint64_t seed, std::size_t count, const FuzzBounds& bounds = {},
                               const LassoOptions& opts = {}) {
  FuzzReport report;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < count; ++i) {
    FuzzCase c = fuzz_case(seed, i, bounds);
    const Formula nnf = to_nnf(c.formula);
    const Automaton a(nnf);
    report.max_states = std::max(report.max_states, a.size());
    report.total_states += a.size();
    if (a.size() > nnf.node_count() + 2)
      ++report.state_bound_violations;
    const bool expected = oracle_eval({}, nnf, c.lasso, 0);
    std::string got;
    try {
      LassoResult r = check_lasso(a, c.lasso, opts);
      report.max_product_states = std::max(report.max_product_states, r.product_states);
      report.total_product_states += r.product_states;
      got = r.accepted ? "true" : "false";
    } catch (const resource_limit&) {
      got = "limit";
    }
    ++report.total;
    if (got == (expected ? "true" : "false")) {
      ++report.agreements;
      report.accepted += expected;
    } else {
      report.failures.push_back({i, to_string(c.formula), lasso_to_json(c.lasso).dump(), got, expected});
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

/// FAIL lines, then the deterministic statistics, then `AGREE n/m`.
inline void write_report(std::ostream& os, const FuzzReport& r) {
  for (const auto& f : r.failures)
    os << "FAIL " << f.index << ' ' << f.formula << ' ' << f.lasso << " automaton=" << f.automaton
       << " oracle=" << (f.oracle ? "true" : "false") << '\n';
  os << "STATS accepted=" << r.accepted << " max-states=" << r.max_states << " total-states=" << r.total_states
     << " max-product=" << r.max_product_states << " total-product=" << r.total_product_states
     << " state-bound-violations=" << r.state_bound_violations << '\n';
  os << "AGREE " << r.agreements << '/' << r.total << '\n';
}

} // namespace ltlfo
