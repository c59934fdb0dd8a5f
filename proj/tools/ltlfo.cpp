// Command-line front end: compile, monitor, accept, oracle, fuzz.
//
// Exit status: 0 TRUE / accept / agreement, 1 FALSE / reject / disagreement,
// 2 INCONCLUSIVE, 3 usage or input error, 4 state limit exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <ltlfo/ltlfo.hpp>

namespace {

constexpr int exit_input_error = 3;
constexpr int exit_resource_limit = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ltlfo::error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ltlfo::Formula load_formula(const std::string& path) { return ltlfo::parse(slurp(path)); }

int verdict_status(ltlfo::Verdict v) {
  switch (v) {
  case ltlfo::Verdict::true_: return 0;
  case ltlfo::Verdict::false_: return 1;
  case ltlfo::Verdict::inconclusive: return 2;
  }
  return 2;
}

int cmd_compile(const std::string& formula_file, bool dot, bool stats) {
  const ltlfo::Formula nnf = ltlfo::to_nnf(load_formula(formula_file));
  const ltlfo::Automaton a(nnf);
  if (dot) {
    std::cout << ltlfo::to_dot(a);
  } else {
    for (std::uint32_t i = 0; i < a.size(); ++i) {
      ltlfo::StateRef s{i};
      std::cout << 's' << i << '\t' << (s == a.initial() ? 'I' : '-') << (a.is_accepting(s) ? 'A' : '-') << '\t'
                << a.label(s) << '\n';
    }
  }
  if (stats) {
    std::cout << "states " << a.size() << '\n'
              << "temporal-depth " << ltlfo::temporal_depth(nnf) << '\n'
              << "variables " << a.variables().size() << '\n';
  }
  return 0;
}

int cmd_monitor(const std::string& formula_file, const std::string& trace_file) {
  const ltlfo::Formula phi = load_formula(formula_file);
  std::ifstream in(trace_file, std::ios::binary);
  if (!in)
    throw ltlfo::error("cannot open '" + trace_file + "'");
  ltlfo::Monitor mon(phi);
  ltlfo::TraceReader reader(in);
  std::size_t index = 0;
  while (auto m = reader.next()) {
    std::cout << index++ << '\t' << ltlfo::to_string(mon.step(*m)) << '\n';
  }
  const auto v = mon.current();
  std::cout << "RESULT " << ltlfo::to_string(v) << '\n';
  return verdict_status(v);
}

int cmd_accept(const std::string& formula_file, const std::string& lasso_file, std::size_t state_limit) {
  const ltlfo::Automaton a(ltlfo::to_nnf(load_formula(formula_file)));
  const ltlfo::LassoTrace t = ltlfo::load_lasso(slurp(lasso_file));
  ltlfo::LassoOptions opts;
  opts.state_limit = state_limit;
  const bool ok = ltlfo::lasso_accepts(a, t, opts);
  std::cout << "RESULT " << (ok ? "TRUE" : "FALSE") << '\n';
  return ok ? 0 : 1;
}

int cmd_oracle(const std::string& formula_file, const std::string& lasso_file) {
  const ltlfo::Formula phi = load_formula(formula_file);
  const ltlfo::LassoTrace t = ltlfo::load_lasso(slurp(lasso_file));
  const bool ok = ltlfo::oracle_eval({}, phi, t, 0);
  std::cout << "RESULT " << (ok ? "TRUE" : "FALSE") << '\n';
  return ok ? 0 : 1;
}

int cmd_fuzz(std::uint64_t seed, std::size_t count, const ltlfo::FuzzBounds& bounds, std::size_t state_limit) {
  ltlfo::LassoOptions opts;
  opts.state_limit = state_limit;
  const auto report = ltlfo::fuzz_compare(seed, count, bounds, opts);
  ltlfo::write_report(std::cout, report);
  std::cerr << "fuzz: " << report.total << " cases in " << report.seconds << " s\n";
  return report.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTL-FO+ compiler, monitor and lasso acceptance checker"};
  app.require_subcommand(1);

  std::string formula_file, trace_file, lasso_file;
  bool dot = false, stats = false;
  std::uint64_t seed = 42;
  std::size_t count = 200;
  std::size_t state_limit = ltlfo::LassoOptions{}.state_limit;
  ltlfo::FuzzBounds bounds;

  auto* compile = app.add_subcommand("compile", "List the automaton's states");
  compile->add_option("--formula", formula_file, "Formula file")->required();
  compile->add_flag("--dot", dot, "Emit Graphviz DOT instead of the listing");
  compile->add_flag("--stats", stats, "Print state count, temporal depth and variable count");

  auto* monitor = app.add_subcommand("monitor", "Monitor a JSON Lines trace, one verdict per message");
  monitor->add_option("--formula", formula_file, "Formula file")->required();
  monitor->add_option("--trace", trace_file, "Trace file (JSON Lines)")->required();

  auto* accept = app.add_subcommand("accept", "Decide automaton acceptance of a lasso trace");
  accept->add_option("--formula", formula_file, "Formula file")->required();
  accept->add_option("--lasso", lasso_file, "Lasso file")->required();
  accept->add_option("--state-limit", state_limit, "Maximum product states")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Evaluate a lasso trace with the reference semantics");
  oracle->add_option("--formula", formula_file, "Formula file")->required();
  oracle->add_option("--lasso", lasso_file, "Lasso file")->required();

  auto* fuzz = app.add_subcommand("fuzz", "Compare automaton and oracle on random cases");
  fuzz->add_option("--seed", seed, "Random seed")->capture_default_str();
  fuzz->add_option("--count", count, "Number of cases")->capture_default_str();
  fuzz->add_option("--max-depth", bounds.max_depth, "Maximum temporal depth")->capture_default_str();
  fuzz->add_option("--max-quant", bounds.max_quantifiers, "Maximum quantifiers per formula")->capture_default_str();
  fuzz->add_option("--alphabet", bounds.alphabet, "Distinct leaf values")->capture_default_str();
  fuzz->add_option("--max-prefix", bounds.max_prefix, "Maximum lasso prefix length")->capture_default_str();
  fuzz->add_option("--max-loop", bounds.max_loop, "Maximum lasso loop length")->capture_default_str();
  fuzz->add_option("--state-limit", state_limit, "Maximum product states per case")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_input_error;
  }

  try {
    if (*compile)
      return cmd_compile(formula_file, dot, stats);
    if (*monitor)
      return cmd_monitor(formula_file, trace_file);
    if (*accept)
      return cmd_accept(formula_file, lasso_file, state_limit);
    if (*oracle)
      return cmd_oracle(formula_file, lasso_file);
    if (*fuzz)
      return cmd_fuzz(seed, count, bounds, state_limit);
  } catch (const ltlfo::resource_limit& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_resource_limit;
  } catch (const ltlfo::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  return exit_input_error;
}
