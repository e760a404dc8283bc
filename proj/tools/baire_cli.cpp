// Command-line front end: analyze, baire, to-buchi, check, selftest.
//
// Exit codes: 0 success (including negative verdicts), 2 parse/input error,
// 3 budget exceeded, 4 precondition violated, 5 alphabet mismatch.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "baire/baire.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitAlphabet = 5;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

baire::AutomatonFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return baire::parse_automaton(in);
  } catch (const baire::ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

const baire::MullerTable& require_muller(const baire::AutomatonFile& f, const std::string& path) {
  if (!f.is_muller()) throw InputError(path + ": expected acc-type muller");
  return f.muller();
}

std::string join_sets(const std::vector<baire::StateSet>& sets) {
  std::string out;
  for (const auto& z : sets) out += (out.empty() ? "" : " ") + z.to_string();
  return out.empty() ? "(none)" : out;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string file;
  bool enumerate = false;
  std::uint64_t loop_budget = baire::kDefaultLoopBudget;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const auto f = load(args.file);
  const auto& a = f.automaton;
  const auto scc = baire::analyze(a);
  std::cout << "states " << a.num_states() << ", symbols " << a.num_symbols() << '\n';
  std::cout << "sccs " << scc.sccs.size() << '\n';
  for (baire::SccId id = 0; id < scc.sccs.size(); ++id) {
    std::cout << "  scc " << id << ' ' << scc.sccs[id].to_string();
    if (scc.is_terminal(id)) std::cout << " terminal";
    if (!scc.reachable[scc.sccs[id].front()]) std::cout << " unreachable";
    std::cout << '\n';
  }
  std::cout << "terminal " << scc.terminal.size() << '\n';
  std::cout << "condensation-edges";
  for (auto [from, to] : scc.condensation_edges) std::cout << ' ' << from << "->" << to;
  std::cout << '\n';
  if (f.is_muller()) {
    for (const auto& z : f.muller()) {
      const bool loop = baire::is_loop(a, z, scc.reachable);
      const bool is_scc = scc.scc_equal_to(z).has_value();
      const bool terminal = scc.terminal_equal_to(z).has_value();
      std::cout << "entry " << z.to_string() << " loop=" << (loop ? "yes" : "no")
                << " scc=" << (is_scc ? "yes" : "no") << " terminal=" << (terminal ? "yes" : "no") << '\n';
    }
    const auto topo = baire::classify(a, f.muller(), args.loop_budget);
    std::cout << "open " << baire::to_string(topo.open) << "\nmeagre " << baire::to_string(topo.meagre)
              << "\ndense " << baire::to_string(topo.dense) << "\nnowhere-dense "
              << baire::to_string(topo.nowhere_dense) << '\n';
  }
  if (args.enumerate) {
    const auto loops = baire::enumerate_loops(a, scc, std::nullopt, args.loop_budget);
    std::cout << "loops " << loops.size() << '\n';
    for (const auto& z : loops) std::cout << "  " << z.to_string() << '\n';
  }
  return 0;
}

// --- baire -----------------------------------------------------------------

struct BaireArgs {
  std::string file;
  std::string out_open;
  std::string out_meagre;
  std::string out_open_buchi;
  std::string out_meagre_buchi;
  bool buchi = false;
  bool no_prune = false;
};

bool some_state_reachable(const baire::DetAutomaton& a, const baire::StateSet& targets) {
  const auto reach = baire::reachable_states(a);
  return std::any_of(targets.begin(), targets.end(), [&](baire::State s) { return reach[s]; });
}

int cmd_baire(const BaireArgs& args) {
  const auto f = load(args.file);
  const auto& t = require_muller(f, args.file);
  const auto w = baire::build_baire_witness(f.automaton, t, !args.no_prune);
  const auto& open = w.open_muller;
  const auto& meagre = w.meagre_complement_muller;

  std::vector<baire::State> merged_accepting;
  for (const auto& e : open.table) merged_accepting.push_back(e.front());
  const bool e_nonempty = some_state_reachable(open.automaton, baire::StateSet(merged_accepting));

  std::cout << "input states " << f.automaton.num_states() << '\n';
  std::cout << "open automaton states " << open.automaton.num_states() << ", table "
            << join_sets(open.table.entries()) << '\n';
  std::cout << "E nonempty: " << (e_nonempty ? "true" : "false") << '\n';
  std::cout << "meagre-complement automaton states " << meagre.automaton.num_states() << ", table "
            << join_sets(meagre.table.entries()) << '\n';
  std::cout << "note: F' is the complement of the meagre-complement automaton's language\n";
  if (!args.out_open.empty()) write_file(args.out_open, baire::serialize(open.automaton, open.table, open.state_notes()));
  if (!args.out_meagre.empty()) write_file(args.out_meagre, baire::serialize(meagre.automaton, meagre.table));

  if (args.buchi) {
    const auto& b1 = w.open_buchi;
    const auto& b2 = w.meagre_complement_buchi;
    std::cout << "open buchi states " << b1.automaton.num_states() << ", accepting "
              << b1.accepting.accepting.to_string() << '\n';
    std::cout << "meagre-complement buchi states " << b2.automaton.num_states() << " (unpruned "
              << b2.unpruned_states << "), accepting " << b2.accepting.accepting.to_string() << '\n';
    if (!args.out_open_buchi.empty())
      write_file(args.out_open_buchi, baire::serialize(b1.automaton, b1.accepting, open.state_notes()));
    if (!args.out_meagre_buchi.empty())
      write_file(args.out_meagre_buchi, baire::serialize(b2.automaton, b2.accepting, b2.state_notes()));
  }
  return 0;
}

// --- to-buchi --------------------------------------------------------------

struct ToBuchiArgs {
  std::string file;
  std::string out = "-";
  bool no_prune = false;
};

int cmd_to_buchi(const ToBuchiArgs& args) {
  const auto f = load(args.file);
  const auto& t = require_muller(f, args.file);
  const auto b = baire::muller_to_buchi_maximal(f.automaton, t, !args.no_prune);
  for (const auto& d : b.diagnostics) std::cerr << "note: " << d << '\n';
  write_file(args.out, baire::serialize(b.automaton, b.accepting, b.state_notes()));
  return 0;
}

// --- check -----------------------------------------------------------------

struct CheckArgs {
  std::string file;
  std::string word;
  std::string left;
  std::string right;
  bool complement_right = false;
  std::size_t product_cap = baire::kDefaultProductCap;
  std::uint64_t loop_budget = baire::kDefaultLoopBudget;
};

int cmd_member(const CheckArgs& args) {
  const auto f = load(args.file);
  baire::LassoWord w = [&] {
    try {
      return baire::parse_lasso(f.automaton.alphabet(), args.word);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--word: ") + e.what());
    }
  }();
  std::cout << (baire::accepts(f.automaton, f.acceptance, w) ? "true" : "false") << '\n';
  return 0;
}

int cmd_subset(const CheckArgs& args) {
  const auto l = load(args.left);
  const auto r = load(args.right);
  if (l.automaton.alphabet() != r.automaton.alphabet())
    throw baire::AlphabetMismatch("alphabets of '" + args.left + "' and '" + args.right + "' differ");
  // X^omega \ L(B, T) is L(B, 2^S \ T) for Muller and has no direct Buchi
  // form, so complementation is evaluated on the product loops directly.
  const baire::DetAutomaton* factors[] = {&l.automaton, &r.automaton};
  const auto p = baire::product_of(factors, args.product_cap);
  const bool complement = args.complement_right;
  const baire::Acceptance acc[] = {l.acceptance, r.acceptance};
  auto bad = baire::find_violating_loop(
      p, acc,
      [&](const std::vector<baire::StateSet>& inf) {
        return baire::accepts_inf(l.acceptance, inf[0]) && (baire::accepts_inf(r.acceptance, inf[1]) == complement);
      },
      args.loop_budget);
  if (!bad) {
    std::cout << "true\n";
    return 0;
  }
  const bool confirmed = baire::accepts(l.automaton, l.acceptance, *bad) &&
                         (baire::accepts(r.automaton, r.acceptance, *bad) == complement);
  if (!confirmed) throw std::logic_error("subset oracle produced an invalid witness");
  std::cout << "false " << baire::format_lasso(l.automaton.alphabet(), *bad) << '\n';
  return 0;
}

// --- selftest --------------------------------------------------------------

struct SelftestArgs {
  std::size_t states = 5;
  std::size_t alphabet = 2;
  std::size_t trials = 100;
  std::size_t entries = 3;
  std::uint64_t seed = 1;
  std::size_t lasso_bound = 8;
  bool strict_budget = false;
};

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  auto idx = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1) + 0.5);
  return v[std::min(idx, v.size() - 1)];
}

int cmd_selftest(const SelftestArgs& args) {
  using clock = std::chrono::steady_clock;
  std::vector<double> build_ms, verify_ms;
  std::size_t failures = 0, skipped = 0;
  baire::VerifyOptions options;
  options.lasso_max_u = args.lasso_bound;
  options.lasso_max_v = args.lasso_bound;
  options.skip_over_budget = !args.strict_budget;

  for (std::size_t trial = 0; trial < args.trials; ++trial) {
    baire::RandomSpec spec;
    spec.n_states = args.states;
    spec.alphabet_size = args.alphabet;
    spec.seed = args.seed * 1000003ULL + trial;
    const std::size_t max_entries = args.states < 63 ? (std::size_t{1} << args.states) - 1 : args.entries;
    spec.table_entries = std::min(args.entries, max_entries);
    const auto [a, t] = baire::random_instance(spec);

    auto t0 = clock::now();
    const auto w = baire::build_baire_witness(a, t, /*prune=*/false);
    auto t1 = clock::now();
    const auto report = baire::verify_baire_witness(a, t, options);
    auto t2 = clock::now();
    build_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    verify_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());

    std::size_t trial_skips = 0;
    for (const auto& c : report.checks) trial_skips += c.status == baire::CheckStatus::Skip;
    skipped += trial_skips;
    std::cout << "trial " << trial << " states " << a.num_states() << " entries " << t.size() << " open-states "
              << w.open_muller.automaton.num_states() << " buchi-states " << w.meagre_complement_buchi.unpruned_states
              << ' ' << (report.passed() ? "pass" : "FAIL");
    if (trial_skips) std::cout << " (" << trial_skips << " skipped)";
    std::cout << '\n';
    if (!report.passed()) {
      ++failures;
      std::cout << baire::serialize(a, t);
      std::cout << report.render();
    }
  }
  std::cout << "selftest trials " << args.trials << " failures " << failures << " skipped-checks " << skipped << '\n';
  std::cerr << "timing build ms p50 " << percentile(build_ms, 0.5) << " p90 " << percentile(build_ms, 0.9) << " max "
            << percentile(build_ms, 1.0) << '\n';
  std::cerr << "timing verify ms p50 " << percentile(verify_ms, 0.5) << " p90 " << percentile(verify_ms, 0.9)
            << " max " << percentile(verify_ms, 1.0) << '\n';
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automatic Baire property witnesses for deterministic Muller automata"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "SCCs, terminal SCCs, table-entry and topological classification");
  analyze->add_option("file", analyze_args.file, "automaton file")->required();
  analyze->add_flag("--enumerate-loops", analyze_args.enumerate, "list every loop (exponential)");
  analyze->add_option("--loop-budget", analyze_args.loop_budget, "maximum subsets examined by loop enumeration");

  BaireArgs baire_args;
  auto* baire_cmd = app.add_subcommand("baire", "build the open witness E and the complement of the meagre set F'");
  baire_cmd->add_option("file", baire_args.file, "Muller automaton file")->required();
  baire_cmd->add_option("--out-open", baire_args.out_open, "write (A1, T1) here ('-' for stdout)");
  baire_cmd->add_option("--out-meagre-complement", baire_args.out_meagre, "write (A2, T2) here");
  baire_cmd->add_flag("--buchi", baire_args.buchi, "also build the Buchi automata B1 and B2");
  baire_cmd->add_option("--out-open-buchi", baire_args.out_open_buchi, "write (B1, T1) here");
  baire_cmd->add_option("--out-meagre-complement-buchi", baire_args.out_meagre_buchi, "write (B2, T2) here");
  baire_cmd->add_flag("--no-prune", baire_args.no_prune, "keep unreachable layered states in B2");

  ToBuchiArgs to_buchi_args;
  auto* to_buchi = app.add_subcommand("to-buchi", "Muller with maximal-loop table to deterministic Buchi");
  to_buchi->add_option("file", to_buchi_args.file, "Muller automaton file")->required();
  to_buchi->add_option("-o,--out", to_buchi_args.out, "output file ('-' for stdout)");
  to_buchi->add_flag("--no-prune", to_buchi_args.no_prune, "keep unreachable layered states");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "membership and inclusion queries");
  check->require_subcommand(1);
  auto* member = check->add_subcommand("member", "is the lasso u·v^omega accepted?");
  member->add_option("file", check_args.file, "automaton file")->required();
  member->add_option("--word", check_args.word, "lasso as u:v")->required();
  auto* subset = check->add_subcommand("subset", "is L(left) a subset of L(right)?");
  subset->add_option("left", check_args.left, "left automaton file")->required();
  subset->add_option("right", check_args.right, "right automaton file")->required();
  subset->add_flag("--complement-right", check_args.complement_right, "compare against the complement of L(right)");
  subset->add_option("--product-cap", check_args.product_cap, "maximum product states");
  subset->add_option("--loop-budget", check_args.loop_budget, "maximum product states examined by the loop search");

  SelftestArgs selftest_args;
  auto* selftest = app.add_subcommand("selftest", "verify witnesses on random instances");
  selftest->add_option("--states", selftest_args.states, "states per instance")->check(CLI::PositiveNumber);
  selftest->add_option("--alphabet", selftest_args.alphabet, "alphabet size")->check(CLI::PositiveNumber);
  selftest->add_option("--trials", selftest_args.trials, "number of instances");
  selftest->add_option("--entries", selftest_args.entries, "table entries per instance");
  selftest->add_option("--seed", selftest_args.seed, "base seed");
  selftest->add_option("--lasso-bound", selftest_args.lasso_bound, "max |u| and |v| for exhaustive lasso checks");
  selftest->add_flag("--strict-budget", selftest_args.strict_budget, "exit 3 instead of skipping over-budget checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*analyze) return cmd_analyze(analyze_args);
    if (*baire_cmd) return cmd_baire(baire_args);
    if (*to_buchi) return cmd_to_buchi(to_buchi_args);
    if (*member) return cmd_member(check_args);
    if (*subset) return cmd_subset(check_args);
    if (*selftest) return cmd_selftest(selftest_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const baire::SizeGuard& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const baire::PreconditionViolated& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d << '\n';
    return kExitPrecondition;
  } catch (const baire::AlphabetMismatch& e) {
    std::cerr << "alphabet mismatch: " << e.what() << '\n';
    return kExitAlphabet;
  }
  return 0;
}
