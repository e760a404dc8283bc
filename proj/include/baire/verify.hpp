#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "baire/automaton.hpp"
#include "baire/buchi.hpp"
#include "baire/error.hpp"
#include "baire/io.hpp"
#include "baire/loops.hpp"
#include "baire/oracle.hpp"
#include "baire/scc.hpp"
#include "baire/witness.hpp"

namespace baire {

struct VerifyOptions {
  std::uint64_t loop_budget = kDefaultLoopBudget;
  std::size_t product_cap = kDefaultProductCap;
  /// Exhaustive lasso inclusion bounds; max_v = 0 disables the check.
  std::size_t lasso_max_u = 8;
  std::size_t lasso_max_v = 8;
  /// Above this many input states the lasso check is reported as skipped.
  std::size_t lasso_state_limit = 256;
  /// Report over-budget oracle checks as skipped instead of throwing.
  bool skip_over_budget = false;
};

enum class CheckStatus { Pass, Fail, Skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  /// One `check <name> pass|fail|skip [detail]` line per check.
  std::string render() const {
    std::string out;
    for (const auto& c : checks) {
      out += "check " + c.name + ' ' + to_string(c.status);
      if (!c.detail.empty()) out += ' ' + c.detail;
      out += '\n';
    }
    return out;
  }
};

/// "u:v" with symbols concatenated when every symbol is a single character,
/// comma-separated otherwise.
inline std::string format_lasso(const std::vector<std::string>& alphabet, const LassoWord& w) {
  bool single = true;
  for (const auto& s : alphabet) single = single && s.size() == 1;
  auto part = [&](const Word& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (!single && i) out += ',';
      out += alphabet[word[i]];
    }
    return out;
  };
  return part(w.prefix()) + ':' + part(w.period());
}

/// Inverse of format_lasso. Throws std::invalid_argument on unknown symbols,
/// a missing ':' or an empty period.
inline LassoWord parse_lasso(const std::vector<std::string>& alphabet, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("word must have the form u:v");
  bool single = true;
  for (const auto& s : alphabet) single = single && s.size() == 1;
  auto lookup = [&](const std::string& tok) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == tok) return static_cast<Symbol>(i);
    throw std::invalid_argument("unknown symbol '" + tok + "'");
  };
  auto part = [&](const std::string& s) {
    Word w;
    if (single) {
      for (char c : s) w.push_back(lookup(std::string(1, c)));
    } else if (!s.empty()) {
      std::stringstream in(s);
      std::string tok;
      while (std::getline(in, tok, ',')) w.push_back(lookup(tok));
    }
    return w;
  };
  Word period = part(text.substr(colon + 1));
  if (period.empty()) throw std::invalid_argument("period of a lasso word must be nonempty");
  return LassoWord(part(text.substr(0, colon)), std::move(period));
}

namespace detail {

inline bool weak_by_scc(const DetAutomaton& b, const BuchiSet& t) {
  // A mixed loop exists iff some reachable SCC with a loop mixes accepting
  // and rejecting states; singleton SCCs cannot mix.
  const SccAnalysis scc = analyze(b);
  for (const auto& comp : scc.sccs) {
    if (comp.size() < 2 || !scc.reachable[comp.front()]) continue;
    bool inside = comp.is_subset_of(t.accepting);
    bool disjoint = !comp.intersects(t.accepting);
    if (!inside && !disjoint) return false;
  }
  return true;
}

}  // namespace detail

/// Builds the Baire witness for (a, t) and checks it: the symbolic table
/// identity, oracle and exhaustive-lasso inclusion of L(A,T) delta E in F',
/// Buchi/Muller agreement for both witnesses, weakness of B1, and the size of
/// B2.
inline VerifyReport verify_baire_witness(const DetAutomaton& a, const MullerTable& t,
                                         const VerifyOptions& options = {}) {
  for (const auto& z : t) check_valid_states(a, z);
  VerifyReport report;
  const SccAnalysis scc = analyze(a);
  const BaireWitness w = build_baire_witness(a, t, /*prune=*/false);
  const auto& a1 = w.open_muller;
  const auto& a2 = w.meagre_complement_muller;
  const auto& b1 = w.open_buchi;
  const auto& b2 = w.meagre_complement_buchi;
  const auto& alphabet = a.alphabet();

  auto run = [&](const std::string& name, const std::function<CheckResult()>& body) {
    try {
      report.checks.push_back(body());
    } catch (const SizeGuard& e) {
      if (!options.skip_over_budget) throw;
      report.checks.push_back({name, CheckStatus::Skip, e.what()});
    }
  };
  auto verdict = [](const std::string& name, bool ok, std::string detail = {}) {
    return CheckResult{name, ok ? CheckStatus::Pass : CheckStatus::Fail, ok ? std::string() : std::move(detail)};
  };

  // (T delta {2^Z : Z in T and terminal}) meets no terminal-SCC loop.
  run("symbolic-identity", [&] {
    std::vector<StateSet> open_part;
    for (const auto& z : t)
      if (scc.terminal_equal_to(z)) open_part.push_back(z);
    for (const auto& y : scc.terminal_sccs()) {
      if (!is_loop(a, y, scc.reachable)) continue;
      const bool in_table = t.contains(y);
      bool in_power_sets = false;
      for (const auto& z : open_part) in_power_sets = in_power_sets || y.is_subset_of(z);
      if (in_table != in_power_sets)
        return verdict("symbolic-identity", false, "terminal SCC " + y.to_string() + " in symmetric difference");
    }
    return verdict("symbolic-identity", a2.table == MullerTable(scc.terminal_sccs()), "T2 differs from SCC^t");
  });

  run("open-witness-shape", [&] {
    for (const auto& entry : a1.table) {
      if (entry.size() != 1) return verdict("open-witness-shape", false, "entry " + entry.to_string() + " not a singleton");
      for (Symbol x = 0; x < a1.automaton.num_symbols(); ++x)
        if (a1.automaton.step(entry.front(), x) != entry.front())
          return verdict("open-witness-shape", false, "state " + std::to_string(entry.front()) + " not absorbing");
    }
    const bool small = a1.automaton.num_states() <= a.num_states() + scc.terminal.size() + 1;
    return verdict("open-witness-shape", small, "A1 has too many states");
  });

  run("oracle-inclusion", [&] {
    const DetAutomaton* factors[] = {&a, &a1.automaton, &a2.automaton};
    const ProductAutomaton p = product_of(factors, options.product_cap);
    const Acceptance acc[] = {t, a1.table, a2.table};
    auto bad = find_violating_loop(
        p, acc,
        [&](const std::vector<StateSet>& inf) {
          const bool in_delta = t.contains(inf[0]) != a1.table.contains(inf[1]);
          return in_delta && a2.table.contains(inf[2]);
        },
        options.loop_budget);
    if (!bad) return verdict("oracle-inclusion", true);
    const bool confirmed = (accepts_muller(a, t, *bad) != accepts_muller(a1.automaton, a1.table, *bad)) &&
                           accepts_muller(a2.automaton, a2.table, *bad);
    return verdict("oracle-inclusion", false,
                   format_lasso(alphabet, *bad) + (confirmed ? "" : " (unconfirmed)"));
  });

  if (options.lasso_max_v > 0 && a.num_states() > options.lasso_state_limit) {
    report.checks.push_back({"lasso-inclusion", CheckStatus::Skip, "(input above lasso state limit)"});
  } else if (options.lasso_max_v > 0) {
    run("lasso-inclusion", [&] {
      const AcceptorRef refs[] = {{&a, t}, {&a1.automaton, a1.table}, {&a2.automaton, a2.table}};
      auto r = exhaustive_lasso_search(refs, options.lasso_max_u, options.lasso_max_v,
                                       [](const std::vector<bool>& acc) { return (acc[0] != acc[1]) && acc[2]; });
      return verdict("lasso-inclusion", !r.violation, r.violation ? format_lasso(alphabet, *r.violation) : "");
    });
  }

  run("open-buchi-equivalence", [&] {
    auto r = language_equal_oracle(b1.automaton, b1.accepting, a1.automaton, a1.table, options.product_cap,
                                   options.loop_budget);
    return verdict("open-buchi-equivalence", r.holds, r.counterexample ? format_lasso(alphabet, *r.counterexample) : "");
  });

  run("meagre-complement-buchi-equivalence", [&] {
    auto r = language_equal_oracle(b2.automaton, b2.accepting, a2.automaton, a2.table, options.product_cap,
                                   options.loop_budget);
    return verdict("meagre-complement-buchi-equivalence", r.holds,
                   r.counterexample ? format_lasso(alphabet, *r.counterexample) : "");
  });

  run("open-buchi-weak", [&] {
    if (!detail::weak_by_scc(b1.automaton, b1.accepting))
      return verdict("open-buchi-weak", false, "an SCC of B1 mixes accepting and rejecting states");
    std::vector<StateSet> loops;
    try {
      loops = enumerate_loops(b1.automaton, std::nullopt, options.loop_budget);
    } catch (const SizeGuard&) {
      return CheckResult{"open-buchi-weak", CheckStatus::Pass, "(scc criterion only; loop enumeration over budget)"};
    }
    for (const auto& z : loops)
      if (!z.is_subset_of(b1.accepting.accepting) && z.intersects(b1.accepting.accepting))
        return verdict("open-buchi-weak", false, "mixed loop " + z.to_string());
    return verdict("open-buchi-weak", true);
  });

  run("buchi-state-bound", [&] {
    const std::size_t bound = buchi_state_bound(a2.automaton, a2.table);
    const std::size_t n = a.num_states();
    const bool ok = b2.unpruned_states == bound && bound <= n + n * n;
    return verdict("buchi-state-bound", ok,
                   "B2 has " + std::to_string(b2.unpruned_states) + " states, bound " + std::to_string(bound));
  });

  return report;
}

}  // namespace baire
