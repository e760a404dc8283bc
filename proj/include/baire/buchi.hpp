#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "baire/automaton.hpp"
#include "baire/error.hpp"
#include "baire/loops.hpp"
#include "baire/scc.hpp"

namespace baire {

/// Outcome of checking that every loop in a Muller table is an SCC.
struct MaximalLoopReport {
  bool ok = true;
  /// Loop entries that are SCCs; these become the layered blocks.
  std::vector<StateSet> blocks;
  /// Loop entries strictly inside an SCC.
  std::vector<StateSet> non_maximal;
  /// Entries that are not loops at all; semantically inert, dropped.
  std::vector<StateSet> dropped;
  std::vector<std::string> diagnostics;
};

inline MaximalLoopReport check_maximal_loops(const DetAutomaton& a, const SccAnalysis& scc,
                                             const MullerTable& t) {
  MaximalLoopReport r;
  for (const auto& z : t) {
    check_valid_states(a, z);
    if (!is_loop(a, z, scc.reachable)) {
      r.dropped.push_back(z);
      r.diagnostics.push_back("dropped non-loop entry " + z.to_string());
    } else if (scc.scc_equal_to(z)) {
      r.blocks.push_back(z);
    } else {
      r.ok = false;
      r.non_maximal.push_back(z);
      r.diagnostics.push_back("entry " + z.to_string() + " is a loop but not a maximal loop (SCC)");
    }
  }
  return r;
}

inline MaximalLoopReport check_maximal_loops(const DetAutomaton& a, const MullerTable& t) {
  return check_maximal_loops(a, analyze(a), t);
}

/// |S| + sum of |Z|^2 over the maximal-loop entries of `t`.
inline std::size_t buchi_state_bound(const DetAutomaton& a, const MullerTable& t) {
  std::size_t total = a.num_states();
  for (const auto& z : check_maximal_loops(a, t).blocks) total += z.size() * z.size();
  return total;
}

/// A state of the layered automaton. Layer 0 tracks the original run; layer
/// j >= 1 records that the first j states of the base's block (in ascending
/// order) have been swept in order since the block was last entered.
struct LayeredState {
  State base;
  std::uint32_t layer;

  friend bool operator==(const LayeredState&, const LayeredState&) = default;
};

struct LayeredBuchi {
  DetAutomaton automaton;
  BuchiSet accepting;
  /// Origin of each state of `automaton`.
  std::vector<LayeredState> states;
  /// State count before pruning; equals buchi_state_bound.
  std::size_t unpruned_states;
  std::vector<std::string> diagnostics;

  std::vector<std::string> state_notes() const {
    std::vector<std::string> notes;
    notes.reserve(states.size());
    for (const auto& s : states)
      notes.push_back("layered (" + std::to_string(s.base) + ", " + std::to_string(s.layer) + ")");
    return notes;
  }
};

/// Deterministic Buchi automaton equivalent to (a, t) for tables whose loops
/// are all maximal. Each block Z_i gets layers 1..|Z_i|; the accepting states
/// are (last state of Z_i, |Z_i|). Throws PreconditionViolated if some loop
/// entry is not an SCC. Non-loop entries are dropped with a diagnostic.
inline LayeredBuchi muller_to_buchi_maximal(const DetAutomaton& a, const MullerTable& t,
                                            bool prune = true) {
  const SccAnalysis scc = analyze(a);
  MaximalLoopReport check = check_maximal_loops(a, scc, t);
  if (!check.ok) throw PreconditionViolated("table has loops that are not maximal", check.diagnostics);

  const std::size_t n = a.num_states();
  const std::size_t k = a.num_symbols();
  constexpr std::uint32_t kNone = UINT32_MAX;
  const auto& blocks = check.blocks;

  std::vector<std::uint32_t> block_of(n, kNone), pos_in_block(n, 0);
  std::vector<std::size_t> offset(blocks.size());
  std::size_t total = n;
  for (std::uint32_t i = 0; i < blocks.size(); ++i) {
    offset[i] = total;
    total += blocks[i].size() * blocks[i].size();
    for (std::uint32_t p = 0; p < blocks[i].size(); ++p) {
      block_of[blocks[i][p]] = i;
      pos_in_block[blocks[i][p]] = p;
    }
  }

  auto index_of = [&](State base, std::uint32_t layer) -> std::size_t {
    if (layer == 0) return base;
    const std::uint32_t i = block_of[base];
    return offset[i] + (layer - 1) * blocks[i].size() + pos_in_block[base];
  };

  std::vector<LayeredState> origin(total);
  std::vector<State> delta(total * k);
  for (State s = 0; s < n; ++s) {
    origin[s] = {s, 0};
    for (Symbol x = 0; x < k; ++x) {
      const State target = a.step(s, x);
      const std::uint32_t i = block_of[target];
      const bool enters_first = i != kNone && pos_in_block[target] == 0;
      delta[s * k + x] = static_cast<State>(index_of(target, enters_first ? 1 : 0));
    }
  }
  for (std::uint32_t i = 0; i < blocks.size(); ++i) {
    const auto kappa = static_cast<std::uint32_t>(blocks[i].size());
    for (std::uint32_t j = 1; j <= kappa; ++j) {
      for (State z : blocks[i]) {
        const std::size_t from = index_of(z, j);
        origin[from] = {z, j};
        for (Symbol x = 0; x < k; ++x) {
          const State target = a.step(z, x);
          std::size_t to;
          if (block_of[target] != i || j == kappa) {
            to = index_of(target, 0);
          } else if (target == blocks[i][j]) {
            to = index_of(target, j + 1);
          } else {
            to = index_of(target, j);
          }
          delta[from * k + x] = static_cast<State>(to);
        }
      }
    }
  }
  std::vector<State> accepting_raw;
  for (std::uint32_t i = 0; i < blocks.size(); ++i) {
    const auto kappa = static_cast<std::uint32_t>(blocks[i].size());
    accepting_raw.push_back(static_cast<State>(index_of(blocks[i][kappa - 1], kappa)));
  }

  State initial = a.initial();
  if (prune) {
    std::vector<bool> seen(total, false);
    std::vector<State> stack{initial};
    seen[initial] = true;
    while (!stack.empty()) {
      State s = stack.back();
      stack.pop_back();
      for (Symbol x = 0; x < k; ++x) {
        State u = delta[s * k + x];
        if (!seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    std::vector<State> renumber(total, 0);
    std::vector<LayeredState> kept_origin;
    State next = 0;
    for (std::size_t s = 0; s < total; ++s) {
      if (seen[s]) {
        renumber[s] = next++;
        kept_origin.push_back(origin[s]);
      }
    }
    std::vector<State> kept_delta;
    kept_delta.reserve(next * k);
    for (std::size_t s = 0; s < total; ++s)
      if (seen[s])
        for (Symbol x = 0; x < k; ++x) kept_delta.push_back(renumber[delta[s * k + x]]);
    std::vector<State> kept_accepting;
    for (State s : accepting_raw)
      if (seen[s]) kept_accepting.push_back(renumber[s]);
    initial = renumber[initial];
    delta = std::move(kept_delta);
    origin = std::move(kept_origin);
    accepting_raw = std::move(kept_accepting);
  }

  const std::size_t states = origin.size();
  return LayeredBuchi{DetAutomaton(a.alphabet(), states, initial, std::move(delta)),
                      BuchiSet{StateSet(std::move(accepting_raw))}, std::move(origin), total,
                      std::move(check.diagnostics)};
}

}  // namespace baire
