#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "baire/automaton.hpp"

namespace baire {

using SccId = std::uint32_t;

/// SCC decomposition of the transition graph plus the derived condensation
/// data. SCC ids are assigned in increasing order of each SCC's smallest
/// member, so `sccs[i].front()` increases with `i`.
struct SccAnalysis {
  std::vector<SccId> scc_of;
  std::vector<StateSet> sccs;
  /// Sorted, unique (from, to) pairs; never contains (i, i).
  std::vector<std::pair<SccId, SccId>> condensation_edges;
  /// Sorted ids of SCCs without outgoing condensation edges.
  std::vector<SccId> terminal;
  std::vector<bool> reachable;

  bool is_terminal(SccId id) const { return std::binary_search(terminal.begin(), terminal.end(), id); }

  /// Id of the SCC equal to `z` as a set, if any.
  std::optional<SccId> scc_equal_to(const StateSet& z) const {
    if (z.empty() || z.back() >= scc_of.size()) return std::nullopt;
    SccId id = scc_of[z.front()];
    if (sccs[id] == z) return id;
    return std::nullopt;
  }

  /// Id of the terminal SCC equal to `z`, if any.
  std::optional<SccId> terminal_equal_to(const StateSet& z) const {
    auto id = scc_equal_to(z);
    if (id && is_terminal(*id)) return id;
    return std::nullopt;
  }

  std::vector<StateSet> terminal_sccs() const {
    std::vector<StateSet> out;
    for (SccId id : terminal) out.push_back(sccs[id]);
    return out;
  }
};

/// States reachable from the initial state.
inline std::vector<bool> reachable_states(const DetAutomaton& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack{a.initial()};
  seen[a.initial()] = true;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (Symbol x = 0; x < a.num_symbols(); ++x) {
      State t = a.step(s, x);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

/// Tarjan's algorithm, iterative. Runs in O(n·|X|).
inline SccAnalysis analyze(const DetAutomaton& a) {
  const std::size_t n = a.num_states();
  const std::size_t k = a.num_symbols();
  constexpr std::uint32_t kUnvisited = UINT32_MAX;

  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::vector<std::vector<State>> raw_sccs;
  std::uint32_t counter = 0;

  struct Frame {
    State state;
    Symbol next_symbol;
  };
  std::vector<Frame> call;

  for (State root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next_symbol < k) {
        State t = a.step(f.state, f.next_symbol++);
        if (index[t] == kUnvisited) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.state] = std::min(low[f.state], index[t]);
        }
        continue;
      }
      State v = f.state;
      call.pop_back();
      if (!call.empty()) low[call.back().state] = std::min(low[call.back().state], low[v]);
      if (low[v] == index[v]) {
        std::vector<State> comp;
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        raw_sccs.push_back(std::move(comp));
      }
    }
  }

  SccAnalysis out;
  out.sccs.reserve(raw_sccs.size());
  for (auto& comp : raw_sccs) out.sccs.emplace_back(std::move(comp));
  std::sort(out.sccs.begin(), out.sccs.end(),
            [](const StateSet& x, const StateSet& y) { return x.front() < y.front(); });
  out.scc_of.assign(n, 0);
  for (SccId id = 0; id < out.sccs.size(); ++id)
    for (State s : out.sccs[id]) out.scc_of[s] = id;

  std::vector<bool> has_exit(out.sccs.size(), false);
  for (State s = 0; s < n; ++s) {
    for (Symbol x = 0; x < k; ++x) {
      SccId from = out.scc_of[s], to = out.scc_of[a.step(s, x)];
      if (from != to) {
        out.condensation_edges.emplace_back(from, to);
        has_exit[from] = true;
      }
    }
  }
  std::sort(out.condensation_edges.begin(), out.condensation_edges.end());
  out.condensation_edges.erase(std::unique(out.condensation_edges.begin(), out.condensation_edges.end()),
                               out.condensation_edges.end());
  for (SccId id = 0; id < out.sccs.size(); ++id)
    if (!has_exit[id]) out.terminal.push_back(id);
  out.reachable = reachable_states(a);
  return out;
}

}  // namespace baire
