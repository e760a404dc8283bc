#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "baire/automaton.hpp"
#include "baire/error.hpp"
#include "baire/scc.hpp"

namespace baire {

inline constexpr std::uint64_t kDefaultLoopBudget = std::uint64_t{1} << 20;

/// Calls `fn` on every word of length <= max_len in shortlex order.
inline void for_each_word(std::size_t alphabet_size, std::size_t max_len,
                          const std::function<void(const Word&)>& fn) {
  Word w;
  fn(w);
  for (std::size_t len = 1; len <= max_len; ++len) {
    w.assign(len, 0);
    while (true) {
      fn(w);
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == alphabet_size) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
  }
}

namespace detail {

inline bool induced_strongly_connected(const DetAutomaton& a, const StateSet& z) {
  const std::size_t m = z.size();
  auto local = [&](State s) -> std::optional<std::size_t> {
    auto it = std::lower_bound(z.begin(), z.end(), s);
    if (it == z.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - z.begin());
  };
  std::vector<std::vector<std::size_t>> fwd(m), bwd(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (Symbol x = 0; x < a.num_symbols(); ++x) {
      if (auto j = local(a.step(z[i], x))) {
        fwd[i].push_back(*j);
        bwd[*j].push_back(i);
      }
    }
  }
  if (m == 1) return !fwd[0].empty();
  auto covers = [m](const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> seen(m, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
    }
    return count == m;
  };
  return covers(fwd) && covers(bwd);
}

}  // namespace detail

/// Z is a loop iff it is nonempty, meets the reachable part, and admits a
/// closed walk through all of Z using only transitions inside Z.
inline bool is_loop(const DetAutomaton& a, const StateSet& z, const std::vector<bool>& reachable) {
  if (z.empty() || !a.valid_state(z.back())) return false;
  bool any_reachable = std::any_of(z.begin(), z.end(), [&](State s) { return reachable[s]; });
  return any_reachable && detail::induced_strongly_connected(a, z);
}

inline bool is_loop(const DetAutomaton& a, const StateSet& z) {
  return is_loop(a, z, reachable_states(a));
}

/// Every loop of `a`, ordered by size then lexicographically.
///
/// Loops lie inside reachable SCCs, so only subsets of those are examined.
/// Throws SizeGuard when the number of candidate subsets exceeds `budget`.
inline std::vector<StateSet> enumerate_loops(const DetAutomaton& a, const SccAnalysis& scc,
                                             std::optional<std::size_t> max_size = std::nullopt,
                                             std::uint64_t budget = kDefaultLoopBudget) {
  std::uint64_t candidates = 0;
  for (const auto& comp : scc.sccs) {
    if (!scc.reachable[comp.front()]) continue;
    if (comp.size() >= 63) throw SizeGuard("SCC of size " + std::to_string(comp.size()) + " exceeds loop enumeration budget");
    candidates += (std::uint64_t{1} << comp.size());
    if (candidates > budget)
      throw SizeGuard("loop enumeration needs " + std::to_string(candidates) + "+ subsets, budget " +
                      std::to_string(budget));
  }

  std::vector<StateSet> out;
  for (const auto& comp : scc.sccs) {
    if (!scc.reachable[comp.front()]) continue;
    const std::size_t k = comp.size();
    std::vector<std::uint64_t> succ(k, 0), pred(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (Symbol x = 0; x < a.num_symbols(); ++x) {
        State t = a.step(comp[i], x);
        auto it = std::lower_bound(comp.begin(), comp.end(), t);
        if (it != comp.end() && *it == t) {
          std::size_t j = static_cast<std::size_t>(it - comp.begin());
          succ[i] |= std::uint64_t{1} << j;
          pred[j] |= std::uint64_t{1} << i;
        }
      }
    }
    auto closure = [&](std::uint64_t mask, const std::vector<std::uint64_t>& adj) {
      std::uint64_t seen = mask & (~mask + 1);
      std::uint64_t frontier = seen;
      while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
        next &= mask & ~seen;
        seen |= next;
        frontier = next;
      }
      return seen;
    };
    const std::uint64_t limit = std::uint64_t{1} << k;
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
      const auto bits = static_cast<std::size_t>(std::popcount(mask));
      if (max_size && bits > *max_size) continue;
      bool loop;
      if (bits == 1) {
        loop = (succ[std::countr_zero(mask)] & mask) != 0;
      } else {
        loop = closure(mask, succ) == mask && closure(mask, pred) == mask;
      }
      if (!loop) continue;
      std::vector<State> members;
      for (std::uint64_t f = mask; f; f &= f - 1) members.push_back(comp[std::countr_zero(f)]);
      out.emplace_back(std::move(members));
    }
  }
  std::sort(out.begin(), out.end(), size_then_lex);
  return out;
}

inline std::vector<StateSet> enumerate_loops(const DetAutomaton& a,
                                             std::optional<std::size_t> max_size = std::nullopt,
                                             std::uint64_t budget = kDefaultLoopBudget) {
  return enumerate_loops(a, analyze(a), max_size, budget);
}

/// Words v != e with delta(s, v) = s whose run from s sweeps exactly Z, and no
/// shorter nonempty prefix already returns to s with sweep Z. Output is in
/// shortlex order and prefix-free.
inline std::vector<Word> loop_completing_words(const DetAutomaton& a, State s, const StateSet& z,
                                               std::size_t len_bound) {
  if (!z.contains(s)) throw BadLoop("state " + std::to_string(s) + " not in " + z.to_string());
  if (!is_loop(a, z)) throw BadLoop(z.to_string() + " is not a loop");

  std::vector<Word> out;
  struct Node {
    Word word;
    State state;
    StateSet sweep;
  };
  // Breadth-first, so output is shortlex.
  std::vector<Node> layer{{{}, s, StateSet{s}}};
  for (std::size_t len = 1; len <= len_bound && !layer.empty(); ++len) {
    std::vector<Node> next;
    for (const auto& node : layer) {
      for (Symbol x = 0; x < a.num_symbols(); ++x) {
        State t = a.step(node.state, x);
        if (!z.contains(t)) continue;
        Node child{node.word, t, node.sweep};
        child.word.push_back(x);
        child.sweep.insert(t);
        if (t == s && child.sweep == z) {
          out.push_back(std::move(child.word));
          continue;
        }
        next.push_back(std::move(child));
      }
    }
    layer = std::move(next);
  }
  return out;
}

/// Words w with |w| <= len_bound and delta(s0, w) = s, shortlex order.
inline std::vector<Word> words_to_state(const DetAutomaton& a, State s, std::size_t len_bound) {
  std::vector<Word> out;
  for_each_word(a.num_symbols(), len_bound, [&](const Word& w) {
    if (a.run(a.initial(), w) == s) out.push_back(w);
  });
  return out;
}

/// Membership certificate for u·v^omega in U_s · V_(s;Z)^omega.
struct LassoDecomposition {
  State state;
  StateSet loop;
  /// Length of the prefix of u·v^omega that leads to `state`.
  std::size_t split;

  friend bool operator==(const LassoDecomposition&, const LassoDecomposition&) = default;
};

/// For an accepted lasso, the minimal split position after which the run
/// never leaves Inf, and the state reached there; nullopt if rejected.
inline std::optional<LassoDecomposition> decompose_lasso(const DetAutomaton& a, const MullerTable& t,
                                                         const LassoWord& w) {
  const StateSet z = inf_set(a, w);
  if (!t.contains(z)) return std::nullopt;

  // Walk u, then whole periods until the period-boundary state repeats; past
  // that point the run is periodic and inside Z.
  std::vector<bool> boundary_seen(a.num_states(), false);
  State s = a.initial();
  std::size_t pos = 0, last_outside = 0;
  bool any_outside = false;
  auto visit = [&](State q) {
    if (!z.contains(q)) {
      any_outside = true;
      last_outside = pos;
    }
  };
  visit(s);
  for (Symbol x : w.prefix()) {
    s = a.step(s, x);
    ++pos;
    visit(s);
  }
  while (!boundary_seen[s]) {
    boundary_seen[s] = true;
    for (Symbol x : w.period()) {
      s = a.step(s, x);
      ++pos;
      visit(s);
    }
  }
  const std::size_t split = any_outside ? last_outside + 1 : 0;

  State at = a.initial();
  for (std::size_t i = 0; i < split; ++i) {
    Symbol x = i < w.prefix().size() ? w.prefix()[i]
                                     : w.period()[(i - w.prefix().size()) % w.period().size()];
    at = a.step(at, x);
  }
  return LassoDecomposition{at, z, split};
}

}  // namespace baire
