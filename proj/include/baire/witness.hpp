#pragma once

#include <optional>
#include <string>
#include <vector>

#include "baire/automaton.hpp"
#include "baire/buchi.hpp"
#include "baire/error.hpp"
#include "baire/loops.hpp"
#include "baire/scc.hpp"

namespace baire {

/// Where a state of the open-witness automaton came from.
struct StateOrigin {
  enum class Kind { Original, Merged };
  Kind kind;
  /// Original state, or the smallest member of the merged terminal SCC.
  State state;

  std::string note() const {
    return (kind == Kind::Merged ? "merged scc " : "original ") + std::to_string(state);
  }

  friend bool operator==(const StateOrigin&, const StateOrigin&) = default;
};

/// The open set E as a Muller automaton: every terminal SCC collapsed into a
/// single absorbing state.
struct OpenWitness {
  DetAutomaton automaton;
  MullerTable table;
  std::vector<StateOrigin> origin;
  /// Merged state for each entry of SccAnalysis::terminal, same order.
  std::vector<State> merged_states;

  std::vector<std::string> state_notes() const {
    std::vector<std::string> notes;
    for (const auto& o : origin) notes.push_back(o.note());
    return notes;
  }
};

/// Builds (A1, T1). State 0 is the initial state; when s0 lies in a terminal
/// SCC it is a fresh copy that is never re-entered. Remaining states outside
/// terminal SCCs follow in ascending order, then one merged state per
/// terminal SCC. T1 holds {M} for every terminal SCC that is a table entry.
inline OpenWitness build_open_witness(const DetAutomaton& a, const SccAnalysis& scc, const MullerTable& t) {
  constexpr std::uint32_t kNone = UINT32_MAX;
  const std::size_t n = a.num_states();
  const std::size_t k = a.num_symbols();

  std::vector<std::uint32_t> terminal_pos(scc.sccs.size(), kNone);
  for (std::uint32_t p = 0; p < scc.terminal.size(); ++p) terminal_pos[scc.terminal[p]] = p;
  auto in_terminal = [&](State s) { return terminal_pos[scc.scc_of[s]] != kNone; };

  std::vector<StateOrigin> origin;
  std::vector<State> new_index(n, kNone);
  origin.push_back({StateOrigin::Kind::Original, a.initial()});
  if (!in_terminal(a.initial())) new_index[a.initial()] = 0;
  for (State s = 0; s < n; ++s) {
    if (s == a.initial() || in_terminal(s)) continue;
    new_index[s] = static_cast<State>(origin.size());
    origin.push_back({StateOrigin::Kind::Original, s});
  }
  std::vector<State> merged;
  for (SccId id : scc.terminal) {
    merged.push_back(static_cast<State>(origin.size()));
    origin.push_back({StateOrigin::Kind::Merged, scc.sccs[id].front()});
  }

  auto image = [&](State s) -> State {
    std::uint32_t p = terminal_pos[scc.scc_of[s]];
    return p == kNone ? new_index[s] : merged[p];
  };
  std::vector<State> delta(origin.size() * k);
  for (State q = 0; q < origin.size(); ++q) {
    for (Symbol x = 0; x < k; ++x) {
      if (origin[q].kind == StateOrigin::Kind::Merged) {
        delta[q * k + x] = q;
      } else {
        delta[q * k + x] = image(a.step(origin[q].state, x));
      }
    }
  }

  std::vector<StateSet> entries;
  for (const auto& z : t) {
    check_valid_states(a, z);
    if (auto id = scc.terminal_equal_to(z)) entries.push_back(StateSet{merged[terminal_pos[*id]]});
  }
  const std::size_t states = origin.size();
  return OpenWitness{DetAutomaton(a.alphabet(), states, 0, std::move(delta)),
                     MullerTable(std::move(entries)), std::move(origin), std::move(merged)};
}

inline OpenWitness build_open_witness(const DetAutomaton& a, const MullerTable& t) {
  return build_open_witness(a, analyze(a), t);
}

/// (A2, T2) = (A, terminal SCCs). F' is the complement of its language.
struct MeagreComplement {
  DetAutomaton automaton;
  MullerTable table;
};

inline MeagreComplement build_meagre_complement(const DetAutomaton& a, const SccAnalysis& scc) {
  return MeagreComplement{a, MullerTable(scc.terminal_sccs())};
}

inline MeagreComplement build_meagre_complement(const DetAutomaton& a) {
  return build_meagre_complement(a, analyze(a));
}

/// B1 = A1 with T1 = the merged states of terminal SCCs listed in the table.
/// Every loop of B1 is either inside T1 or disjoint from it.
struct WeakBuchiOpen {
  DetAutomaton automaton;
  BuchiSet accepting;
  std::vector<StateOrigin> origin;
};

inline WeakBuchiOpen build_weak_buchi_open(const OpenWitness& open) {
  std::vector<State> accepting;
  for (const auto& entry : open.table) accepting.push_back(entry.front());
  return WeakBuchiOpen{open.automaton, BuchiSet{StateSet(std::move(accepting))}, open.origin};
}

inline WeakBuchiOpen build_weak_buchi_open(const DetAutomaton& a, const MullerTable& t) {
  return build_weak_buchi_open(build_open_witness(a, t));
}

/// Everything needed to certify the automatic Baire property of L(A, T):
/// E = L(open_muller) is open, F' = X^omega \ L(meagre_complement_*) is
/// meagre, and L(A, T) delta E is contained in F'.
struct BaireWitness {
  OpenWitness open_muller;
  MeagreComplement meagre_complement_muller;
  WeakBuchiOpen open_buchi;
  LayeredBuchi meagre_complement_buchi;
};

inline BaireWitness build_baire_witness(const DetAutomaton& a, const MullerTable& t, bool prune = true) {
  const SccAnalysis scc = analyze(a);
  OpenWitness open = build_open_witness(a, scc, t);
  MeagreComplement meagre = build_meagre_complement(a, scc);
  WeakBuchiOpen open_buchi = build_weak_buchi_open(open);
  LayeredBuchi b2 = muller_to_buchi_maximal(meagre.automaton, meagre.table, prune);
  return BaireWitness{std::move(open), std::move(meagre), std::move(open_buchi), std::move(b2)};
}

// ---------------------------------------------------------------------------
// Topological classification

enum class Verdict { Yes, No, Undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

struct TopoClass {
  Verdict open = Verdict::Undecided;
  Verdict meagre = Verdict::Undecided;
  Verdict dense = Verdict::Undecided;
  Verdict nowhere_dense = Verdict::Undecided;
};

/// Meagre iff no table entry is a loop that equals a terminal SCC. Non-loop
/// entries are ignored.
inline Verdict classify_meagre(const DetAutomaton& a, const SccAnalysis& scc, const MullerTable& t) {
  for (const auto& z : t)
    if (scc.terminal_equal_to(z) && is_loop(a, z, scc.reachable)) return Verdict::No;
  return Verdict::Yes;
}

inline Verdict classify_meagre(const DetAutomaton& a, const MullerTable& t) {
  return classify_meagre(a, analyze(a), t);
}

/// Yes when the loop entries of `t` are exactly the loops inside some set D of
/// terminal SCCs (then L is a union of open sets {w : delta(s0,w) in Z}·X^omega).
/// Otherwise Undecided. Enumerates the loops of each terminal SCC in D, so it
/// throws SizeGuard when those exceed `budget` subsets.
inline Verdict classify_openness(const DetAutomaton& a, const SccAnalysis& scc, const MullerTable& t,
                                 std::uint64_t budget = kDefaultLoopBudget) {
  std::vector<StateSet> loops;
  for (const auto& z : t)
    if (is_loop(a, z, scc.reachable)) loops.push_back(z);
  std::vector<SccId> chosen;
  for (const auto& z : loops)
    if (auto id = scc.terminal_equal_to(z)) chosen.push_back(*id);
  std::sort(chosen.begin(), chosen.end());
  for (const auto& z : loops)
    if (!std::binary_search(chosen.begin(), chosen.end(), scc.scc_of[z.front()])) return Verdict::Undecided;

  std::uint64_t needed = 0;
  for (SccId id : chosen) {
    const std::size_t size = scc.sccs[id].size();
    if (size >= 63 || (needed += std::uint64_t{1} << size) > budget)
      throw SizeGuard("openness check needs loops of a terminal SCC of size " + std::to_string(size));
  }
  for (SccId id : chosen) {
    // Loops of the sub-automaton on a terminal SCC: that SCC is closed under
    // every symbol, so restricting the automaton to it keeps every loop.
    const StateSet& comp = scc.sccs[id];
    std::vector<State> local_delta;
    for (State s : comp)
      for (Symbol x = 0; x < a.num_symbols(); ++x)
        local_delta.push_back(static_cast<State>(
            std::lower_bound(comp.begin(), comp.end(), a.step(s, x)) - comp.begin()));
    DetAutomaton sub(a.alphabet(), comp.size(), 0, std::move(local_delta));
    for (const auto& local : enumerate_loops(sub, std::nullopt, budget)) {
      std::vector<State> members;
      for (State s : local) members.push_back(comp[s]);
      if (!t.contains(StateSet(std::move(members)))) return Verdict::Undecided;
    }
  }
  return Verdict::Yes;
}

inline Verdict classify_openness(const DetAutomaton& a, const MullerTable& t,
                                 std::uint64_t budget = kDefaultLoopBudget) {
  return classify_openness(a, analyze(a), t, budget);
}

namespace detail {

// States from which some state in `targets` is reachable.
inline std::vector<bool> can_reach(const DetAutomaton& a, const std::vector<bool>& targets) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> pred(n);
  for (State s = 0; s < n; ++s)
    for (Symbol x = 0; x < a.num_symbols(); ++x) pred[a.step(s, x)].push_back(s);
  std::vector<bool> seen = targets;
  std::vector<State> stack;
  for (State s = 0; s < n; ++s)
    if (seen[s]) stack.push_back(s);
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (State p : pred[s])
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
  }
  return seen;
}

}  // namespace detail

/// Dense iff every reachable state can still reach an accepting loop; nowhere
/// dense iff every reachable state can reach a state from which no accepting
/// loop is reachable.
inline std::pair<Verdict, Verdict> classify_density(const DetAutomaton& a, const SccAnalysis& scc,
                                                    const MullerTable& t) {
  std::vector<bool> in_accepting_loop(a.num_states(), false);
  for (const auto& z : t)
    if (is_loop(a, z, scc.reachable))
      for (State s : z) in_accepting_loop[s] = true;
  const std::vector<bool> live = detail::can_reach(a, in_accepting_loop);
  std::vector<bool> dead(a.num_states());
  for (State s = 0; s < a.num_states(); ++s) dead[s] = !live[s];
  const std::vector<bool> can_die = detail::can_reach(a, dead);
  bool dense = true, nowhere_dense = true;
  for (State s = 0; s < a.num_states(); ++s) {
    if (!scc.reachable[s]) continue;
    dense = dense && live[s];
    nowhere_dense = nowhere_dense && can_die[s];
  }
  return {dense ? Verdict::Yes : Verdict::No, nowhere_dense ? Verdict::Yes : Verdict::No};
}

inline TopoClass classify(const DetAutomaton& a, const MullerTable& t,
                          std::uint64_t budget = kDefaultLoopBudget) {
  const SccAnalysis scc = analyze(a);
  TopoClass c;
  c.meagre = classify_meagre(a, scc, t);
  try {
    c.open = classify_openness(a, scc, t, budget);
  } catch (const SizeGuard&) {
    c.open = Verdict::Undecided;
  }
  std::tie(c.dense, c.nowhere_dense) = classify_density(a, scc, t);
  return c;
}

enum class LoopDensity { Dense, NowhereDense };

/// Density of V_(s;Z)^omega: dense exactly when Z is a terminal SCC.
inline LoopDensity classify_loop_density(const DetAutomaton& a, const SccAnalysis& scc, State s,
                                         const StateSet& z) {
  if (!z.contains(s)) throw BadLoop("state " + std::to_string(s) + " not in " + z.to_string());
  if (!is_loop(a, z, scc.reachable)) throw BadLoop(z.to_string() + " is not a loop");
  return scc.terminal_equal_to(z) ? LoopDensity::Dense : LoopDensity::NowhereDense;
}

inline LoopDensity classify_loop_density(const DetAutomaton& a, State s, const StateSet& z) {
  return classify_loop_density(a, analyze(a), s, z);
}

}  // namespace baire
