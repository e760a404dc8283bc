#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "baire/state_set.hpp"

namespace baire {

/// Complete deterministic automaton (X, S, s0, delta) with S = {0..n-1}.
///
/// The transition table is stored row-major: `delta[s * |X| + x]`. Every
/// (state, symbol) pair has exactly one target; construction rejects anything
/// else. Instances are immutable.
class DetAutomaton {
 public:
  DetAutomaton(std::vector<std::string> alphabet, std::size_t num_states, State initial,
               std::vector<State> delta)
      : alphabet_(std::move(alphabet)),
        num_states_(num_states),
        initial_(initial),
        delta_(std::move(delta)) {
    if (alphabet_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    std::unordered_set<std::string> seen;
    for (const auto& tok : alphabet_) {
      if (tok.empty()) throw std::invalid_argument("empty symbol token");
      if (!seen.insert(tok).second) throw std::invalid_argument("duplicate symbol '" + tok + "'");
    }
    if (num_states_ == 0) throw std::invalid_argument("automaton needs at least one state");
    if (initial_ >= num_states_) throw std::invalid_argument("initial state out of range");
    if (delta_.size() != num_states_ * alphabet_.size())
      throw std::invalid_argument("transition table is not complete");
    for (State t : delta_)
      if (t >= num_states_) throw std::invalid_argument("transition target out of range");
  }

  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t num_symbols() const noexcept { return alphabet_.size(); }
  std::size_t num_states() const noexcept { return num_states_; }
  State initial() const noexcept { return initial_; }
  std::span<const State> transitions() const noexcept { return delta_; }

  State step(State s, Symbol x) const { return delta_[s * alphabet_.size() + x]; }

  State run(State s, std::span<const Symbol> word) const {
    for (Symbol x : word) s = step(s, x);
    return s;
  }

  std::optional<Symbol> symbol_index(const std::string& token) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      if (alphabet_[i] == token) return static_cast<Symbol>(i);
    return std::nullopt;
  }

  bool valid_state(State s) const noexcept { return s < num_states_; }

  friend bool operator==(const DetAutomaton&, const DetAutomaton&) = default;

 private:
  std::vector<std::string> alphabet_;
  std::size_t num_states_;
  State initial_;
  std::vector<State> delta_;
};

/// Muller table: a set of state-sets. Entries are kept sorted and unique.
class MullerTable {
 public:
  MullerTable() = default;
  MullerTable(std::initializer_list<StateSet> entries) : entries_(entries) { normalize(); }
  explicit MullerTable(std::vector<StateSet> entries) : entries_(std::move(entries)) { normalize(); }

  const std::vector<StateSet>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool contains(const StateSet& z) const {
    return std::binary_search(entries_.begin(), entries_.end(), z);
  }

  friend bool operator==(const MullerTable&, const MullerTable&) = default;

 private:
  void normalize() {
    std::sort(entries_.begin(), entries_.end());
    entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
  }

  std::vector<StateSet> entries_;
};

struct BuchiSet {
  StateSet accepting;

  friend bool operator==(const BuchiSet&, const BuchiSet&) = default;
};

using Acceptance = std::variant<MullerTable, BuchiSet>;

/// Ultimately periodic word u·v^omega. The period is never empty.
class LassoWord {
 public:
  LassoWord(Word prefix, Word period) : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("lasso period must be nonempty");
  }

  const Word& prefix() const noexcept { return prefix_; }
  const Word& period() const noexcept { return period_; }

  /// Letter at position i of u·v^omega.
  Symbol at(std::size_t i) const noexcept {
    return i < prefix_.size() ? prefix_[i] : period_[(i - prefix_.size()) % period_.size()];
  }

  friend bool operator==(const LassoWord&, const LassoWord&) = default;

 private:
  Word prefix_;
  Word period_;
};

inline void check_valid_states(const DetAutomaton& a, const StateSet& z) {
  if (!z.empty() && !a.valid_state(z.back()))
    throw std::invalid_argument("state index " + std::to_string(z.back()) + " out of range");
}

inline void check_valid(const DetAutomaton& a, const Acceptance& acc) {
  if (const auto* t = std::get_if<MullerTable>(&acc)) {
    for (const auto& z : *t) check_valid_states(a, z);
  } else {
    check_valid_states(a, std::get<BuchiSet>(acc).accepting);
  }
}

inline void check_word(const DetAutomaton& a, std::span<const Symbol> w) {
  for (Symbol x : w)
    if (x >= a.num_symbols()) throw std::invalid_argument("symbol index out of range");
}

/// The state reached after reading the prefix, together with the states of
/// the period cycle the run eventually settles into.
struct LassoRun {
  State after_prefix;
  /// Period-boundary states s_i, s_{i+1}, ... of the terminal cycle.
  std::vector<State> cycle_entries;
};

inline LassoRun lasso_run(const DetAutomaton& a, const LassoWord& w) {
  check_word(a, w.prefix());
  check_word(a, w.period());
  LassoRun out{a.run(a.initial(), w.prefix()), {}};
  // Period-boundary states repeat within n+1 iterations. Short cycles are
  // found by linear scan; a per-state index is built only for long ones.
  constexpr std::size_t kScanLimit = 32;
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> first_seen;
  std::vector<State> boundary;
  State s = out.after_prefix;
  std::size_t repeat_at = kUnseen;
  while (true) {
    if (boundary.size() < kScanLimit) {
      auto it = std::find(boundary.begin(), boundary.end(), s);
      if (it != boundary.end()) {
        repeat_at = static_cast<std::size_t>(it - boundary.begin());
        break;
      }
    } else {
      if (first_seen.empty()) {
        first_seen.assign(a.num_states(), kUnseen);
        for (std::size_t i = 0; i < boundary.size(); ++i) first_seen[boundary[i]] = i;
      }
      if (first_seen[s] != kUnseen) {
        repeat_at = first_seen[s];
        break;
      }
      first_seen[s] = boundary.size();
    }
    boundary.push_back(s);
    s = a.run(s, w.period());
  }
  out.cycle_entries.assign(boundary.begin() + static_cast<std::ptrdiff_t>(repeat_at), boundary.end());
  return out;
}

/// Inf(A; u·v^omega): the states visited infinitely often.
inline StateSet inf_set(const DetAutomaton& a, const LassoWord& w) {
  const LassoRun r = lasso_run(a, w);
  std::vector<State> visited;
  for (State s : r.cycle_entries) {
    for (Symbol x : w.period()) {
      s = a.step(s, x);
      visited.push_back(s);
    }
  }
  return StateSet(std::move(visited));
}

inline bool accepts_muller(const DetAutomaton& a, const MullerTable& t, const LassoWord& w) {
  return t.contains(inf_set(a, w));
}

inline bool accepts_buchi(const DetAutomaton& a, const BuchiSet& b, const LassoWord& w) {
  return inf_set(a, w).intersects(b.accepting);
}

/// Acceptance of an already computed Inf set.
inline bool accepts_inf(const Acceptance& acc, const StateSet& inf) {
  if (const auto* t = std::get_if<MullerTable>(&acc)) return t->contains(inf);
  return inf.intersects(std::get<BuchiSet>(acc).accepting);
}

inline bool accepts(const DetAutomaton& a, const Acceptance& acc, const LassoWord& w) {
  return accepts_inf(acc, inf_set(a, w));
}

}  // namespace baire
