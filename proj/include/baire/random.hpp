#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "baire/automaton.hpp"
#include "baire/loops.hpp"
#include "baire/scc.hpp"

namespace baire {

/// "a", "b", ... for up to 26 symbols, "x0", "x1", ... beyond that.
inline std::vector<std::string> default_alphabet(std::size_t size) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size; ++i)
    out.push_back(size <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i));
  return out;
}

struct RandomSpec {
  std::size_t n_states = 5;
  std::size_t alphabet_size = 2;
  std::size_t table_entries = 2;
  std::uint64_t seed = 1;
  /// Share of table entries drawn from actual loops; the rest are uniform
  /// nonempty subsets.
  double loop_fraction = 0.5;
};

inline DetAutomaton random_automaton(std::size_t n, std::size_t alphabet_size, std::mt19937_64& rng) {
  if (n == 0 || alphabet_size == 0) throw std::invalid_argument("random automaton needs states and symbols");
  std::uniform_int_distribution<State> target(0, static_cast<State>(n - 1));
  std::vector<State> delta(n * alphabet_size);
  for (auto& t : delta) t = target(rng);
  return DetAutomaton(default_alphabet(alphabet_size), n, 0, std::move(delta));
}

inline StateSet random_subset(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<State> pick(0, static_cast<State>(n - 1));
  std::vector<State> members;
  for (State s = 0; s < n; ++s)
    if (coin(rng)) members.push_back(s);
  if (members.empty()) members.push_back(pick(rng));
  return StateSet(std::move(members));
}

/// Seeded random (automaton, table). Loop entries come from enumerate_loops
/// when the automaton is small enough, otherwise from Inf sets of random
/// lassos. Exactly `table_entries` distinct entries are produced.
inline std::pair<DetAutomaton, MullerTable> random_instance(const RandomSpec& spec) {
  if (spec.n_states < 64 && spec.table_entries >= (std::uint64_t{1} << spec.n_states))
    throw std::invalid_argument("more table entries requested than nonempty subsets exist");
  std::mt19937_64 rng(spec.seed);
  DetAutomaton a = random_automaton(spec.n_states, spec.alphabet_size, rng);

  std::set<StateSet> entries;
  const auto want_loops = static_cast<std::size_t>(
      static_cast<double>(spec.table_entries) * spec.loop_fraction + 0.5);

  std::vector<StateSet> loops;
  try {
    loops = enumerate_loops(a);
  } catch (const SizeGuard&) {
    std::uniform_int_distribution<std::size_t> len(1, 2 * spec.n_states);
    std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(spec.alphabet_size - 1));
    std::set<StateSet> sampled;
    for (std::size_t attempt = 0; attempt < 8 * spec.table_entries + 8; ++attempt) {
      Word u(len(rng)), v(len(rng));
      for (auto& x : u) x = sym(rng);
      for (auto& x : v) x = sym(rng);
      sampled.insert(inf_set(a, LassoWord(u, v)));
    }
    loops.assign(sampled.begin(), sampled.end());
  }
  std::shuffle(loops.begin(), loops.end(), rng);
  for (const auto& z : loops) {
    if (entries.size() >= want_loops) break;
    entries.insert(z);
  }
  while (entries.size() < spec.table_entries) entries.insert(random_subset(spec.n_states, rng));
  return {std::move(a), MullerTable(std::vector<StateSet>(entries.begin(), entries.end()))};
}

/// Seeded random automaton with a table that passes check_maximal_loops:
/// each SCC that is a loop is included with probability 1/2, and with
/// probability 1/4 one non-loop entry is added.
inline std::pair<DetAutomaton, MullerTable> random_maximal_instance(std::size_t n, std::size_t alphabet_size,
                                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DetAutomaton a = random_automaton(n, alphabet_size, rng);
  const SccAnalysis scc = analyze(a);
  std::bernoulli_distribution half(0.5), quarter(0.25);
  std::vector<StateSet> entries;
  for (const auto& comp : scc.sccs)
    if (is_loop(a, comp, scc.reachable) && half(rng)) entries.push_back(comp);
  if (quarter(rng)) {
    StateSet junk = random_subset(n, rng);
    if (!is_loop(a, junk, scc.reachable)) entries.push_back(junk);
  }
  return {std::move(a), MullerTable(std::move(entries))};
}

/// Reproducible stream of random lassos with |u| <= max_u, 1 <= |v| <= max_v.
class LassoSampler {
 public:
  LassoSampler(std::size_t alphabet_size, std::size_t max_u, std::size_t max_v, std::uint64_t seed)
      : symbol_(0, static_cast<Symbol>(alphabet_size - 1)),
        u_len_(0, max_u),
        v_len_(1, max_v),
        rng_(seed) {
    if (alphabet_size == 0) throw std::invalid_argument("empty alphabet");
    if (max_v == 0) throw std::invalid_argument("max_v must be at least 1");
  }

  LassoWord next() {
    Word u(u_len_(rng_)), v(v_len_(rng_));
    for (auto& x : u) x = symbol_(rng_);
    for (auto& x : v) x = symbol_(rng_);
    return LassoWord(std::move(u), std::move(v));
  }

  std::vector<LassoWord> take(std::size_t count) {
    std::vector<LassoWord> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

 private:
  std::uniform_int_distribution<Symbol> symbol_;
  std::uniform_int_distribution<std::size_t> u_len_;
  std::uniform_int_distribution<std::size_t> v_len_;
  std::mt19937_64 rng_;
};

/// All lassos with |u| <= max_u and 1 <= |v| <= max_v; u in shortlex order,
/// then v in shortlex order.
inline std::vector<LassoWord> exhaustive_lassos(std::size_t alphabet_size, std::size_t max_u, std::size_t max_v) {
  std::vector<Word> periods;
  for_each_word(alphabet_size, max_v, [&](const Word& v) {
    if (!v.empty()) periods.push_back(v);
  });
  std::vector<LassoWord> out;
  for_each_word(alphabet_size, max_u, [&](const Word& u) {
    for (const auto& v : periods) out.emplace_back(u, v);
  });
  return out;
}

}  // namespace baire
