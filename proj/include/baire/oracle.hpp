#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "baire/automaton.hpp"
#include "baire/error.hpp"
#include "baire/loops.hpp"
#include "baire/scc.hpp"

namespace baire {

inline constexpr std::size_t kDefaultProductCap = 4096;

// ---------------------------------------------------------------------------
// Table algebra on a fixed automaton

enum class TableOp { Union, Intersection, Difference, SymmetricDifference };

/// Entry-wise Boolean operation. Over a shared automaton,
/// L(A, t op u) = L(A, t) op L(A, u).
inline MullerTable boolean_table_op(const DetAutomaton& a, const MullerTable& t, const MullerTable& u,
                                    TableOp op) {
  for (const auto& z : t) check_valid_states(a, z);
  for (const auto& z : u) check_valid_states(a, z);
  std::vector<StateSet> out;
  const auto& x = t.entries();
  const auto& y = u.entries();
  auto sink = std::back_inserter(out);
  switch (op) {
    case TableOp::Union: std::set_union(x.begin(), x.end(), y.begin(), y.end(), sink); break;
    case TableOp::Intersection: std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), sink); break;
    case TableOp::Difference: std::set_difference(x.begin(), x.end(), y.begin(), y.end(), sink); break;
    case TableOp::SymmetricDifference:
      std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), sink);
      break;
  }
  return MullerTable(std::move(out));
}

/// L(A, t) is a subset of L(A, u) iff every loop entry of t is an entry of u.
inline bool table_subset_same_automaton(const DetAutomaton& a, const MullerTable& t, const MullerTable& u) {
  const auto reachable = reachable_states(a);
  for (const auto& z : t)
    if (is_loop(a, z, reachable) && !u.contains(z)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Products

/// Reachable synchronous product. `projections[i][p]` is the state of factor
/// i in product state p.
struct ProductAutomaton {
  DetAutomaton automaton;
  std::vector<std::vector<State>> projections;
};

inline ProductAutomaton product_of(std::span<const DetAutomaton* const> factors,
                                   std::size_t cap = kDefaultProductCap) {
  if (factors.empty()) throw std::invalid_argument("product of no automata");
  const auto& alphabet = factors[0]->alphabet();
  for (const auto* f : factors)
    if (f->alphabet() != alphabet) throw AlphabetMismatch("product factors have different alphabets");
  const std::size_t k = alphabet.size();

  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> tuples;
  std::vector<State> delta;
  std::vector<State> start;
  for (const auto* f : factors) start.push_back(f->initial());
  index.emplace(start, 0);
  tuples.push_back(start);
  for (std::size_t p = 0; p < tuples.size(); ++p) {
    for (Symbol x = 0; x < k; ++x) {
      std::vector<State> next(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i) next[i] = factors[i]->step(tuples[p][i], x);
      auto [it, inserted] = index.emplace(next, static_cast<State>(tuples.size()));
      if (inserted) {
        if (tuples.size() >= cap)
          throw SizeGuard("product exceeds " + std::to_string(cap) + " states");
        tuples.push_back(std::move(next));
      }
      delta.push_back(it->second);
    }
  }
  std::vector<std::vector<State>> projections(factors.size(), std::vector<State>(tuples.size()));
  for (std::size_t p = 0; p < tuples.size(); ++p)
    for (std::size_t i = 0; i < factors.size(); ++i) projections[i][p] = tuples[p][i];
  const std::size_t states = tuples.size();
  return ProductAutomaton{DetAutomaton(alphabet, states, 0, std::move(delta)), std::move(projections)};
}

inline ProductAutomaton product(const DetAutomaton& a, const DetAutomaton& b,
                                std::size_t cap = kDefaultProductCap) {
  const DetAutomaton* factors[] = {&a, &b};
  return product_of(factors, cap);
}

inline StateSet project(const ProductAutomaton& p, std::size_t factor, const StateSet& z) {
  std::vector<State> out;
  for (State s : z) out.push_back(p.projections[factor][s]);
  return StateSet(std::move(out));
}

/// A lasso whose Inf set is exactly the loop `z`: a shortest path into z,
/// then a closed walk inside z that visits every member.
inline LassoWord witness_lasso(const DetAutomaton& a, const StateSet& z) {
  const std::size_t n = a.num_states();
  const std::size_t k = a.num_symbols();
  constexpr State kNone = UINT32_MAX;

  // Shortest nonempty path from `from` to a state satisfying `goal`, moving
  // only through states accepted by `inside`.
  auto shortest = [&](State from, auto goal, auto inside) {
    std::vector<State> parent(n, kNone);
    std::vector<Symbol> via(n, 0);
    std::vector<State> queue{from};
    parent[from] = from;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const State s = queue[head];
      for (Symbol x = 0; x < k; ++x) {
        const State t = a.step(s, x);
        if (!inside(t)) continue;
        if (goal(t)) {
          Word w{x};
          for (State c = s; c != from; c = parent[c]) w.push_back(via[c]);
          std::reverse(w.begin(), w.end());
          return w;
        }
        if (parent[t] == kNone) {
          parent[t] = s;
          via[t] = x;
          queue.push_back(t);
        }
      }
    }
    throw std::logic_error("witness_lasso: " + z.to_string() + " is not a reachable loop");
  };

  auto in_z = [&](State s) { return z.contains(s); };
  Word prefix;
  State entry = a.initial();
  if (!in_z(entry)) {
    prefix = shortest(entry, in_z, [](State) { return true; });
    entry = a.run(entry, prefix);
  }

  Word period;
  StateSet visited{entry};
  State at = entry;
  while (visited.size() < z.size()) {
    for (Symbol x : shortest(at, [&](State s) { return in_z(s) && !visited.contains(s); }, in_z)) {
      at = a.step(at, x);
      visited.insert(at);
      period.push_back(x);
    }
  }
  for (Symbol x : shortest(at, [&](State s) { return s == entry; }, in_z)) period.push_back(x);
  return LassoWord(std::move(prefix), std::move(period));
}

namespace detail {

// SCCs of the subgraph induced by `region` (a sorted state list), keeping only
// those that are loops: more than one state, or a self-transition.
inline std::vector<std::vector<State>> induced_loop_sccs(const DetAutomaton& a, const std::vector<State>& region) {
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  const std::size_t k = a.num_symbols();
  std::vector<std::uint32_t> local(a.num_states(), kUnvisited);
  for (std::uint32_t i = 0; i < region.size(); ++i) local[region[i]] = i;
  const std::size_t m = region.size();
  std::vector<std::uint32_t> index(m, kUnvisited), low(m, 0);
  std::vector<bool> on_stack(m, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, Symbol>> call;
  std::vector<std::vector<State>> out;
  std::uint32_t counter = 0;
  for (std::uint32_t root = 0; root < m; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < k) {
        const State t = a.step(region[v], next++);
        const std::uint32_t w = local[t];
        if (w == kUnvisited) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] != index[done]) continue;
      std::vector<State> comp;
      std::uint32_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(region[w]);
      } while (w != done);
      bool loop = comp.size() > 1;
      for (Symbol x = 0; !loop && x < k; ++x) loop = a.step(comp[0], x) == comp[0];
      if (loop) {
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

}  // namespace detail

/// Searches the loops of the product for one whose factor projections satisfy
/// `violates`, and returns a lasso realizing it.
///
/// `violates` must depend on each projection only through the acceptance of
/// that factor: the exact set for a Muller factor, whether it meets the
/// accepting set for a Buchi factor. Under that condition the search is
/// complete. It decomposes SCCs recursively, removing one projected state of a
/// Muller factor or the accepting states of a Buchi factor at a time, so the
/// cost is governed by the factor sizes rather than by the product's SCCs.
/// `budget` caps the total number of product states examined; SizeGuard is
/// thrown when it is exceeded.
inline std::optional<LassoWord> find_violating_loop(
    const ProductAutomaton& p, std::span<const Acceptance> acceptance,
    const std::function<bool(const std::vector<StateSet>&)>& violates,
    std::uint64_t budget = kDefaultLoopBudget) {
  const std::size_t factors = p.projections.size();
  if (acceptance.size() != factors) throw std::invalid_argument("one acceptance per product factor required");
  const auto& a = p.automaton;
  constexpr State kDropAccepting = UINT32_MAX;

  // A region is a visited component minus the states whose projection on
  // `factor` equals `value` (or lies in the accepting set).
  struct Region {
    const std::vector<State>* parent;
    std::size_t factor;
    State value;
  };
  std::set<std::vector<State>> seen;
  std::vector<State> all(a.num_states());
  for (State s = 0; s < a.num_states(); ++s) all[s] = s;
  std::vector<Region> pending{{&all, 0, 0}};
  bool root = true;
  std::uint64_t work = 0;

  while (!pending.empty()) {
    const Region r = pending.back();
    pending.pop_back();
    std::vector<State> region;
    if (root) {
      region = all;
      root = false;
    } else {
      const auto& proj = p.projections[r.factor];
      const auto* b = std::get_if<BuchiSet>(&acceptance[r.factor]);
      for (State q : *r.parent) {
        const bool drop = r.value == kDropAccepting ? b->accepting.contains(proj[q]) : proj[q] == r.value;
        if (!drop) region.push_back(q);
      }
    }
    work += region.size();
    if (work > budget) throw SizeGuard("product loop search exceeds budget " + std::to_string(budget));

    for (auto& comp : detail::induced_loop_sccs(a, region)) {
      auto [it, fresh] = seen.insert(std::move(comp));
      if (!fresh) continue;
      const std::vector<State>* c = &*it;
      const StateSet z(*c);
      std::vector<StateSet> projected;
      for (std::size_t i = 0; i < factors; ++i) projected.push_back(project(p, i, z));
      if (violates(projected)) return witness_lasso(a, z);

      for (std::size_t i = 0; i < factors; ++i) {
        if (const auto* b = std::get_if<BuchiSet>(&acceptance[i])) {
          if (projected[i].intersects(b->accepting)) pending.push_back({c, i, kDropAccepting});
        } else if (projected[i].size() > 1) {
          for (State v : projected[i]) pending.push_back({c, i, v});
        }
      }
    }
  }
  return std::nullopt;
}

struct SubsetResult {
  bool holds;
  std::optional<LassoWord> counterexample;
};

/// Decides L(A, acc_a) subset of L(B, acc_b) by enumerating the loops of the
/// product. A counterexample is re-checked by direct evaluation before it is
/// returned.
inline SubsetResult language_subset_oracle(const DetAutomaton& a, const Acceptance& acc_a,
                                           const DetAutomaton& b, const Acceptance& acc_b,
                                           std::size_t product_cap = kDefaultProductCap,
                                           std::uint64_t loop_budget = kDefaultLoopBudget) {
  check_valid(a, acc_a);
  check_valid(b, acc_b);
  const ProductAutomaton p = product(a, b, product_cap);
  const Acceptance acc[] = {acc_a, acc_b};
  auto w = find_violating_loop(
      p, acc, [&](const std::vector<StateSet>& inf) { return accepts_inf(acc_a, inf[0]) && !accepts_inf(acc_b, inf[1]); },
      loop_budget);
  if (!w) return {true, std::nullopt};
  if (!accepts(a, acc_a, *w) || accepts(b, acc_b, *w))
    throw std::logic_error("language_subset_oracle produced an invalid counterexample");
  return {false, std::move(w)};
}

/// Both inclusions; the counterexample (if any) separates the languages.
inline SubsetResult language_equal_oracle(const DetAutomaton& a, const Acceptance& acc_a,
                                          const DetAutomaton& b, const Acceptance& acc_b,
                                          std::size_t product_cap = kDefaultProductCap,
                                          std::uint64_t loop_budget = kDefaultLoopBudget) {
  auto forward = language_subset_oracle(a, acc_a, b, acc_b, product_cap, loop_budget);
  if (!forward.holds) return forward;
  return language_subset_oracle(b, acc_b, a, acc_a, product_cap, loop_budget);
}

/// An automaton with its acceptance, as one operand of a lasso search.
struct AcceptorRef {
  const DetAutomaton* automaton;
  Acceptance acceptance;
};

struct LassoSearchResult {
  std::optional<LassoWord> violation;
  /// Number of (u, v) pairs covered, |u| <= max_u, 1 <= |v| <= max_v.
  std::uint64_t lassos_covered = 0;
  /// Number of lassos actually evaluated.
  std::uint64_t lassos_evaluated = 0;
};

/// Exhaustive lasso check over all u with |u| <= max_u and all v with
/// 1 <= |v| <= max_v. Prefixes reaching the same tuple of states give the same
/// verdict for every v, so one representative prefix per tuple is evaluated;
/// every evaluation runs the real lasso through accepts().
inline LassoSearchResult exhaustive_lasso_search(
    std::span<const AcceptorRef> acceptors, std::size_t max_u, std::size_t max_v,
    const std::function<bool(const std::vector<bool>&)>& violates) {
  if (acceptors.empty()) throw std::invalid_argument("no acceptors");
  const std::size_t k = acceptors[0].automaton->num_symbols();
  for (const auto& acc : acceptors)
    if (acc.automaton->alphabet() != acceptors[0].automaton->alphabet())
      throw AlphabetMismatch("lasso search over different alphabets");

  LassoSearchResult out;
  std::map<std::vector<State>, Word> representatives;
  std::uint64_t prefixes = 0;
  for_each_word(k, max_u, [&](const Word& u) {
    ++prefixes;
    std::vector<State> tuple;
    for (const auto& acc : acceptors) tuple.push_back(acc.automaton->run(acc.automaton->initial(), u));
    representatives.emplace(std::move(tuple), u);
  });
  std::uint64_t periods = 0;
  for_each_word(k, max_v, [&](const Word& v) {
    if (!v.empty()) ++periods;
  });
  out.lassos_covered = prefixes * periods;

  std::vector<Word> reps;
  for (auto& [tuple, u] : representatives) reps.push_back(u);
  std::sort(reps.begin(), reps.end(), [](const Word& x, const Word& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  for (const auto& u : reps) {
    bool found = false;
    for_each_word(k, max_v, [&](const Word& v) {
      if (found || v.empty()) return;
      LassoWord w(u, v);
      std::vector<bool> verdicts;
      for (const auto& acc : acceptors) verdicts.push_back(accepts(*acc.automaton, acc.acceptance, w));
      ++out.lassos_evaluated;
      if (violates(verdicts)) {
        out.violation = w;
        found = true;
      }
    });
    if (found) break;
  }
  return out;
}

}  // namespace baire
