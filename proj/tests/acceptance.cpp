// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Thresholds are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "baire/baire.hpp"

namespace {

using namespace baire;

constexpr std::uint64_t kSeed = 20240611;

constexpr std::size_t kC1Instances = 500;
constexpr std::size_t kC1MaxStates = 6;
constexpr std::size_t kC1MaxEntries = 4;
constexpr std::size_t kC1LassoBound = 8;
constexpr double kC1SecondsLimit = 60.0;

constexpr std::size_t kC2Instances = 200;
constexpr std::size_t kC2MaxStates = 6;
constexpr std::size_t kC2LassosPerInstance = 10000;

constexpr std::size_t kC3Instances = 500;
constexpr std::size_t kC3MaxStates = 10;

constexpr std::size_t kC4Automata = 300;
constexpr std::size_t kC4MaxStates = 6;

constexpr std::size_t kC5Triples = 1000;
constexpr std::size_t kC5MaxStates = 8;
constexpr std::size_t kC5LassosPerTriple = 100;

constexpr std::size_t kC6Sizes[] = {250, 500, 1000, 2000};
constexpr std::size_t kC6Repeats = 5;
constexpr double kC6SecondsLimit = 1.0;
constexpr double kC6MaxSlope = 2.2;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

DetAutomaton make(std::size_t n, std::vector<State> delta) { return DetAutomaton(default_alphabet(2), n, 0, delta); }

std::size_t clamp_entries(std::size_t n, std::size_t want) {
  return std::min(want, (std::size_t{1} << n) - 1);
}

// 1. Every random instance yields a verified Baire witness.
Outcome criterion1() {
  const auto t0 = Clock::now();
  VerifyOptions options;
  options.lasso_max_u = kC1LassoBound;
  options.lasso_max_v = kC1LassoBound;
  std::size_t passed = 0, checks = 0;
  std::string first_failure;
  for (std::size_t i = 0; i < kC1Instances; ++i) {
    const std::size_t n = 1 + i % kC1MaxStates;
    const auto [a, t] = random_instance({n, 2, clamp_entries(n, 1 + i % kC1MaxEntries), kSeed + i, 0.5});
    VerifyReport report;
    try {
      report = verify_baire_witness(a, t, options);
    } catch (const std::exception& e) {
      if (first_failure.empty()) first_failure = "instance " + std::to_string(i) + ": " + e.what();
      continue;
    }
    bool ok = report.passed();
    for (const auto& c : report.checks) ok = ok && c.status == CheckStatus::Pass;
    for (const char* name : {"symbolic-identity", "oracle-inclusion", "lasso-inclusion"}) ok = ok && report.find(name);
    checks += report.checks.size();
    if (ok) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = "instance " + std::to_string(i) + "\n" + report.render();
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << passed << "/" << kC1Instances << " instances, " << checks << " checks, " << secs << " s (limit "
    << kC1SecondsLimit << " s)";
  if (!first_failure.empty()) d << "; first failure: " << first_failure;
  return {passed == kC1Instances && secs < kC1SecondsLimit, d.str()};
}

// 2. Layered Buchi translation: language equality and exact size.
Outcome criterion2() {
  std::size_t equal_oracle = 0, size_exact = 0;
  std::uint64_t lassos = 0, discrepancies = 0;
  for (std::size_t i = 0; i < kC2Instances; ++i) {
    const std::size_t n = 1 + i % kC2MaxStates;
    const auto [a, t] = random_maximal_instance(n, 2, kSeed + i);
    const auto b = muller_to_buchi_maximal(a, t);
    equal_oracle += language_equal_oracle(a, t, b.automaton, b.accepting).holds;
    std::size_t bound = n;
    for (const auto& z : check_maximal_loops(a, t).blocks) bound += z.size() * z.size();
    size_exact += b.unpruned_states == bound && bound <= n + n * n;
    LassoSampler sampler(2, 2 * n + 2, 2 * n + 2, kSeed ^ i);
    for (std::size_t k = 0; k < kC2LassosPerInstance; ++k, ++lassos) {
      const auto w = sampler.next();
      discrepancies += accepts_buchi(b.automaton, b.accepting, w) != accepts_muller(a, t, w);
    }
  }
  // Hand traces on the two-state swap automaton.
  const auto ex3 = make(2, {1, 0, 0, 1});
  const auto b = muller_to_buchi_maximal(ex3, MullerTable{{0, 1}}, false);
  std::vector<LayeredState> trace;
  State s = b.automaton.initial();
  trace.push_back(b.states[s]);
  for (int k = 0; k < 4; ++k) trace.push_back(b.states[s = b.automaton.step(s, 0)]);
  const std::vector<LayeredState> expected{{0, 0}, {1, 0}, {0, 1}, {1, 2}, {0, 0}};
  const bool traces = trace == expected && accepts_buchi(b.automaton, b.accepting, LassoWord({}, {0})) &&
                      !accepts_buchi(b.automaton, b.accepting, LassoWord({}, {1})) &&
                      accepts_buchi(b.automaton, b.accepting, LassoWord({}, {0, 1})) && b.automaton.num_states() == 6;
  std::ostringstream d;
  d << "oracle-equal " << equal_oracle << "/" << kC2Instances << ", exact size " << size_exact << "/" << kC2Instances
    << ", lassos " << lassos << " discrepancies " << discrepancies << ", hand traces " << (traces ? "ok" : "wrong");
  return {equal_oracle == kC2Instances && size_exact == kC2Instances && discrepancies == 0 && traces, d.str()};
}

// 3. The Buchi form of the open witness is weak.
Outcome criterion3() {
  std::size_t weak = 0, loops = 0;
  for (std::size_t i = 0; i < kC3Instances; ++i) {
    const std::size_t n = 1 + i % kC3MaxStates;
    const auto [a, t] = random_instance({n, 2, clamp_entries(n, 1 + i % 4), kSeed * 3 + i, 0.7});
    const auto b = build_weak_buchi_open(a, t);
    bool ok = true;
    for (const auto& z : enumerate_loops(b.automaton)) {
      ++loops;
      ok = ok && (z.is_subset_of(b.accepting.accepting) || !z.intersects(b.accepting.accepting));
    }
    weak += ok;
  }
  std::ostringstream d;
  d << weak << "/" << kC3Instances << " weak, " << loops << " loops checked";
  return {weak == kC3Instances, d.str()};
}

// 4. Loop density against a direct check on the tree of words from s.
Outcome criterion4() {
  std::size_t agree = 0, total = 0, dense = 0;
  std::string first;
  std::mt19937_64 rng(kSeed * 5);
  for (std::size_t i = 0; i < kC4Automata; ++i) {
    const std::size_t n = 1 + i % kC4MaxStates;
    const auto a = random_automaton(n, 2, rng);
    const std::size_t bound = 2 * n;
    for (const auto& z : enumerate_loops(a)) {
      // Whether some word of length <= bound leads from r out of z.
      std::vector<int> can_leave(n, -1);
      auto leaves = [&](State r) {
        if (can_leave[r] < 0) {
          bool found = false;
          for_each_word(2, bound, [&](const Word& q) {
            if (found) return;
            State at = r;
            for (Symbol x : q) {
              at = a.step(at, x);
              if (!z.contains(at)) {
                found = true;
                return;
              }
            }
          });
          can_leave[r] = found;
        }
        return can_leave[r] == 1;
      };
      for (State s : z) {
        bool all_stay = true, every_prefix_escapes = true;
        for_each_word(2, bound, [&](const Word& p) {
          State at = s;
          bool stays = true;
          for (Symbol x : p) {
            at = a.step(at, x);
            if (!z.contains(at)) {
              stays = false;
              break;
            }
          }
          all_stay = all_stay && stays;
          if (stays) every_prefix_escapes = every_prefix_escapes && leaves(at);
        });
        const LoopDensity got = classify_loop_density(a, s, z);
        dense += got == LoopDensity::Dense;
        const bool ok = all_stay != every_prefix_escapes &&
                        (got == LoopDensity::Dense ? all_stay : every_prefix_escapes);
        ++total;
        if (ok) {
          ++agree;
        } else if (first.empty()) {
          first = "automaton " + std::to_string(i) + " loop " + z.to_string() + " s=" + std::to_string(s);
        }
      }
    }
  }
  std::ostringstream d;
  d << agree << "/" << total << " (loop, state) pairs agree, " << dense << " dense, " << total - dense
    << " nowhere dense";
  if (!first.empty()) d << "; first disagreement: " << first;
  return {agree == total && total > 0, d.str()};
}

// 5. Table algebra against lasso semantics on a shared automaton.
Outcome criterion5() {
  std::size_t agree = 0, subsets = 0;
  std::uint64_t lassos = 0;
  const TableOp ops[] = {TableOp::Union, TableOp::Intersection, TableOp::Difference, TableOp::SymmetricDifference};
  for (std::size_t i = 0; i < kC5Triples; ++i) {
    const std::size_t n = 1 + i % kC5MaxStates;
    const auto [a, t] = random_instance({n, 2, clamp_entries(n, 1 + i % 4), kSeed * 7 + i, 0.6});
    // Second table on the same automaton: same seed fixes the automaton.
    const auto [_, u] = random_instance({n, 2, clamp_entries(n, 1 + (i / 4) % 4), kSeed * 7 + i, 0.3});
    (void)_;
    std::vector<MullerTable> results;
    for (auto op : ops) results.push_back(boolean_table_op(a, t, u, op));
    bool ok = true;
    LassoSampler sampler(2, 2 * n, 2 * n, kSeed + i);
    bool seen_counterexample = false;
    for (std::size_t k = 0; k < kC5LassosPerTriple; ++k, ++lassos) {
      const auto w = sampler.next();
      const bool x = accepts_muller(a, t, w), y = accepts_muller(a, u, w);
      const bool expected[] = {x || y, x && y, x && !y, x != y};
      for (int j = 0; j < 4; ++j) ok = ok && accepts_muller(a, results[j], w) == expected[j];
      seen_counterexample = seen_counterexample || (x && !y);
    }
    const bool subset = table_subset_same_automaton(a, t, u);
    subsets += subset;
    if (subset) {
      ok = ok && !seen_counterexample;
    } else {
      // A loop of t missing from u must yield a separating lasso.
      bool separated = false;
      const auto reachable = reachable_states(a);
      for (const auto& z : t)
        if (is_loop(a, z, reachable) && !u.contains(z)) {
          const auto w = witness_lasso(a, z);
          separated = separated || (accepts_muller(a, t, w) && !accepts_muller(a, u, w));
        }
      ok = ok && separated;
    }
    agree += ok;
  }
  std::ostringstream d;
  d << agree << "/" << kC5Triples << " triples agree (" << subsets << " included, " << kC5Triples - subsets
    << " not), " << lassos << " lassos";
  return {agree == kC5Triples, d.str()};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (std::log(xs[i]) - mx) * (std::log(ys[i]) - my);
    den += (std::log(xs[i]) - mx) * (std::log(xs[i]) - mx);
  }
  return num / den;
}

// 6. Construction times at n up to 2000 and their growth.
Outcome criterion6() {
  const char* names[] = {"open-witness", "meagre-complement", "layered-buchi"};
  std::vector<std::vector<double>> med(3);
  std::vector<double> xs;
  double worst_at_max = 0;
  for (std::size_t n : kC6Sizes) {
    std::vector<std::vector<double>> samples(3);
    for (std::size_t r = 0; r < kC6Repeats; ++r) {
      std::mt19937_64 rng(kSeed * 11 + n * 100 + r);
      const auto a = random_automaton(n, 2, rng);
      const auto t0 = Clock::now();
      const SccAnalysis scc = analyze(a);
      const MullerTable t(scc.terminal_sccs());
      const double table_secs = seconds_since(t0);
      auto time = [&](const std::function<std::size_t()>& f) {
        const auto start = Clock::now();
        volatile std::size_t sink = f();
        (void)sink;
        return seconds_since(start) + table_secs;
      };
      samples[0].push_back(time([&] { return build_open_witness(a, t).automaton.num_states(); }));
      samples[1].push_back(time([&] { return build_meagre_complement(a).table.size(); }));
      samples[2].push_back(time([&] { return muller_to_buchi_maximal(a, t).automaton.num_states(); }));
    }
    xs.push_back(static_cast<double>(n * 2));
    for (int k = 0; k < 3; ++k) {
      med[k].push_back(median(samples[k]));
      if (n == kC6Sizes[std::size(kC6Sizes) - 1])
        worst_at_max = std::max(worst_at_max, *std::max_element(samples[k].begin(), samples[k].end()));
    }
  }
  std::ostringstream d;
  bool ok = worst_at_max < kC6SecondsLimit;
  d << "max at n=2000 " << worst_at_max << " s (limit " << kC6SecondsLimit << " s); slopes";
  for (int k = 0; k < 3; ++k) {
    const double slope = loglog_slope(xs, med[k]);
    ok = ok && slope <= kC6MaxSlope;
    d << ' ' << names[k] << '=' << std::round(slope * 100) / 100;
  }
  d << " (limit " << kC6MaxSlope << ")";
  return {ok, d.str()};
}

// 7. The canonical example X*·a^omega on the two-state automaton.
Outcome criterion7() {
  const auto a = make(2, {0, 1, 0, 1});
  const MullerTable t{{0}};
  const auto open = build_open_witness(a, t);
  const auto meagre = build_meagre_complement(a);
  // E is empty: L(A1, T1) is contained in the empty language.
  const bool e_empty = open.table.empty() && language_subset_oracle(open.automaton, open.table, a, MullerTable{}).holds;
  const bool t2 = meagre.table == MullerTable{{0, 1}};
  // F' as a Muller table on A2: every nonempty subset except the terminal SCC.
  const auto all_subsets = MullerTable{{0}, {1}, {0, 1}};
  const auto f_prime = boolean_table_op(a, all_subsets, meagre.table, TableOp::Difference);
  const bool inclusion = language_subset_oracle(a, t, meagre.automaton, f_prime).holds;
  const bool meagre_f = classify_meagre(a, t) == Verdict::Yes;
  const bool dense = classify_loop_density(a, 0, {0, 1}) == LoopDensity::Dense &&
                     classify_loop_density(a, 1, {0, 1}) == LoopDensity::Dense;
  std::ostringstream d;
  d << "E empty " << e_empty << ", T2 = {{0,1}} " << t2 << ", F in F' " << inclusion << ", F meagre " << meagre_f
    << ", terminal loop dense " << dense;
  return {e_empty && t2 && inclusion && meagre_f && dense, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << std::endl;
  }
  std::cout << "acceptance: " << (7 - failed) << "/7 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
