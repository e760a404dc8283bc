#include <gtest/gtest.h>

#include <random>
#include <string>

#include "baire/baire.hpp"
#include "test_support.hpp"

namespace baire {
namespace {

using testing::ex1;
using testing::ex2;
using testing::lasso;
using testing::w;

constexpr const char* kEx1Text = R"(alphabet a b          # symbol order fixes indices
states 2
initial 0
acc-type muller
trans 0 a 0
trans 0 b 1
trans 1 a 0
trans 1 b 1
accept {0}
)";

TEST(DetAutomaton, RejectsIncompleteOrInvalidTables) {
  EXPECT_THROW(DetAutomaton({"a", "b"}, 2, 0, {0, 1, 0}), std::invalid_argument);
  EXPECT_THROW(DetAutomaton({"a"}, 2, 0, {0, 2}), std::invalid_argument);
  EXPECT_THROW(DetAutomaton({"a"}, 2, 2, {0, 1}), std::invalid_argument);
  EXPECT_THROW(DetAutomaton({"a", "a"}, 1, 0, {0, 0}), std::invalid_argument);
  EXPECT_THROW(DetAutomaton({}, 1, 0, {}), std::invalid_argument);
  EXPECT_NO_THROW(DetAutomaton({"a"}, 1, 0, {0}));
}

TEST(Run, ExtendsStepToWords) {
  const auto a = ex1();
  EXPECT_EQ(a.run(0, w("ab")), 1u);
  EXPECT_EQ(a.run(0, w("")), 0u);
  EXPECT_EQ(a.run(1, w("ba")), 0u);
}

TEST(LassoWord, RejectsEmptyPeriod) {
  EXPECT_THROW(LassoWord(w("a"), w("")), std::invalid_argument);
}

TEST(InfSet, HandExamples) {
  EXPECT_EQ(inf_set(ex1(), lasso("", "a")), (StateSet{0}));
  EXPECT_EQ(inf_set(ex1(), lasso("bb", "ab")), (StateSet{0, 1}));
  EXPECT_EQ(inf_set(ex2(), lasso("a", "b")), (StateSet{1}));
}

TEST(InfSet, LongCycleUsesIndexedDetection) {
  // 40-state ring on 'a'; the period 'a' needs 40 boundary steps to repeat.
  std::vector<State> delta;
  for (State s = 0; s < 40; ++s) delta.push_back((s + 1) % 40);
  DetAutomaton ring({"a"}, 40, 0, delta);
  EXPECT_EQ(inf_set(ring, LassoWord({}, {0})).size(), 40u);
  EXPECT_EQ(inf_set(ring, LassoWord({}, {0})), testing::brute_inf(ring, LassoWord({}, {0})));
}

TEST(Accepts, MullerAndBuchi) {
  EXPECT_TRUE(accepts_muller(ex1(), MullerTable{{0}}, lasso("", "a")));
  EXPECT_FALSE(accepts_muller(ex1(), MullerTable{{0}}, lasso("a", "b")));
  EXPECT_TRUE(accepts_buchi(ex1(), BuchiSet{{0}}, lasso("b", "ab")));
  EXPECT_FALSE(accepts_buchi(ex1(), BuchiSet{{0}}, lasso("a", "b")));
}

TEST(InfSet, MatchesBruteForceAndIsNormalizationInvariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto a = random_automaton(n, 2 + trial % 2, rng);
    LassoSampler sampler(a.num_symbols(), 6, 5, static_cast<std::uint64_t>(trial));
    for (int i = 0; i < 30; ++i) {
      const auto l = sampler.next();
      const StateSet inf = inf_set(a, l);
      ASSERT_EQ(inf, testing::brute_inf(a, l));
      Word uv = l.prefix();
      uv.insert(uv.end(), l.period().begin(), l.period().end());
      Word vv = l.period();
      vv.insert(vv.end(), l.period().begin(), l.period().end());
      EXPECT_EQ(inf, inf_set(a, LassoWord(uv, l.period())));
      EXPECT_EQ(inf, inf_set(a, LassoWord(l.prefix(), vv)));
    }
  }
}

TEST(InfSet, AlwaysALoop) {
  std::mt19937_64 rng(5);
  std::size_t checked = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const auto a = random_automaton(1 + trial % 8, 2, rng);
    const auto reachable = reachable_states(a);
    LassoSampler sampler(2, 8, 8, 1000 + static_cast<std::uint64_t>(trial));
    for (int i = 0; i < 40; ++i) {
      ASSERT_TRUE(is_loop(a, inf_set(a, sampler.next()), reachable));
      ++checked;
    }
  }
  EXPECT_GE(checked, 10000u);
}

// --- file format -----------------------------------------------------------

TEST(Parse, Ex1File) {
  const auto f = parse_automaton(std::string_view(kEx1Text));
  EXPECT_EQ(f.automaton, testing::ex1());
  ASSERT_TRUE(f.is_muller());
  EXPECT_EQ(f.muller(), (MullerTable{{0}}));
}

TEST(Parse, BuchiAndMultiEntryTables) {
  const auto f = parse_automaton(std::string_view(
      "alphabet a b\nstates 3\ninitial 0\nacc-type buchi\n"
      "trans 0 a 1\ntrans 0 b 2\ntrans 1 a 1\ntrans 1 b 1\ntrans 2 a 2\ntrans 2 b 2\naccept 2 1\n"));
  ASSERT_FALSE(f.is_muller());
  EXPECT_EQ(f.buchi().accepting, (StateSet{1, 2}));

  const auto g = parse_automaton(std::string_view(
      "alphabet a\nstates 2\ninitial 1\nacc-type muller\ntrans 0 a 1\ntrans 1 a 0\naccept {0, 1} {1} {1,0}\n"));
  EXPECT_EQ(g.automaton.initial(), 1u);
  EXPECT_EQ(g.muller(), (MullerTable{{1}, {0, 1}}));
}

TEST(Parse, MissingAcceptLineMeansEmptyTable) {
  const auto f = parse_automaton(std::string_view("alphabet a\nstates 1\ninitial 0\nacc-type muller\ntrans 0 a 0\n"));
  EXPECT_TRUE(f.muller().empty());
}

struct BadCase {
  std::string text;
  ParseErrorKind kind;
  std::size_t line;
};

class ParseErrors : public ::testing::TestWithParam<BadCase> {};

TEST_P(ParseErrors, ReportsKindAndLine) {
  const auto& c = GetParam();
  try {
    parse_automaton(std::string_view(c.text));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), c.kind) << e.what();
    EXPECT_EQ(e.line(), c.line) << e.what();
  }
}

const std::string kHeader = "alphabet a b\nstates 2\ninitial 0\nacc-type muller\n";

INSTANTIATE_TEST_SUITE_P(
    Cases, ParseErrors,
    ::testing::Values(
        BadCase{kHeader + "trans 0 a 0\ntrans 0 b 1\ntrans 1 a 0\naccept {0}\n", ParseErrorKind::MissingTransition, 8},
        BadCase{kHeader + "trans 0 a 0\ntrans 0 a 1\n", ParseErrorKind::DuplicateTransition, 6},
        BadCase{kHeader + "trans 0 c 0\n", ParseErrorKind::UnknownSymbol, 5},
        BadCase{kHeader + "trans 0 a 2\n", ParseErrorKind::BadStateIndex, 5},
        BadCase{kHeader + "trans 0 a 0\ntrans 0 b 1\ntrans 1 a 0\ntrans 1 b 1\naccept {0,7}\n",
                ParseErrorKind::BadStateIndex, 9},
        BadCase{"states 2\ninitial 0\nacc-type muller\n", ParseErrorKind::BadHeader, 3},
        BadCase{"alphabet a\nstates 1\ninitial 0\nacc-type rabin\n", ParseErrorKind::BadHeader, 4},
        BadCase{"alphabet a\ntrans 0 a 0\n", ParseErrorKind::BadHeader, 2},
        BadCase{"alphabet a\nstates 1\nstates 1\n", ParseErrorKind::BadHeader, 3},
        BadCase{"alphabet a\nstates 1\ninitial 0\nacc-type muller\nfoo\n", ParseErrorKind::BadHeader, 5},
        BadCase{"alphabet a\nstates 1\ninitial 0\nacc-type muller\ntrans 0 a 0\naccept {0\n",
                ParseErrorKind::Malformed, 6}));

TEST(Serialize, CanonicalOrder) {
  const std::string text = serialize(ex1(), MullerTable{{0, 1}, {0}});
  EXPECT_EQ(text,
            "alphabet a b\nstates 2\ninitial 0\nacc-type muller\n"
            "trans 0 a 0\ntrans 0 b 1\ntrans 1 a 0\ntrans 1 b 1\naccept {0} {0,1}\n");
  EXPECT_EQ(serialize(ex1(), BuchiSet{{1, 0}}, {"x", ""}),
            "alphabet a b\nstates 2\ninitial 0\nacc-type buchi\n"
            "trans 0 a 0\ntrans 0 b 1\ntrans 1 a 0\ntrans 1 b 1\naccept 0 1\n# state 0: x\n");
}

TEST(Serialize, RoundTripsModuloWhitespaceAndOrder) {
  const std::string scrambled =
      "  alphabet   a b\nstates 3\n\ninitial 0   # start\nacc-type muller\n"
      "trans 2 b 2\ntrans 0 a 1\ntrans 1 a 1\ntrans 0 b 2\ntrans 2 a 2\ntrans 1 b 1\naccept {2}  {1}\n";
  const auto f = parse_automaton(std::string_view(scrambled));
  EXPECT_EQ(f.automaton, ex2());
  const std::string canonical = serialize(f);
  const auto g = parse_automaton(std::string_view(canonical));
  EXPECT_EQ(serialize(g), canonical);
  EXPECT_EQ(g.muller(), f.muller());
}

TEST(Serialize, RoundTripProperty) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomSpec spec{1 + seed % 7, 1 + seed % 3, 1 + seed % 3, seed, 0.5};
    if (spec.n_states == 1) spec.table_entries = 1;
    const auto [a, t] = random_instance(spec);
    const Acceptance acc = seed % 2 ? Acceptance(t) : Acceptance(BuchiSet{t.entries().front()});
    const std::string text = serialize(a, acc);
    const auto f = parse_automaton(std::string_view(text));
    ASSERT_EQ(f.automaton, a);
    ASSERT_EQ(f.acceptance, acc);
    ASSERT_EQ(serialize(f), text);
  }
}

}  // namespace
}  // namespace baire
