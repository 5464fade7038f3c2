#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace symsft;
using symsft::test::from_digits;

TEST(CountDfs, HardSquarePlane) {
    const SftModel hs = hard_square(2);
    EXPECT_EQ(count_patterns_dfs(hs, 1), 2);
    EXPECT_EQ(count_patterns_dfs(hs, 2), 7);
    EXPECT_EQ(count_patterns_dfs(hs, 3), 63);
    EXPECT_EQ(count_patterns_dfs(hs, 4), 1234);
}

TEST(CountDfs, ThreeColoringPlane) {
    EXPECT_EQ(count_patterns_dfs(coloring(2, 3), 2), 18);
    EXPECT_EQ(count_patterns_dfs(coloring(2, 3), 3), 246);
}

TEST(CountDfs, AgreesWithTestBruteForce) {
    for (const SftModel& m : {hard_square(1), hard_square(2), hard_square(3), coloring(2, 3), coloring(3, 3),
                              symmetrize(SftModel(2, Alphabet({"a", "b", "c"}),
                                                  {ForbiddenSet{{0, 1}, {2, 2}}, ForbiddenSet{{1, 1}}}))}) {
        for (int n = 1; n <= 3; ++n) {
            if (m.dimension() == 3 && n == 3) continue;
            EXPECT_EQ(count_patterns_dfs(m, n), test::brute_force_count(m, n)) << "d=" << m.dimension() << " n=" << n;
        }
    }
}

TEST(CountDfs, JobsDoNotChangeResult) {
    const SftModel hs = hard_square(2);
    CountOptions par;
    par.jobs = 4;
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(count_patterns_dfs(hs, n, par), count_patterns_dfs(hs, n));
    EXPECT_EQ(count_patterns_dfs(coloring(3, 3), 3, par), count_patterns_dfs(coloring(3, 3), 3));
    EXPECT_EQ(count_patterns_dfs(test::forbid_all_axis0(2, 2), 4, par), 0);
}

TEST(CountDfs, NodeBudget) {
    CountOptions tight;
    tight.node_budget = 1000;
    EXPECT_THROW(count_patterns_dfs(hard_square(2), 6, tight), BudgetExceeded);
    tight.jobs = 3;
    EXPECT_THROW(count_patterns_dfs(hard_square(2), 6, tight), BudgetExceeded);
    EXPECT_THROW(count_patterns_dfs(hard_square(2), 0), std::invalid_argument);
}

TEST(CountByState, HardSquareTwoByTwoTable) {
    const StateCountTable t = count_by_state(hard_square(2), 2);
    std::map<std::vector<Symbol>, int> expect{
        {{0, 0, 0}, 2}, {{0, 0, 1}, 2}, {{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{1, 1, 0}, 1}};
    ASSERT_EQ(t.state_count(), expect.size());
    for (const auto& [state, count] : t.counts()) {
        ASSERT_TRUE(expect.contains(state.cells));
        EXPECT_EQ(count, expect[state.cells]);
    }
    EXPECT_EQ(t.total(), 7);
    EXPECT_EQ(t.power_sum(4), 35);
}

TEST(CountByState, IndependentTally) {
    // Tally states from the brute-force list and compare.
    for (const SftModel& m : {hard_square(2), coloring(2, 3), hard_square(3)}) {
        const int n = m.dimension() == 3 ? 2 : 3;
        const CubeGeometry g(n, m.dimension());
        const auto surface = surface_cells(g);
        std::map<std::vector<Symbol>, std::uint64_t> tally;
        test::brute_force_patterns(m, n, [&](const std::vector<Symbol>& v) {
            std::vector<Symbol> key;
            for (std::size_t i : surface) key.push_back(v[i]);
            ++tally[key];
        });
        const StateCountTable t = count_by_state(m, n);
        ASSERT_EQ(t.state_count(), tally.size());
        for (const auto& [state, count] : t.counts()) EXPECT_EQ(count, tally.at(state.cells));
        EXPECT_EQ(t.total(), count_patterns_dfs(m, n));
    }
}

TEST(CountByState, SingleCellAndFreeCases) {
    const StateCountTable one = count_by_state(coloring(2, 5), 1);
    EXPECT_EQ(one.state_count(), 5U);
    for (const auto& [s, c] : one.counts()) EXPECT_EQ(c, 1);

    const StateCountTable free = count_by_state(test::full_shift(1, 3), 2);
    EXPECT_EQ(free.state_count(), 3U);
    for (const auto& [s, c] : free.counts()) EXPECT_EQ(c, 3);
}

TEST(Enumerate, HardSquareSevenPatternsInOrder) {
    const SftModel hs = hard_square(2);
    const auto all = enumerate_patterns(hs, 2);
    ASSERT_EQ(all.size(), 7U);
    for (const auto& p : all) EXPECT_TRUE(is_locally_admissible(hs, p));
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(all.front(), from_digits(2, 2, "0000"));
    EXPECT_EQ(all.back(), from_digits(2, 2, "1001"));
}

TEST(Enumerate, EmptyStreamAndLengthIdentity) {
    EXPECT_TRUE(enumerate_patterns(test::forbid_all_axis0(2, 3), 2).empty());
    for (int n = 1; n <= 4; ++n)
        EXPECT_EQ(BigCount(enumerate_patterns(coloring(2, 3), n).size()), count_patterns_dfs(coloring(2, 3), n));
}

TEST(Oracle, ReferenceCounts) {
    EXPECT_EQ(oracle_count_naive(hard_square(2), 2), 7);
    EXPECT_EQ(oracle_count_naive(hard_square(3), 2), 35);
    EXPECT_EQ(oracle_count_naive(coloring(2, 2), 2), 2);
    EXPECT_EQ(oracle_count_naive(coloring(3, 3), 2), 114);
    EXPECT_THROW(oracle_count_naive(hard_square(2), 5), BudgetExceeded);
}

TEST(Invariants, ZeroPropagationAndMonotonicity) {
    const std::vector<SftModel> models{hard_square(1), hard_square(2), coloring(2, 2), coloring(2, 3),
                                       coloring(1, 1), test::forbid_all_axis0(2, 2), test::single_symbol_forced(2),
                                       test::full_shift(2, 2)};
    for (const SftModel& m : models) {
        const BigCount c2 = count_patterns_dfs(m, 2);
        BigCount prev = c2;
        for (int n = 3; n <= 4; ++n) {
            const BigCount c = count_patterns_dfs(m, n);
            EXPECT_EQ(c == 0, c2 == 0);
            EXPECT_LE(prev, c);
            prev = c;
        }
    }
}
