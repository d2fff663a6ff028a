#include <random>

#include <gtest/gtest.h>

#include "irrvir/gram.hpp"
#include "irrvir/parse.hpp"

using namespace irrvir;

namespace {

VarTablePtr table() {
    return VarTable::create({{"c", 0}, {"L1", 1}, {"L2", 2}, {"L3", 3}, {"L4", 4}, {"x", 0}, {"y", 0}});
}

ContextPtr ctx_rho(const VarTablePtr& t, int rho) {
    if (rho == 1) return ModuleContext::irregular(t, 1, {parse_poly(t, "L1"), parse_poly(t, "L2")}, parse_poly(t, "c"));
    return ModuleContext::irregular(t, 2, {parse_poly(t, "L2"), parse_poly(t, "L3"), parse_poly(t, "L4")},
                                    parse_poly(t, "c"));
}

int total_parts(int lo, int hi) {
    int e = 0;
    for (const auto& p : partitions_between(std::max(lo, 1), hi)) e += static_cast<int>(p.length());
    return e;
}

}  // namespace

TEST(Gram, SmallBlocks) {
    auto t = table();
    auto ctx = ctx_rho(t, 1);
    auto g11 = gram_matrix(ctx, 1, 1);
    ASSERT_EQ(g11.size(), 1u);
    EXPECT_EQ(g11.entries[0][0], parse_poly(t, "2*L2"));
    auto g00 = gram_matrix(ctx, 0, 0);
    ASSERT_EQ(g00.size(), 1u);
    EXPECT_EQ(g00.entries[0][0], LaurentPoly(1));
    auto g12 = gram_matrix(ctx, 1, 2);
    ASSERT_EQ(g12.size(), 3u);
    EXPECT_EQ(g12.entries[0][0], parse_poly(t, "2*L2"));
}

TEST(Gram, TrieMatchesDirectWordApplication) {
    auto t = table();
    for (int rho : {1, 2}) {
        auto ctx = ctx_rho(t, rho);
        auto g = gram_matrix(ctx, 0, 3);
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) {
                auto v = apply_tilde_word(g.index[i], ModuleVector::basis(ctx, g.index[j]));
                EXPECT_EQ(g.entries[i][j], constant_term(v)) << g.index[i].to_string() << g.index[j].to_string();
            }
    }
}

TEST(Gram, DeterminantSmall) {
    auto t = table();
    auto ctx = ctx_rho(t, 1);
    auto rep = gram_det_verify(ctx, 1, 1);
    EXPECT_EQ(rep.det, parse_poly(t, "2*L2"));
    EXPECT_EQ(rep.ratio, 2);
    auto rep0 = gram_det_verify(ctx, 0, 0);
    EXPECT_EQ(rep0.det, LaurentPoly(1));
    EXPECT_EQ(rep0.ratio, 1);
}

TEST(Gram, DeterminantLevelTwoExponent) {
    // Observed: 64 L2^4 (one power per part), not L2^5.
    auto t = table();
    auto rep = gram_det_report(ctx_rho(t, 1), 1, 2);
    EXPECT_EQ(rep.det, parse_poly(t, "64*L2^4"));
    EXPECT_EQ(rep.expected_exponent, 5);
    EXPECT_FALSE(rep.proportional);
    ASSERT_TRUE(rep.observed_exponent);
    EXPECT_EQ(*rep.observed_exponent, 4);
    EXPECT_EQ(rep.observed_ratio, 64);
    try {
        gram_det_verify(ctx_rho(t, 1), 1, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ProportionalityFailure);
    }
}

TEST(Gram, DeterminantKnownValues) {
    auto t = table();
    auto ctx = ctx_rho(t, 1);
    EXPECT_EQ(gram_det_report(ctx, 2, 2).det, parse_poly(t, "32*L2^3"));
    EXPECT_EQ(gram_det_report(ctx, 3, 3).det, parse_poly(t, "2304*L2^6"));
    EXPECT_EQ(gram_det_report(ctx, 1, 3).det, parse_poly(t, "147456*L2^10"));
    auto ctx2 = ctx_rho(t, 2);
    EXPECT_EQ(gram_det_report(ctx2, 1, 2).det, parse_poly(t, "64*L4^4"));
}

TEST(GramProperty, ExponentIsTotalPartCount) {
    auto t = table();
    for (int rho : {1, 2}) {
        auto ctx = ctx_rho(t, rho);
        for (int lo = 0; lo <= 3; ++lo)
            for (int hi = lo; hi <= 3; ++hi) {
                auto rep = gram_det_report(ctx, lo, hi);
                ASSERT_TRUE(rep.observed_exponent) << lo << ".." << hi;
                EXPECT_EQ(*rep.observed_exponent, total_parts(lo, hi));
                EXPECT_NE(rep.observed_ratio, 0);
                EXPECT_EQ(rep.proportional, total_parts(lo, hi) == rep.expected_exponent);
            }
    }
}

TEST(GramProperty, TriangularUnitDiagonal) {
    auto t = table();
    for (int rho : {1, 2}) {
        auto g = gram_matrix(ctx_rho(t, rho), 0, 4);
        EXPECT_TRUE(g.upper_triangular());
        for (std::size_t i = 0; i < g.size(); ++i) EXPECT_TRUE(g.entries[i][i].is_unit());
    }
}

TEST(GramProperty, EntryWeights) {
    auto t = table();
    for (int rho : {1, 2}) {
        auto g = gram_matrix(ctx_rho(t, rho), 0, 3);
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (g.entries[i][j].is_zero()) continue;
                auto w = weighted_degree(g.entries[i][j]);
                const auto& mu = g.index[i];
                const auto& lam = g.index[j];
                EXPECT_TRUE(w.homogeneous);
                EXPECT_EQ(w.weight, rho * static_cast<int>(mu.length() + lam.length()) + mu.weight() - lam.weight());
            }
    }
}

TEST(Gram, SolveOneByOne) {
    auto t = table();
    auto ctx = ctx_rho(t, 1);
    auto v = solve_descendants(ctx, {{Partition({1}), parse_poly(t, "x")}}, 1);
    EXPECT_EQ(v, ModuleVector::basis(ctx, Partition({1}), parse_poly(t, "x*L2^-1/2")));
    EXPECT_TRUE(solve_descendants(ctx, {}, 3).is_zero());
}

TEST(GramProperty, SolveInvertsForward) {
    auto t = table();
    std::mt19937 rng(41);
    for (int rho : {1, 2}) {
        auto ctx = ctx_rho(t, rho);
        DescendantSolver solver(ctx, 3);
        auto parts = partitions_between(1, 3);
        for (int trial = 0; trial < 10; ++trial) {
            ModuleVector v(ctx);
            std::uniform_int_distribution<int> co(-4, 4);
            for (const auto& p : parts)
                v.add_term(p, LaurentPoly(co(rng)) + LaurentPoly(co(rng)) * parse_poly(t, "x*y^-1"));
            std::map<Partition, LaurentPoly> targets;
            for (const auto& mu : parts) targets[mu] = constant_term(apply_tilde_word(mu, v));
            EXPECT_EQ(solver.solve(targets, 3), v);
        }
    }
}
