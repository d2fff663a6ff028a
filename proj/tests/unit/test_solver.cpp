#include <gtest/gtest.h>

#include "irrvir/parse.hpp"
#include "irrvir/solver.hpp"

using namespace irrvir;

namespace {

LaurentPoly P(const VarTablePtr& vars, const char* s) { return parse_poly(vars, s); }

}  // namespace

TEST(RankSpec, Parse) {
    EXPECT_EQ(RankSpec::parse("3").r, 3);
    EXPECT_EQ(RankSpec::parse("5/2").kind, RankKind::Half);
    EXPECT_EQ(RankSpec::parse("5/2").r, 3);
    EXPECT_EQ(RankSpec::parse("3/2").to_string(), "3/2");
    EXPECT_THROW(RankSpec::parse("2/2"), Error);
    EXPECT_THROW(RankSpec::parse("x"), Error);
}

TEST(Solver, IntegerRank2G1) {
    auto s = solve_integer(2, 3);
    EXPECT_EQ(s.g[1], P(s.vars(), "c1^2/2*(c0-c0p)"));
    EXPECT_TRUE(s.ledger.find("nu")->solved);
    EXPECT_TRUE(verify_canonical(s).all_zero());
    for (int k = 0; k <= 3; ++k) EXPECT_LE(s.v[static_cast<std::size_t>(k)].max_level(), 2 * k);
}

TEST(Solver, HalfRank2G1) {
    auto s = solve_half(2, 3);
    EXPECT_EQ(s.g[1], P(s.vars(), "-2/3*(2*Q-c0)*c1^3"));
    EXPECT_TRUE(verify_canonical(s).all_zero());
}

TEST(Solver, IntegerRank3) {
    auto s = solve_integer(3, 3);
    auto rep = verify_canonical(s);
    for (const auto& e : rep.entries) EXPECT_TRUE(e.zero) << e.relation << " " << e.detail;
    EXPECT_TRUE(s.ledger.find("e1")->solved);
}

TEST(Solver, HalfRank3) {
    auto s = solve_half(3, 3);
    auto rep = verify_canonical(s);
    for (const auto& e : rep.entries) EXPECT_TRUE(e.zero) << e.relation << " " << e.detail;
}

TEST(Solver, PerturbationIsDetected) {
    auto s = solve_integer(2, 2);
    auto bad = s;
    bad.v[1].add_term(Partition({1}), LaurentPoly(1));
    EXPECT_FALSE(verify_canonical(bad).all_zero());
    bad = s;
    bad.nu = bad.nu + LaurentPoly(1);
    EXPECT_FALSE(verify_canonical(bad).all_zero());
}

TEST(Rank1, FirstOrder) {
    auto vars = standard_table(1, 1);
    auto lam = lambda_table(vars, 1, Convention::Section2Display);
    auto s = solve_rank1(vars, delta_of(vars, "c0"), default_central(vars), lam[0], lam[1], 3);
    EXPECT_EQ(s.coefficient(1, Partition({1})), RationalFunction(P(vars, "Q-c0"), delta_of(vars, "c0")));
    EXPECT_TRUE(verify_rank1(s).all_zero());
}
