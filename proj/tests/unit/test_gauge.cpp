#include <gtest/gtest.h>

#include "irrvir/gauge.hpp"
#include "irrvir/parse.hpp"

using namespace irrvir;

namespace {

LaurentPoly P(const VarTablePtr& vars, const char* s) { return parse_poly(vars, s); }

bool all_zero(const std::vector<ResidualEntry>& es) {
    for (const auto& e : es)
        if (!e.zero) return false;
    return true;
}

ObstructionSet handmade(const VarTablePtr& vars, const LaurentPoly& a0, const LaurentPoly& a1) {
    ObstructionSet obs;
    obs.rank = RankSpec{RankKind::Integer, 2};
    obs.vars = vars;
    obs.var = "c2";
    obs.fields = integer_fields(vars, 2);
    obs.a = {series_from_poly(a0, "c2"), series_from_poly(a1, "c2")};
    return obs;
}

}  // namespace

TEST(Completion, RankTwoIsZero) {
    auto vars = tower_table(RankSpec{RankKind::Half, 2}, 1);
    auto sc = scalar_completion_half(vars, 2, 1);
    for (const auto& s : sc.sigma) EXPECT_TRUE(s.is_zero());
    EXPECT_TRUE(all_zero(sc.checks));
}

TEST(Completion, RankThree) {
    auto vars = tower_table(RankSpec{RankKind::Half, 3}, 1);
    EXPECT_THROW(scalar_completion_half(vars, 3, 1), Error);
    auto sc = scalar_completion_search(vars, 3, 6);
    EXPECT_LE(sc.bound, 6);
    EXPECT_TRUE(all_zero(sc.checks));
    EXPECT_TRUE(sc.gauge_certificate.is_zero());
    auto f = build_half_fields(vars, 3);
    LaurentPoly lhs = f.fields[1](sc.sigma[2]) - f.fields[2](sc.sigma[1]);
    EXPECT_EQ(lhs, P(vars, "-2*c1*c2"));
    for (int n = 0; n < 3; ++n) {
        auto w = weighted_degree(sc.sigma[static_cast<std::size_t>(n)]);
        if (!sc.sigma[static_cast<std::size_t>(n)].is_zero()) {
            EXPECT_TRUE(w.homogeneous);
            EXPECT_EQ(w.weight, n);
        }
    }
}

TEST(Potential, Handmade) {
    auto vars = tower_table(RankSpec{RankKind::Integer, 2}, 1);
    LaurentPoly nu_hat = P(vars, "Q*c0");
    auto obs = handmade(vars, nu_hat + P(vars, "2*c1^2"), P(vars, "c2") * (nu_hat * P(vars, "c1^-1") + P(vars, "2*c1")));
    EXPECT_TRUE(frobenius_verify(obs).all_zero());
    auto d = integrate_potential(obs, build_frame_integer(vars, 2));
    EXPECT_EQ(d.g0, P(vars, "c1^2"));
    EXPECT_EQ(d.nu[1], nu_hat);
}

TEST(Potential, ZeroObstructions) {
    auto vars = tower_table(RankSpec{RankKind::Integer, 2}, 1);
    auto obs = handmade(vars, LaurentPoly(0), LaurentPoly(0));
    EXPECT_TRUE(frobenius_verify(obs).all_zero());
    auto d = integrate_potential(obs, build_frame_integer(vars, 2));
    EXPECT_TRUE(d.g0.is_zero());
    EXPECT_TRUE(d.nu[1].is_zero());
}

TEST(Potential, NotClosed) {
    auto vars = tower_table(RankSpec{RankKind::Integer, 3}, 1);
    ObstructionSet obs;
    obs.rank = RankSpec{RankKind::Integer, 3};
    obs.vars = vars;
    obs.var = "c3";
    obs.fields = integer_fields(vars, 3);
    // dh/dc1 = c2, dh/dc2 = 0: not closed
    auto frame = build_frame_integer(vars, 3);
    LaurentPoly c2 = P(vars, "c2");
    for (int i = 0; i < 3; ++i) obs.a.push_back(series_from_poly(frame.m[static_cast<std::size_t>(i)][0] * c2, "c3"));
    try {
        integrate_potential(obs, frame);
        FAIL() << "expected NotClosed";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotClosed);
    }
}

TEST(Gauge, IntegerRankTwo) {
    auto s = solve_integer(2, 4);
    auto obs = obstructions(s);
    EXPECT_TRUE(all_zero(obs.checks));
    EXPECT_TRUE(obs.a[1].at(0).is_zero());
    EXPECT_TRUE(frobenius_verify(obs).all_zero());
    auto d = integrate_potential(obs, frame_for(s.rank(), s.vars()));
    EXPECT_GE(d.window, 0);
    auto rep = apply_gauge_and_verify(s, obs, d);
    EXPECT_TRUE(rep.all_zero());
    auto bad = d;
    bad.nu[1] += LaurentPoly(1);
    EXPECT_FALSE(apply_gauge_and_verify(s, obs, bad).all_zero());
}

TEST(Gauge, IntegerRankThreeFrobenius) {
    auto s = solve_integer(3, 3);
    auto obs = obstructions(s);
    EXPECT_TRUE(all_zero(obs.checks));
    EXPECT_TRUE(frobenius_verify(obs).all_zero());
}

TEST(Gauge, HalfRankTwo) {
    auto s = solve_half(2, 3);
    auto sc = scalar_completion_half(s.vars(), 2, 1);
    auto obs = obstructions(s, sc);
    EXPECT_TRUE(all_zero(obs.checks));
    EXPECT_TRUE(frobenius_verify(obs).all_zero());
    auto d = integrate_potential(obs, frame_for(s.rank(), s.vars()));
    EXPECT_TRUE(apply_gauge_and_verify(s, obs, d).all_zero());
}

TEST(Gauge, TooShortForPotential) {
    auto s = solve_integer(3, 4);
    auto obs = obstructions(s);
    EXPECT_THROW(integrate_potential(obs, frame_for(s.rank(), s.vars())), Error);
}
