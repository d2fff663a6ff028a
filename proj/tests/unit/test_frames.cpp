#include <gtest/gtest.h>

#include "irrvir/frames.hpp"
#include "irrvir/parse.hpp"

using namespace irrvir;

namespace {

LaurentPoly P(const VarTablePtr& t, const char* s) { return parse_poly(t, s); }

// Only c_{r-1} (and the expansion variable where allowed) may carry negative powers.
bool negatives_only_on(const LaurentPoly& p, const VarTablePtr& t, const std::set<std::string>& allowed) {
    for (const auto& term : p.terms())
        for (std::size_t v = 0; v < t->size(); ++v)
            if (term.mono[v] < 0 && !allowed.count(t->name(v))) return false;
    return true;
}

}  // namespace

TEST(Frames, SeriesInverse) {
    auto t = standard_table(4, 7);
    auto a2 = series_inverse_coeffs(t, 2, 2);
    EXPECT_EQ(a2[0], P(t, "c2^-1"));
    EXPECT_EQ(a2[1], P(t, "-c1*c2^-2"));
    auto a3 = series_inverse_coeffs(t, 3, 3);
    EXPECT_EQ(a3[2], P(t, "(c2^2 - c1*c3)*c3^-3"));
    auto a4 = series_inverse_coeffs(t, 4, 5);
    for (int p = 0; p <= 4; ++p) {
        LaurentPoly s;
        for (int m = 0; m <= p; ++m) {
            int j = 4 - (p - m);
            if (j < 1) continue;
            s += a4[static_cast<std::size_t>(m)] * LaurentPoly::variable(t, "c" + std::to_string(j));
        }
        EXPECT_EQ(s, LaurentPoly(p == 0 ? 1 : 0));
    }
}

TEST(Frames, IntegerFrame) {
    auto t = standard_table(6, 11);
    auto f2 = build_frame_integer(t, 2);
    EXPECT_EQ(f2.m[0][0], P(t, "c1"));
    EXPECT_EQ(f2.m[0][1], P(t, "2*c2"));
    EXPECT_EQ(f2.m[1][0], P(t, "c2"));
    EXPECT_TRUE(f2.m[1][1].is_zero());
    EXPECT_EQ(f2.det, P(t, "-2*c2^2"));
    EXPECT_EQ(build_frame_integer(t, 3).det, P(t, "-6*c3^3"));
    for (int r = 2; r <= 6; ++r) {
        auto f = build_frame_integer(t, r);
        auto id = multiply(f.inverse, f.m);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) EXPECT_EQ(id[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], LaurentPoly(i == j ? 1 : 0));
    }
}

TEST(Frames, IntegerLstar) {
    auto t = standard_table(5, 9);
    auto op = build_lstar_integer(t, 2);
    EXPECT_EQ(op.full[0], P(t, "c2/2"));
    EXPECT_EQ(op.full[1], P(t, "-c1/2"));
    EXPECT_EQ(op.coeff[0][1], P(t, "-c1/2"));
    EXPECT_EQ(op.coeff[1][0], P(t, "1/2"));
    auto op3 = build_lstar_integer(t, 3);
    EXPECT_EQ(op3.coeff[0][2], P(t, "c2^2/3"));
    EXPECT_TRUE(op3.coeff[0][0].is_zero());
    for (int r = 2; r <= 5; ++r) {
        auto o = build_lstar_integer(t, r);
        for (const auto& c : o.full) EXPECT_TRUE(negatives_only_on(c, t, {}));
        EXPECT_EQ(o.coeff[0][static_cast<std::size_t>(r - 1)], leading_integer_coefficient(t, r));
    }
}

TEST(Frames, IntegerLstarRealizesTopDerivative) {
    auto t = standard_table(5, 9);
    for (int r = 2; r <= 5; ++r) {
        auto op = build_lstar_integer(t, r);
        auto fields = integer_fields(t, r);
        VectorField sum;
        for (int n = 0; n < r; ++n) sum = sum + op.full[static_cast<std::size_t>(n)] * fields.fields[static_cast<std::size_t>(n)];
        VectorField expect;
        expect.comps["c" + std::to_string(r)] = LaurentPoly::variable(t, "c" + std::to_string(r), r);
        EXPECT_EQ(sum, expect) << r;
    }
}

TEST(Frames, HalfFields) {
    auto t = standard_table(5, 9);
    auto f2 = build_half_fields(t, 2);
    EXPECT_EQ(f2.fields[1].component("c1"), P(t, "-Lambda*c1^-1/2"));
    auto f3 = build_half_fields(t, 3);
    EXPECT_EQ(f3.fields[1].component("c1"), P(t, "c2 + 3*c1*Lambda*c2^-2/2"));
    EXPECT_EQ(f3.fields[1].component("c2"), P(t, "-3*Lambda*c2^-1/2"));
    EXPECT_EQ(f3.fields[2].component("c1"), P(t, "-Lambda*c2^-1/2"));
    EXPECT_EQ(bracket(f3.fields[1], f3.fields[2]), VectorField{});
    for (int r = 2; r <= 5; ++r) {
        auto f = build_half_fields(t, r);
        for (int n = 0; n < r; ++n)
            for (int m = r; m <= 2 * r - 1; ++m)
                EXPECT_EQ(f.fields[static_cast<std::size_t>(n)](half_scalar(t, r, m)), LaurentPoly(m - n) * half_scalar(t, r, m + n));
        for (int n = 1; n < r; ++n) {
            EXPECT_EQ(bracket(f.fields[0], f.fields[static_cast<std::size_t>(n)]), LaurentPoly(n) * f.fields[static_cast<std::size_t>(n)]);
            // Anti-diagonal entry h_{n,r-n}.
            LaurentPoly h = f.fields[static_cast<std::size_t>(n)].component("c" + std::to_string(r - n));
            EXPECT_EQ(h, LaurentPoly::variable(t, "Lambda") * LaurentPoly::variable(t, "c" + std::to_string(r - 1), -1) *
                             Rational(-(2 * r - 2 * n - 1), 2));
        }
    }
}

TEST(Frames, HalfFrame) {
    auto t = standard_table(5, 9);
    auto f2 = build_frame_half(t, 2);
    EXPECT_EQ(f2.m[0][0], P(t, "c1"));
    EXPECT_EQ(f2.m[0][1], P(t, "3*Lambda"));
    EXPECT_EQ(f2.m[1][0], P(t, "-Lambda*c1^-1/2"));
    EXPECT_TRUE(f2.m[1][1].is_zero());
    EXPECT_EQ(f2.det, P(t, "3*Lambda^2*c1^-1/2"));
    EXPECT_EQ(half_kappa(2), Rational(3, 2));
    // r = 3: kappa = (-1)^3 * 5 * (-3/2)(-1/2) = -15/4.
    EXPECT_EQ(half_kappa(3), Rational(-15, 4));
    EXPECT_EQ(build_frame_half(t, 3).det, P(t, "-15*Lambda^3*c2^-2/4"));
    for (int r = 2; r <= 5; ++r) {
        auto f = build_frame_half(t, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (i + j > r - 1) EXPECT_TRUE(f.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero());
    }
}

TEST(Frames, HalfLstar) {
    auto t = standard_table(5, 9);
    auto op = build_lstar_half(t, 2);
    EXPECT_EQ(op.full[0], P(t, "Lambda/3"));
    EXPECT_EQ(op.full[1], P(t, "2*c1^2/3"));
    EXPECT_EQ(leading_half_ratio(op, t), Rational(2, 3));
    for (int r = 2; r <= 5; ++r) {
        auto o = build_lstar_half(t, r);
        EXPECT_NE(leading_half_ratio(o, t), 0);
        for (const auto& row : o.coeff)
            for (const auto& c : row) EXPECT_TRUE(negatives_only_on(c, t, {"c" + std::to_string(r - 1)}));
        auto fields = build_half_fields(t, r);
        VectorField sum;
        for (int n = 0; n < r; ++n) sum = sum + o.full[static_cast<std::size_t>(n)] * fields.fields[static_cast<std::size_t>(n)];
        VectorField expect;
        expect.comps["Lambda"] = LaurentPoly::variable(t, "Lambda", r);
        EXPECT_EQ(sum, expect) << r;
    }
}
