#include <gtest/gtest.h>

#include <cmath>

#include "seclab/constants.hpp"

using namespace seclab;

namespace {

// Real roots of k^m + k^(m-1) - 1 and k^m + k^(m-1) - 2 from mpmath polyroots (60 digits).
struct Oracle {
    int m;
    double c0;
    double c1;
    double c2;
};

constexpr Oracle kOracles[] = {
    {2, 0.6180339887498948482, -1.6180339887498948482, -2.0},
    {3, 0.75487766624669276005, NAN, NAN},
    {4, 0.8191725133961644397, -1.3802775690976141157, -1.5436890126920763616},
    {5, 0.85667488385450287485, NAN, NAN},
    {6, 0.88127146163356959441, -1.2851990332453493679, -1.3880935088896735764},
    {7, 0.89865371262869929326, NAN, NAN},
    {8, 0.91159235348205491863, -1.2320546314285722959, -1.3069899769252657161},
};

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::BadFlags;
}

}  // namespace

TEST(Polynomials, Examples) {
    EXPECT_EQ(p_poly(2, 1.0), 1.0);
    EXPECT_EQ(p_poly(2, 0.0), -1.0);
    EXPECT_EQ(p_poly(2, -2.0), 1.0);
    EXPECT_EQ(q_poly(2, -2.0), 0.0);
    EXPECT_EQ(q_poly(2, 1.0), 0.0);
    EXPECT_EQ(q_poly(4, -2.0), 6.0);
    EXPECT_EQ(code_of([] { q_poly(3, 1.0); }), ErrorCode::OddMultiplicity);
    EXPECT_EQ(code_of([] { p_poly(1, 1.0); }), ErrorCode::BadFlags);
}

TEST(Roots, MatchOracles) {
    for (const auto& o : kOracles) {
        const auto c = CharConstants<double>::compute(o.m);
        EXPECT_NEAR(c.c_m0, o.c0, 1e-14) << o.m;
        if (o.m % 2 == 0) {
            EXPECT_NEAR(*c.c_2m1, o.c1, 1e-14) << o.m;
            EXPECT_NEAR(*c.c_2m2, o.c2, 1e-14) << o.m;
        } else {
            EXPECT_FALSE(c.c_2m1.has_value());
            EXPECT_FALSE(c.c_2m2.has_value());
        }
    }
}

TEST(Roots, GoldenRatioClosedForm) {
    EXPECT_NEAR(solve_c_m0<double>(2), (std::sqrt(5.0) - 1.0) / 2.0, 1e-15);
    EXPECT_NEAR(solve_c_2m1<double>(2), -(1.0 + std::sqrt(5.0)) / 2.0, 1e-15);
}

TEST(Roots, C22IsExactlyMinusTwo) {
    EXPECT_EQ(solve_c_2m2<double>(2), -2.0);
    EXPECT_EQ(solve_c_2m2<DoubleDouble>(2), DoubleDouble(-2.0));
}

TEST(Roots, OddMultiplicityHasNoNegativeRoots) {
    EXPECT_EQ(code_of([] { solve_c_2m1<double>(3); }), ErrorCode::OddMultiplicity);
    EXPECT_EQ(code_of([] { solve_c_2m2<double>(5); }), ErrorCode::OddMultiplicity);
}

TEST(Roots, ResidualsAndOrdering) {
    for (int m = 2; m <= 8; ++m) {
        const auto c = CharConstants<double>::compute(m);
        EXPECT_LE(c.max_residual(), 1e-13) << m;
        EXPECT_GT(c.c_m0, 0.0);
        EXPECT_LT(c.c_m0, 1.0);
        if (m % 2 == 0) {
            EXPECT_GT(*c.c_2m1, -2.0);
            EXPECT_LT(*c.c_2m1, -1.0);
            EXPECT_GE(*c.c_2m2, -2.0);
            EXPECT_LT(*c.c_2m2, *c.c_2m1);
        }
    }
}

TEST(Roots, CM0IncreasesWithM) {
    double prev = 0.0;
    for (int m = 2; m <= 8; ++m) {
        const double c = solve_c_m0<double>(m);
        EXPECT_GT(c, prev) << m;
        prev = c;
    }
}

TEST(Roots, DoubleDoubleResiduals) {
    for (int m = 2; m <= 8; ++m) {
        const auto c = CharConstants<DoubleDouble>::compute(m);
        EXPECT_LE(to_double(c.max_residual()), 1e-29) << m;
        EXPECT_NEAR(to_double(c.c_m0), kOracles[m - 2].c0, 1e-16);
    }
}

TEST(HMap, Examples) {
    EXPECT_DOUBLE_EQ(h_map(2, 0.5), 2.0 / 3.0);
    const double c = solve_c_m0<double>(2);
    EXPECT_NEAR(h_map(2, c), c, 1e-15);
    EXPECT_EQ(h_map(2, -2.0), -1.0);
}

TEST(HMap, PoleAndRemovableSingularity) {
    EXPECT_EQ(code_of([] { h_map(2, -1.0); }), ErrorCode::PoleAtUnitPower);
    EXPECT_EQ(code_of([] { h_map(4, -1.0); }), ErrorCode::PoleAtUnitPower);
    // Odd m has no pole at -1: h_3(-1) = (1 - 1) / (1 + 1).
    EXPECT_EQ(h_map(3, -1.0), 0.0);
    // k = 1 is removable: h_m(1) = (m-1)/m.
    for (int m = 2; m <= 6; ++m) EXPECT_NEAR(h_map(m, 1.0), (m - 1.0) / m, 1e-15) << m;
    EXPECT_NEAR(h_map(4, 1.0 + 1e-9), h_map(4, 1.0), 1e-8);
}

TEST(HMap, MatchesTheDefinitionAwayFromOne) {
    for (int m = 2; m <= 7; ++m) {
        for (double k : {-3.0, -1.5, -0.5, 0.3, 0.9, 1.1, 2.5}) {
            const double want = (1.0 - std::pow(k, m - 1)) / (1.0 - std::pow(k, m));
            EXPECT_NEAR(h_map(m, k), want, 1e-14 * std::max(1.0, std::abs(want))) << m << ' ' << k;
        }
    }
}

TEST(HPrime, Examples) {
    EXPECT_EQ(h_prime(2, 0.0), -1.0);
    EXPECT_EQ(h_prime(2, -1.5), -4.0);
    EXPECT_EQ(code_of([] { h_prime(3, 0.5); }), ErrorCode::OddMultiplicity);
    EXPECT_EQ(code_of([] { h_prime(2, -1.0); }), ErrorCode::PoleAtUnitPower);
}

TEST(HPrime, AgreesWithFiniteDifferences) {
    const double h = 1e-6;
    for (int m : {2, 4, 6, 8}) {
        for (double k : {-3.0, -1.7, -1.2, -0.6, 0.0, 0.4, 0.9, 0.9995, 1.0, 1.0004, 1.3, 2.0}) {
            const double fd = (h_map(m, k + h) - h_map(m, k - h)) / (2 * h);
            const double d = h_prime(m, k);
            EXPECT_LE(std::abs(d - fd), 1e-5 * std::max(1.0, std::abs(d))) << m << ' ' << k;
        }
    }
}

TEST(HPrime, ExpandsOnTheBand) {
    for (int m : {2, 4, 6}) {
        const auto c = CharConstants<double>::compute(m);
        const double lo = *c.c_2m2;
        for (int i = 1; i < 1000; ++i) {
            const double k = lo + (-1.0 - lo) * i / 1000.0;
            if (std::abs(k + 1.0) < 1e-9) continue;
            EXPECT_GT(std::abs(h_prime(m, k)), 1.0) << m << ' ' << k;
        }
    }
}

TEST(HPrime, ContractsAtTheLinearRate) {
    for (int m : {2, 4, 6}) {
        const double c = solve_c_m0<double>(m);
        EXPECT_LT(std::abs(h_prime(m, c)), (m - 1.0) / m) << m;
    }
}

TEST(FixedPoints, EvenMultiplicityHasExactlyTwo) {
    for (int m : {2, 4}) {
        const auto c = CharConstants<double>::compute(m);
        const auto fp = find_fixed_points<double>(m, -3.0, 3.0, 10000);
        ASSERT_EQ(fp.size(), 2u) << m;
        EXPECT_NEAR(fp[0], *c.c_2m1, 1e-12);
        EXPECT_NEAR(fp[1], c.c_m0, 1e-12);
    }
}

// |h(k) - k| <= 1e-12 only at the two fixed points on a 10^4 grid.
TEST(FixedPoints, GridScanFindsNoOtherNearFixedPoint) {
    for (int m : {2, 4}) {
        const auto c = CharConstants<double>::compute(m);
        for (int i = 0; i < 10000; ++i) {
            const double k = -3.0 + 6.0 * i / 9999.0;
            double g;
            try {
                g = std::abs(h_map(m, k) - k);
            } catch (const Error&) {
                continue;
            }
            if (g <= 1e-12) {
                const bool known = std::abs(k - c.c_m0) < 1e-9 || std::abs(k - *c.c_2m1) < 1e-9;
                EXPECT_TRUE(known) << m << ' ' << k;
            }
        }
    }
}

TEST(FixedPoints, OddMultiplicityHasOne) {
    const auto fp = find_fixed_points<double>(3, -3.0, 3.0, 2000);
    ASSERT_EQ(fp.size(), 1u);
    EXPECT_NEAR(fp[0], solve_c_m0<double>(3), 1e-12);
    EXPECT_EQ(code_of([] { find_fixed_points<double>(2, 1.0, 0.0, 10); }), ErrorCode::BadFlags);
}
