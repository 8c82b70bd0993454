#include <gtest/gtest.h>

#include "mod2hecke/arith.hpp"
#include "mod2hecke/predict.hpp"

using namespace mod2hecke;
using namespace mod2hecke::predict;

TEST(Predict, Level11)
{
    auto p = predict::predict(11);
    EXPECT_EQ(p.ss_count, 1u);
    EXPECT_EQ(p.ss_field, SsField::minus);
    EXPECT_EQ(p.ord_dih_plus, 0u);
    EXPECT_EQ(p.ord_dih_minus, 0u);
    EXPECT_EQ(p.reducible, 0u);
    EXPECT_TRUE(p.implies_has0);
    EXPECT_FALSE(p.implies_has1);
    EXPECT_EQ(p.mult0_lb, 1u);
    EXPECT_EQ(p.mult1_lb, 0u);
}

TEST(Predict, Level17)
{
    auto p = predict::predict(17);
    EXPECT_EQ(p.ss_count, 0u);
    EXPECT_EQ(p.reducible, 1u);
    EXPECT_TRUE(p.implies_has1);
    EXPECT_FALSE(p.implies_has0);
    EXPECT_EQ(p.mult1_lb, 1u);  // max(1, (4 - 2) / 2)
    EXPECT_EQ(p.mult0_lb, 0u);
}

TEST(Predict, Level23)
{
    auto p = predict::predict(23);
    EXPECT_EQ(p.ord_dih_minus, 1u);
    EXPECT_EQ(p.ord_dih_minus_a2_1, 0u);
    EXPECT_EQ(p.ss_count, 0u);
    EXPECT_FALSE(p.implies_has0);
    EXPECT_FALSE(p.implies_has1);
}

TEST(Predict, Level3IsEmpty)
{
    auto p = predict::predict(3);
    EXPECT_EQ(p.ss_count, 0u);
    EXPECT_EQ(p.mult0_lb, 0u);
    EXPECT_EQ(p.mult1_lb, 0u);
    EXPECT_FALSE(p.implies_has0);
    EXPECT_FALSE(p.implies_has1);
}

TEST(Predict, Invariants)
{
    for (std::uint64_t N : primes_between(3, 3000)) {
        auto plus = quad::invariants(N, 1), minus = quad::invariants(N, -1);
        auto p = predict::predict(N, plus, minus);
        const unsigned r = N % 8;
        SCOPED_TRACE("N=" + std::to_string(N));
        EXPECT_EQ(2 * p.ord_dih_plus + 1, plus.h_odd);
        EXPECT_EQ(2 * p.ord_dih_minus + 1, minus.h_odd);
        EXPECT_LE(p.ord_dih_plus_a2_1, p.ord_dih_plus);
        EXPECT_LE(p.ord_dih_minus_a2_1, p.ord_dih_minus);
        if (p.ss_count > 0) {
            EXPECT_TRUE((r == 3 && p.ss_field == SsField::minus && p.ss_count == minus.h) ||
                        (r == 5 && p.ss_field == SsField::plus && p.ss_count == plus.h));
        }
        if (r == 3 && N > 3)
            EXPECT_TRUE(p.implies_has0);
        EXPECT_EQ(p.reducible == 1, r == 1);
        EXPECT_EQ(p.implies_has0, p.ss_count > 0);
        EXPECT_LE(p.mult0_thm, p.mult0_lb);
        EXPECT_LE(p.mult1_thm, p.mult1_lb);
    }
}

TEST(Bounds, Weights)
{
    // N = 1 mod 8 with h(-N) = 8 (N = 41): reducible ideal weighs (8 - 2) / 2 = 3.
    auto minus = quad::invariants(41, -1);
    ASSERT_EQ(minus.h_even, 8u);
    Prediction p;
    p.N = 41;
    p.reducible = 1;
    EXPECT_EQ(multiplicity_bounds(p, minus).mult1, 3u);
    p.ord_dih_plus_a2_1 = 1;
    p.ord_dih_minus_a2_1 = 2;
    EXPECT_EQ(multiplicity_bounds(p, minus).mult1, 3u + 4u + 2u * 8u);

    Prediction q;
    q.N = 23;
    q.ord_dih_plus_a2_1 = 1;
    q.ord_dih_minus_a2_1 = 1;
    q.ss_count = 0;
    EXPECT_EQ(multiplicity_bounds(q, quad::invariants(23, -1)).mult1, 4u);
    EXPECT_EQ(theorem_bounds(q).mult1, 3u);

    Prediction s;
    s.N = 13;
    s.ss_count = 1;
    s.ord_dih_minus_a2_1 = 1;
    auto b = multiplicity_bounds(s, quad::invariants(13, -1));
    EXPECT_EQ(b.mult0, 1u);
    EXPECT_EQ(b.mult1, 2u);
}

TEST(Criteria, Kida)
{
    auto k = [](std::uint64_t N) { return kida_criterion(N, quad::invariants(N, 1), quad::invariants(N, -1)); };
    EXPECT_FALSE(k(11));
    EXPECT_TRUE(k(17));
    EXPECT_FALSE(k(37));
}

TEST(Criteria, Setzer)
{
    auto s = [](std::uint64_t N) { return setzer_criterion(N, quad::invariants(N, 1), quad::invariants(N, -1)); };
    EXPECT_TRUE(s(17));
    EXPECT_TRUE(s(7));
    EXPECT_FALSE(s(11));
    EXPECT_FALSE(s(23));  // h(-23) = 3
}

TEST(Criteria, Hadano)
{
    EXPECT_EQ(hadano_criterion(7), hadano_reducible);
    EXPECT_EQ(hadano_criterion(5), hadano_none);
    EXPECT_EQ(hadano_criterion(61), hadano_no_conclusion);
    EXPECT_EQ(hadano_criterion(7, 1, 1, 1, 4), hadano_reducible);
    EXPECT_EQ(hadano_criterion(5, 1, 1, 2, 2), hadano_none);
}

TEST(Heuristic, Constants)
{
    auto h = heuristic_model();
    EXPECT_NEAR(h.cl_constant, 0.2455, 1e-4);
    EXPECT_GT(h.cl_constant, 0.245);
    EXPECT_LT(h.cl_constant, 0.246);
    EXPECT_DOUBLE_EQ(h.p_ss_5mod8, 1.0 / 3.0);
    EXPECT_NEAR(h.p_either_dih_7mod8, 0.431, 1e-3);
    EXPECT_DOUBLE_EQ(h.p_either_dih_7mod8, 1 - (1 - h.cl_constant) * (1 - h.cl_constant));
}

TEST(Predict, RejectsBadInput)
{
    EXPECT_THROW(predict::predict(15), InputError);
    EXPECT_THROW(predict::predict(11, quad::invariants(13, 1), quad::invariants(13, -1)), InputError);
}
