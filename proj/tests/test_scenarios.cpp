#include "dh/scenarios.hpp"

#include <gtest/gtest.h>

using namespace dh;

TEST(Prediction, Examples) {
    ScenarioPrediction a = anticyclotomic_prediction({3, 0});
    EXPECT_EQ(a.e1, 0);
    EXPECT_EQ(a.e2, 2);
    EXPECT_TRUE(a.checks.passed());
    EXPECT_EQ(shape_dims(a.shape, 3), (std::vector<int>{3, 3, 1}));

    ScenarioPrediction b = anticyclotomic_prediction({1, 0});
    EXPECT_EQ(b.e1, 0);
    EXPECT_EQ(b.e2, 0);
    EXPECT_TRUE(b.shape.j_blocks.empty());
    EXPECT_EQ(b.shape.e_infinity, 1);

    EXPECT_THROW(anticyclotomic_prediction({2, 2}), DomainError);
    EXPECT_THROW(anticyclotomic_prediction({-1, 2}), ValidationError);
}

TEST(Prediction, IdentityOnGrid) {
    for (int sp = 0; sp <= 5; ++sp)
        for (int sm = 0; sm <= 5; ++sm) {
            if (sp == sm)
                continue;
            ScenarioPrediction pr = anticyclotomic_prediction({sp, sm});
            EXPECT_EQ(sp + sm, 1 + pr.e1 + pr.e2);
            EXPECT_EQ(shape_dims(pr.shape, 1)[0], sp + sm);
            Invariants inv = infer_invariants(shape_dims(pr.shape, 4));
            EXPECT_EQ(inv.e_infinity, 1);
            EXPECT_EQ(inv.e, (std::vector<int>{pr.e1, pr.e2, 0}));
            for (const auto& c : pr.checks.entries)
                EXPECT_TRUE(c.pass) << c.label;
            EXPECT_EQ(pr.parity_flags.empty(), (sp + sm) % 2 == 1);
        }
}

TEST(Parity, Examples) {
    EXPECT_TRUE(parity_check({0, 2}).empty());
    EXPECT_EQ(parity_check({1, 1}), (std::vector<int>{2}));
    EXPECT_TRUE(parity_check({}).empty());
    EXPECT_EQ(parity_check({1, 3, 1, 5, 2, 2}), (std::vector<int>{2, 4}));
}

TEST(Parity, Exhaustive) {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    std::vector<int> flags = parity_check({a, b, c, d});
                    std::vector<int> want;
                    if (b % 2)
                        want.push_back(2);
                    if (d % 2)
                        want.push_back(4);
                    EXPECT_EQ(flags, want);
                }
}

TEST(Degeneracy, Examples) {
    EXPECT_EQ(degeneracy_floor({3, 0}), 3);
    EXPECT_EQ(degeneracy_floor({2, 2}), 0);
    EXPECT_EQ(degeneracy_floor({1, 4}), 3);
}

TEST(Degeneracy, ToyKernelsAboveFloor) {
    RingSpec s(3, 1, 8);
    for (int sp = 0; sp <= 3; ++sp)
        for (int sm = 0; sm <= 3; ++sm) {
            if (sp + sm == 0)
                continue;
            ScenarioInput inp{sp, sm, 1};
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                TwistToy toy = twist_toy(s, inp, seed);
                EXPECT_NO_THROW(toy.pairing.validate());
                EXPECT_TRUE(twist_equivariance_check(toy.pairing, toy.tau, toy.tau, -1));
                KernelPair kb = derived_kernels_bruteforce(toy.pairing, 1, kDefaultEnumerationCap);
                KernelPair kl = derived_kernels(toy.pairing, 1);
                EXPECT_EQ(kb.left, kl.left);
                EXPECT_GE(kb.left.log_order(), degeneracy_floor(inp));
                EXPECT_GE(kb.right.log_order(), degeneracy_floor(inp));
            }
        }
}

TEST(Degeneracy, ToyRejectsWrongRing) {
    EXPECT_THROW(twist_toy(RingSpec(3, 2, 8), {1, 0, 1}, 0), DomainError);
    EXPECT_THROW(twist_toy(RingSpec(2, 1, 8), {1, 0, 1}, 0), DomainError);
}
