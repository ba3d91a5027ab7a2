#include "dh/lfun.hpp"

#include <gtest/gtest.h>

using namespace dh;

namespace {

LfunInstance rank_one(const std::vector<Coeff>& l, int cap = 8) {
    SyntheticParams prm;
    prm.level = 1;
    prm.ord = 1;
    LfunInstance inst = build_synthetic(0, prm);
    RingSpec s(3, 1, cap);
    inst.spec = s;
    inst.l_z = {IwasawaPoly(s, l)};
    return inst;
}

} // namespace

TEST(Order, DivisibilityExamples) {
    // T^2 (1 + T)
    EXPECT_EQ(ord_by_divisibility(rank_one({0, 0, 1, 1})).value, 2);
    EXPECT_TRUE(ord_by_divisibility(rank_one({})).infinite());
}

TEST(Der, Examples) {
    LfunInstance inst = rank_one({0, 0, 1, 1});
    auto d2 = der(inst, 2);
    EXPECT_TRUE(d2[0].equals(IwasawaPoly(inst.spec, {1, 1})));
    EXPECT_EQ(d2[0].precision(), inst.spec.cap - 2);
    EXPECT_TRUE(der(inst, 0)[0].strictly_equals(inst.l_z[0]));
    EXPECT_THROW(der(inst, 3), DomainError);
    // gamma^2 - 1 = T (2 + T): der_2 = der_1 / (2 + T)^r
    auto d2u = der(inst, 2, 2);
    IwasawaPoly w(inst.spec, {2, 1});
    EXPECT_TRUE((d2u[0] * w * w).equals(d2[0]));
}

TEST(Builder, Deterministic) {
    SyntheticParams prm;
    prm.level = 2;
    prm.ord = 2;
    prm.blocks = {2, 5};
    LfunInstance a = build_synthetic(17, prm), b = build_synthetic(17, prm), c = build_synthetic(18, prm);
    ASSERT_EQ(a.l_z.size(), b.l_z.size());
    for (size_t i = 0; i < a.l_z.size(); ++i)
        EXPECT_TRUE(a.l_z[i].strictly_equals(b.l_z[i]));
    EXPECT_EQ(a.duality, b.duality);
    EXPECT_EQ(a.z0, b.z0);
    bool differs = false;
    for (size_t i = 0; i < a.l_z.size(); ++i)
        differs = differs || !a.l_z[i].strictly_equals(c.l_z[i]);
    EXPECT_TRUE(differs);
}

TEST(Builder, ParameterErrors) {
    SyntheticParams prm;
    prm.k = 2;
    EXPECT_THROW(build_synthetic(0, prm), DomainError);
    prm.k = 1;
    prm.ord = 3; // p^N = 3
    EXPECT_THROW(build_synthetic(0, prm), DomainError);
    prm.ord = 1;
    prm.blocks = {2};
    EXPECT_THROW(build_synthetic(0, prm), DomainError);
    prm.blocks = {4};
    EXPECT_THROW(build_synthetic(0, prm), DomainError);
}

TEST(Order, DualCharacterizationsAgree) {
    for (int ord = 0; ord <= 3; ++ord)
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            SyntheticParams prm;
            prm.level = 2;
            prm.ord = ord;
            prm.blocks = {std::max(ord, 1), 1 + static_cast<int>(seed % 9)};
            LfunInstance inst = build_synthetic(seed, prm);
            EXPECT_NO_THROW(validate_instance(inst));
            EXPECT_EQ(ord_by_divisibility(inst).value, ord);
            EXPECT_EQ(ord_by_annihilation(inst).value, ord);
        }
}

TEST(MainTheorem, SplitTwo) {
    SyntheticParams prm;
    prm.level = 1;
    prm.ord = 2;
    prm.blocks = {2};
    LfunInstance inst = build_synthetic(0, prm);
    CheckReport rep = main_theorem_check(inst, 4);
    for (const auto& e : rep.entries)
        EXPECT_TRUE(e.pass) << e.label << " " << e.detail;
    const FiniteModule& m = inst.global.left();
    EXPECT_TRUE(derived_submodule(m, 2).contains(inst.z0));
    EXPECT_FALSE(derived_submodule(m, 3).contains(inst.z0));
}

TEST(MainTheorem, OrdZeroNegativeControl) {
    SyntheticParams prm;
    prm.level = 1;
    prm.ord = 0;
    LfunInstance inst = build_synthetic(4, prm);
    EXPECT_FALSE(vec_is_zero(inst.z0_relaxed));
    EXPECT_FALSE(lambda_vanishes(inst, 0));
    CheckReport rep = main_theorem_check(inst, 3);
    EXPECT_TRUE(rep.passed());
}

TEST(MainTheorem, ManySeeds) {
    for (int ord = 0; ord <= 3; ++ord)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            SyntheticParams prm;
            prm.level = 2;
            prm.ord = ord;
            int extra = 1 + static_cast<int>((seed * 7) % 9);
            prm.blocks = seed % 3 == 0 ? std::vector<int>{std::max(ord, 1)}
                                       : std::vector<int>{extra, std::max(ord, 1), 1 + static_cast<int>(seed % 4)};
            LfunInstance inst = build_synthetic(seed, prm);
            CheckReport rep = main_theorem_check(inst, 4);
            for (const auto& e : rep.entries)
                EXPECT_TRUE(e.pass) << "ord=" << ord << " seed=" << seed << " " << e.label << " " << e.detail;
            // Theorem (b) both directions
            for (int r = 0; r <= ord; ++r)
                EXPECT_EQ(lambda_vanishes(inst, r), r < ord);
        }
}

TEST(MainTheorem, TamperedDualityIsInvalid) {
    SyntheticParams prm;
    prm.level = 1;
    prm.ord = 1;
    LfunInstance inst = build_synthetic(2, prm);
    inst.duality[0][1][0] = inst.spec.add(inst.duality[0][1][0], 1);
    EXPECT_THROW(main_theorem_check(inst, 2), ValidationError);
    LfunInstance other = build_synthetic(2, prm);
    other.localization[0][0] = 1; // breaks Lambda-linearity
    EXPECT_THROW(validate_instance(other), ValidationError);
    LfunInstance third = build_synthetic(2, prm);
    third.z0[0] = 1; // not J-torsion in F_3[T]/T
    EXPECT_NO_THROW(validate_instance(third));
}

TEST(MainTheorem, WrongZ0IsCaught) {
    SyntheticParams prm;
    prm.level = 1;
    prm.ord = 2;
    prm.blocks = {2};
    LfunInstance inst = build_synthetic(3, prm);
    inst.z0[1] = inst.spec.add(inst.z0[1], 1);
    CheckReport rep = main_theorem_check(inst, 3);
    EXPECT_FALSE(rep.passed());
}

TEST(Lambda, Examples) {
    SyntheticParams prm;
    prm.level = 1;
    prm.ord = 1;
    LfunInstance inst = build_synthetic(0, prm);
    EXPECT_EQ(lambda_special(inst, 1, zero_vec(inst.d_loc.dim())).coeff, 0);
    EXPECT_TRUE(lambda_vanishes(inst, 0));
    EXPECT_FALSE(lambda_vanishes(inst, 1));
    EXPECT_THROW(lambda_special(inst, 1, unit_vec(inst.d_loc.dim(), 0)), DomainError);
}
