#include "dh/heights.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace dh;

namespace {

PolePairing single_level_block(const RingSpec& s, int n) { return block_pairing(s, n, {{Block::level(n), 1, false}}); }

Vec t_pow(size_t dim, size_t e) { return unit_vec(dim, e); }

// Test pairings: level blocks, jets of both parities, swaps, mixed coefficients.
std::vector<PolePairing> test_pairings() {
    RingSpec f3(3, 1, 12), z9(3, 2, 12), f5(5, 1, 12);
    std::vector<PolePairing> out;
    out.push_back(single_level_block(f3, 1));
    out.push_back(block_pairing(f3, 1, {{Block::jet(1), 2, false}, {Block::jet(3), 1, false}}));
    out.push_back(block_pairing(f3, 1, {{Block::jet(2), 1, false}}));
    out.push_back(block_pairing(f3, 1, {{Block::jet(2), 1, true}}));
    out.push_back(block_pairing(f3, 1, {{Block::jet(1), 1, true}, {Block::level(1), 2, true}}));
    out.push_back(block_pairing(f3, 1, {{Block::level(1), 1, false}, {Block::jet(2), 1, true}, {Block::jet(1), 2, false}}));
    out.push_back(block_pairing(f3, 2, {{Block::jet(4), 1, false}, {Block::jet(2), 2, false}}));
    out.push_back(block_pairing(z9, 1, {{Block::level(1), 4, false}}));
    out.push_back(block_pairing(z9, 1, {{Block::jet(1), 1, true}, {Block::level(0), 2, false}}));
    out.push_back(block_pairing(f5, 1, {{Block::jet(3), 1, false}, {Block::jet(2), 3, true}}));
    return out;
}

} // namespace

TEST(BlockPairing, Examples) {
    RingSpec s(3, 1, 8);
    PolePairing p = single_level_block(s, 1);
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(p.symmetry(), Symmetry::IotaAntisymmetric);
    PoleElem one = p(t_pow(3, 0), t_pow(3, 0));
    EXPECT_FALSE(one.is_zero());
    EXPECT_EQ(one, PoleElem(GroupRingElem::one(s, 1)));
    // T * iota(T^2) is divisible by gamma^3 - 1 = T^3
    EXPECT_TRUE(p(t_pow(3, 1), t_pow(3, 2)).is_zero());
    EXPECT_TRUE(p(t_pow(3, 2), t_pow(3, 2)).is_zero());
}

TEST(BlockPairing, SemilinearBruteForce) {
    std::mt19937_64 rng(3);
    for (const auto& p : test_pairings()) {
        EXPECT_NO_THROW(p.validate());
        const FiniteModule& m = p.left();
        const RingSpec& s = m.spec();
        for (int it = 0; it < 20; ++it) {
            Vec x = dh::testing::random_coeffs(rng, s, m.dim());
            Vec y = dh::testing::random_coeffs(rng, s, m.dim());
            GroupRingElem lam = dh::testing::random_group_elem(rng, s, m.level());
            PoleElem base = p(x, y);
            EXPECT_EQ(p(m.act(lam, x), y), base.act(lam));
            EXPECT_EQ(p(x, m.act(lam.involution(), y)), base.act(lam));
        }
    }
}

TEST(BlockPairing, DeclaredSymmetryTypes) {
    RingSpec f3(3, 1, 8);
    EXPECT_EQ(block_pairing(f3, 1, {{Block::jet(2), 1, false}}).symmetry(), Symmetry::IotaSymmetric);
    EXPECT_EQ(block_pairing(f3, 1, {{Block::level(1), 1, true}}).symmetry(), Symmetry::IotaSymmetric);
    EXPECT_EQ(block_pairing(f3, 1, {{Block::jet(2), 1, true}}).symmetry(), Symmetry::IotaAntisymmetric);
    EXPECT_EQ(block_pairing(f3, 1, {{Block::jet(2), 1, false}, {Block::jet(1), 1, false}}).symmetry(), Symmetry::None);
    EXPECT_THROW(block_pairing(f3, 1, {{Block::jet(1), 0, false}}), DomainError);
    // tampered symmetry label is caught
    PolePairing p = block_pairing(f3, 1, {{Block::jet(2), 1, false}});
    std::vector<std::vector<PoleElem>> t(2, std::vector<PoleElem>(2));
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            t[i][j] = p.table(i, j);
    EXPECT_THROW(PolePairing(p.left(), p.right(), t, Symmetry::IotaAntisymmetric).validate(), ValidationError);
    t[0][0] = t[0][0] + PoleElem(GroupRingElem::one(f3, 1));
    EXPECT_THROW(PolePairing(p.left(), p.right(), t, Symmetry::None).validate(), ValidationError);
}

TEST(Height, GeneratorIndependence) {
    for (const auto& p : test_pairings()) {
        const FiniteModule& m = p.left();
        const RingSpec& s = m.spec();
        for (size_t i = 0; i < m.dim(); ++i)
            for (size_t j = 0; j < m.dim(); ++j) {
                Vec x = unit_vec(m.dim(), i), y = unit_vec(m.dim(), j);
                JGradedValue h1 = height(p, x, y, 1);
                EXPECT_EQ(h1.degree, 1);
                for (Coeff u : {2, 4, 5, 7})
                    if (s.is_unit(u)) {
                        EXPECT_EQ(height(p, x, y, u), h1);
                        // pre-height scales by u^{-1}
                        EXPECT_EQ(s.mul(pre_height(p, x, y, u), u), pre_height(p, x, y, 1));
                    }
            }
    }
}

TEST(Height, Examples) {
    RingSpec s(3, 1, 8);
    PolePairing p = single_level_block(s, 1);
    EXPECT_EQ(height(p, t_pow(3, 2), t_pow(3, 0), 1), height(p, t_pow(3, 2), t_pow(3, 0), 2));
    EXPECT_EQ(height(p, zero_vec(3), t_pow(3, 1)).coeff, 0);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        Vec x = dh::testing::random_coeffs(rng, s, 3), y = dh::testing::random_coeffs(rng, s, 3);
        EXPECT_EQ(height(p, x, y), height(p, y, x)); // antisymmetric pairing gives symmetric h
    }
    PolePairing q = block_pairing(s, 1, {{Block::level(1), 1, true}});
    for (int it = 0; it < 50; ++it) {
        Vec x = dh::testing::random_coeffs(rng, s, 6), y = dh::testing::random_coeffs(rng, s, 6);
        EXPECT_EQ(height(q, x, y).coeff, s.neg(height(q, y, x).coeff));
    }
}

TEST(Height, GlobalKernelIsUniversalNorms) {
    for (const auto& p : test_pairings()) {
        KernelPair k = height_kernels(p);
        EXPECT_EQ(k.left, universal_norms(p.left()));
        EXPECT_EQ(k.right, universal_norms(p.right()));
    }
}

TEST(DerivedHeight, WitnessInstance) {
    RingSpec s(3, 1, 8);
    PolePairing p = single_level_block(s, 1);
    Vec t2 = t_pow(3, 2);
    // h^(1) vanishes on span{T^2}
    EXPECT_EQ(derived_height(p, 1, t2, t2).coeff, 0);
    JGradedValue h3 = derived_height(p, 3, t2, t2);
    EXPECT_EQ(h3.degree, 3);
    EXPECT_TRUE(s.is_unit(h3.coeff));
    EXPECT_EQ(derived_height(p, 3, t2, t2, 2), h3);
    // r = 1 is the restriction of h
    EXPECT_EQ(derived_height(p, 1, t2, t2).coeff, height(p, t2, t2).coeff);
    EXPECT_THROW(derived_height(p, 2, t_pow(3, 1), t2), DomainError);
    std::vector<int> dims;
    for (int r = 1; r <= 4; ++r) {
        KernelPair k = derived_kernels(p, r);
        EXPECT_EQ(k.left, derived_submodule(p.left(), r + 1));
        dims.push_back(p.left().log_order(derived_submodule(p.left(), r)));
    }
    EXPECT_EQ(dims, (std::vector<int>{1, 1, 1, 0}));
}

TEST(DerivedHeight, KernelChainAndIndependence) {
    for (const auto& p : test_pairings()) {
        for (int r = 1; r <= 5; ++r) {
            KernelPair k = derived_kernels(p, r);
            EXPECT_EQ(k.left, derived_submodule(p.left(), r + 1)) << r;
            EXPECT_EQ(k.right, derived_submodule(p.right(), r + 1)) << r;
            KernelPair b = derived_kernels_bruteforce(p, r, kDefaultEnumerationCap);
            EXPECT_EQ(b.left, k.left);
            EXPECT_EQ(b.right, k.right);
            Matrix g = p.left().generators(derived_submodule(p.left(), r));
            for (const auto& x : g)
                for (const auto& y : g)
                    EXPECT_EQ(derived_height(p, r, x, y, 1), derived_height(p, r, x, y, 2));
        }
    }
}

TEST(DerivedHeight, SignLaw) {
    for (const auto& p : test_pairings())
        for (int r = 1; r <= 5; ++r) {
            auto ok = sign_law_holds(p, r);
            if (p.symmetry() == Symmetry::None)
                EXPECT_FALSE(ok.has_value());
            else
                EXPECT_TRUE(ok.value_or(false)) << to_string(p.symmetry()) << " r=" << r;
        }
}

TEST(DerivedHeight, ParityOnAntisymmetric) {
    for (const auto& p : test_pairings()) {
        if (p.symmetry() != Symmetry::IotaAntisymmetric || p.spec().k != 1)
            continue;
        for (int r = 2; r <= 8; r += 2) {
            int d = p.left().log_order(derived_submodule(p.left(), r)) -
                    p.left().log_order(derived_submodule(p.left(), r + 1));
            EXPECT_EQ(d % 2, 0) << r;
        }
    }
}

TEST(RestrictedKernels, Examples) {
    RingSpec s(3, 1, 8);
    PolePairing p = single_level_block(s, 1);
    GroupRingElem t = generator_power(s, 1, 1, 1);
    auto rep = restricted_kernel_check(p, t, t, kDefaultEnumerationCap);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.left_kernel, p.left().o_span({t_pow(3, 2)}));
    auto unit = restricted_kernel_check(p, GroupRingElem::one(s, 1), t, kDefaultEnumerationCap);
    EXPECT_TRUE(unit.ok());
    EXPECT_EQ(unit.left_kernel, p.left().zero());
    GroupRingElem g3 = GroupRingElem::group_element(s, 1, 3) - GroupRingElem::one(s, 1);
    EXPECT_TRUE(restricted_kernel_check(p, g3, g3, kDefaultEnumerationCap).ok());
}

TEST(RestrictedKernels, Random) {
    std::mt19937_64 rng(11);
    for (const auto& p : test_pairings()) {
        if (ipow(p.spec().p, p.left().log_order(p.left().whole())) > static_cast<Coeff>(kDefaultEnumerationCap))
            continue;
        for (int it = 0; it < 6; ++it) {
            GroupRingElem a = dh::testing::random_group_elem(rng, p.spec(), p.left().level());
            GroupRingElem b = it % 2 ? generator_power(p.spec(), p.left().level(), 1, it)
                                     : dh::testing::random_group_elem(rng, p.spec(), p.left().level());
            EXPECT_TRUE(restricted_kernel_check(p, a, b, kDefaultEnumerationCap).ok());
        }
    }
}

TEST(Twist, Examples) {
    RingSpec s(3, 1, 8);
    PolePairing p = single_level_block(s, 1);
    Matrix id = identity_matrix(3);
    EXPECT_TRUE(twist_equivariance_check(p, id, id, 1));
    Matrix iota = involution_matrix(p.left());
    Matrix neg_iota = iota;
    for (auto& row : neg_iota)
        row = vec_scale(s, row, s.neg(1));
    EXPECT_TRUE(twist_equivariance_check(p, iota, neg_iota, -1));
    EXPECT_FALSE(twist_equivariance_check(p, iota, iota, -1));
    // swap pair with tau exchanging the copies: the anticyclotomic toy
    PolePairing q = block_pairing(s, 1, {{Block::level(1), 1, true}});
    Matrix tau(6, Vec(6, 0));
    Matrix i6 = involution_matrix(q.left());
    for (size_t a = 0; a < 3; ++a) {
        tau[a] = Vec(6, 0);
        tau[a + 3] = Vec(6, 0);
        for (size_t b = 0; b < 3; ++b) {
            tau[a][b + 3] = i6[a][b];
            tau[a + 3][b] = i6[a + 3][b + 3];
        }
    }
    EXPECT_TRUE(twist_equivariance_check(q, tau, tau, -1));
    // not intertwining gamma with gamma^omega
    EXPECT_THROW(twist_equivariance_check(p, iota, iota, 1), DomainError);
    Matrix singular(3, Vec(3, 0));
    EXPECT_THROW(twist_equivariance_check(p, singular, singular, 1), DomainError);
}

TEST(Twist, RandomNonEquivariantIsRejected) {
    RingSpec s(3, 1, 8);
    PolePairing p = single_level_block(s, 1);
    // multiplication by a random unit of Lambda_1 commutes with gamma but scales h
    std::mt19937_64 rng(2);
    int rejected = 0;
    for (int it = 0; it < 20; ++it) {
        GroupRingElem lam = dh::testing::random_group_elem(rng, s, 1);
        if (lam.augmentation() == 0)
            continue;
        Matrix sig = p.left().action_matrix(lam);
        bool eq = twist_equivariance_check(p, sig, identity_matrix(3), 1);
        // equivariant iff h(lam x, y) = h(x, y) for all x, y, i.e. lam = 1
        EXPECT_EQ(eq, lam == GroupRingElem::one(s, 1));
        rejected += eq ? 0 : 1;
    }
    EXPECT_GT(rejected, 0);
}
