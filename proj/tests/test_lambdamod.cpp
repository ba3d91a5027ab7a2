#include "dh/lambdamod.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace dh;

namespace {

FiniteModule lambda1_f3() { return FiniteModule::blocks(RingSpec(3, 1, 8), 1, {Block::level(1)}); }

// Small presented modules over Lambda_N used throughout.
std::vector<FiniteModule> test_modules() {
    std::vector<FiniteModule> out;
    RingSpec f3(3, 1, 12), z9(3, 2, 12);
    out.push_back(lambda1_f3());
    out.push_back(FiniteModule::blocks(f3, 1, {Block::jet(1)}));
    out.push_back(FiniteModule::blocks(f3, 1, {Block::jet(2), Block::jet(1)}));
    out.push_back(FiniteModule::blocks(f3, 1, {Block::level(1), Block::jet(2)}));
    out.push_back(FiniteModule::blocks(z9, 1, {Block::jet(1)}));
    out.push_back(FiniteModule::blocks(z9, 0, {Block::level(0), Block::level(0)}));
    out.push_back(FiniteModule::blocks(f3, 1, {}));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 4; ++i) {
        int gens = 1 + i % 2;
        std::vector<std::vector<GroupRingElem>> rels;
        for (int j = 0; j < gens; ++j) {
            std::vector<GroupRingElem> row;
            for (int g = 0; g < gens; ++g)
                row.push_back(dh::testing::random_group_elem(rng, f3, 1));
            rels.push_back(row);
        }
        out.push_back(FiniteModule::presented(f3, 1, gens, rels));
    }
    return out;
}

std::vector<Vec> elems(const FiniteModule& m, const HowellBasis& sub) { return m.enumerate(sub, kDefaultEnumerationCap); }

} // namespace

TEST(Torsion, Examples) {
    FiniteModule m = lambda1_f3();
    const RingSpec& s = m.spec();
    auto t = IwasawaPoly::monomial(s, 1);
    EXPECT_EQ(torsion(m, project_to_level(t, 1)), m.o_span({{0, 0, 1}}));
    EXPECT_EQ(torsion(m, GroupRingElem::one(s, 1)), m.zero());
    EXPECT_EQ(torsion(m, project_to_level(level_modulus(s, 1), 1)), m.whole());
}

TEST(Filtration, TruncatedPolynomialExample) {
    FiniteModule m = lambda1_f3();
    FiltrationReport rep = j_filtration(m, 5);
    HowellBasis top = m.o_span({{0, 0, 1}});
    ASSERT_EQ(rep.levels.size(), 5u);
    for (int r = 1; r <= 3; ++r)
        EXPECT_EQ(rep.levels[static_cast<size_t>(r - 1)].derived, top) << r;
    EXPECT_EQ(rep.levels[3].derived, m.zero());
    std::vector<int> deltas;
    for (const auto& lv : rep.levels)
        deltas.push_back(lv.delta_log_order);
    EXPECT_EQ(deltas, (std::vector<int>{1, 1, 1, 0, 0}));
    EXPECT_TRUE(rep.generator_independent);
    EXPECT_TRUE(rep.nested);
    EXPECT_EQ(rep.universal_norms, m.zero());
}

TEST(Filtration, TrivialExamples) {
    for (int k = 1; k <= 2; ++k) {
        FiniteModule m = FiniteModule::blocks(RingSpec(3, k, 8), 1, {Block::jet(1)});
        FiltrationReport rep = j_filtration(m, 3);
        EXPECT_EQ(rep.levels[0].derived, m.whole());
        EXPECT_EQ(rep.levels[1].derived, m.zero());
        EXPECT_EQ(rep.universal_norms, m.zero());
    }
    FiniteModule z = FiniteModule::blocks(RingSpec(3, 1, 8), 1, {});
    FiltrationReport rep = j_filtration(z, 3);
    for (const auto& lv : rep.levels) {
        EXPECT_EQ(lv.delta_log_order, 0);
        EXPECT_EQ(z.log_order(lv.derived), 0);
    }
}

// Brute-force oracle for M^(r): apply (gamma^u - 1)^{r-1} to every element of M killed by (gamma - 1)^r.
TEST(Filtration, BruteForceAndProperties) {
    for (const auto& m : test_modules()) {
        const RingSpec& s = m.spec();
        auto all = elems(m, m.whole());
        FiltrationReport rep = j_filtration(m, 6);
        EXPECT_TRUE(rep.generator_independent);
        EXPECT_TRUE(rep.nested);
        int total = 0;
        for (const auto& lv : rep.levels) {
            Matrix tr = m.action_matrix(generator_power(s, m.level(), 1, lv.r));
            Matrix tr1 = m.action_matrix(generator_power(s, m.level(), 1, lv.r - 1));
            Matrix killed, img;
            for (const auto& v : all)
                if (m.is_zero(apply(s, v, tr, m.dim()))) {
                    killed.push_back(v);
                    img.push_back(apply(s, v, tr1, m.dim()));
                }
            EXPECT_EQ(lv.j_torsion, m.o_span(killed));
            EXPECT_EQ(lv.derived, m.o_span(img));
            total += lv.delta_log_order;
        }
        EXPECT_EQ(total, m.log_order(rep.levels.back().j_torsion));
    }
}

TEST(UniversalNorms, AgreesWithBruteForce) {
    for (const auto& m : test_modules()) {
        HowellBasis un = universal_norms(m);
        EXPECT_EQ(un, universal_norms_bruteforce(m, 3, kDefaultEnumerationCap));
        EXPECT_EQ(un, m.zero());
    }
}

TEST(UniversalNorms, IntersectionOfDerivedPieces) {
    for (const auto& m : test_modules()) {
        int r_max = static_cast<int>(m.spec().k * group_order(m.spec(), m.level())) + 1;
        FiltrationReport rep = j_filtration(m, r_max);
        HowellBasis inter = m.whole();
        for (const auto& lv : rep.levels)
            inter = inter.intersect(lv.derived);
        EXPECT_EQ(inter, rep.universal_norms.intersect(rep.levels[0].j_torsion));
    }
}

TEST(UniversalNorms, NormElements) {
    RingSpec s(3, 2, 8);
    EXPECT_EQ(norm_element_at(s, 1, 0), GroupRingElem::one(s, 1));
    EXPECT_EQ(norm_element_at(s, 1, 1), project_to_level(norm_element(s.with_cap(8), 1), 1));
    EXPECT_EQ(norm_element_at(s, 1, 2), GroupRingElem(s, 1, {3, 3, 3}));
    EXPECT_TRUE(norm_element_at(s, 1, 3).is_zero());
}

TEST(Shape, DimsExamples) {
    ElementaryShape a{1, {{1, 1}, {2, 2}}, {}};
    EXPECT_EQ(shape_dims(a, 5), (std::vector<int>{4, 3, 1, 1, 1}));
    EXPECT_EQ(shape_dims(ElementaryShape{2, {}, {}}, 3), (std::vector<int>{2, 2, 2}));
    EXPECT_EQ(shape_dims(ElementaryShape{}, 3), (std::vector<int>{0, 0, 0}));
    RingSpec s(3, 1, 4);
    ElementaryShape c{0, {{1, 1}}, {IwasawaPoly(s, {1, 1})}};
    EXPECT_EQ(shape_dims(c, 2), (std::vector<int>{1, 0}));
    EXPECT_THROW(shape_dims(ElementaryShape{0, {}, {IwasawaPoly(s, {0, 1})}}, 2), DomainError);
    EXPECT_THROW(shape_dims(ElementaryShape{-1, {}, {}}, 2), DomainError);
}

TEST(Shape, InferExamples) {
    EXPECT_EQ(infer_invariants({4, 3, 1, 1}), (Invariants{{1, 2, 0}, 1}));
    EXPECT_EQ(infer_invariants({2, 2, 2}), (Invariants{{0, 0}, 2}));
    EXPECT_EQ(infer_invariants({1, 0, 0}), (Invariants{{1, 0}, 0}));
    EXPECT_THROW(infer_invariants({1, 2, 2}), DomainError);
    EXPECT_THROW(infer_invariants({3, 2}), DomainError);
    EXPECT_THROW(infer_invariants({3}), DomainError);
}

TEST(Shape, RoundTripExhaustive) {
    // every shape with multiplicities <= 3 for i = 1..4 and e_inf <= 3
    int count = 0;
    for (int code = 0; code < 4 * 4 * 4 * 4 * 4; ++code) {
        int c = code;
        ElementaryShape sh;
        sh.e_infinity = c % 4;
        c /= 4;
        for (int i = 1; i <= 4; ++i, c /= 4)
            if (c % 4)
                sh.j_blocks.emplace_back(i, c % 4);
        Invariants inv = infer_invariants(shape_dims(sh, 6));
        ASSERT_EQ(inv.e.size(), 5u);
        EXPECT_EQ(inv.e_infinity, sh.e_infinity);
        for (int i = 1; i <= 5; ++i) {
            int want = 0;
            for (auto [j, e] : sh.j_blocks)
                if (j == i)
                    want = e;
            EXPECT_EQ(inv.e[static_cast<size_t>(i - 1)], want);
        }
        EXPECT_EQ(shape_dims(shape_from_invariants(inv), 6), shape_dims(sh, 6));
        ++count;
    }
    EXPECT_EQ(count, 1024);
}

TEST(Shape, ModuleRealizesDims) {
    // Level 2 over F_3: Lambda_2 = F_3[T]/T^9 behaves as Lambda/J^9 for r <= 9.
    RingSpec s(3, 1, 12);
    std::vector<ElementaryShape> shapes = {
        {1, {{1, 1}, {2, 2}}, {}}, {0, {{3, 1}, {4, 1}}, {}}, {2, {}, {}}, {0, {{1, 3}}, {}}, {1, {{4, 2}}, {}}};
    for (const auto& sh : shapes) {
        FiniteModule m = module_from_shape(s, 2, sh);
        FiltrationReport rep = j_filtration(m, 10);
        auto dims = shape_dims(sh, 9);
        for (int r = 1; r <= 9; ++r) {
            EXPECT_EQ(rep.levels[static_cast<size_t>(r - 1)].delta_log_order, dims[static_cast<size_t>(r - 1)]) << r;
            EXPECT_EQ(m.log_order(rep.levels[static_cast<size_t>(r - 1)].derived), dims[static_cast<size_t>(r - 1)]);
        }
        // truncation: the free part dies at r = p^N + 1
        EXPECT_EQ(rep.levels[9].delta_log_order, 0);
    }
    EXPECT_THROW(module_from_shape(s, 2, ElementaryShape{0, {}, {IwasawaPoly(s, {1, 1})}}), DomainError);
}

TEST(RankEstimate, Examples) {
    auto r = zp_rank_estimate(3, {{2, 243}, {3, 2187}});
    EXPECT_EQ(r.rank, 2);
    EXPECT_TRUE(r.stabilized);
    auto z = zp_rank_estimate(3, {{1, 9}, {2, 9}, {3, 9}});
    EXPECT_EQ(z.rank, 0);
    EXPECT_TRUE(z.stabilized);
    auto u = zp_rank_estimate(3, {{1, 3}, {2, 9}, {3, 81}, {4, 729}});
    EXPECT_EQ(u.rank, 2);
    EXPECT_FALSE(u.stabilized);
    EXPECT_THROW(zp_rank_estimate(3, {{1, 3}, {3, 9}}), DomainError);
    EXPECT_THROW(zp_rank_estimate(3, {{1, 10}, {2, 30}}), DomainError);
    EXPECT_THROW(zp_rank_estimate(3, {{1, 3}}), DomainError);
}

TEST(RankEstimate, FromModules) {
    // |Z/p^k + Z/p^k + Z/p| through actual modules Lambda_0^2 + Lambda/J over Z/p^k.
    std::vector<std::pair<int, std::uint64_t>> orders;
    for (int k = 1; k <= 3; ++k) {
        RingSpec s(3, k, 4);
        FiniteModule m = FiniteModule::presented(s, 0, 3,
                                                 {{GroupRingElem(s, 0, {0}), GroupRingElem(s, 0, {0}),
                                                   GroupRingElem(s, 0, {3})}});
        orders.emplace_back(k, static_cast<std::uint64_t>(ipow(3, m.log_order(m.whole()))));
    }
    auto r = zp_rank_estimate(3, orders);
    EXPECT_EQ(r.rank, 2);
    EXPECT_TRUE(r.stabilized);
}

TEST(UniversalNorms, EnumeratedOracleWithTPowers) {
    for (const auto& m : test_modules())
        EXPECT_EQ(universal_norms_enumerated(m, kDefaultEnumerationCap), universal_norms(m));
    // Z/9 level block: T is not killed by a small power, the stable image still vanishes
    RingSpec s(3, 2, 10);
    FiniteModule m = FiniteModule::blocks(s, 1, {Block::level(1)});
    EXPECT_EQ(universal_norms_enumerated(m, kDefaultEnumerationCap), m.zero());
}
