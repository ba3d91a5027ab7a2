#include "dh/linalg.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace dh;

namespace {

// Oracle: closure of a generating set under addition.
std::set<Vec> closure(const RingSpec& s, size_t dim, const Matrix& gens) {
    std::set<Vec> seen{zero_vec(dim)};
    std::vector<Vec> frontier{zero_vec(dim)};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& v : frontier)
            for (const auto& g : gens) {
                Vec w = vec_add(s, v, g);
                if (seen.insert(w).second)
                    next.push_back(w);
            }
        frontier = std::move(next);
    }
    return seen;
}

std::vector<Vec> all_vectors(const RingSpec& s, size_t n) {
    std::vector<Vec> out;
    Vec v(n, 0);
    for (;;) {
        out.push_back(v);
        size_t i = 0;
        for (; i < n; ++i) {
            if (++v[i] < s.modulus())
                break;
            v[i] = 0;
        }
        if (i == n)
            return out;
    }
}

Matrix random_matrix(std::mt19937_64& rng, const RingSpec& s, size_t r, size_t c, bool sparse_p) {
    Matrix m(r);
    for (auto& row : m) {
        row = dh::testing::random_coeffs(rng, s, c);
        if (sparse_p)
            for (auto& x : row)
                if (rng() % 2)
                    x = s.mul(x, s.p);
    }
    return m;
}

Coeff leibniz(const RingSpec& s, const Matrix& a) {
    size_t n = a.size();
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Coeff total = 0;
    do {
        int inv = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                inv += perm[i] > perm[j];
        Coeff term = 1;
        for (size_t i = 0; i < n; ++i)
            term = s.mul(term, a[i][perm[i]]);
        total = inv % 2 ? s.sub(total, term) : s.add(total, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

} // namespace

TEST(Howell, SpanMatchesClosure) {
    std::mt19937_64 rng(1);
    for (int k = 1; k <= 3; ++k) {
        RingSpec s(3, k, 4);
        for (int it = 0; it < 60; ++it) {
            size_t dim = 1 + rng() % 3, ng = rng() % 4;
            Matrix g = random_matrix(rng, s, ng, dim, true);
            HowellBasis h = HowellBasis::span(s, dim, g);
            auto oracle = closure(s, dim, g);
            auto elems = h.enumerate(100000);
            std::set<Vec> es(elems.begin(), elems.end());
            ASSERT_EQ(es.size(), elems.size()) << "duplicate in enumeration";
            ASSERT_EQ(es, oracle);
            EXPECT_EQ(static_cast<double>(oracle.size()), std::pow(3.0, h.log_order()));
            for (const auto& v : all_vectors(s, dim)) {
                EXPECT_EQ(h.contains(v), oracle.count(v) == 1);
                // reduce is a canonical coset representative
                Vec r = h.reduce(v);
                EXPECT_EQ(h.reduce(vec_add(s, v, *std::next(oracle.begin(), static_cast<long>(rng() % oracle.size())))), r);
            }
        }
    }
}

TEST(Howell, KernelImageSolve) {
    std::mt19937_64 rng(2);
    for (int k = 1; k <= 2; ++k) {
        RingSpec s(3, k, 4);
        for (int it = 0; it < 40; ++it) {
            size_t n = 1 + rng() % 3, m = 1 + rng() % 3;
            Matrix f = random_matrix(rng, s, n, m, true);
            HowellBasis rel = HowellBasis::span(s, m, random_matrix(rng, s, rng() % 2, m, true));
            HowellBasis ker = kernel(s, f, m, rel);
            std::set<Vec> img_oracle;
            for (const auto& x : all_vectors(s, n)) {
                Vec y = apply(s, x, f, m);
                EXPECT_EQ(ker.contains(x), rel.contains(y));
                img_oracle.insert(rel.reduce(y));
            }
            HowellBasis img = image(s, HowellBasis::full(s, n), f, m).sum(rel);
            for (const auto& t : all_vectors(s, m)) {
                bool reachable = img_oracle.count(rel.reduce(t)) == 1;
                EXPECT_EQ(img.contains(t), reachable);
                auto x = solve(s, f, m, t, rel);
                EXPECT_EQ(x.has_value(), reachable);
                if (x) {
                    EXPECT_TRUE(rel.contains(vec_sub(s, apply(s, *x, f, m), t)));
                }
            }
        }
    }
}

TEST(Howell, Intersection) {
    std::mt19937_64 rng(3);
    RingSpec s(3, 2, 4);
    for (int it = 0; it < 40; ++it) {
        size_t dim = 1 + rng() % 3;
        Matrix ga = random_matrix(rng, s, rng() % 3, dim, true);
        Matrix gb = random_matrix(rng, s, rng() % 3, dim, true);
        HowellBasis a = HowellBasis::span(s, dim, ga), b = HowellBasis::span(s, dim, gb);
        HowellBasis c = a.intersect(b);
        for (const auto& v : all_vectors(s, dim))
            EXPECT_EQ(c.contains(v), a.contains(v) && b.contains(v));
        EXPECT_TRUE(c.is_subset_of(a));
        EXPECT_TRUE(c.is_subset_of(b));
        EXPECT_EQ(a.sum(b), b.sum(a));
    }
}

TEST(Howell, ZeroModuleAndCap) {
    RingSpec s(3, 1, 4);
    HowellBasis z(s, 3);
    EXPECT_EQ(z.log_order(), 0);
    EXPECT_EQ(z.enumerate(1).size(), 1u);
    EXPECT_THROW(HowellBasis::full(s, 5).enumerate(100), CapError);
}

TEST(Determinant, MatchesLeibniz) {
    std::mt19937_64 rng(4);
    for (int k = 1; k <= 3; ++k) {
        RingSpec s(3, k, 4);
        for (int it = 0; it < 100; ++it) {
            size_t n = 1 + rng() % 4;
            Matrix a = random_matrix(rng, s, n, n, rng() % 2);
            EXPECT_EQ(determinant(s, a), leibniz(s, a));
        }
    }
}
