#include "dh/linalg.hpp"

#include <algorithm>

namespace dh {

Vec zero_vec(size_t n) { return Vec(n, 0); }

Vec unit_vec(size_t n, size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

Vec vec_add(const RingSpec& s, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = s.add(a[i], b[i]);
    return r;
}

Vec vec_sub(const RingSpec& s, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = s.sub(a[i], b[i]);
    return r;
}

Vec vec_scale(const RingSpec& s, const Vec& a, Coeff c) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = s.mul(a[i], c);
    return r;
}

bool vec_is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](Coeff c) { return c == 0; });
}

// row -= f * other, in place
static void axpy(const RingSpec& s, Vec& row, Coeff f, const Vec& other) {
    if (f == 0)
        return;
    for (size_t i = 0; i < row.size(); ++i)
        if (other[i] != 0)
            row[i] = s.sub(row[i], s.mul(f, other[i]));
}

HowellBasis::HowellBasis(RingSpec spec, size_t dim) : spec_(spec), dim_(dim) {}

HowellBasis HowellBasis::full(RingSpec spec, size_t dim) {
    Matrix id = identity_matrix(dim);
    return span(spec, dim, id);
}

HowellBasis HowellBasis::span(RingSpec spec, size_t dim, const Matrix& gens) {
    HowellBasis h(spec, dim);
    const int k = spec.k;
    Matrix pool;
    for (const auto& g : gens) {
        if (g.size() != dim)
            throw DomainError("HowellBasis: generator has wrong length");
        Vec r(dim);
        for (size_t i = 0; i < dim; ++i)
            r[i] = spec.reduce(g[i]);
        if (!vec_is_zero(r))
            pool.push_back(std::move(r));
    }
    for (size_t c = 0; c < dim && !pool.empty(); ++c) {
        size_t best = pool.size();
        int best_v = k;
        for (size_t i = 0; i < pool.size(); ++i) {
            int v = spec.valuation(pool[i][c]);
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        if (best == pool.size())
            continue;
        Vec row = std::move(pool[best]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        Coeff pv = spec.prime_power(best_v);
        Coeff unit = row[c] / pv;
        row = vec_scale(spec, row, spec.inverse(unit));
        for (auto& other : pool)
            axpy(spec, other, other[c] / pv, row);
        Vec ann = vec_scale(spec, row, spec.prime_power(k - best_v));
        if (!vec_is_zero(ann))
            pool.push_back(std::move(ann));
        std::erase_if(pool, [](const Vec& v) { return vec_is_zero(v); });
        h.rows_.push_back(std::move(row));
        h.piv_.push_back(c);
        h.val_.push_back(best_v);
    }
    for (size_t i = 0; i < h.rows_.size(); ++i) {
        Coeff pv = spec.prime_power(h.val_[i]);
        for (size_t j = 0; j < i; ++j)
            axpy(spec, h.rows_[j], h.rows_[j][h.piv_[i]] / pv, h.rows_[i]);
    }
    return h;
}

Vec HowellBasis::reduce(Vec v) const {
    if (v.size() != dim_)
        throw DomainError("HowellBasis::reduce: wrong vector length");
    for (auto& c : v)
        c = spec_.reduce(c);
    for (size_t i = 0; i < rows_.size(); ++i)
        axpy(spec_, v, v[piv_[i]] / spec_.prime_power(val_[i]), rows_[i]);
    return v;
}

bool HowellBasis::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

int HowellBasis::log_order() const {
    int s = 0;
    for (int v : val_)
        s += spec_.k - v;
    return s;
}

HowellBasis HowellBasis::sum(const HowellBasis& o) const {
    Matrix g = rows_;
    g.insert(g.end(), o.rows_.begin(), o.rows_.end());
    return span(spec_, dim_, g);
}

HowellBasis HowellBasis::intersect(const HowellBasis& o) const {
    size_t d = dim_;
    Matrix g;
    for (const auto& a : rows_) {
        Vec r(2 * d);
        std::copy(a.begin(), a.end(), r.begin());
        std::copy(a.begin(), a.end(), r.begin() + static_cast<std::ptrdiff_t>(d));
        g.push_back(std::move(r));
    }
    for (const auto& b : o.rows_) {
        Vec r(2 * d, 0);
        std::copy(b.begin(), b.end(), r.begin());
        g.push_back(std::move(r));
    }
    HowellBasis h = span(spec_, 2 * d, g);
    Matrix out;
    for (size_t i = 0; i < h.rows_.size(); ++i)
        if (h.piv_[i] >= d)
            out.emplace_back(h.rows_[i].begin() + static_cast<std::ptrdiff_t>(d), h.rows_[i].end());
    return span(spec_, d, out);
}

bool HowellBasis::is_subset_of(const HowellBasis& o) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const Vec& r) { return o.contains(r); });
}

std::vector<Vec> HowellBasis::enumerate(size_t max_size) const {
    int lo = log_order();
    double approx = 1;
    for (int i = 0; i < lo; ++i)
        approx *= static_cast<double>(spec_.p);
    if (approx > static_cast<double>(max_size))
        throw CapError("enumeration of " + std::to_string(spec_.p) + "^" + std::to_string(lo) +
                       " elements exceeds cap " + std::to_string(max_size));
    std::vector<Coeff> radix(rows_.size());
    for (size_t i = 0; i < rows_.size(); ++i)
        radix[i] = spec_.prime_power(spec_.k - val_[i]);
    std::vector<Coeff> digit(rows_.size(), 0);
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(approx));
    Vec cur = zero_vec(dim_);
    for (;;) {
        out.push_back(cur);
        size_t i = 0;
        for (; i < rows_.size(); ++i) {
            if (++digit[i] < radix[i]) {
                cur = vec_add(spec_, cur, rows_[i]);
                break;
            }
            // wrap digit i back to zero
            cur = vec_sub(spec_, cur, vec_scale(spec_, rows_[i], radix[i] - 1));
            digit[i] = 0;
        }
        if (i == rows_.size())
            break;
    }
    return out;
}

Vec apply(const RingSpec& s, const Vec& x, const Matrix& f, size_t m) {
    Vec r(m, 0);
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0)
            for (size_t j = 0; j < m; ++j)
                r[j] = s.add(r[j], s.mul(x[i], f[i][j]));
    return r;
}

Matrix mat_mul(const RingSpec& s, const Matrix& a, const Matrix& b, size_t m) {
    Matrix r;
    r.reserve(a.size());
    for (const auto& row : a)
        r.push_back(apply(s, row, b, m));
    return r;
}

Matrix identity_matrix(size_t n) {
    Matrix r(n, Vec(n, 0));
    for (size_t i = 0; i < n; ++i)
        r[i][i] = 1;
    return r;
}

// Howell form of rows [F_i | e_i] together with [rel | 0].
static HowellBasis stacked(const RingSpec& s, const Matrix& f, size_t m, const HowellBasis& rel) {
    size_t n = f.size();
    Matrix g;
    for (size_t i = 0; i < n; ++i) {
        Vec r(m + n, 0);
        std::copy(f[i].begin(), f[i].end(), r.begin());
        r[m + i] = 1;
        g.push_back(std::move(r));
    }
    for (const auto& b : rel.rows()) {
        Vec r(m + n, 0);
        std::copy(b.begin(), b.end(), r.begin());
        g.push_back(std::move(r));
    }
    return HowellBasis::span(s, m + n, g);
}

HowellBasis kernel(const RingSpec& s, const Matrix& f, size_t m, const HowellBasis& rel) {
    size_t n = f.size();
    HowellBasis h = stacked(s, f, m, rel);
    Matrix out;
    for (size_t i = 0; i < h.rows().size(); ++i)
        if (h.pivot_column(i) >= m)
            out.emplace_back(h.rows()[i].begin() + static_cast<std::ptrdiff_t>(m), h.rows()[i].end());
    return HowellBasis::span(s, n, out);
}

HowellBasis image(const RingSpec& s, const HowellBasis& src, const Matrix& f, size_t m) {
    return HowellBasis::span(s, m, mat_mul(s, src.rows(), f, m));
}

std::optional<Vec> solve(const RingSpec& s, const Matrix& f, size_t m, const Vec& target, const HowellBasis& rel) {
    size_t n = f.size();
    HowellBasis h = stacked(s, f, m, rel);
    Vec w(m + n, 0);
    for (size_t j = 0; j < m; ++j)
        w[j] = s.reduce(target[j]);
    for (size_t i = 0; i < h.rows().size() && h.pivot_column(i) < m; ++i) {
        Coeff pv = s.prime_power(h.pivot_valuation(i));
        Coeff e = w[h.pivot_column(i)];
        if (e % pv != 0)
            return std::nullopt;
        axpy(s, w, e / pv, h.rows()[i]);
    }
    for (size_t j = 0; j < m; ++j)
        if (w[j] != 0)
            return std::nullopt;
    Vec x(n);
    for (size_t i = 0; i < n; ++i)
        x[i] = s.neg(w[m + i]);
    return x;
}

Coeff determinant(const RingSpec& s, Matrix a) {
    size_t n = a.size();
    Coeff det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t best = n;
        int best_v = s.k;
        for (size_t i = c; i < n; ++i) {
            int v = s.valuation(a[i][c]);
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        if (best == n)
            return 0;
        if (best != c) {
            std::swap(a[best], a[c]);
            det = s.neg(det);
        }
        Coeff pv = s.prime_power(best_v);
        Coeff uinv = s.inverse(s.reduce(a[c][c]) / pv);
        for (size_t i = c + 1; i < n; ++i) {
            Coeff e = s.reduce(a[i][c]);
            if (e != 0)
                axpy(s, a[i], s.mul(e / pv, uinv), a[c]);
        }
        det = s.mul(det, a[c][c]);
    }
    return det;
}

} // namespace dh
