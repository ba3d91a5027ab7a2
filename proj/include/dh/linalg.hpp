#pragma once

#include "dh/ring.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dh {

using Vec = std::vector<Coeff>;
/// Row-major; a linear map O^n -> O^m is an n x m matrix acting on row vectors (x -> x F).
using Matrix = std::vector<Vec>;

/// Submodule of O^dim in Howell normal form.
///
/// Rows are in echelon form with pivots p^v, entries above a pivot reduced
/// modulo it, and the span is closed under the Howell condition: for each
/// column c, the rows with pivot >= c span every element of the module that
/// vanishes before c. Greedy reduction is therefore a canonical normal form.
class HowellBasis {
  public:
    HowellBasis() = default;
    HowellBasis(RingSpec spec, size_t dim);
    static HowellBasis span(RingSpec spec, size_t dim, const Matrix& gens);
    static HowellBasis full(RingSpec spec, size_t dim);

    const RingSpec& spec() const { return spec_; }
    size_t dim() const { return dim_; }
    const Matrix& rows() const { return rows_; }
    size_t pivot_column(size_t i) const { return piv_[i]; }
    /// p-adic valuation of the pivot entry of row i.
    int pivot_valuation(size_t i) const { return val_[i]; }

    /// Canonical representative of v modulo the span.
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const;
    /// log_p of the number of elements.
    int log_order() const;
    bool is_zero() const { return rows_.empty(); }

    HowellBasis sum(const HowellBasis& o) const;
    HowellBasis intersect(const HowellBasis& o) const;
    bool is_subset_of(const HowellBasis& o) const;
    friend bool operator==(const HowellBasis& a, const HowellBasis& b) {
        return a.dim_ == b.dim_ && a.rows_ == b.rows_;
    }

    /// All elements, each exactly once (mixed radix over the pivot rows).
    /// Throws CapError if the order exceeds max_size.
    std::vector<Vec> enumerate(size_t max_size) const;

  private:
    RingSpec spec_;
    size_t dim_ = 0;
    Matrix rows_;
    std::vector<size_t> piv_;
    std::vector<int> val_;
};

Vec zero_vec(size_t n);
Vec unit_vec(size_t n, size_t i);
Vec vec_add(const RingSpec& s, const Vec& a, const Vec& b);
Vec vec_sub(const RingSpec& s, const Vec& a, const Vec& b);
Vec vec_scale(const RingSpec& s, const Vec& a, Coeff c);
bool vec_is_zero(const Vec& a);

/// x F for a row vector x; m is the column count (needed when F has no rows).
Vec apply(const RingSpec& s, const Vec& x, const Matrix& f, size_t m);
Matrix mat_mul(const RingSpec& s, const Matrix& a, const Matrix& b, size_t m);
Matrix identity_matrix(size_t n);

/// {x in O^n : x F in rel}; rel is a submodule of O^m.
HowellBasis kernel(const RingSpec& s, const Matrix& f, size_t m, const HowellBasis& rel);
/// Span of {b F : b a row of src}.
HowellBasis image(const RingSpec& s, const HowellBasis& src, const Matrix& f, size_t m);
/// Some x with x F - target in rel, or nullopt.
std::optional<Vec> solve(const RingSpec& s, const Matrix& f, size_t m, const Vec& target, const HowellBasis& rel);

/// Determinant over Z/p^k (local elimination; exact).
Coeff determinant(const RingSpec& s, Matrix a);

} // namespace dh
