#pragma once

#include "dh/ring.hpp"

#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dh {

/// Element of Lambda = O[[T]] (gamma = 1 + T) truncated at the ring's cap.
///
/// Coefficients c_0..c_cap are stored; only c_0..c_precision are known. Values
/// built from a finite coefficient list are exact up to the cap. Arithmetic
/// never overstates precision.
class IwasawaPoly {
  public:
    IwasawaPoly() = default;
    explicit IwasawaPoly(RingSpec spec);
    /// Polynomial with the given little-endian coefficients, known up to the cap.
    IwasawaPoly(RingSpec spec, std::span<const Coeff> coeffs);
    IwasawaPoly(RingSpec spec, std::initializer_list<Coeff> coeffs);
    IwasawaPoly(RingSpec spec, std::span<const Coeff> coeffs, int precision);

    static IwasawaPoly constant(RingSpec spec, Coeff c);
    /// T^e (zero if e exceeds the cap).
    static IwasawaPoly monomial(RingSpec spec, int e, Coeff c = 1);
    /// (1+T)^u for an integer u (negative u through the inverse series).
    static IwasawaPoly one_plus_t_pow(RingSpec spec, Coeff u);

    const RingSpec& spec() const { return spec_; }
    int precision() const { return prec_; }
    int cap() const { return spec_.cap; }
    Coeff operator[](int i) const { return i <= spec_.cap ? c_[static_cast<size_t>(i)] : 0; }
    const std::vector<Coeff>& coeffs() const { return c_; }
    /// Highest index with a nonzero known coefficient, or -1.
    int degree() const;

    IwasawaPoly with_precision(int precision) const;

    IwasawaPoly operator+(const IwasawaPoly& o) const;
    IwasawaPoly operator-(const IwasawaPoly& o) const;
    IwasawaPoly operator-() const;
    IwasawaPoly operator*(const IwasawaPoly& o) const;
    IwasawaPoly scaled(Coeff a) const;
    /// Multiplication by T^e (precision grows by e, capped).
    IwasawaPoly shift_up(int e) const;
    /// Exact division by T^e; throws DomainError if a known low coefficient is nonzero.
    IwasawaPoly shift_down(int e) const;
    /// Inverse of a power series with unit constant term.
    IwasawaPoly inverse() const;
    /// Substitution T -> (1+T)^u - 1, i.e. gamma -> gamma^u.
    IwasawaPoly substitute_generator(Coeff u) const;
    /// Value at T = 0 (augmentation).
    Coeff augmentation() const { return c_[0]; }

    /// Precision-aware equality: compares the shared known prefix.
    bool equals(const IwasawaPoly& o) const;
    /// Strict equality: same precision and same coefficients.
    bool strictly_equals(const IwasawaPoly& o) const;

    std::string to_string() const;

  private:
    RingSpec spec_;
    std::vector<Coeff> c_;
    int prec_ = 0;
    void normalize();
};

std::ostream& operator<<(std::ostream& os, const IwasawaPoly& f);

/// Element of Lambda_n = O[Gamma_n], stored on the group basis 1, gamma, ..., gamma^{p^n - 1}.
class GroupRingElem {
  public:
    GroupRingElem() = default;
    GroupRingElem(RingSpec spec, int level);
    GroupRingElem(RingSpec spec, int level, std::vector<Coeff> coeffs);

    static GroupRingElem one(RingSpec spec, int level);
    static GroupRingElem group_element(RingSpec spec, int level, Coeff exponent);
    /// Image of the polynomial sum a_i T^i with T = gamma - 1.
    static GroupRingElem from_t_poly(RingSpec spec, int level, std::span<const Coeff> t_coeffs);
    /// Norm element of the subgroup of index p^m: sum_{j} gamma^{j p^m}.
    static GroupRingElem relative_norm(RingSpec spec, int level, int lower);

    const RingSpec& spec() const { return spec_; }
    int level() const { return level_; }
    size_t size() const { return c_.size(); }
    Coeff operator[](size_t i) const { return c_[i]; }
    const std::vector<Coeff>& coeffs() const { return c_; }
    bool is_zero() const;

    GroupRingElem operator+(const GroupRingElem& o) const;
    GroupRingElem operator-(const GroupRingElem& o) const;
    GroupRingElem operator-() const;
    GroupRingElem operator*(const GroupRingElem& o) const;
    GroupRingElem scaled(Coeff a) const;
    /// gamma -> gamma^{-1}.
    GroupRingElem involution() const;
    /// gamma -> gamma^u.
    GroupRingElem substitute_generator(Coeff u) const;
    /// Sum of coefficients.
    Coeff augmentation() const;
    /// Coefficient of the identity group element.
    Coeff identity_coefficient() const { return c_[0]; }
    /// Natural projection Lambda_n -> Lambda_m for m <= n.
    GroupRingElem project(int lower) const;
    /// Inclusion Lambda_m -> Lambda_n (multiplication by the relative norm), n >= m.
    GroupRingElem inflate(int higher) const;
    /// Coefficients on the T-basis 1, T, ..., T^{p^n - 1} of O[T]/((1+T)^{p^n} - 1).
    std::vector<Coeff> to_t_poly() const;
    /// True iff the image modulo p is nonzero.
    bool is_distinguished() const;

    friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) {
        return a.level_ == b.level_ && a.spec_.same_ring(b.spec_) && a.c_ == b.c_;
    }

    std::string to_string() const;

  private:
    RingSpec spec_;
    int level_ = 0;
    std::vector<Coeff> c_;
    void check_compatible(const GroupRingElem& o) const;
};

std::ostream& operator<<(std::ostream& os, const GroupRingElem& f);

/// |Gamma_n| = p^n.
Coeff group_order(const RingSpec& spec, int level);

// Operations on Lambda.

/// True iff some known coefficient is a unit. Throws IndeterminateError when no
/// known coefficient is a unit and the precision is below the cap.
bool is_distinguished(const IwasawaPoly& f);

/// Least index of a unit coefficient; throws DomainError if there is none.
int weierstrass_degree(const IwasawaPoly& f);

struct DivisionResult {
    IwasawaPoly quotient;
    IwasawaPoly remainder;
};

/// g = q f + r with deg r < mu (the Weierstrass degree of f). Output precision
/// is min(prec g, prec f) - mu.
DivisionResult weierstrass_divide(const IwasawaPoly& g, const IwasawaPoly& f);

/// The involution induced by gamma -> gamma^{-1}.
IwasawaPoly involution(const IwasawaPoly& f);

/// g_n = ((1+T)^{p^n} - 1)/T.
IwasawaPoly norm_element(const RingSpec& spec, int level);

/// (gamma^{u p^n} - 1)/(gamma^{p^n} - 1) = sum_{j<u} (1+T)^{j p^n} for a positive unit u.
IwasawaPoly generator_ratio(const RingSpec& spec, int level, Coeff u);

/// (1+T)^{p^n} - 1 as an exact polynomial; cap must be >= p^n.
IwasawaPoly level_modulus(const RingSpec& spec, int level);

/// Least index with nonzero coefficient; nullopt means zero at this precision.
std::optional<int> j_valuation(const IwasawaPoly& f);

/// Precision needed to determine the image of a power series in Lambda_n: one
/// less than the nilpotency index of T in Lambda_n (at most k p^n).
int precision_for_level(const RingSpec& spec, int level);

/// Exact image of f in Lambda_n.
GroupRingElem project_to_level(const IwasawaPoly& f, int level);

/// Same map computed through weierstrass_divide by (1+T)^{p^n} - 1; independent route.
GroupRingElem project_to_level_by_division(const IwasawaPoly& f, int level);

/// Polynomial product over O, no truncation.
std::vector<Coeff> poly_mul(const RingSpec& spec, std::span<const Coeff> a, std::span<const Coeff> b);
/// Division by a monic polynomial; returns (quotient, remainder).
std::pair<std::vector<Coeff>, std::vector<Coeff>> poly_divmod_monic(const RingSpec& spec,
                                                                     std::span<const Coeff> a,
                                                                     std::span<const Coeff> f);

} // namespace dh
