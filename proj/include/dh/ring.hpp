#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dh {

using Coeff = std::int64_t;

// Error taxonomy. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
/// Input violates a precondition (schema, non-unit, not distinguished, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};
/// Not enough T-adic precision to decide the requested quantity.
class PrecisionError : public Error {
  public:
    using Error::Error;
};
/// A zero-looking value whose status cannot be decided at the given precision.
class IndeterminateError : public PrecisionError {
  public:
    using PrecisionError::PrecisionError;
};
/// Enumeration or size cap exceeded.
class CapError : public Error {
  public:
    using Error::Error;
};
/// Instance data failed validation (broken duality table, non-semilinear pairing, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Coefficient ring O = Z/p^k together with a T-adic precision cap D.
struct RingSpec {
    Coeff p = 3;
    int k = 1;
    int cap = 8;

    RingSpec() = default;
    RingSpec(Coeff p_, int k_, int cap_);

    Coeff modulus() const { return q_; }
    Coeff reduce(Coeff a) const {
        Coeff r = a % q_;
        return r < 0 ? r + q_ : r;
    }
    Coeff add(Coeff a, Coeff b) const { return reduce(a + b); }
    Coeff sub(Coeff a, Coeff b) const { return reduce(a - b); }
    Coeff mul(Coeff a, Coeff b) const { return reduce(a * b); }
    Coeff neg(Coeff a) const { return reduce(-a); }
    bool is_unit(Coeff a) const { return reduce(a) % p != 0; }
    /// p-adic valuation of a in Z/p^k; returns k for zero.
    int valuation(Coeff a) const;
    /// Inverse of a unit; throws DomainError otherwise.
    Coeff inverse(Coeff a) const;
    Coeff pow(Coeff a, std::uint64_t e) const;
    /// p^e as an integer (not reduced).
    Coeff prime_power(int e) const;
    /// Number of elements of Z/p^k.
    Coeff order() const { return q_; }

    RingSpec with_cap(int new_cap) const { return RingSpec(p, k, new_cap); }

    friend bool operator==(const RingSpec& a, const RingSpec& b) {
        return a.p == b.p && a.k == b.k && a.cap == b.cap;
    }
    /// Same coefficient ring, caps may differ.
    bool same_ring(const RingSpec& o) const { return p == o.p && k == o.k; }

  private:
    Coeff q_ = 3;
};

bool is_prime(Coeff n);

/// Integer power without reduction; throws CapError on overflow past 2^62.
Coeff ipow(Coeff base, int exp);

} // namespace dh
