#include "dh/ring.hpp"

#include <limits>

namespace dh {

bool is_prime(Coeff n) {
    if (n < 2)
        return false;
    for (Coeff d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Coeff ipow(Coeff base, int exp) {
    Coeff r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (Coeff{1} << 62) / base)
            throw CapError("integer power overflow: " + std::to_string(base) + "^" +
                           std::to_string(exp));
        r *= base;
    }
    return r;
}

RingSpec::RingSpec(Coeff p_, int k_, int cap_) : p(p_), k(k_), cap(cap_) {
    if (p < 3 || !is_prime(p))
        throw DomainError("ring: p must be an odd prime, got " + std::to_string(p));
    if (k < 1)
        throw DomainError("ring: k must be >= 1, got " + std::to_string(k));
    if (cap < 1)
        throw DomainError("ring: cap must be >= 1, got " + std::to_string(cap));
    q_ = ipow(p, k);
    // products of two reduced values must fit in int64
    if (q_ > (Coeff{1} << 31))
        throw DomainError("ring: p^k too large for exact int64 arithmetic");
}

int RingSpec::valuation(Coeff a) const {
    a = reduce(a);
    if (a == 0)
        return k;
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

Coeff RingSpec::inverse(Coeff a) const {
    a = reduce(a);
    if (a % p == 0)
        throw DomainError("not a unit mod " + std::to_string(q_) + ": " + std::to_string(a));
    // extended Euclid
    Coeff old_r = a, r = q_, old_s = 1, s = 0;
    while (r != 0) {
        Coeff quot = old_r / r;
        Coeff t = old_r - quot * r;
        old_r = r;
        r = t;
        t = old_s - quot * s;
        old_s = s;
        s = t;
    }
    return reduce(old_s);
}

Coeff RingSpec::pow(Coeff a, std::uint64_t e) const {
    Coeff base = reduce(a), r = reduce(1);
    while (e) {
        if (e & 1)
            r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Coeff RingSpec::prime_power(int e) const { return ipow(p, e); }

} // namespace dh
