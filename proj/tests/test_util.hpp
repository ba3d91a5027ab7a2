#pragma once

#include "dh/iwalg.hpp"

#include <random>
#include <vector>

namespace dh::testing {

inline std::vector<Coeff> random_coeffs(std::mt19937_64& rng, const RingSpec& spec, size_t n) {
    std::uniform_int_distribution<Coeff> d(0, spec.modulus() - 1);
    std::vector<Coeff> c(n);
    for (auto& x : c)
        x = d(rng);
    return c;
}

inline IwasawaPoly random_poly(std::mt19937_64& rng, const RingSpec& spec) {
    return IwasawaPoly(spec, random_coeffs(rng, spec, static_cast<size_t>(spec.cap) + 1));
}

inline GroupRingElem random_group_elem(std::mt19937_64& rng, const RingSpec& spec, int level) {
    return GroupRingElem(spec, level, random_coeffs(rng, spec, static_cast<size_t>(group_order(spec, level))));
}

// Random distinguished element with Weierstrass degree mu.
inline IwasawaPoly random_distinguished(std::mt19937_64& rng, const RingSpec& spec, int mu) {
    auto c = random_coeffs(rng, spec, static_cast<size_t>(spec.cap) + 1);
    for (int i = 0; i < mu; ++i)
        c[static_cast<size_t>(i)] = spec.mul(c[static_cast<size_t>(i)], spec.p);
    if (c[static_cast<size_t>(mu)] % spec.p == 0)
        c[static_cast<size_t>(mu)] = spec.add(c[static_cast<size_t>(mu)], 1);
    return IwasawaPoly(spec, c);
}

inline Coeff random_unit(std::mt19937_64& rng, const RingSpec& spec) {
    std::uniform_int_distribution<Coeff> d(1, spec.modulus() - 1);
    for (;;) {
        Coeff u = d(rng);
        if (spec.is_unit(u))
            return u;
    }
}

} // namespace dh::testing
