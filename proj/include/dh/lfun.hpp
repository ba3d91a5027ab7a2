#pragma once

#include "dh/heights.hpp"
#include "dh/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dh {

/// Finite order, or "infinity at cap" when nullopt.
struct OrderOfVanishing {
    std::optional<int> value;
    bool infinite() const { return !value.has_value(); }
    std::string to_string() const { return value ? std::to_string(*value) : "inf"; }
    friend bool operator==(const OrderOfVanishing&, const OrderOfVanishing&) = default;
};

/// Synthetic model of an L-function instance.
///
/// Z_s = Lambda^rank truncated at spec.cap. The duality table lists
/// <T^e eps_i, b> for every coordinate i, e = 0..cap and ambient basis vector b
/// of D_loc. The relaxed global class at level 0 is (z0, z0_relaxed): z0 in
/// M_S[J] and a component in the relaxed quotient O^rank; it lies in the strict
/// submodule iff z0_relaxed = 0.
struct LfunInstance {
    RingSpec spec;
    int level = 0;
    std::vector<IwasawaPoly> l_z;
    FiniteModule d_loc;
    std::vector<std::vector<Vec>> duality;
    PolePairing global;
    std::vector<PairingBlock> global_blocks; ///< set when the global pairing is a block pairing
    Vec z0;
    Vec z0_relaxed;
    Matrix localization; ///< rows: M_T ambient basis -> D_loc

    size_t rank() const { return l_z.size(); }
};

/// Throws ValidationError on the first structural failure (shapes, adjunction,
/// relations, Lambda-linearity of the localization, the global pairing, z0 in M_S[J],
/// and agreement of the two characterizations of ord).
void validate_instance(const LfunInstance& inst);

/// Least s with T^s D_loc = 0.
int nilpotency_index(const FiniteModule& m);

/// <x, d> through the duality table.
Coeff duality_pair(const LfunInstance& inst, const std::vector<IwasawaPoly>& x, const Vec& d);

/// Largest r with L_z in T^r Z_s.
OrderOfVanishing ord_by_divisibility(const LfunInstance& inst);
/// Largest r with <L_z, D_loc[J^r]> = 0.
OrderOfVanishing ord_by_annihilation(const LfunInstance& inst);
/// Both characterizations; ValidationError if they disagree.
OrderOfVanishing order_of_vanishing(const LfunInstance& inst);

/// L_z / (gamma^u - 1)^r coordinatewise. DomainError if r exceeds the order.
std::vector<IwasawaPoly> der(const LfunInstance& inst, int r, Coeff u = 1);

/// lambda^(r)(c) = u^r <der(r, u), c> (gamma - 1)^r for c in D_loc[J].
JGradedValue lambda_special(const LfunInstance& inst, int r, const Vec& c, Coeff u = 1);
/// lambda^(r) vanishes on generators of D_loc[J].
bool lambda_vanishes(const LfunInstance& inst, int r, Coeff u = 1);

/// Checks (a), (b), (c) for r <= min(ord, r_max). Validates first.
CheckReport main_theorem_check(const LfunInstance& inst, int r_max);

/// Duality table induced by a jet block pairing against D_loc = Level(N)^rank:
/// <T^e eps_i, T^b> = phi(kappa_i T^e iota(T^b) G_N / (gamma^{p^N} - 1)) with kappa_i = +-c_i.
std::vector<std::vector<Vec>> canonical_duality(const RingSpec& spec, int level,
                                                const std::vector<PairingBlock>& global_blocks,
                                                const FiniteModule& d_loc);

struct SyntheticParams {
    Coeff p = 3;
    int k = 1;
    int level = 1;
    std::vector<int> blocks; ///< jet lengths d_i of the global module; default {max(ord, 1)}
    int ord = 1;
};

/// Deterministic instance with the requested order of vanishing. Requires k = 1.
LfunInstance build_synthetic(std::uint64_t seed, const SyntheticParams& params);

} // namespace dh
