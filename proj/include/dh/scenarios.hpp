#pragma once

#include "dh/heights.hpp"
#include "dh/report.hpp"

#include <cstdint>
#include <vector>

namespace dh {

/// Eigencomponent dimensions of the first derived Selmer space under a sign twist.
struct ScenarioInput {
    int s_plus = 0;
    int s_minus = 0;
    int e_infinity_expected = 1;

    void validate() const;
};

/// Predicted shape Lambda + (Lambda/J)^{e_1} + (Lambda/J^2)^{e_2}, conditional on
/// the conjectured dimension |s+ - s-| of the second derived space.
struct ScenarioPrediction {
    ElementaryShape shape;
    int e1 = 0;
    int e2 = 0;
    CheckReport checks;
    /// Informational: even |s+ - s-| gives odd e_2, which no polarized pairing allows.
    std::vector<int> parity_flags;
};

/// e_1 = 2 min(s+, s-), e_2 = |s+ - s-| - 1. DomainError when s+ = s-.
ScenarioPrediction anticyclotomic_prediction(const ScenarioInput& inp);

/// Even indices r with odd e_r (e[r-1] = e_r). Empty means the parity constraint holds.
std::vector<int> parity_check(const std::vector<int>& e);

/// Lower bound |s+ - s-| on dim ker h^(1) forced by isotropic eigencomponents.
int degeneracy_floor(const ScenarioInput& inp);

/// (Lambda/T)^{s+ + s-} at level 1 with tau = diag(+1^{s+}, -1^{s-}) and a random
/// pairing that only couples opposite eigencomponents, so h(x tau, y tau) = -h(x, y).
struct TwistToy {
    PolePairing pairing;
    Matrix tau;
};

/// Requires p odd and k = 1.
TwistToy twist_toy(const RingSpec& spec, const ScenarioInput& inp, std::uint64_t seed);

} // namespace dh
