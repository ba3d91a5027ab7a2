#include "dh/scenarios.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>

namespace dh {

void ScenarioInput::validate() const {
    if (s_plus < 0 || s_minus < 0 || e_infinity_expected < 0)
        throw ValidationError("scenario: dimensions must be nonnegative");
}

ScenarioPrediction anticyclotomic_prediction(const ScenarioInput& inp) {
    inp.validate();
    int gap = std::abs(inp.s_plus - inp.s_minus);
    if (gap == 0)
        throw DomainError("scenario: s+ = s- gives e_2 = -1, prediction undefined");
    ScenarioPrediction out;
    out.e1 = 2 * std::min(inp.s_plus, inp.s_minus);
    out.e2 = gap - 1;
    out.shape.e_infinity = inp.e_infinity_expected;
    if (out.e1 > 0)
        out.shape.j_blocks.push_back({1, out.e1});
    if (out.e2 > 0)
        out.shape.j_blocks.push_back({2, out.e2});

    int lhs = inp.s_plus + inp.s_minus;
    int rhs = inp.e_infinity_expected + out.e1 + out.e2;
    out.checks.add("s+ + s- = e_inf + e_1 + e_2", lhs == rhs, std::to_string(lhs) + " vs " + std::to_string(rhs));
    std::vector<int> dims = shape_dims(out.shape, 4);
    out.checks.add("dim S^(1) = s+ + s-", dims[0] == lhs, std::to_string(dims[0]));
    out.checks.add("dim S^(2) = |s+ - s-|", dims[1] == gap, std::to_string(dims[1]));
    Invariants inv = infer_invariants(dims);
    bool round_trip = inv.e_infinity == inp.e_infinity_expected && inv.e.size() >= 2 && inv.e[0] == out.e1 &&
                      inv.e[1] == out.e2;
    out.checks.add("infer(shape_dims(X)) = (e_1, e_2; e_inf)", round_trip);
    out.parity_flags = parity_check(inv.e);
    return out;
}

std::vector<int> parity_check(const std::vector<int>& e) {
    std::vector<int> flags;
    for (size_t i = 1; i < e.size(); i += 2)
        if (e[i] % 2 != 0)
            flags.push_back(static_cast<int>(i + 1));
    return flags;
}

int degeneracy_floor(const ScenarioInput& inp) {
    inp.validate();
    return std::abs(inp.s_plus - inp.s_minus);
}

TwistToy twist_toy(const RingSpec& spec, const ScenarioInput& inp, std::uint64_t seed) {
    inp.validate();
    if (spec.p == 2 || spec.k != 1)
        throw DomainError("twist toy: needs odd p and k = 1");
    const int level = 1;
    size_t sp = static_cast<size_t>(inp.s_plus), n = sp + static_cast<size_t>(inp.s_minus);
    FiniteModule m = FiniteModule::blocks(spec, level, std::vector<Block>(n, Block::jet(1)));
    GroupRingElem g = block_pairing_numerator(spec, level, Block::jet(1));

    std::mt19937_64 rng(seed);
    std::vector<std::vector<PoleElem>> table(n, std::vector<PoleElem>(n, PoleElem(spec)));
    for (size_t i = 0; i < sp; ++i)
        for (size_t j = sp; j < n; ++j) {
            Coeff c = static_cast<Coeff>(rng() % static_cast<std::uint64_t>(spec.modulus()));
            // [e_j, e_i] = -[e_i, e_j]^iota, and iota fixes g up to the jet sign
            table[i][j] = PoleElem(g).scaled(c);
            table[j][i] = PoleElem(g).scaled(spec.mul(c, spec.neg(block_self_symmetry(spec, Block::jet(1)))));
        }
    TwistToy out{PolePairing(m, m, table, Symmetry::IotaAntisymmetric), identity_matrix(n)};
    for (size_t j = sp; j < n; ++j)
        out.tau[j][j] = spec.neg(1);
    return out;
}

} // namespace dh
