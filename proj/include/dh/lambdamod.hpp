#pragma once

#include "dh/module.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace dh {

/// Default cap on brute-force enumerations (3^10).
inline constexpr size_t kDefaultEnumerationCap = 59049;

/// Lambda^{e_inf} + sum (Lambda/J^i)^{e_i} + sum Lambda/f (f(0) a unit).
struct ElementaryShape {
    int e_infinity = 0;
    std::vector<std::pair<int, int>> j_blocks; ///< (i, e_i)
    std::vector<IwasawaPoly> coprime;

    void validate() const;
};

/// dims[r-1] = e_r + e_{r+1} + ... + e_inf for r = 1..r_max.
std::vector<int> shape_dims(const ElementaryShape& shape, int r_max);

struct Invariants {
    std::vector<int> e; ///< e[r-1] = e_r
    int e_infinity = 0;
    friend bool operator==(const Invariants&, const Invariants&) = default;
};

/// Inverse of shape_dims: e_r = dims[r] - dims[r+1], e_inf = the stable tail.
/// The sequence must be non-increasing with its last two entries equal.
Invariants infer_invariants(const std::vector<int>& dims);

/// Shape with multiplicities taken from the invariants.
ElementaryShape shape_from_invariants(const Invariants& inv);

struct RankEstimate {
    int rank = 0;
    bool stabilized = false;
};

/// orders: (k, |M tensor Z/p^k|) for at least two distinct k. The rank is the
/// log_p growth per unit of k between the last two points; stabilized means every
/// consecutive pair gives the same growth.
RankEstimate zp_rank_estimate(Coeff p, const std::vector<std::pair<int, std::uint64_t>>& orders);

/// Kernel of the action of f.
HowellBasis torsion(const FiniteModule& m, const GroupRingElem& f);
/// M[J^r].
HowellBasis j_torsion(const FiniteModule& m, int r);
/// M^(r) = (gamma^u - 1)^{r-1} M[J^r].
HowellBasis derived_submodule(const FiniteModule& m, int r, Coeff u = 1);

/// (gamma^u - 1)^e at level N.
GroupRingElem generator_power(const RingSpec& spec, int level, Coeff u, int e);

struct FiltrationLevel {
    int r = 0;
    HowellBasis j_torsion;   ///< M[J^r]
    int delta_log_order = 0; ///< log_p |M[J^r] / M[J^{r-1}]|
    HowellBasis derived;     ///< M^(r)
};

struct FiltrationReport {
    std::vector<FiltrationLevel> levels; ///< r = 1..r_max
    HowellBasis universal_norms;
    bool generator_independent = true; ///< M^(r) agrees for u = 1 and u = 2
    bool nested = true;                ///< M^(r+1) inside M^(r)
};

FiltrationReport j_filtration(const FiniteModule& m, int r_max);

/// Norm element g_n = sum_{j < p^n} gamma^j projected to Lambda_N.
GroupRingElem norm_element_at(const RingSpec& spec, int level, int n);

/// intersection over n of g_n M, iterated until the sequence is stable and g_n = 0 in Lambda_N.
HowellBasis universal_norms(const FiniteModule& m);

/// Brute-force oracle: intersection of f M over all distinguished polynomials f of
/// degree <= bound, with f M computed by enumerating M.
HowellBasis universal_norms_bruteforce(const FiniteModule& m, int degree_bound, size_t max_size);

/// Degree <= 2 oracle intersected with the stable image of the powers T^j, all by enumeration.
HowellBasis universal_norms_enumerated(const FiniteModule& m, size_t max_size);

/// Block module realizing a shape at level N over Z/p (Lambda -> Lambda_N, Lambda/J^i -> jet blocks).
FiniteModule module_from_shape(const RingSpec& spec, int level, const ElementaryShape& shape);

} // namespace dh
