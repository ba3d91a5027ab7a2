#pragma once

#include "dh/lambdamod.hpp"
#include "dh/poles.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dh {

/// [s, t] = eps [t, s]^iota with eps = +1 (IotaSymmetric) or -1 (IotaAntisymmetric).
enum class Symmetry { None, IotaSymmetric, IotaAntisymmetric };

std::string to_string(Symmetry s);
Symmetry symmetry_from_string(const std::string& s);

/// O-bilinear map M x N -> P given by its values on the ambient bases.
///
/// Values are stored as numerators over gamma^{p^L} - 1 for a common level L.
class PolePairing {
  public:
    PolePairing() = default;
    PolePairing(FiniteModule left, FiniteModule right, const std::vector<std::vector<PoleElem>>& table,
                Symmetry symmetry);

    const FiniteModule& left() const { return left_; }
    const FiniteModule& right() const { return right_; }
    Symmetry symmetry() const { return symmetry_; }
    const RingSpec& spec() const { return left_.spec(); }
    PoleElem table(size_t i, size_t j) const { return PoleElem(num_[i][j]); }

    PoleElem operator()(const Vec& s, const Vec& t) const;

    /// Vanishes on the relation submodules of both sides.
    bool respects_relations() const;
    /// [gamma s, t] = gamma [s, t] = [s, gamma^{-1} t] on the ambient bases.
    bool is_semilinear() const;
    /// Declared symmetry holds on the ambient basis (true for Symmetry::None).
    bool has_declared_symmetry() const;
    /// Throws ValidationError naming the first failed condition.
    void validate() const;

  private:
    FiniteModule left_, right_;
    int level_ = 0;
    std::vector<std::vector<GroupRingElem>> num_;
    Symmetry symmetry_ = Symmetry::None;
};

/// One summand of a block pairing. With swap the block is doubled and the two
/// copies are paired against each other with coefficients c and -c.
struct PairingBlock {
    Block block;
    Coeff c = 1;
    bool swap = false;
};

/// Numerator g with [x, y] = c x iota(y) g / (gamma^{p^N} - 1) on Lambda/(f):
/// g = gamma^a (gamma^{p^N} - 1) / f with 2a = deg f mod p^N, making iota(g) = +-g.
GroupRingElem block_pairing_numerator(const RingSpec& spec, int level, const Block& b);
/// Sign eps of the self-pairing of a block.
int block_self_symmetry(const RingSpec& spec, const Block& b);

/// Block module with its canonical pairing against itself.
PolePairing block_pairing(const RingSpec& spec, int level, const std::vector<PairingBlock>& blocks);

/// h_{gamma^u}(s, t) = phi_u([eta_u^{-1} s, eta_u^{-1} t]) = u^{-2} phi_u([s, t]).
Coeff pre_height(const PolePairing& pairing, const Vec& s, const Vec& t, Coeff u = 1);
/// h(s, t) = h_{gamma^u}(s, t) (gamma^u - 1) in J/J^2.
JGradedValue height(const PolePairing& pairing, const Vec& s, const Vec& t, Coeff u = 1);

/// h^(r)(x, y) = (gamma^u - 1)^{r-1} h(x', y) with (gamma^u - 1)^{r-1} x' = x, x' in M[J^r].
/// Throws DomainError unless x in M^(r) and y in N^(r).
JGradedValue derived_height(const PolePairing& pairing, int r, const Vec& x, const Vec& y, Coeff u = 1);

struct KernelPair {
    HowellBasis left, right;
};

/// Kernels of h on M x N.
KernelPair height_kernels(const PolePairing& pairing, Coeff u = 1);
/// Kernels of h^(r) on M^(r) x N^(r), by linear algebra on generator Gram matrices.
KernelPair derived_kernels(const PolePairing& pairing, int r, Coeff u = 1);
/// Same kernels by enumerating M^(r) and N^(r).
KernelPair derived_kernels_bruteforce(const PolePairing& pairing, int r, size_t max_size, Coeff u = 1);

/// h^(r)(x, y) = sign h^(r)(y, x) on generators of M^(r), with sign given by the
/// declared symmetry: (-1)^r for iota-symmetric, (-1)^{r+1} for iota-antisymmetric.
/// Requires M = N; nullopt when the pairing has no declared symmetry.
std::optional<bool> sign_law_holds(const PolePairing& pairing, int r);
int expected_sign(Symmetry s, int r);

struct RestrictedKernelReport {
    HowellBasis left_kernel, left_predicted;
    HowellBasis right_kernel, right_predicted;
    bool ok() const { return left_kernel == left_predicted && right_kernel == right_predicted; }
};

/// Kernels of h on M[l0] x N[l1] (by enumeration) against the images
/// iota(l1) M[l0 iota(l1)] and iota(l0) N[l1 iota(l0)].
RestrictedKernelReport restricted_kernel_check(const PolePairing& pairing, const GroupRingElem& l0,
                                               const GroupRingElem& l1, size_t max_size);

/// Matrix of the coefficient involution on a block module: T^a e_b -> (gamma^{-1} - 1)^a e_b.
Matrix involution_matrix(const FiniteModule& m);

/// h(s sigma, t sigma') = omega h(s, t) on the ambient bases. Throws DomainError
/// unless each sigma is an automorphism with gamma sigma = sigma gamma^omega.
bool twist_equivariance_check(const PolePairing& pairing, const Matrix& sigma_left, const Matrix& sigma_right,
                              Coeff omega);

} // namespace dh
