#pragma once

#include "dh/iwalg.hpp"
#include "dh/linalg.hpp"
#include "dh/module.hpp"

#include <vector>

namespace dh {

/// Free O-module of rank m with an action of a finite cyclic group C = <g>.
///
/// C stands in for a finite quotient of the Galois group through which the
/// action factors; its image in Gamma_n is the generator gamma. Matrices act
/// on column vectors: g . t = A t.
struct FiniteGaloisModule {
    RingSpec spec;
    Matrix action; ///< A, invertible, A^{|C|} = 1
    Coeff group_order = 1;

    FiniteGaloisModule() = default;
    FiniteGaloisModule(RingSpec s, Matrix a, Coeff order);
    static FiniteGaloisModule trivial(RingSpec s, size_t rank, Coeff order);

    size_t rank() const { return action.size(); }
    /// A^e t for any integer e.
    Vec act(Coeff e, const Vec& t) const;
    const Matrix& power(Coeff e) const;

  private:
    std::vector<Matrix> powers_;
};

/// Element of the induced module T_n = {f : C -> T | f(h x) = h f(x), h in C^{p^n}},
/// stored by its values f(g^a) for 0 <= a < p^n.
struct InducedElem {
    int level = 0;
    std::vector<Vec> values;
};

class InducedModule {
  public:
    InducedModule(FiniteGaloisModule base, int level);

    const FiniteGaloisModule& base() const { return base_; }
    int level() const { return level_; }
    Coeff size() const { return pn_; }
    size_t o_rank() const { return base_.rank() * static_cast<size_t>(pn_); }

    InducedElem zero() const;
    /// f(g^e) for any integer e, using the H-equivariance.
    Vec value(const InducedElem& f, Coeff e) const;

    /// (gamma^j f)(x) = A^j f(g^{-j} x).
    InducedElem act_gamma(const InducedElem& f, Coeff j) const;
    /// Lambda_n action.
    InducedElem act(const GroupRingElem& lambda, const InducedElem& f) const;
    /// (g^c . f)(x) = f(x g^c).
    InducedElem act_galois(const InducedElem& f, Coeff c) const;

    /// mu_f(gamma^a) = A^{-a} f(g^a): coordinates on T tensor Lambda_n.
    std::vector<Vec> mu(const InducedElem& f) const;
    InducedElem from_mu(const std::vector<Vec>& mu) const;
    /// Same actions on the tensor side T tensor Lambda_n{-1}.
    std::vector<Vec> tensor_act_gamma(const std::vector<Vec>& mu, Coeff j) const;
    std::vector<Vec> tensor_act_galois(const std::vector<Vec>& mu, Coeff c) const;

    /// Evaluation at the identity.
    Vec evaluate(const InducedElem& f) const { return f.values[0]; }

    /// O-basis: value t_i at the coset g^a, zero elsewhere (mu-basis e_i tensor gamma^a).
    InducedElem basis(size_t i, Coeff a) const;
    InducedElem add(const InducedElem& a, const InducedElem& b) const;
    InducedElem scale(const InducedElem& a, Coeff c) const;
    bool equal(const InducedElem& a, const InducedElem& b) const { return a.values == b.values; }

    /// Inclusion T_n -> T_{n+1} (restriction of functions).
    InducedElem include(const InducedElem& f, const InducedModule& higher) const;
    /// Corestriction T_n -> T_m for m <= n.
    InducedElem corestrict(const InducedElem& f, const InducedModule& lower) const;

  private:
    FiniteGaloisModule base_;
    int level_;
    Coeff pn_;
};

/// Phi(a) = sum_j phi(gamma^{-j} a) gamma^j in Lambda_n: the Lambda-linear map
/// with identity coefficient phi. Returned as a dim x p^n matrix acting on rows.
Matrix frobenius_reciprocity(const Vec& functional, const FiniteModule& a, int level);
/// Inverse: the functional a -> identity coefficient of Phi(a).
Vec frobenius_inverse(const Matrix& big_phi);

/// e_n(s, t) = sum_c (sum_a e(mu_s(a), mu_t(a - c))) gamma^c for e(s, t) = s^T E t.
class ConvolutionPairing {
  public:
    ConvolutionPairing(InducedModule s, InducedModule t, Matrix e);

    GroupRingElem operator()(const InducedElem& s, const InducedElem& t) const;
    const InducedModule& left() const { return s_; }
    const InducedModule& right() const { return t_; }
    /// Gram matrix of ev o e_n on the O-bases of both sides.
    Matrix evaluation_matrix() const;
    /// Unit determinant of the evaluation matrix.
    bool is_perfect() const;

  private:
    InducedModule s_, t_;
    Matrix e_;
};

bool is_perfect_form(const RingSpec& spec, const Matrix& e);

} // namespace dh
