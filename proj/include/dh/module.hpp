#pragma once

#include "dh/iwalg.hpp"
#include "dh/linalg.hpp"

#include <string>
#include <vector>

namespace dh {

/// Direct summand Lambda/(f) of a block module.
struct Block {
    enum class Kind {
        Level, ///< f = gamma^{p^n} - 1
        Jet,   ///< f = T^j
    };
    Kind kind = Kind::Level;
    int param = 0;

    static Block level(int n) { return {Kind::Level, n}; }
    static Block jet(int j) { return {Kind::Jet, j}; }
    friend bool operator==(const Block&, const Block&) = default;
    std::string to_string() const;
};

/// Finitely presented module over Lambda_N = O[Gamma_N], realized as the
/// quotient O^dim / R of an ambient free O-module by a relation submodule,
/// with gamma acting on row vectors by x -> x G.
///
/// Submodules are stored as Howell bases of their preimage in O^dim (they
/// always contain R).
class FiniteModule {
  public:
    FiniteModule() = default;
    FiniteModule(RingSpec spec, int level, Matrix gamma, HowellBasis rel);

    /// Lambda_N^gens / (Lambda_N-span of the relation rows); ambient basis gamma^j e_i
    /// at index i p^N + j.
    static FiniteModule presented(RingSpec spec, int level, int gens,
                                  const std::vector<std::vector<GroupRingElem>>& relations);
    /// Direct sum of Lambda/(f_i) on the T-basis; every block must be a Lambda_N-module.
    static FiniteModule blocks(RingSpec spec, int level, const std::vector<Block>& blocks);

    const RingSpec& spec() const { return spec_; }
    int level() const { return level_; }
    size_t dim() const { return gamma_.size(); }
    const Matrix& gamma() const { return gamma_; }
    const HowellBasis& relations() const { return rel_; }
    /// Block structure (empty for presented modules).
    const std::vector<Block>& block_list() const { return blocks_; }
    /// Ambient index of the generator of block i.
    size_t block_offset(size_t i) const { return offsets_[i]; }
    size_t block_size(size_t i) const;

    /// Matrix of gamma^j (j may be negative).
    const Matrix& gamma_power(Coeff j) const;
    /// Matrix of x (x at level >= N is projected to level N).
    Matrix action_matrix(const GroupRingElem& x) const;
    Matrix action_matrix(const IwasawaPoly& f) const;
    Vec act(const GroupRingElem& x, const Vec& v) const;
    Vec act(const IwasawaPoly& f, const Vec& v) const;

    Vec reduce(const Vec& v) const { return rel_.reduce(v); }
    bool is_zero(const Vec& v) const { return rel_.contains(v); }
    bool equal(const Vec& a, const Vec& b) const;

    /// Submodule generated (over O) by the given ambient vectors.
    HowellBasis o_span(const Matrix& gens) const;
    /// Submodule generated over Lambda_N.
    HowellBasis lambda_span(const Matrix& gens) const;
    HowellBasis whole() const { return HowellBasis::full(spec_, dim()); }
    HowellBasis zero() const { return rel_; }
    /// log_p of the order of a submodule.
    int log_order(const HowellBasis& sub) const { return sub.log_order() - rel_.log_order(); }
    /// Canonical representatives of the elements of a submodule, each once.
    std::vector<Vec> enumerate(const HowellBasis& sub, size_t max_size) const;
    /// Generators of a submodule as a quotient (rows not in R).
    Matrix generators(const HowellBasis& sub) const;

    /// {x : f x = 0}.
    HowellBasis torsion(const GroupRingElem& f) const;
    HowellBasis torsion(const IwasawaPoly& f) const;
    /// f . S.
    HowellBasis image(const GroupRingElem& f, const HowellBasis& sub) const;
    HowellBasis image(const IwasawaPoly& f, const HowellBasis& sub) const;
    /// Some y with f y = x (modulo R) and y in `within`, or nullopt.
    std::optional<Vec> preimage(const GroupRingElem& f, const Vec& x, const HowellBasis& within) const;

    /// True iff the gamma matrix preserves R and gamma^{p^N} acts trivially.
    bool is_valid() const;

  private:
    RingSpec spec_;
    int level_ = 0;
    Matrix gamma_;
    HowellBasis rel_;
    std::vector<Block> blocks_;
    std::vector<size_t> offsets_;
    std::vector<Matrix> powers_;
    void build_powers();
};

/// Degree of the block modulus as a polynomial in T.
int block_degree(const RingSpec& spec, const Block& b);
/// Modulus of a block as an exact polynomial.
IwasawaPoly block_modulus(const RingSpec& spec, const Block& b);
/// True iff Lambda/(f) is killed by gamma^{p^N} - 1.
bool block_fits_level(const RingSpec& spec, const Block& b, int level);

} // namespace dh
