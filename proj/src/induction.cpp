#include "dh/induction.hpp"

namespace dh {

static Vec matvec(const RingSpec& s, const Matrix& a, const Vec& t) {
    Vec r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < t.size(); ++j)
            r[i] = s.add(r[i], s.mul(a[i][j], t[j]));
    return r;
}

static Coeff mod_index(Coeff e, Coeff n) { return ((e % n) + n) % n; }

FiniteGaloisModule::FiniteGaloisModule(RingSpec s, Matrix a, Coeff order)
    : spec(s), action(std::move(a)), group_order(order) {
    if (order < 1)
        throw DomainError("FiniteGaloisModule: group order must be positive");
    size_t m = action.size();
    for (auto& row : action) {
        if (row.size() != m)
            throw DomainError("FiniteGaloisModule: action matrix must be square");
        for (auto& c : row)
            c = spec.reduce(c);
    }
    if (m > 0 && !spec.is_unit(determinant(spec, action)))
        throw DomainError("FiniteGaloisModule: action matrix is not invertible");
    powers_.push_back(identity_matrix(m));
    for (Coeff j = 1; j <= order; ++j)
        powers_.push_back(mat_mul(spec, powers_.back(), action, m));
    if (powers_.back() != identity_matrix(m))
        throw DomainError("FiniteGaloisModule: A^" + std::to_string(order) + " is not the identity");
    powers_.pop_back();
}

FiniteGaloisModule FiniteGaloisModule::trivial(RingSpec s, size_t rank, Coeff order) {
    return FiniteGaloisModule(s, identity_matrix(rank), order);
}

const Matrix& FiniteGaloisModule::power(Coeff e) const {
    return powers_[static_cast<size_t>(mod_index(e, group_order))];
}

Vec FiniteGaloisModule::act(Coeff e, const Vec& t) const { return matvec(spec, power(e), t); }

InducedModule::InducedModule(FiniteGaloisModule base, int level)
    : base_(std::move(base)), level_(level), pn_(group_order(base_.spec, level)) {
    if (base_.group_order % pn_ != 0)
        throw DomainError("induce: p^" + std::to_string(level) + " does not divide the group order " +
                          std::to_string(base_.group_order));
}

InducedElem InducedModule::zero() const {
    return {level_, std::vector<Vec>(static_cast<size_t>(pn_), zero_vec(base_.rank()))};
}

Vec InducedModule::value(const InducedElem& f, Coeff e) const {
    Coeff x = mod_index(e, base_.group_order);
    Coeff a = x % pn_;
    return base_.act(x - a, f.values[static_cast<size_t>(a)]);
}

InducedElem InducedModule::act_gamma(const InducedElem& f, Coeff j) const {
    InducedElem r = zero();
    for (Coeff a = 0; a < pn_; ++a)
        r.values[static_cast<size_t>(a)] = base_.act(j, value(f, a - j));
    return r;
}

InducedElem InducedModule::act(const GroupRingElem& lambda, const InducedElem& f) const {
    GroupRingElem l = lambda.level() > level_ ? lambda.project(level_) : lambda;
    if (l.level() != level_)
        throw DomainError("InducedModule::act: multiplier level mismatch");
    InducedElem r = zero();
    for (size_t j = 0; j < l.size(); ++j)
        if (l[j] != 0)
            r = add(r, scale(act_gamma(f, static_cast<Coeff>(j)), l[j]));
    return r;
}

InducedElem InducedModule::act_galois(const InducedElem& f, Coeff c) const {
    InducedElem r = zero();
    for (Coeff a = 0; a < pn_; ++a)
        r.values[static_cast<size_t>(a)] = value(f, a + c);
    return r;
}

std::vector<Vec> InducedModule::mu(const InducedElem& f) const {
    std::vector<Vec> r(static_cast<size_t>(pn_));
    for (Coeff a = 0; a < pn_; ++a)
        r[static_cast<size_t>(a)] = base_.act(-a, f.values[static_cast<size_t>(a)]);
    return r;
}

InducedElem InducedModule::from_mu(const std::vector<Vec>& m) const {
    InducedElem r = zero();
    for (Coeff a = 0; a < pn_; ++a)
        r.values[static_cast<size_t>(a)] = base_.act(a, m[static_cast<size_t>(a)]);
    return r;
}

std::vector<Vec> InducedModule::tensor_act_gamma(const std::vector<Vec>& m, Coeff j) const {
    std::vector<Vec> r(m.size());
    for (Coeff a = 0; a < pn_; ++a)
        r[static_cast<size_t>(a)] = m[static_cast<size_t>(mod_index(a - j, pn_))];
    return r;
}

std::vector<Vec> InducedModule::tensor_act_galois(const std::vector<Vec>& m, Coeff c) const {
    std::vector<Vec> r(m.size());
    for (Coeff a = 0; a < pn_; ++a)
        r[static_cast<size_t>(a)] = base_.act(c, m[static_cast<size_t>(mod_index(a + c, pn_))]);
    return r;
}

InducedElem InducedModule::basis(size_t i, Coeff a) const {
    std::vector<Vec> m(static_cast<size_t>(pn_), zero_vec(base_.rank()));
    m[static_cast<size_t>(a)][i] = 1;
    return from_mu(m);
}

InducedElem InducedModule::add(const InducedElem& a, const InducedElem& b) const {
    InducedElem r = a;
    for (size_t i = 0; i < r.values.size(); ++i)
        r.values[i] = vec_add(base_.spec, a.values[i], b.values[i]);
    return r;
}

InducedElem InducedModule::scale(const InducedElem& a, Coeff c) const {
    InducedElem r = a;
    for (auto& v : r.values)
        v = vec_scale(base_.spec, v, c);
    return r;
}

InducedElem InducedModule::include(const InducedElem& f, const InducedModule& higher) const {
    if (higher.level_ < level_)
        throw DomainError("include: target level below source level");
    InducedElem r = higher.zero();
    for (Coeff a = 0; a < higher.pn_; ++a)
        r.values[static_cast<size_t>(a)] = value(f, a);
    return r;
}

InducedElem InducedModule::corestrict(const InducedElem& f, const InducedModule& lower) const {
    if (lower.level_ > level_)
        throw DomainError("corestrict: target level above source level");
    InducedElem r = lower.zero();
    Coeff steps = pn_ / lower.pn_;
    for (Coeff a = 0; a < lower.pn_; ++a) {
        Vec acc = zero_vec(base_.rank());
        for (Coeff i = 0; i < steps; ++i) {
            Coeff h = lower.pn_ * i;
            acc = vec_add(base_.spec, acc, base_.act(-h, value(f, a + h)));
        }
        r.values[static_cast<size_t>(a)] = acc;
    }
    return r;
}

Matrix frobenius_reciprocity(const Vec& functional, const FiniteModule& a, int level) {
    const RingSpec& s = a.spec();
    size_t d = a.dim();
    if (functional.size() != d)
        throw DomainError("frobenius_reciprocity: functional has wrong length");
    for (const auto& r : a.relations().rows()) {
        Coeff v = 0;
        for (size_t i = 0; i < d; ++i)
            v = s.add(v, s.mul(r[i], functional[i]));
        if (v != 0)
            throw DomainError("frobenius_reciprocity: functional does not vanish on the relations");
    }
    Coeff pn = group_order(s, level);
    const Matrix& top = a.gamma_power(pn);
    for (size_t i = 0; i < d; ++i)
        if (!a.is_zero(vec_sub(s, top[i], unit_vec(d, i))))
            throw DomainError("frobenius_reciprocity: level " + std::to_string(level) +
                              " too small, module not killed by gamma^{p^n} - 1");
    Matrix phi(d, Vec(static_cast<size_t>(pn), 0));
    for (Coeff j = 0; j < pn; ++j) {
        const Matrix& g = a.gamma_power(-j);
        for (size_t r = 0; r < d; ++r) {
            Coeff v = 0;
            for (size_t c = 0; c < d; ++c)
                v = s.add(v, s.mul(g[r][c], functional[c]));
            phi[r][static_cast<size_t>(j)] = v;
        }
    }
    return phi;
}

Vec frobenius_inverse(const Matrix& big_phi) {
    Vec r;
    for (const auto& row : big_phi)
        r.push_back(row.empty() ? 0 : row[0]);
    return r;
}

bool is_perfect_form(const RingSpec& spec, const Matrix& e) {
    for (const auto& row : e)
        if (row.size() != e.size())
            return false;
    return spec.is_unit(determinant(spec, e));
}

ConvolutionPairing::ConvolutionPairing(InducedModule s, InducedModule t, Matrix e)
    : s_(std::move(s)), t_(std::move(t)), e_(std::move(e)) {
    if (s_.level() != t_.level())
        throw DomainError("convolution_pairing: levels differ");
    if (e_.size() != s_.base().rank() || !is_perfect_form(s_.base().spec, e_) || e_.size() != t_.base().rank())
        throw DomainError("convolution_pairing: e is not perfect");
}

GroupRingElem ConvolutionPairing::operator()(const InducedElem& s, const InducedElem& t) const {
    const RingSpec& sp = s_.base().spec;
    auto ms = s_.mu(s), mt = t_.mu(t);
    Coeff pn = s_.size();
    std::vector<Coeff> out(static_cast<size_t>(pn), 0);
    for (Coeff c = 0; c < pn; ++c) {
        Coeff acc = 0;
        for (Coeff a = 0; a < pn; ++a) {
            const Vec& x = ms[static_cast<size_t>(a)];
            const Vec& y = mt[static_cast<size_t>(mod_index(a - c, pn))];
            for (size_t i = 0; i < x.size(); ++i)
                if (x[i] != 0)
                    for (size_t j = 0; j < y.size(); ++j)
                        acc = sp.add(acc, sp.mul(x[i], sp.mul(e_[i][j], y[j])));
        }
        out[static_cast<size_t>(c)] = acc;
    }
    return GroupRingElem(sp, s_.level(), out);
}

Matrix ConvolutionPairing::evaluation_matrix() const {
    std::vector<InducedElem> lb, rb;
    for (Coeff a = 0; a < s_.size(); ++a) {
        for (size_t i = 0; i < s_.base().rank(); ++i)
            lb.push_back(s_.basis(i, a));
        for (size_t i = 0; i < t_.base().rank(); ++i)
            rb.push_back(t_.basis(i, a));
    }
    Matrix m(lb.size(), Vec(rb.size(), 0));
    for (size_t i = 0; i < lb.size(); ++i)
        for (size_t j = 0; j < rb.size(); ++j)
            m[i][j] = (*this)(lb[i], rb[j]).identity_coefficient();
    return m;
}

bool ConvolutionPairing::is_perfect() const {
    return s_.base().spec.is_unit(determinant(s_.base().spec, evaluation_matrix()));
}

} // namespace dh
