#include "dh/heights.hpp"

namespace dh {

std::string to_string(Symmetry s) {
    switch (s) {
    case Symmetry::IotaSymmetric:
        return "iota-symmetric";
    case Symmetry::IotaAntisymmetric:
        return "iota-antisymmetric";
    default:
        return "none";
    }
}

Symmetry symmetry_from_string(const std::string& s) {
    if (s == "none")
        return Symmetry::None;
    if (s == "iota-symmetric")
        return Symmetry::IotaSymmetric;
    if (s == "iota-antisymmetric")
        return Symmetry::IotaAntisymmetric;
    throw ValidationError("unknown symmetry type '" + s + "'");
}

int expected_sign(Symmetry s, int r) {
    int base = (r % 2 == 0) ? 1 : -1;
    if (s == Symmetry::IotaSymmetric)
        return base;
    if (s == Symmetry::IotaAntisymmetric)
        return -base;
    return 0;
}

PolePairing::PolePairing(FiniteModule left, FiniteModule right, const std::vector<std::vector<PoleElem>>& table,
                         Symmetry symmetry)
    : left_(std::move(left)), right_(std::move(right)), symmetry_(symmetry) {
    if (!left_.spec().same_ring(right_.spec()))
        throw DomainError("PolePairing: modules over different rings");
    if (table.size() != left_.dim())
        throw DomainError("PolePairing: table has " + std::to_string(table.size()) + " rows, expected " +
                          std::to_string(left_.dim()));
    for (const auto& row : table) {
        if (row.size() != right_.dim())
            throw DomainError("PolePairing: table row has wrong length");
        for (const auto& x : row)
            level_ = std::max(level_, x.level());
    }
    num_.assign(left_.dim(), std::vector<GroupRingElem>(right_.dim(), GroupRingElem(spec(), level_)));
    for (size_t i = 0; i < table.size(); ++i)
        for (size_t j = 0; j < table[i].size(); ++j)
            num_[i][j] = table[i][j].numerator_at(level_);
}

PoleElem PolePairing::operator()(const Vec& s, const Vec& t) const {
    const RingSpec& sp = spec();
    std::vector<Coeff> acc(static_cast<size_t>(group_order(sp, level_)), 0);
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0)
            continue;
        for (size_t j = 0; j < t.size(); ++j) {
            if (t[j] == 0)
                continue;
            Coeff c = sp.mul(s[i], t[j]);
            const auto& n = num_[i][j].coeffs();
            for (size_t e = 0; e < acc.size(); ++e)
                acc[e] = sp.add(acc[e], sp.mul(c, n[e]));
        }
    }
    return PoleElem(GroupRingElem(sp, level_, std::move(acc)));
}

bool PolePairing::respects_relations() const {
    for (const auto& r : left_.relations().rows())
        for (size_t j = 0; j < right_.dim(); ++j)
            if (!(*this)(r, unit_vec(right_.dim(), j)).is_zero())
                return false;
    for (const auto& r : right_.relations().rows())
        for (size_t i = 0; i < left_.dim(); ++i)
            if (!(*this)(unit_vec(left_.dim(), i), r).is_zero())
                return false;
    return true;
}

bool PolePairing::is_semilinear() const {
    int lv = std::max({level_, left_.level(), right_.level()});
    GroupRingElem g = GroupRingElem::group_element(spec(), lv, 1);
    const Matrix& gl = left_.gamma();
    const Matrix& gr_inv = right_.gamma_power(-1);
    for (size_t i = 0; i < left_.dim(); ++i)
        for (size_t j = 0; j < right_.dim(); ++j) {
            PoleElem base = PoleElem(num_[i][j]).act(g);
            Vec ej = unit_vec(right_.dim(), j);
            Vec ei = unit_vec(left_.dim(), i);
            if (!((*this)(gl[i], ej) == base) || !((*this)(ei, gr_inv[j]) == base))
                return false;
        }
    return true;
}

bool PolePairing::has_declared_symmetry() const {
    if (symmetry_ == Symmetry::None)
        return true;
    if (left_.dim() != right_.dim())
        return false;
    int eps = symmetry_ == Symmetry::IotaSymmetric ? 1 : -1;
    for (size_t i = 0; i < left_.dim(); ++i)
        for (size_t j = 0; j < right_.dim(); ++j) {
            PoleElem other = pole_involution(PoleElem(num_[j][i]));
            if (!(PoleElem(num_[i][j]) == (eps == 1 ? other : -other)))
                return false;
        }
    return true;
}

void PolePairing::validate() const {
    if (!respects_relations())
        throw ValidationError("pairing does not vanish on the relations");
    if (!is_semilinear())
        throw ValidationError("pairing is not semilinear: [gamma s, t] = gamma [s, t] = [s, gamma^-1 t] fails");
    if (!has_declared_symmetry())
        throw ValidationError("pairing does not satisfy its declared symmetry (" + to_string(symmetry_) + ")");
}

static std::vector<Coeff> level_modulus_coeffs(const RingSpec& spec, int level) {
    Coeff pn = group_order(spec, level);
    std::vector<Coeff> c(static_cast<size_t>(pn) + 1, 0);
    c[0] = 1;
    for (Coeff i = 0; i < pn; ++i)
        for (size_t e = static_cast<size_t>(i) + 1; e > 0; --e)
            c[e] = spec.add(c[e], c[e - 1]);
    c[0] = spec.sub(c[0], 1);
    return c;
}

GroupRingElem block_pairing_numerator(const RingSpec& spec, int level, const Block& b) {
    if (!block_fits_level(spec, b, level))
        throw DomainError("block " + b.to_string() + " does not fit level " + std::to_string(level));
    if (b.kind == Block::Kind::Level)
        return GroupRingElem::relative_norm(spec, level, b.param);
    int j = b.param;
    auto m = level_modulus_coeffs(spec, level);
    std::vector<Coeff> q(m.begin() + j, m.end());
    GroupRingElem g = GroupRingElem::from_t_poly(spec, level, q);
    Coeff pn = group_order(spec, level);
    Coeff a;
    if (spec.p == 2) {
        if (j % 2 != 0)
            throw DomainError("jet blocks of odd length need p odd");
        a = j / 2;
    } else {
        a = (static_cast<Coeff>(j) * ((pn + 1) / 2)) % pn;
    }
    return g * GroupRingElem::group_element(spec, level, a);
}

int block_self_symmetry(const RingSpec&, const Block& b) {
    if (b.kind == Block::Kind::Level)
        return -1;
    return b.param % 2 == 0 ? 1 : -1;
}

PolePairing block_pairing(const RingSpec& spec, int level, const std::vector<PairingBlock>& blocks) {
    std::vector<Block> mods;
    std::vector<int> types;
    for (const auto& pb : blocks) {
        if (!spec.is_unit(pb.c))
            throw DomainError("block_pairing: coefficient " + std::to_string(pb.c) + " is not a unit");
        mods.push_back(pb.block);
        if (pb.swap)
            mods.push_back(pb.block);
        int eps = block_self_symmetry(spec, pb.block);
        types.push_back(pb.swap ? -eps : eps);
    }
    FiniteModule m = FiniteModule::blocks(spec, level, mods);
    std::vector<std::vector<PoleElem>> table(m.dim(), std::vector<PoleElem>(m.dim(), PoleElem(spec)));
    size_t bi = 0;
    for (const auto& pb : blocks) {
        GroupRingElem g = block_pairing_numerator(spec, level, pb.block).scaled(spec.reduce(pb.c));
        size_t d = m.block_size(bi);
        size_t o1 = m.block_offset(bi);
        size_t o2 = pb.swap ? m.block_offset(bi + 1) : o1;
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) {
                GroupRingElem v = generator_power(spec, level, 1, static_cast<int>(a)) *
                                  generator_power(spec, level, 1, static_cast<int>(b)).involution() * g;
                table[o1 + a][o2 + b] = PoleElem(v);
                if (pb.swap)
                    table[o2 + a][o1 + b] = PoleElem(-v);
            }
        bi += pb.swap ? 2 : 1;
    }
    Symmetry sym = Symmetry::IotaAntisymmetric;
    if (!types.empty()) {
        bool same = std::all_of(types.begin(), types.end(), [&](int t) { return t == types[0]; });
        sym = !same ? Symmetry::None : (types[0] == 1 ? Symmetry::IotaSymmetric : Symmetry::IotaAntisymmetric);
    }
    return PolePairing(m, m, table, sym);
}

Coeff pre_height(const PolePairing& pairing, const Vec& s, const Vec& t, Coeff u) {
    const RingSpec& sp = pairing.spec();
    Coeff ui = sp.inverse(sp.reduce(u));
    return sp.mul(phi(u, pairing(s, t)), sp.mul(ui, ui));
}

JGradedValue height(const PolePairing& pairing, const Vec& s, const Vec& t, Coeff u) {
    const RingSpec& sp = pairing.spec();
    return {1, sp.mul(sp.reduce(u), pre_height(pairing, s, t, u))};
}

namespace {

Vec derived_preimage(const FiniteModule& m, int r, const Vec& x, Coeff u) {
    if (!derived_submodule(m, r, u).contains(x))
        throw DomainError("derived height: element is not in the r = " + std::to_string(r) + " derived submodule");
    auto pre = m.preimage(generator_power(m.spec(), m.level(), u, r - 1), x, j_torsion(m, r));
    if (!pre)
        throw DomainError("derived height: no preimage in the J^r-torsion");
    return *pre;
}

Coeff derived_coeff_from_preimage(const PolePairing& pairing, int r, const Vec& xpre, const Vec& y, Coeff u) {
    const RingSpec& sp = pairing.spec();
    return sp.mul(sp.pow(sp.reduce(u), r), pre_height(pairing, xpre, y, u));
}

Matrix transpose(const Matrix& a, size_t cols) {
    Matrix t(cols, Vec(a.size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < cols; ++j)
            t[j][i] = a[i][j];
    return t;
}

// Submodule {a . gens : a H = 0}.
HowellBasis gram_kernel(const FiniteModule& m, const Matrix& gens, const Matrix& h, size_t cols) {
    const RingSpec& s = m.spec();
    if (gens.empty())
        return m.zero();
    if (cols == 0)
        return m.o_span(gens);
    HowellBasis ker = kernel(s, h, cols, HowellBasis(s, cols));
    Matrix xs;
    for (const auto& a : ker.rows()) {
        Vec x = zero_vec(m.dim());
        for (size_t i = 0; i < gens.size(); ++i)
            x = vec_add(s, x, vec_scale(s, gens[i], a[i]));
        xs.push_back(x);
    }
    return m.o_span(xs);
}

} // namespace

JGradedValue derived_height(const PolePairing& pairing, int r, const Vec& x, const Vec& y, Coeff u) {
    if (r < 1)
        throw DomainError("derived_height: r must be >= 1");
    if (!derived_submodule(pairing.right(), r, u).contains(y))
        throw DomainError("derived height: right element is not in the r = " + std::to_string(r) +
                          " derived submodule");
    Vec xp = derived_preimage(pairing.left(), r, x, u);
    return {r, derived_coeff_from_preimage(pairing, r, xp, y, u)};
}

KernelPair height_kernels(const PolePairing& pairing, Coeff u) {
    const FiniteModule& m = pairing.left();
    const FiniteModule& n = pairing.right();
    Matrix h(m.dim(), Vec(n.dim(), 0));
    for (size_t i = 0; i < m.dim(); ++i)
        for (size_t j = 0; j < n.dim(); ++j)
            h[i][j] = height(pairing, unit_vec(m.dim(), i), unit_vec(n.dim(), j), u).coeff;
    return {gram_kernel(m, identity_matrix(m.dim()), h, n.dim()),
            gram_kernel(n, identity_matrix(n.dim()), transpose(h, n.dim()), m.dim())};
}

KernelPair derived_kernels(const PolePairing& pairing, int r, Coeff u) {
    const FiniteModule& m = pairing.left();
    const FiniteModule& n = pairing.right();
    Matrix lg = m.generators(derived_submodule(m, r, u));
    Matrix rg = n.generators(derived_submodule(n, r, u));
    Matrix h(lg.size(), Vec(rg.size(), 0));
    for (size_t i = 0; i < lg.size(); ++i) {
        Vec xp = derived_preimage(m, r, lg[i], u);
        for (size_t j = 0; j < rg.size(); ++j)
            h[i][j] = derived_coeff_from_preimage(pairing, r, xp, rg[j], u);
    }
    return {gram_kernel(m, lg, h, rg.size()), gram_kernel(n, rg, transpose(h, rg.size()), lg.size())};
}

KernelPair derived_kernels_bruteforce(const PolePairing& pairing, int r, size_t max_size, Coeff u) {
    const FiniteModule& m = pairing.left();
    const FiniteModule& n = pairing.right();
    HowellBasis mr = derived_submodule(m, r, u), nr = derived_submodule(n, r, u);
    Matrix lg = m.generators(mr), rg = n.generators(nr);
    Matrix lk, rk;
    for (const auto& x : m.enumerate(mr, max_size)) {
        bool zero = true;
        for (const auto& y : rg)
            zero = zero && derived_height(pairing, r, x, y, u).coeff == 0;
        if (zero)
            lk.push_back(x);
    }
    for (const auto& y : n.enumerate(nr, max_size)) {
        bool zero = true;
        for (const auto& x : lg)
            zero = zero && derived_height(pairing, r, x, y, u).coeff == 0;
        if (zero)
            rk.push_back(y);
    }
    return {m.o_span(lk), n.o_span(rk)};
}

std::optional<bool> sign_law_holds(const PolePairing& pairing, int r) {
    if (pairing.symmetry() == Symmetry::None)
        return std::nullopt;
    const FiniteModule& m = pairing.left();
    if (m.dim() != pairing.right().dim() || m.gamma() != pairing.right().gamma())
        throw DomainError("sign law: left and right modules differ");
    const RingSpec& s = m.spec();
    Coeff sign = expected_sign(pairing.symmetry(), r) == 1 ? 1 : s.neg(1);
    Matrix g = m.generators(derived_submodule(m, r));
    for (const auto& x : g)
        for (const auto& y : g)
            if (derived_height(pairing, r, x, y).coeff != s.mul(sign, derived_height(pairing, r, y, x).coeff))
                return false;
    return true;
}

RestrictedKernelReport restricted_kernel_check(const PolePairing& pairing, const GroupRingElem& l0,
                                               const GroupRingElem& l1, size_t max_size) {
    const FiniteModule& m = pairing.left();
    const FiniteModule& n = pairing.right();
    GroupRingElem a = l0.level() > m.level() ? l0.project(m.level()) : l0;
    GroupRingElem b = l1.level() > m.level() ? l1.project(m.level()) : l1;
    if (a.level() != m.level() || b.level() != m.level())
        throw DomainError("restricted_kernel_check: multipliers must live at the module level or above");
    HowellBasis ma = m.torsion(a), nb = n.torsion(b);
    Matrix mg = m.generators(ma), ng = n.generators(nb);
    RestrictedKernelReport rep;
    Matrix lk, rk;
    for (const auto& x : m.enumerate(ma, max_size)) {
        bool zero = true;
        for (const auto& y : ng)
            zero = zero && height(pairing, x, y).coeff == 0;
        if (zero)
            lk.push_back(x);
    }
    for (const auto& y : n.enumerate(nb, max_size)) {
        bool zero = true;
        for (const auto& x : mg)
            zero = zero && height(pairing, x, y).coeff == 0;
        if (zero)
            rk.push_back(y);
    }
    rep.left_kernel = m.o_span(lk);
    rep.right_kernel = n.o_span(rk);
    rep.left_predicted = m.image(b.involution(), m.torsion(a * b.involution()));
    rep.right_predicted = n.image(a.involution(), n.torsion(b * a.involution()));
    return rep;
}

Matrix involution_matrix(const FiniteModule& m) {
    if (m.block_list().empty() && m.dim() != 0)
        throw DomainError("involution_matrix: needs a block module");
    Matrix out(m.dim());
    for (size_t bi = 0; bi < m.block_list().size(); ++bi) {
        size_t o = m.block_offset(bi);
        Vec e = unit_vec(m.dim(), o);
        for (size_t a = 0; a < m.block_size(bi); ++a)
            out[o + a] = m.act(generator_power(m.spec(), m.level(), 1, static_cast<int>(a)).involution(), e);
    }
    return out;
}

static void check_twist_automorphism(const FiniteModule& m, const Matrix& sigma, Coeff omega, const char* side) {
    const RingSpec& s = m.spec();
    std::string who = std::string("twist (") + side + "): ";
    if (sigma.size() != m.dim())
        throw DomainError(who + "matrix has wrong size");
    for (const auto& row : sigma)
        if (row.size() != m.dim())
            throw DomainError(who + "matrix has wrong size");
    for (const auto& r : m.relations().rows())
        if (!m.is_zero(apply(s, r, sigma, m.dim())))
            throw DomainError(who + "does not preserve the relations");
    if (!(image(s, m.whole(), sigma, m.dim()).sum(m.zero()) == m.whole()))
        throw DomainError(who + "not surjective, hence not an automorphism");
    const Matrix& gw = m.gamma_power(omega);
    for (size_t i = 0; i < m.dim(); ++i) {
        Vec lhs = apply(s, m.gamma()[i], sigma, m.dim());
        Vec rhs = apply(s, sigma[i], gw, m.dim());
        if (!m.equal(lhs, rhs))
            throw DomainError(who + "does not intertwine gamma with gamma^omega");
    }
}

bool twist_equivariance_check(const PolePairing& pairing, const Matrix& sigma_left, const Matrix& sigma_right,
                              Coeff omega) {
    const RingSpec& s = pairing.spec();
    if (!s.is_unit(omega))
        throw DomainError("twist: omega must be a unit");
    const FiniteModule& m = pairing.left();
    const FiniteModule& n = pairing.right();
    check_twist_automorphism(m, sigma_left, omega, "left");
    check_twist_automorphism(n, sigma_right, omega, "right");
    for (size_t i = 0; i < m.dim(); ++i)
        for (size_t j = 0; j < n.dim(); ++j) {
            Coeff lhs = height(pairing, sigma_left[i], sigma_right[j]).coeff;
            Coeff rhs = s.mul(s.reduce(omega), height(pairing, unit_vec(m.dim(), i), unit_vec(n.dim(), j)).coeff);
            if (lhs != rhs)
                return false;
        }
    return true;
}

} // namespace dh
