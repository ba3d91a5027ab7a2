#include "dh/lfun.hpp"

#include <random>
#include <sstream>

namespace dh {

int nilpotency_index(const FiniteModule& m) {
    Matrix t = m.action_matrix(generator_power(m.spec(), m.level(), 1, 1));
    Matrix pw = identity_matrix(m.dim());
    int bound = m.spec().k * static_cast<int>(group_order(m.spec(), m.level())) + 1;
    for (int s = 0; s <= bound; ++s) {
        bool zero = true;
        for (const auto& row : pw)
            zero = zero && m.is_zero(row);
        if (zero)
            return s;
        pw = mat_mul(m.spec(), pw, t, m.dim());
    }
    throw DomainError("nilpotency_index: T is not nilpotent on the module");
}

namespace {

Coeff dot(const RingSpec& s, const Vec& a, const Vec& b) {
    Coeff r = 0;
    for (size_t i = 0; i < a.size(); ++i)
        r = s.add(r, s.mul(a[i], b[i]));
    return r;
}

Coeff pair_vec(const LfunInstance& inst, const std::vector<IwasawaPoly>& x, const Vec& d, int support) {
    const RingSpec& s = inst.spec;
    Coeff acc = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].precision() < support - 1)
            throw PrecisionError("duality pairing: coordinate " + std::to_string(i) + " known to T^" +
                                 std::to_string(x[i].precision()) + ", need T^" + std::to_string(support - 1));
        for (int e = 0; e < support && e <= s.cap; ++e)
            if (x[i][e] != 0)
                acc = s.add(acc, s.mul(x[i][e], dot(s, inst.duality[i][static_cast<size_t>(e)], d)));
    }
    return acc;
}

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

} // namespace

Coeff duality_pair(const LfunInstance& inst, const std::vector<IwasawaPoly>& x, const Vec& d) {
    if (x.size() != inst.rank())
        throw DomainError("duality pairing: wrong rank");
    return pair_vec(inst, x, d, nilpotency_index(inst.d_loc));
}

OrderOfVanishing ord_by_divisibility(const LfunInstance& inst) {
    OrderOfVanishing o;
    for (const auto& f : inst.l_z)
        if (auto v = j_valuation(f))
            o.value = o.value ? std::min(*o.value, *v) : *v;
    return o;
}

OrderOfVanishing ord_by_annihilation(const LfunInstance& inst) {
    const FiniteModule& d = inst.d_loc;
    int nil = nilpotency_index(d);
    for (int r = 1; r <= nil; ++r) {
        for (const auto& g : d.generators(j_torsion(d, r)))
            if (pair_vec(inst, inst.l_z, g, nil) != 0)
                return {r - 1};
    }
    return {};
}

OrderOfVanishing order_of_vanishing(const LfunInstance& inst) {
    OrderOfVanishing a = ord_by_divisibility(inst), b = ord_by_annihilation(inst);
    if (!(a == b))
        throw ValidationError("order of vanishing: J-divisibility gives " + a.to_string() +
                              " but annihilation of D[J^r] gives " + b.to_string());
    return a;
}

std::vector<IwasawaPoly> der(const LfunInstance& inst, int r, Coeff u) {
    const RingSpec& s = inst.spec;
    if (r < 0)
        throw DomainError("der: r must be >= 0");
    if (!s.is_unit(u))
        throw DomainError("der: u must be a unit");
    OrderOfVanishing o = ord_by_divisibility(inst);
    if (o.value && r > *o.value)
        throw DomainError("der: L_z is not divisible by J^" + std::to_string(r) + " (ord = " + o.to_string() + ")");
    IwasawaPoly winv = (IwasawaPoly::one_plus_t_pow(s, u) - IwasawaPoly::constant(s, 1)).shift_down(1).inverse();
    IwasawaPoly wr = IwasawaPoly::constant(s, 1);
    for (int i = 0; i < r; ++i)
        wr = wr * winv;
    std::vector<IwasawaPoly> out;
    for (const auto& f : inst.l_z)
        out.push_back(f.shift_down(r) * wr);
    return out;
}

JGradedValue lambda_special(const LfunInstance& inst, int r, const Vec& c, Coeff u) {
    const RingSpec& s = inst.spec;
    if (!j_torsion(inst.d_loc, 1).contains(c))
        throw DomainError("lambda_special: argument is not in D_loc[J]");
    return {r, s.mul(s.pow(s.reduce(u), r), duality_pair(inst, der(inst, r, u), c))};
}

bool lambda_vanishes(const LfunInstance& inst, int r, Coeff u) {
    for (const auto& g : inst.d_loc.generators(j_torsion(inst.d_loc, 1)))
        if (lambda_special(inst, r, g, u).coeff != 0)
            return false;
    return true;
}

void validate_instance(const LfunInstance& inst) {
    const RingSpec& s = inst.spec;
    const FiniteModule& d = inst.d_loc;
    if (inst.rank() == 0)
        throw ValidationError("instance: Z_s has rank 0");
    if (!d.spec().same_ring(s) || !inst.global.spec().same_ring(s))
        throw ValidationError("instance: modules over different coefficient rings");
    for (const auto& f : inst.l_z)
        if (!f.spec().same_ring(s) || f.cap() != s.cap)
            throw ValidationError("instance: L_z coordinates must use the instance ring and cap");
    if (inst.duality.size() != inst.rank())
        throw ValidationError("instance: duality table rank mismatch");
    for (const auto& rows : inst.duality) {
        if (rows.size() != static_cast<size_t>(s.cap) + 1)
            throw ValidationError("instance: duality table needs cap + 1 powers of T");
        for (const auto& v : rows)
            if (v.size() != d.dim())
                throw ValidationError("instance: duality table row has wrong length");
    }
    int nil = nilpotency_index(d);
    if (nil > s.cap + 1)
        throw ValidationError("instance: T-degree cap too small for D_loc (nilpotency " + std::to_string(nil) + ")");
    Matrix iota_t = d.action_matrix(generator_power(s, d.level(), 1, 1).involution());
    for (size_t i = 0; i < inst.rank(); ++i) {
        for (int e = 0; e <= s.cap; ++e) {
            const Vec& row = inst.duality[i][static_cast<size_t>(e)];
            for (const auto& rel : d.relations().rows())
                if (dot(s, row, rel) != 0)
                    throw ValidationError("instance: duality does not vanish on the relations of D_loc");
            if (e == s.cap)
                continue;
            const Vec& next = inst.duality[i][static_cast<size_t>(e) + 1];
            for (size_t b = 0; b < d.dim(); ++b)
                if (next[b] != dot(s, row, iota_t[b]))
                    throw ValidationError("instance: adjunction <T x, d> = <x, iota(T) d> fails at coordinate " +
                                          std::to_string(i) + ", T^" + std::to_string(e));
        }
    }
    try {
        inst.global.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("instance: global pairing: ") + e.what());
    }
    const FiniteModule& ms = inst.global.left();
    const FiniteModule& mt = inst.global.right();
    if (inst.z0.size() != ms.dim() || inst.z0_relaxed.size() != inst.rank())
        throw ValidationError("instance: z0 has the wrong shape");
    if (!j_torsion(ms, 1).contains(inst.z0))
        throw ValidationError("instance: z0 is not killed by J");
    if (inst.localization.size() != mt.dim())
        throw ValidationError("instance: localization has wrong number of rows");
    for (const auto& row : inst.localization)
        if (row.size() != d.dim())
            throw ValidationError("instance: localization row has wrong length");
    for (const auto& rel : mt.relations().rows())
        if (!d.is_zero(apply(s, rel, inst.localization, d.dim())))
            throw ValidationError("instance: localization does not respect relations");
    for (size_t i = 0; i < mt.dim(); ++i) {
        Vec lhs = apply(s, mt.gamma()[i], inst.localization, d.dim());
        Vec rhs = apply(s, inst.localization[i], d.gamma(), d.dim());
        if (!d.equal(lhs, rhs))
            throw ValidationError("instance: localization is not Lambda-linear");
    }
    order_of_vanishing(inst);
}

CheckReport main_theorem_check(const LfunInstance& inst, int r_max) {
    validate_instance(inst);
    const RingSpec& s = inst.spec;
    CheckReport rep;
    OrderOfVanishing ord = order_of_vanishing(inst);
    rep.add("ord(L_z) = max{r : J^r | L_z} = max{r : L_z(D[J^r]) = 0}", true, "ord = " + ord.to_string());

    bool strict = vec_is_zero(inst.z0_relaxed);
    bool l0 = lambda_vanishes(inst, 0);
    rep.add("(a) lambda^(0) = 0 <=> z0 in strict submodule", l0 == strict,
            std::string("lambda^(0) = 0: ") + (l0 ? "yes" : "no") + ", z0 strict: " + (strict ? "yes" : "no"));

    int top = ord.value ? std::min(*ord.value, r_max) : r_max;
    Coeff u2 = s.is_unit(2) ? 2 : 3;
    for (int r = 0; r <= top; ++r) {
        bool vanishes = lambda_vanishes(inst, r);
        bool expect = !ord.value || r < *ord.value;
        rep.add("(b) r=" + std::to_string(r) + ": lambda^(r)|D[J] = 0 <=> r < ord", vanishes == expect,
                std::string("vanishes: ") + (vanishes ? "yes" : "no"));
        bool indep = true;
        for (const auto& g : inst.d_loc.generators(j_torsion(inst.d_loc, 1)))
            indep = indep && lambda_special(inst, r, g, 1) == lambda_special(inst, r, g, u2);
        rep.add("r=" + std::to_string(r) + ": lambda^(r)_gamma = lambda^(r)_{gamma^" + std::to_string(u2) + "}",
                indep);
    }

    const FiniteModule& ms = inst.global.left();
    const FiniteModule& mt = inst.global.right();
    for (int r = 1; r <= top; ++r) {
        bool member = strict && derived_submodule(ms, r).contains(inst.z0);
        rep.add("(c) r=" + std::to_string(r) + ": z0 in M_S^(r)", member, "z0 = " + vec_str(inst.z0));
        if (!member) {
            rep.add("(c) r=" + std::to_string(r) + ": h^(r)(z0, c) = lambda^(r)(c_p)", false, "z0 not in M_S^(r)");
            continue;
        }
        bool all = true;
        std::string detail;
        for (const auto& c : mt.generators(derived_submodule(mt, r))) {
            Coeff lhs = derived_height(inst.global, r, inst.z0, c).coeff;
            Coeff rhs = lambda_special(inst, r, apply(s, c, inst.localization, inst.d_loc.dim())).coeff;
            if (lhs != rhs) {
                all = false;
                detail += "c = " + vec_str(c) + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs) + "; ";
            }
        }
        rep.add("(c) r=" + std::to_string(r) + ": h^(r)(z0, c) = lambda^(r)(c_p)", all, detail);
    }
    return rep;
}

namespace {

// Stable across standard libraries: raw engine output reduced modulo n.
Coeff draw(std::mt19937_64& rng, Coeff n) { return static_cast<Coeff>(rng() % static_cast<std::uint64_t>(n)); }

Coeff draw_unit(std::mt19937_64& rng, const RingSpec& s) {
    for (;;) {
        Coeff u = draw(rng, s.modulus());
        if (s.is_unit(u))
            return u;
    }
}

} // namespace

std::vector<std::vector<Vec>> canonical_duality(const RingSpec& s, int level,
                                                const std::vector<PairingBlock>& global_blocks,
                                                const FiniteModule& d_loc) {
    const auto& loc = d_loc.block_list();
    if (loc.size() != global_blocks.size())
        throw ValidationError("canonical duality: need one local block per global block");
    Coeff pn = group_order(s, level);
    for (size_t i = 0; i < loc.size(); ++i)
        if (loc[i] != Block::level(level) || global_blocks[i].block.kind != Block::Kind::Jet || global_blocks[i].swap)
            throw ValidationError("canonical duality: needs unswapped jet blocks against Level(N) local blocks");
    GroupRingElem g = block_pairing_numerator(s, level, Block::level(level));
    std::vector<std::vector<Vec>> out(loc.size(),
                                      std::vector<Vec>(static_cast<size_t>(s.cap) + 1, zero_vec(d_loc.dim())));
    for (size_t i = 0; i < loc.size(); ++i) {
        int eps = block_self_symmetry(s, loc[i]) * block_self_symmetry(s, global_blocks[i].block);
        Coeff kappa = s.mul(global_blocks[i].c, eps == 1 ? 1 : s.neg(1));
        size_t off = d_loc.block_offset(i);
        for (int e = 0; e <= s.cap; ++e) {
            GroupRingElem te = generator_power(s, level, 1, e);
            for (Coeff b = 0; b < pn; ++b) {
                GroupRingElem num = (te * generator_power(s, level, 1, static_cast<int>(b)).involution() * g).scaled(kappa);
                out[i][static_cast<size_t>(e)][off + static_cast<size_t>(b)] = phi(1, PoleElem(num));
            }
        }
    }
    return out;
}

LfunInstance build_synthetic(std::uint64_t seed, const SyntheticParams& prm) {
    if (prm.k != 1)
        throw DomainError("build_synthetic: only k = 1 is supported");
    if (!is_prime(prm.p) || prm.p == 2)
        throw DomainError("build_synthetic: p must be an odd prime");
    if (prm.level < 0 || prm.ord < 0)
        throw DomainError("build_synthetic: level and ord must be >= 0");
    RingSpec base(prm.p, 1, 1);
    int pn = static_cast<int>(group_order(base, prm.level));
    if (prm.ord >= pn)
        throw DomainError("build_synthetic: ord must be below p^N = " + std::to_string(pn));
    std::vector<int> blocks = prm.blocks.empty() ? std::vector<int>{std::max(prm.ord, 1)} : prm.blocks;
    size_t main = blocks.size();
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i] < 1 || blocks[i] > pn)
            throw DomainError("build_synthetic: block lengths must lie in 1..p^N");
        if (main == blocks.size() && (prm.ord == 0 || blocks[i] <= prm.ord))
            main = i;
    }
    if (main == blocks.size())
        throw DomainError("build_synthetic: some block must have length <= ord");

    RingSpec s(prm.p, 1, pn + prm.ord + 2);
    std::mt19937_64 rng(seed);
    LfunInstance inst;
    inst.spec = s;
    inst.level = prm.level;

    std::vector<PairingBlock> pbs;
    std::vector<Block> loc;
    for (int d : blocks) {
        pbs.push_back({Block::jet(d), draw_unit(rng, s), false});
        loc.push_back(Block::level(prm.level));
    }
    inst.global = block_pairing(s, prm.level, pbs);
    inst.d_loc = FiniteModule::blocks(s, prm.level, loc);
    const FiniteModule& m = inst.global.left();

    // L_i = T^{m_i} v_i with v_i(0) a unit, m_i >= d_i (so L vanishes in M) except at ord = 0.
    for (size_t i = 0; i < blocks.size(); ++i) {
        int mi;
        if (i == main)
            mi = prm.ord;
        else if (prm.ord == 0)
            mi = static_cast<int>(draw(rng, blocks[i] + 1));
        else
            mi = std::max(blocks[i], prm.ord) + static_cast<int>(draw(rng, 2));
        std::vector<Coeff> c(static_cast<size_t>(s.cap) + 1, 0);
        if (mi <= s.cap) {
            c[static_cast<size_t>(mi)] = draw_unit(rng, s);
            for (int e = mi + 1; e <= s.cap; ++e)
                c[static_cast<size_t>(e)] = draw(rng, s.modulus());
        }
        inst.l_z.emplace_back(s, c);
    }

    inst.global_blocks = pbs;
    inst.duality = canonical_duality(s, prm.level, pbs, inst.d_loc);

    // Localization: T^a in block i -> T^{a + p^N - d_i} in local block i.
    inst.localization.assign(m.dim(), zero_vec(inst.d_loc.dim()));
    for (size_t i = 0; i < blocks.size(); ++i)
        for (int a = 0; a < blocks[i]; ++a)
            inst.localization[m.block_offset(i) + static_cast<size_t>(a)]
                             [inst.d_loc.block_offset(i) + static_cast<size_t>(a + pn - blocks[i])] = 1;

    // z0: image of L_z / T in M (zero when ord = 0); relaxed part L_z(0).
    inst.z0 = zero_vec(m.dim());
    inst.z0_relaxed = zero_vec(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) {
        inst.z0_relaxed[i] = inst.l_z[i][0];
        if (prm.ord == 0)
            continue;
        for (int a = 0; a < blocks[i]; ++a)
            inst.z0[m.block_offset(i) + static_cast<size_t>(a)] = inst.l_z[i][a + 1];
    }
    return inst;
}

} // namespace dh
