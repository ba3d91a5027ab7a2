#include "dh/lambdamod.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dh {

void ElementaryShape::validate() const {
    if (e_infinity < 0)
        throw DomainError("shape: e_infinity must be >= 0");
    for (auto [i, e] : j_blocks)
        if (i < 1 || e < 0)
            throw DomainError("shape: J-blocks need i >= 1 and multiplicity >= 0");
    for (const auto& f : coprime) {
        if (!f.spec().is_unit(f[0]))
            throw DomainError("shape: coprime part needs a unit constant term");
    }
}

std::vector<int> shape_dims(const ElementaryShape& shape, int r_max) {
    shape.validate();
    std::vector<int> dims(static_cast<size_t>(std::max(r_max, 0)), shape.e_infinity);
    for (auto [i, e] : shape.j_blocks)
        for (int r = 1; r <= std::min(i, r_max); ++r)
            dims[static_cast<size_t>(r - 1)] += e;
    return dims;
}

Invariants infer_invariants(const std::vector<int>& dims) {
    Invariants inv;
    if (dims.empty())
        return inv;
    for (size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 0)
            throw DomainError("infer_invariants: negative dimension at r = " + std::to_string(i + 1));
        if (i > 0 && dims[i] > dims[i - 1])
            throw DomainError("infer_invariants: sequence increases at r = " + std::to_string(i + 1));
    }
    if (dims.size() < 2 || dims[dims.size() - 1] != dims[dims.size() - 2])
        throw DomainError("infer_invariants: sequence has not stabilized (last two entries differ)");
    for (size_t i = 0; i + 1 < dims.size(); ++i)
        inv.e.push_back(dims[i] - dims[i + 1]);
    inv.e_infinity = dims.back();
    return inv;
}

ElementaryShape shape_from_invariants(const Invariants& inv) {
    ElementaryShape s;
    s.e_infinity = inv.e_infinity;
    for (size_t i = 0; i < inv.e.size(); ++i)
        if (inv.e[i] != 0)
            s.j_blocks.emplace_back(static_cast<int>(i + 1), inv.e[i]);
    return s;
}

static int exact_log(Coeff p, std::uint64_t n) {
    if (n == 0)
        throw DomainError("zp_rank_estimate: order must be positive");
    int e = 0;
    while (n % static_cast<std::uint64_t>(p) == 0) {
        n /= static_cast<std::uint64_t>(p);
        ++e;
    }
    if (n != 1)
        throw DomainError("zp_rank_estimate: order is not a power of p");
    return e;
}

RankEstimate zp_rank_estimate(Coeff p, const std::vector<std::pair<int, std::uint64_t>>& orders) {
    if (orders.size() < 2)
        throw DomainError("zp_rank_estimate: need orders for at least two precisions");
    std::vector<std::pair<int, int>> pts;
    for (auto [k, n] : orders)
        pts.emplace_back(k, exact_log(p, n));
    std::sort(pts.begin(), pts.end());
    std::vector<int> slopes;
    for (size_t i = 1; i < pts.size(); ++i) {
        int dk = pts[i].first - pts[i - 1].first;
        int de = pts[i].second - pts[i - 1].second;
        if (dk <= 0)
            throw DomainError("zp_rank_estimate: precisions must be distinct");
        if (de % dk != 0 || de < 0)
            throw DomainError("zp_rank_estimate: non-integral log ratio (torsion not saturated)");
        slopes.push_back(de / dk);
    }
    RankEstimate r;
    r.rank = slopes.back();
    r.stabilized = std::all_of(slopes.begin(), slopes.end(), [&](int s) { return s == r.rank; });
    return r;
}

HowellBasis torsion(const FiniteModule& m, const GroupRingElem& f) { return m.torsion(f); }

GroupRingElem generator_power(const RingSpec& spec, int level, Coeff u, int e) {
    GroupRingElem t = GroupRingElem::group_element(spec, level, u) - GroupRingElem::one(spec, level);
    GroupRingElem r = GroupRingElem::one(spec, level);
    for (int i = 0; i < e; ++i)
        r = r * t;
    return r;
}

HowellBasis j_torsion(const FiniteModule& m, int r) {
    if (r < 0)
        throw DomainError("j_torsion: r must be >= 0");
    return m.torsion(generator_power(m.spec(), m.level(), 1, r));
}

HowellBasis derived_submodule(const FiniteModule& m, int r, Coeff u) {
    if (r < 1)
        throw DomainError("derived_submodule: r must be >= 1");
    return m.image(generator_power(m.spec(), m.level(), u, r - 1), j_torsion(m, r));
}

FiltrationReport j_filtration(const FiniteModule& m, int r_max) {
    FiltrationReport rep;
    HowellBasis prev = m.zero();
    for (int r = 1; r <= r_max; ++r) {
        FiltrationLevel lv;
        lv.r = r;
        lv.j_torsion = j_torsion(m, r);
        lv.delta_log_order = m.log_order(lv.j_torsion) - m.log_order(prev);
        lv.derived = derived_submodule(m, r, 1);
        if (!(derived_submodule(m, r, 2) == lv.derived))
            rep.generator_independent = false;
        if (!rep.levels.empty() && !lv.derived.is_subset_of(rep.levels.back().derived))
            rep.nested = false;
        prev = lv.j_torsion;
        rep.levels.push_back(std::move(lv));
    }
    rep.universal_norms = universal_norms(m);
    return rep;
}

GroupRingElem norm_element_at(const RingSpec& spec, int level, int n) {
    Coeff pn = group_order(spec, n), pN = group_order(spec, level);
    std::vector<Coeff> c(static_cast<size_t>(pN), 0);
    for (Coeff j = 0; j < pn; ++j)
        c[static_cast<size_t>(j % pN)] = spec.add(c[static_cast<size_t>(j % pN)], 1);
    return GroupRingElem(spec, level, c);
}

HowellBasis universal_norms(const FiniteModule& m) {
    HowellBasis acc = m.whole();
    // g_n = p^{n-N} nu_N vanishes for n >= N + k; iterate one step past that.
    for (int n = 0; n <= m.level() + m.spec().k; ++n)
        acc = acc.intersect(m.image(norm_element_at(m.spec(), m.level(), n), m.whole()));
    return acc;
}

HowellBasis universal_norms_bruteforce(const FiniteModule& m, int degree_bound, size_t max_size) {
    const RingSpec& s = m.spec();
    auto elems = m.enumerate(m.whole(), max_size);
    std::set<Vec> acc(elems.begin(), elems.end());
    size_t nc = static_cast<size_t>(degree_bound) + 1;
    std::vector<Coeff> c(nc, 0);
    RingSpec wide = s.with_cap(std::max(s.cap, precision_for_level(s, m.level())));
    for (;;) {
        size_t i = 0;
        for (; i < nc; ++i) {
            if (++c[i] < s.modulus())
                break;
            c[i] = 0;
        }
        if (i == nc)
            break;
        if (std::none_of(c.begin(), c.end(), [&](Coeff x) { return s.is_unit(x); }))
            continue;
        Matrix f = m.action_matrix(project_to_level(IwasawaPoly(wide, c), m.level()));
        std::set<Vec> img;
        for (const auto& v : elems)
            img.insert(m.reduce(apply(s, v, f, m.dim())));
        std::set<Vec> next;
        std::set_intersection(acc.begin(), acc.end(), img.begin(), img.end(), std::inserter(next, next.begin()));
        acc = std::move(next);
    }
    return m.o_span(Matrix(acc.begin(), acc.end()));
}

HowellBasis universal_norms_enumerated(const FiniteModule& m, size_t max_size) {
    const RingSpec& s = m.spec();
    HowellBasis acc = universal_norms_bruteforce(m, 2, max_size);
    Matrix t = m.action_matrix(generator_power(s, m.level(), 1, 1));
    std::set<Vec> cur;
    for (const auto& v : m.enumerate(m.whole(), max_size))
        cur.insert(m.reduce(v));
    // T^j M shrinks until it is stable; every T^j is distinguished
    for (;;) {
        std::set<Vec> next;
        for (const auto& v : cur)
            next.insert(m.reduce(apply(s, v, t, m.dim())));
        if (next == cur)
            break;
        cur = std::move(next);
    }
    return acc.intersect(m.o_span(Matrix(cur.begin(), cur.end())));
}

FiniteModule module_from_shape(const RingSpec& spec, int level, const ElementaryShape& shape) {
    shape.validate();
    if (!shape.coprime.empty())
        throw DomainError("module_from_shape: blocks prime to J are not killed by gamma^{p^N} - 1");
    std::vector<Block> blocks;
    for (int i = 0; i < shape.e_infinity; ++i)
        blocks.push_back(Block::level(level));
    std::map<int, int> mult;
    for (auto [i, e] : shape.j_blocks)
        mult[i] += e;
    for (auto [i, e] : mult)
        for (int j = 0; j < e; ++j)
            blocks.push_back(Block::jet(i));
    return FiniteModule::blocks(spec, level, blocks);
}

} // namespace dh
