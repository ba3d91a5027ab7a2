#include "dh/module.hpp"

#include <set>

namespace dh {

std::string Block::to_string() const {
    return (kind == Kind::Level ? "level(" : "jet(") + std::to_string(param) + ")";
}

int block_degree(const RingSpec& spec, const Block& b) {
    if (b.param < 0)
        throw DomainError("block parameter must be >= 0");
    return b.kind == Block::Kind::Level ? static_cast<int>(group_order(spec, b.param)) : b.param;
}

IwasawaPoly block_modulus(const RingSpec& spec, const Block& b) {
    int d = block_degree(spec, b);
    RingSpec wide = spec.with_cap(std::max(spec.cap, d));
    if (b.kind == Block::Kind::Level)
        return level_modulus(wide, b.param);
    return IwasawaPoly::monomial(wide, d);
}

static std::vector<Coeff> modulus_coeffs(const RingSpec& spec, const Block& b) {
    int d = block_degree(spec, b);
    IwasawaPoly f = block_modulus(spec, b);
    return std::vector<Coeff>(f.coeffs().begin(), f.coeffs().begin() + d + 1);
}

bool block_fits_level(const RingSpec& spec, const Block& b, int level) {
    if (b.kind == Block::Kind::Level)
        return b.param <= level;
    IwasawaPoly m = level_modulus(spec.with_cap(std::max(spec.cap, static_cast<int>(group_order(spec, level)))), level);
    for (int i = 0; i < b.param; ++i)
        if (m[i] != 0)
            return false;
    return true;
}

FiniteModule::FiniteModule(RingSpec spec, int level, Matrix gamma, HowellBasis rel)
    : spec_(spec), level_(level), gamma_(std::move(gamma)), rel_(std::move(rel)) {
    for (const auto& row : gamma_)
        if (row.size() != gamma_.size())
            throw DomainError("FiniteModule: gamma matrix must be square");
    if (rel_.dim() != gamma_.size())
        throw DomainError("FiniteModule: relation module has wrong ambient dimension");
    build_powers();
}

void FiniteModule::build_powers() {
    size_t order = static_cast<size_t>(group_order(spec_, level_));
    powers_.clear();
    powers_.push_back(identity_matrix(dim()));
    for (size_t j = 1; j < order; ++j)
        powers_.push_back(mat_mul(spec_, powers_.back(), gamma_, dim()));
}

FiniteModule FiniteModule::presented(RingSpec spec, int level, int gens,
                                     const std::vector<std::vector<GroupRingElem>>& relations) {
    size_t pn = static_cast<size_t>(group_order(spec, level));
    size_t dim = static_cast<size_t>(gens) * pn;
    Matrix g(dim, Vec(dim, 0));
    for (size_t i = 0; i < static_cast<size_t>(gens); ++i)
        for (size_t j = 0; j < pn; ++j)
            g[i * pn + j][i * pn + (j + 1) % pn] = 1;
    Matrix rows;
    for (const auto& rel : relations) {
        if (rel.size() != static_cast<size_t>(gens))
            throw DomainError("presented module: relation has " + std::to_string(rel.size()) +
                              " entries, expected " + std::to_string(gens));
        Vec base(dim, 0);
        for (size_t i = 0; i < rel.size(); ++i) {
            GroupRingElem x = rel[i].level() > level ? rel[i].project(level) : rel[i];
            if (x.level() != level)
                throw DomainError("presented module: relation entry below the module level");
            for (size_t j = 0; j < pn; ++j)
                base[i * pn + j] = x[j];
        }
        Vec cur = base;
        for (size_t s = 0; s < pn; ++s) {
            rows.push_back(cur);
            cur = apply(spec, cur, g, dim);
        }
    }
    return FiniteModule(spec, level, std::move(g), HowellBasis::span(spec, dim, rows));
}

FiniteModule FiniteModule::blocks(RingSpec spec, int level, const std::vector<Block>& blocks) {
    size_t dim = 0;
    std::vector<size_t> offsets;
    for (const auto& b : blocks) {
        if (!block_fits_level(spec, b, level))
            throw DomainError("block " + b.to_string() + " is not killed by gamma^{p^" + std::to_string(level) +
                              "} - 1 over Z/" + std::to_string(spec.modulus()));
        offsets.push_back(dim);
        dim += static_cast<size_t>(block_degree(spec, b));
    }
    Matrix g(dim, Vec(dim, 0));
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        size_t d = static_cast<size_t>(block_degree(spec, blocks[bi]));
        size_t o = offsets[bi];
        auto f = modulus_coeffs(spec, blocks[bi]);
        for (size_t e = 0; e < d; ++e) {
            g[o + e][o + e] = spec.add(g[o + e][o + e], 1);
            if (e + 1 < d) {
                g[o + e][o + e + 1] = 1;
            } else {
                // T^d = -sum_{i<d} f_i T^i
                for (size_t i = 0; i < d; ++i)
                    g[o + e][o + i] = spec.sub(g[o + e][o + i], f[i]);
            }
        }
    }
    FiniteModule m(spec, level, std::move(g), HowellBasis(spec, dim));
    m.blocks_ = blocks;
    m.offsets_ = std::move(offsets);
    return m;
}

size_t FiniteModule::block_size(size_t i) const { return static_cast<size_t>(block_degree(spec_, blocks_[i])); }

const Matrix& FiniteModule::gamma_power(Coeff j) const {
    Coeff n = static_cast<Coeff>(powers_.size());
    return powers_[static_cast<size_t>(((j % n) + n) % n)];
}

Matrix FiniteModule::action_matrix(const GroupRingElem& x) const {
    if (x.level() < level_)
        throw DomainError("action_matrix: element of Lambda_" + std::to_string(x.level()) +
                          " does not act on a Lambda_" + std::to_string(level_) + "-module");
    GroupRingElem y = x.level() > level_ ? x.project(level_) : x;
    size_t d = dim();
    Matrix r(d, Vec(d, 0));
    for (size_t j = 0; j < y.size(); ++j) {
        Coeff c = y[j];
        if (c == 0)
            continue;
        const Matrix& p = powers_[j];
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b)
                if (p[a][b] != 0)
                    r[a][b] = spec_.add(r[a][b], spec_.mul(c, p[a][b]));
    }
    return r;
}

Matrix FiniteModule::action_matrix(const IwasawaPoly& f) const { return action_matrix(project_to_level(f, level_)); }

Vec FiniteModule::act(const GroupRingElem& x, const Vec& v) const {
    return reduce(apply(spec_, v, action_matrix(x), dim()));
}

Vec FiniteModule::act(const IwasawaPoly& f, const Vec& v) const {
    return reduce(apply(spec_, v, action_matrix(f), dim()));
}

bool FiniteModule::equal(const Vec& a, const Vec& b) const { return rel_.contains(vec_sub(spec_, a, b)); }

HowellBasis FiniteModule::o_span(const Matrix& gens) const {
    return HowellBasis::span(spec_, dim(), gens).sum(rel_);
}

HowellBasis FiniteModule::lambda_span(const Matrix& gens) const {
    Matrix all;
    for (const auto& g : gens)
        for (size_t j = 0; j < powers_.size(); ++j)
            all.push_back(apply(spec_, g, powers_[j], dim()));
    return o_span(all);
}

std::vector<Vec> FiniteModule::enumerate(const HowellBasis& sub, size_t max_size) const {
    int lo = log_order(sub);
    double approx = 1;
    for (int i = 0; i < lo; ++i)
        approx *= static_cast<double>(spec_.p);
    if (approx > static_cast<double>(max_size))
        throw CapError("module enumeration of " + std::to_string(spec_.p) + "^" + std::to_string(lo) +
                       " elements exceeds cap " + std::to_string(max_size));
    if (rel_.is_zero())
        return sub.enumerate(max_size);
    Matrix gens = generators(sub);
    std::set<Vec> seen{reduce(zero_vec(dim()))};
    std::vector<Vec> order{*seen.begin()};
    for (size_t head = 0; head < order.size(); ++head)
        for (const auto& g : gens) {
            Vec w = reduce(vec_add(spec_, order[head], g));
            if (seen.insert(w).second)
                order.push_back(std::move(w));
        }
    return order;
}

Matrix FiniteModule::generators(const HowellBasis& sub) const {
    Matrix out;
    for (const auto& r : sub.rows()) {
        Vec v = reduce(r);
        if (!vec_is_zero(v))
            out.push_back(std::move(v));
    }
    return out;
}

HowellBasis FiniteModule::torsion(const GroupRingElem& f) const {
    return kernel(spec_, action_matrix(f), dim(), rel_);
}

HowellBasis FiniteModule::torsion(const IwasawaPoly& f) const { return torsion(project_to_level(f, level_)); }

HowellBasis FiniteModule::image(const GroupRingElem& f, const HowellBasis& sub) const {
    return dh::image(spec_, sub, action_matrix(f), dim()).sum(rel_);
}

HowellBasis FiniteModule::image(const IwasawaPoly& f, const HowellBasis& sub) const {
    return image(project_to_level(f, level_), sub);
}

std::optional<Vec> FiniteModule::preimage(const GroupRingElem& f, const Vec& x, const HowellBasis& within) const {
    const Matrix& w = within.rows();
    Matrix wf = mat_mul(spec_, w, action_matrix(f), dim());
    auto z = solve(spec_, wf, dim(), x, rel_);
    if (!z)
        return std::nullopt;
    return reduce(apply(spec_, *z, w, dim()));
}

bool FiniteModule::is_valid() const {
    for (const auto& r : rel_.rows())
        if (!rel_.contains(apply(spec_, r, gamma_, dim())))
            return false;
    Matrix top = mat_mul(spec_, powers_.back(), gamma_, dim());
    for (size_t i = 0; i < dim(); ++i)
        if (!rel_.contains(vec_sub(spec_, top[i], unit_vec(dim(), i))))
            return false;
    return true;
}

} // namespace dh
