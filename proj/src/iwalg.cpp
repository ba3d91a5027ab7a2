#include "dh/iwalg.hpp"

#include <algorithm>
#include <sstream>

namespace dh {

// ---------------------------------------------------------------------------
// polynomial helpers

std::vector<Coeff> poly_mul(const RingSpec& spec, std::span<const Coeff> a, std::span<const Coeff> b) {
    if (a.empty() || b.empty())
        return {};
    std::vector<Coeff> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = spec.add(r[i + j], spec.mul(a[i], b[j]));
    }
    return r;
}

std::pair<std::vector<Coeff>, std::vector<Coeff>> poly_divmod_monic(const RingSpec& spec,
                                                                     std::span<const Coeff> a,
                                                                     std::span<const Coeff> f) {
    size_t df = f.size();
    while (df > 0 && spec.reduce(f[df - 1]) == 0)
        --df;
    if (df == 0 || spec.reduce(f[df - 1]) != 1)
        throw DomainError("poly_divmod_monic: divisor is not monic");
    size_t deg = df - 1;
    std::vector<Coeff> rem(a.begin(), a.end());
    for (auto& c : rem)
        c = spec.reduce(c);
    if (rem.size() <= deg) {
        rem.resize(deg, 0);
        return {{}, rem};
    }
    std::vector<Coeff> quot(rem.size() - deg, 0);
    for (size_t i = rem.size(); i-- > deg;) {
        Coeff c = rem[i];
        if (c == 0)
            continue;
        quot[i - deg] = c;
        for (size_t j = 0; j <= deg; ++j)
            rem[i - deg + j] = spec.sub(rem[i - deg + j], spec.mul(c, f[j]));
    }
    rem.resize(deg);
    return {quot, rem};
}

static std::vector<Coeff> poly_pow(const RingSpec& spec, std::vector<Coeff> base, Coeff e) {
    std::vector<Coeff> r{1};
    while (e > 0) {
        if (e & 1)
            r = poly_mul(spec, r, base);
        e >>= 1;
        if (e)
            base = poly_mul(spec, base, base);
    }
    return r;
}

Coeff group_order(const RingSpec& spec, int level) {
    if (level < 0)
        throw DomainError("level must be >= 0");
    return spec.prime_power(level);
}

// ---------------------------------------------------------------------------
// IwasawaPoly

IwasawaPoly::IwasawaPoly(RingSpec spec)
    : spec_(spec), c_(static_cast<size_t>(spec.cap) + 1, 0), prec_(spec.cap) {}

IwasawaPoly::IwasawaPoly(RingSpec spec, std::span<const Coeff> coeffs)
    : IwasawaPoly(spec, coeffs, spec.cap) {}

IwasawaPoly::IwasawaPoly(RingSpec spec, std::initializer_list<Coeff> coeffs)
    : IwasawaPoly(spec, std::span<const Coeff>(coeffs.begin(), coeffs.size()), spec.cap) {}

IwasawaPoly::IwasawaPoly(RingSpec spec, std::span<const Coeff> coeffs, int precision)
    : spec_(spec), c_(static_cast<size_t>(spec.cap) + 1, 0), prec_(std::min(precision, spec.cap)) {
    if (precision < -1)
        throw DomainError("precision must be >= -1");
    for (size_t i = 0; i < coeffs.size() && i < c_.size(); ++i)
        c_[i] = spec_.reduce(coeffs[i]);
    normalize();
}

void IwasawaPoly::normalize() {
    for (size_t i = static_cast<size_t>(std::max(prec_ + 1, 0)); i < c_.size(); ++i)
        c_[i] = 0;
}

IwasawaPoly IwasawaPoly::constant(RingSpec spec, Coeff c) {
    IwasawaPoly r(spec);
    r.c_[0] = spec.reduce(c);
    return r;
}

IwasawaPoly IwasawaPoly::monomial(RingSpec spec, int e, Coeff c) {
    IwasawaPoly r(spec);
    if (e <= spec.cap)
        r.c_[static_cast<size_t>(e)] = spec.reduce(c);
    return r;
}

IwasawaPoly IwasawaPoly::one_plus_t_pow(RingSpec spec, Coeff u) {
    IwasawaPoly base(spec, {1, 1});
    IwasawaPoly r = constant(spec, 1);
    Coeff e = u < 0 ? -u : u;
    while (e > 0) {
        if (e & 1)
            r = r * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return u < 0 ? r.inverse() : r;
}

int IwasawaPoly::degree() const {
    for (int i = prec_; i >= 0; --i)
        if (c_[static_cast<size_t>(i)] != 0)
            return i;
    return -1;
}

IwasawaPoly IwasawaPoly::with_precision(int precision) const {
    IwasawaPoly r = *this;
    r.prec_ = std::min(precision, prec_);
    r.normalize();
    return r;
}

static void require_same_ring(const IwasawaPoly& a, const IwasawaPoly& b) {
    if (!(a.spec() == b.spec()))
        throw DomainError("IwasawaPoly: operands have different ring specs");
}

IwasawaPoly IwasawaPoly::operator+(const IwasawaPoly& o) const {
    require_same_ring(*this, o);
    IwasawaPoly r(spec_);
    r.prec_ = std::min(prec_, o.prec_);
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = spec_.add(c_[i], o.c_[i]);
    r.normalize();
    return r;
}

IwasawaPoly IwasawaPoly::operator-(const IwasawaPoly& o) const { return *this + (-o); }

IwasawaPoly IwasawaPoly::operator-() const {
    IwasawaPoly r = *this;
    for (auto& c : r.c_)
        c = spec_.neg(c);
    return r;
}

// first nonzero known index, or prec + 1
static int known_valuation(const IwasawaPoly& f) {
    for (int i = 0; i <= f.precision(); ++i)
        if (f[i] != 0)
            return i;
    return f.precision() + 1;
}

IwasawaPoly IwasawaPoly::operator*(const IwasawaPoly& o) const {
    require_same_ring(*this, o);
    IwasawaPoly r(spec_);
    int cap = spec_.cap;
    for (int i = 0; i <= prec_; ++i) {
        Coeff a = c_[static_cast<size_t>(i)];
        if (a == 0)
            continue;
        for (int j = 0; j <= o.prec_ && i + j <= cap; ++j)
            r.c_[static_cast<size_t>(i + j)] =
                spec_.add(r.c_[static_cast<size_t>(i + j)], spec_.mul(a, o.c_[static_cast<size_t>(j)]));
    }
    r.prec_ = std::min({prec_ + known_valuation(o), o.prec_ + known_valuation(*this), cap});
    r.normalize();
    return r;
}

IwasawaPoly IwasawaPoly::scaled(Coeff a) const {
    IwasawaPoly r = *this;
    for (auto& c : r.c_)
        c = spec_.mul(c, a);
    return r;
}

IwasawaPoly IwasawaPoly::shift_up(int e) const {
    IwasawaPoly r(spec_);
    for (int i = 0; i + e <= spec_.cap && i <= prec_; ++i)
        r.c_[static_cast<size_t>(i + e)] = c_[static_cast<size_t>(i)];
    r.prec_ = std::min(prec_ + e, spec_.cap);
    r.normalize();
    return r;
}

IwasawaPoly IwasawaPoly::shift_down(int e) const {
    if (e == 0)
        return *this;
    if (prec_ < e)
        throw PrecisionError("division by T^" + std::to_string(e) + " needs precision >= " +
                             std::to_string(e) + ", have " + std::to_string(prec_));
    for (int i = 0; i < e; ++i)
        if (c_[static_cast<size_t>(i)] != 0)
            throw DomainError("not divisible by T^" + std::to_string(e));
    IwasawaPoly r(spec_);
    for (int i = e; i <= prec_; ++i)
        r.c_[static_cast<size_t>(i - e)] = c_[static_cast<size_t>(i)];
    r.prec_ = prec_ - e;
    r.normalize();
    return r;
}

IwasawaPoly IwasawaPoly::inverse() const {
    if (prec_ < 0 || !spec_.is_unit(c_[0]))
        throw DomainError("inverse: constant term is not a unit");
    IwasawaPoly r(spec_);
    Coeff inv0 = spec_.inverse(c_[0]);
    r.c_[0] = inv0;
    for (int n = 1; n <= prec_; ++n) {
        Coeff s = 0;
        for (int i = 1; i <= n; ++i)
            s = spec_.add(s, spec_.mul(c_[static_cast<size_t>(i)], r.c_[static_cast<size_t>(n - i)]));
        r.c_[static_cast<size_t>(n)] = spec_.mul(spec_.neg(s), inv0);
    }
    r.prec_ = prec_;
    r.normalize();
    return r;
}

IwasawaPoly IwasawaPoly::substitute_generator(Coeff u) const {
    IwasawaPoly s = one_plus_t_pow(spec_, u) - constant(spec_, 1);
    // Horner; s has valuation >= 1 so the unknown tail stays beyond prec_.
    IwasawaPoly acc(spec_);
    for (int i = std::max(prec_, 0); i >= 0; --i)
        acc = acc * s + constant(spec_, c_[static_cast<size_t>(i)]);
    acc.prec_ = prec_;
    acc.normalize();
    return acc;
}

bool IwasawaPoly::equals(const IwasawaPoly& o) const {
    if (!spec_.same_ring(o.spec_))
        return false;
    int m = std::min(prec_, o.prec_);
    for (int i = 0; i <= m; ++i)
        if ((*this)[i] != o[i])
            return false;
    return true;
}

bool IwasawaPoly::strictly_equals(const IwasawaPoly& o) const {
    return spec_ == o.spec_ && prec_ == o.prec_ && c_ == o.c_;
}

std::string IwasawaPoly::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= prec_; ++i) {
        Coeff c = c_[static_cast<size_t>(i)];
        if (c == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (i == 0 || c != 1)
            os << c;
        if (i > 0)
            os << (c != 1 ? "*" : "") << "T" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    if (first)
        os << "0";
    os << " + O(T^" << prec_ + 1 << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IwasawaPoly& f) { return os << f.to_string(); }

// ---------------------------------------------------------------------------
// GroupRingElem

GroupRingElem::GroupRingElem(RingSpec spec, int level)
    : spec_(spec), level_(level), c_(static_cast<size_t>(group_order(spec, level)), 0) {}

GroupRingElem::GroupRingElem(RingSpec spec, int level, std::vector<Coeff> coeffs)
    : spec_(spec), level_(level), c_(std::move(coeffs)) {
    if (c_.size() != static_cast<size_t>(group_order(spec, level)))
        throw DomainError("GroupRingElem: expected " + std::to_string(group_order(spec, level)) +
                          " coefficients, got " + std::to_string(c_.size()));
    for (auto& c : c_)
        c = spec_.reduce(c);
}

GroupRingElem GroupRingElem::one(RingSpec spec, int level) {
    GroupRingElem r(spec, level);
    r.c_[0] = spec.reduce(1);
    return r;
}

GroupRingElem GroupRingElem::group_element(RingSpec spec, int level, Coeff exponent) {
    GroupRingElem r(spec, level);
    Coeff n = static_cast<Coeff>(r.c_.size());
    r.c_[static_cast<size_t>(((exponent % n) + n) % n)] = spec.reduce(1);
    return r;
}

GroupRingElem GroupRingElem::from_t_poly(RingSpec spec, int level, std::span<const Coeff> t) {
    GroupRingElem result(spec, level);
    GroupRingElem power = one(spec, level);
    size_t n = result.c_.size();
    for (size_t i = 0; i < t.size(); ++i) {
        Coeff a = spec.reduce(t[i]);
        if (a != 0)
            for (size_t j = 0; j < n; ++j)
                result.c_[j] = spec.add(result.c_[j], spec.mul(a, power.c_[j]));
        if (i + 1 < t.size()) {
            // power *= (gamma - 1)
            std::vector<Coeff> next(n);
            for (size_t j = 0; j < n; ++j)
                next[j] = spec.sub(power.c_[(j + n - 1) % n], power.c_[j]);
            power.c_ = std::move(next);
        }
    }
    return result;
}

GroupRingElem GroupRingElem::relative_norm(RingSpec spec, int level, int lower) {
    if (lower > level || lower < 0)
        throw DomainError("relative_norm: need 0 <= lower <= level");
    GroupRingElem r(spec, level);
    Coeff step = group_order(spec, lower);
    for (size_t j = 0; j < r.c_.size(); j += static_cast<size_t>(step))
        r.c_[j] = spec.reduce(1);
    return r;
}

bool GroupRingElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](Coeff c) { return c == 0; });
}

void GroupRingElem::check_compatible(const GroupRingElem& o) const {
    if (level_ != o.level_ || !spec_.same_ring(o.spec_))
        throw DomainError("GroupRingElem: incompatible operands");
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
    check_compatible(o);
    GroupRingElem r = *this;
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = spec_.add(c_[i], o.c_[i]);
    return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const { return *this + (-o); }

GroupRingElem GroupRingElem::operator-() const {
    GroupRingElem r = *this;
    for (auto& c : r.c_)
        c = spec_.neg(c);
    return r;
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
    check_compatible(o);
    GroupRingElem r(spec_, level_);
    size_t n = c_.size();
    for (size_t i = 0; i < n; ++i) {
        if (c_[i] == 0)
            continue;
        for (size_t j = 0; j < n; ++j) {
            if (o.c_[j] == 0)
                continue;
            size_t idx = (i + j) % n;
            r.c_[idx] = spec_.add(r.c_[idx], spec_.mul(c_[i], o.c_[j]));
        }
    }
    return r;
}

GroupRingElem GroupRingElem::scaled(Coeff a) const {
    GroupRingElem r = *this;
    for (auto& c : r.c_)
        c = spec_.mul(c, a);
    return r;
}

GroupRingElem GroupRingElem::involution() const {
    GroupRingElem r(spec_, level_);
    size_t n = c_.size();
    for (size_t i = 0; i < n; ++i)
        r.c_[(n - i) % n] = c_[i];
    return r;
}

GroupRingElem GroupRingElem::substitute_generator(Coeff u) const {
    GroupRingElem r(spec_, level_);
    Coeff n = static_cast<Coeff>(c_.size());
    Coeff uu = ((u % n) + n) % n;
    for (Coeff i = 0; i < n; ++i) {
        size_t idx = static_cast<size_t>((i * uu) % n);
        r.c_[idx] = spec_.add(r.c_[idx], c_[static_cast<size_t>(i)]);
    }
    return r;
}

Coeff GroupRingElem::augmentation() const {
    Coeff s = 0;
    for (Coeff c : c_)
        s = spec_.add(s, c);
    return s;
}

GroupRingElem GroupRingElem::project(int lower) const {
    if (lower > level_ || lower < 0)
        throw DomainError("project: target level must be in [0, level]");
    GroupRingElem r(spec_, lower);
    size_t m = r.c_.size();
    for (size_t j = 0; j < c_.size(); ++j)
        r.c_[j % m] = spec_.add(r.c_[j % m], c_[j]);
    return r;
}

GroupRingElem GroupRingElem::inflate(int higher) const {
    if (higher < level_)
        throw DomainError("inflate: target level must be >= level");
    GroupRingElem r(spec_, higher);
    size_t m = c_.size();
    for (size_t j = 0; j < r.c_.size(); ++j)
        r.c_[j] = c_[j % m];
    return r;
}

std::vector<Coeff> GroupRingElem::to_t_poly() const {
    // sum_j c_j (1+T)^j via Horner in (1+T)
    size_t n = c_.size();
    std::vector<Coeff> acc{0};
    for (size_t j = n; j-- > 0;) {
        acc = poly_mul(spec_, acc, std::vector<Coeff>{1, 1});
        acc[0] = spec_.add(acc[0], c_[j]);
    }
    acc.resize(n, 0);
    return acc;
}

bool GroupRingElem::is_distinguished() const {
    return std::any_of(c_.begin(), c_.end(), [&](Coeff c) { return c % spec_.p != 0; });
}

std::string GroupRingElem::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1)
            os << c_[i];
        if (i > 0)
            os << (c_[i] != 1 ? "*" : "") << "g" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    if (first)
        os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GroupRingElem& f) { return os << f.to_string(); }

// ---------------------------------------------------------------------------
// Lambda operations

bool is_distinguished(const IwasawaPoly& f) {
    const RingSpec& s = f.spec();
    for (int i = 0; i <= f.precision(); ++i)
        if (s.is_unit(f[i]))
            return true;
    if (f.precision() < f.cap())
        throw IndeterminateError("is_distinguished: no unit coefficient among the first " +
                                 std::to_string(f.precision() + 1) +
                                 " known coefficients; indeterminate at this precision");
    return false;
}

int weierstrass_degree(const IwasawaPoly& f) {
    for (int i = 0; i <= f.precision(); ++i)
        if (f.spec().is_unit(f[i]))
            return i;
    throw DomainError("weierstrass_degree: element is not distinguished at this precision");
}

DivisionResult weierstrass_divide(const IwasawaPoly& g, const IwasawaPoly& f) {
    if (!(g.spec() == f.spec()))
        throw DomainError("weierstrass_divide: operands have different ring specs");
    const RingSpec& spec = g.spec();
    int mu = weierstrass_degree(f);
    if (g.precision() < mu)
        throw PrecisionError("weierstrass_divide: dividend needs precision >= " + std::to_string(mu) +
                             ", have " + std::to_string(g.precision()));
    int out = std::min(g.precision(), f.precision()) - mu;

    // f = low + T^mu * unit, low has coefficients in pO
    // Work with exact lifts (unknown coefficients set to zero); the quotient of
    // any lift agrees with the true one below the output precision.
    IwasawaPoly gl(spec, g.coeffs()), fl(spec, f.coeffs());
    std::vector<Coeff> low_c(static_cast<size_t>(mu));
    for (int i = 0; i < mu; ++i)
        low_c[static_cast<size_t>(i)] = f[i];
    IwasawaPoly low(spec, low_c);
    IwasawaPoly unit_inv = IwasawaPoly(spec, (fl - low).shift_down(mu).coeffs()).inverse();

    auto tau = [&](const IwasawaPoly& h) {
        std::vector<Coeff> c(h.coeffs().begin() + mu, h.coeffs().end());
        return IwasawaPoly(spec, c);
    };
    IwasawaPoly tau_g = tau(gl);
    IwasawaPoly q = unit_inv * tau_g;
    // low is divisible by p, so each pass gains one power of p; k passes are exact.
    for (int it = 0; it < spec.k; ++it)
        q = unit_inv * (tau_g - tau(q * low));

    IwasawaPoly prod = q * fl;
    std::vector<Coeff> rc(static_cast<size_t>(mu));
    for (int i = 0; i < mu; ++i)
        rc[static_cast<size_t>(i)] = spec.sub(g[i], prod[i]);
    return {q.with_precision(out), IwasawaPoly(spec, rc, out)};
}

IwasawaPoly involution(const IwasawaPoly& f) { return f.substitute_generator(-1); }

IwasawaPoly level_modulus(const RingSpec& spec, int level) {
    Coeff pn = group_order(spec, level);
    if (pn > spec.cap)
        throw DomainError("level_modulus: cap " + std::to_string(spec.cap) + " too small for degree " +
                          std::to_string(pn));
    auto full = poly_pow(spec, {1, 1}, pn);
    full[0] = spec.sub(full[0], 1);
    return IwasawaPoly(spec, full);
}

IwasawaPoly norm_element(const RingSpec& spec, int level) {
    if (level < 0)
        throw DomainError("norm_element: level must be >= 0");
    Coeff pn = group_order(spec, level);
    if (pn - 1 > spec.cap)
        throw DomainError("norm_element: cap " + std::to_string(spec.cap) + " too small for degree " +
                          std::to_string(pn - 1));
    auto full = poly_pow(spec, {1, 1}, pn);
    std::vector<Coeff> c(full.begin() + 1, full.end());
    return IwasawaPoly(spec, c);
}

IwasawaPoly generator_ratio(const RingSpec& spec, int level, Coeff u) {
    if (u <= 0 || u % spec.p == 0)
        throw DomainError("generator_ratio: u must be a positive integer prime to p");
    Coeff pn = group_order(spec, level);
    if ((u - 1) * pn > spec.cap)
        throw DomainError("generator_ratio: cap " + std::to_string(spec.cap) + " too small for degree " +
                          std::to_string((u - 1) * pn));
    std::vector<Coeff> step = poly_pow(spec, {1, 1}, pn);
    std::vector<Coeff> acc(static_cast<size_t>((u - 1) * pn + 1), 0);
    std::vector<Coeff> term{1};
    for (Coeff j = 0; j < u; ++j) {
        for (size_t i = 0; i < term.size(); ++i)
            acc[i] = spec.add(acc[i], term[i]);
        if (j + 1 < u)
            term = poly_mul(spec, term, step);
    }
    return IwasawaPoly(spec, acc);
}

std::optional<int> j_valuation(const IwasawaPoly& f) {
    for (int i = 0; i <= f.precision(); ++i)
        if (f[i] != 0)
            return i;
    return std::nullopt;
}

int precision_for_level(const RingSpec& spec, int level) {
    // least m with (gamma - 1)^m = 0 in Lambda_n, minus one
    GroupRingElem t = GroupRingElem::group_element(spec, level, 1) - GroupRingElem::one(spec, level);
    GroupRingElem pw = GroupRingElem::one(spec, level);
    int m = 0;
    while (!pw.is_zero()) {
        pw = pw * t;
        ++m;
    }
    return m - 1;
}

GroupRingElem project_to_level(const IwasawaPoly& f, int level) {
    int need = precision_for_level(f.spec(), level);
    if (f.precision() < need)
        throw PrecisionError("project_to_level: level " + std::to_string(level) + " needs precision >= " +
                             std::to_string(need) + ", have " + std::to_string(f.precision()));
    std::vector<Coeff> c(static_cast<size_t>(need + 1));
    for (int i = 0; i <= need; ++i)
        c[static_cast<size_t>(i)] = f[i];
    return GroupRingElem::from_t_poly(f.spec(), level, c);
}

GroupRingElem project_to_level_by_division(const IwasawaPoly& f, int level) {
    IwasawaPoly mod = level_modulus(f.spec(), level);
    auto [q, r] = weierstrass_divide(f, mod);
    int mu = static_cast<int>(group_order(f.spec(), level));
    if (r.precision() < mu - 1)
        throw PrecisionError("project_to_level_by_division: remainder known only to precision " +
                             std::to_string(r.precision()));
    std::vector<Coeff> c(static_cast<size_t>(mu));
    for (int i = 0; i < mu; ++i)
        c[static_cast<size_t>(i)] = r[i];
    return GroupRingElem::from_t_poly(f.spec(), level, c);
}

} // namespace dh
