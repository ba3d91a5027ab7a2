#include "dh/poles.hpp"

#include <sstream>

namespace dh {

PoleElem::PoleElem(RingSpec spec) : num_(spec, 0) {}

PoleElem::PoleElem(GroupRingElem numerator) : num_(std::move(numerator)) { canonicalize(); }

void PoleElem::canonicalize() {
    while (num_.level() > 0) {
        size_t period = static_cast<size_t>(group_order(num_.spec(), num_.level() - 1));
        const auto& c = num_.coeffs();
        for (size_t j = period; j < c.size(); ++j)
            if (c[j] != c[j - period])
                return;
        num_ = GroupRingElem(num_.spec(), num_.level() - 1, std::vector<Coeff>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(period)));
    }
}

PoleElem PoleElem::operator+(const PoleElem& o) const {
    int m = std::max(level(), o.level());
    return PoleElem(num_.inflate(m) + o.num_.inflate(m));
}

PoleElem PoleElem::operator-(const PoleElem& o) const { return *this + (-o); }

PoleElem PoleElem::operator-() const { return PoleElem(-num_); }

PoleElem PoleElem::scaled(Coeff a) const { return PoleElem(num_.scaled(a)); }

PoleElem PoleElem::act(const IwasawaPoly& lambda) const {
    return PoleElem(num_ * project_to_level(lambda, level()));
}

PoleElem PoleElem::act(const GroupRingElem& lambda) const {
    if (lambda.level() < level())
        throw DomainError("PoleElem::act: multiplier level below the pole level");
    return PoleElem(num_ * lambda.project(level()));
}

std::string PoleElem::to_string() const {
    std::ostringstream os;
    os << "[" << num_.to_string() << "]/(g^" << group_order(spec(), level()) << " - 1)";
    return os.str();
}

PoleElem pole_reduce(const IwasawaPoly& lambda, int level) { return PoleElem(project_to_level(lambda, level)); }

PoleElem pole_involution(const PoleElem& x) { return PoleElem(-x.numerator().involution()); }

GroupRingElem eta(Coeff u, const PoleElem& x) {
    const RingSpec& s = x.spec();
    if (!s.is_unit(u))
        throw DomainError("eta: generator parameter must be a unit");
    Coeff up = s.reduce(u);
    // (gamma^{u p^n} - 1) = (gamma^{p^n} - 1) * ratio, so the numerator over the
    // new denominator is numerator * ratio.
    int n = x.level();
    int need = static_cast<int>((up - 1) * group_order(s, n));
    RingSpec wide = s.with_cap(std::max({s.cap, need, precision_for_level(s, n)}));
    IwasawaPoly ratio = generator_ratio(wide, n, up);
    return x.numerator() * project_to_level(ratio, n);
}

Coeff phi(Coeff u, const PoleElem& x) { return eta(u, x).identity_coefficient(); }

std::string JGradedValue::to_string() const {
    std::ostringstream os;
    os << coeff << "*(g-1)^" << degree;
    return os.str();
}

} // namespace dh
