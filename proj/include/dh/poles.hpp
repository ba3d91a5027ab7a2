#pragma once

#include "dh/iwalg.hpp"

#include <string>

namespace dh {

/// Class of lambda / (gamma^{p^n} - 1) modulo Lambda, with numerator in Lambda_n.
///
/// Canonical form: the level is minimal. A numerator that is periodic with
/// period p^{n-1} equals inflate(x') for x' at level n - 1, and the class
/// x'.nu / (gamma^{p^n} - 1) is x' / (gamma^{p^{n-1}} - 1).
class PoleElem {
  public:
    PoleElem() = default;
    /// Zero class.
    explicit PoleElem(RingSpec spec);
    /// Class of numerator / (gamma^{p^n} - 1), canonicalized.
    explicit PoleElem(GroupRingElem numerator);

    const RingSpec& spec() const { return num_.spec(); }
    int level() const { return num_.level(); }
    const GroupRingElem& numerator() const { return num_; }
    bool is_zero() const { return num_.is_zero(); }
    /// Numerator re-expressed over gamma^{p^m} - 1 for m >= level.
    GroupRingElem numerator_at(int m) const { return num_.inflate(m); }

    PoleElem operator+(const PoleElem& o) const;
    PoleElem operator-(const PoleElem& o) const;
    PoleElem operator-() const;
    PoleElem scaled(Coeff a) const;
    /// Action of Lambda.
    PoleElem act(const IwasawaPoly& lambda) const;
    /// Action of Lambda_m for m >= level (through the projection to the pole's level).
    PoleElem act(const GroupRingElem& lambda) const;

    friend bool operator==(const PoleElem& a, const PoleElem& b) { return a.num_ == b.num_; }
    std::string to_string() const;

  private:
    GroupRingElem num_;
    void canonicalize();
};

/// Class of lambda / (gamma^{p^n} - 1).
PoleElem pole_reduce(const IwasawaPoly& lambda, int level);

/// x -> -iota(x): numerator -> -iota(numerator).
PoleElem pole_involution(const PoleElem& x);

/// Numerator of x over the denominator (gamma^u)^{p^n} - 1, as a class in Lambda_n.
GroupRingElem eta(Coeff u, const PoleElem& x);

/// Identity coefficient of eta(u, x).
Coeff phi(Coeff u, const PoleElem& x);

/// c (gamma - 1)^r modulo J^{r+1}.
struct JGradedValue {
    int degree = 0;
    Coeff coeff = 0;
    friend bool operator==(const JGradedValue&, const JGradedValue&) = default;
    std::string to_string() const;
};

} // namespace dh
