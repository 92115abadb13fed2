#pragma once

#include "power_series.hpp"

#include <stdexcept>
#include <string>

namespace cliso {

class InvalidLowerParameter : public std::domain_error {
public:
    explicit InvalidLowerParameter(const Rational& c)
        : std::domain_error("2F1: lower parameter c = " + c.str() + " is zero or a negative integer") {}
};

/// Parameters (a, b; c) of a Gauss hypergeometric series 2F1(a, b; c; x).
struct HypergeometricSpec {
    Rational a;
    Rational b;
    Rational c;

    HypergeometricSpec(Rational a_, Rational b_, Rational c_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (c.is_nonpositive_integer()) throw InvalidLowerParameter(c);
    }

    /// c - a - b; the series converges at x = 1 iff this is positive.
    [[nodiscard]] Rational excess() const { return c - a - b; }

    [[nodiscard]] std::string str() const {
        return "(" + a.str() + ", " + b.str() + "; " + c.str() + ")";
    }

    friend bool operator==(const HypergeometricSpec&, const HypergeometricSpec&) = default;
};

/// Coefficients t_n = (a)_n (b)_n / ((c)_n n!) via the term ratio
/// t_{n+1} / t_n = (a+n)(b+n) / ((c+n)(n+1)).
inline PowerSeries hypergeometric_series(const HypergeometricSpec& spec, std::size_t order) {
    std::vector<Rational> t(order + 1);
    t[0] = Rational(1);
    for (std::size_t n = 0; n < order; ++n) {
        if (t[n].is_zero()) continue;  // terminated: remaining entries stay 0
        const Rational k(n);
        t[n + 1] = t[n] * (spec.a + k) * (spec.b + k) / ((spec.c + k) * Rational(n + 1));
    }
    return PowerSeries(std::move(t));
}

}  // namespace cliso
