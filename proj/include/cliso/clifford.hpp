#pragma once

// Clifford-torus area/volume series: the two annihilating operators, the
// 2F1 closed forms, and the reference expansions they must reproduce.

#include "differential_operator.hpp"
#include "hypergeometric.hpp"
#include "power_series.hpp"

#include <array>
#include <vector>

namespace cliso {

/// Leading coefficients of Abar(z) = A(sqrt z) / (sqrt(2) pi^2).
inline const std::array<Rational, 6>& abar_reference_coefficients() {
    static const std::array<Rational, 6> c{Rational(4),          Rational(52),
                                           Rational(477),        Rational(3809),
                                           Rational(451625, 16), Rational(3195333, 16)};
    return c;
}

/// Leading coefficients of Vbar(z) = V(sqrt z) / (sqrt(2) pi^2).
inline const std::array<Rational, 6>& vbar_reference_coefficients() {
    static const std::array<Rational, 6> c{Rational(2),           Rational(48),
                                           Rational(1269, 2),     Rational(6600),
                                           Rational(1928025, 32), Rational(2026101, 4)};
    return c;
}

/// Leading coefficients of F(z) = 2 Vbar' Abar - 3 Vbar Abar' as displayed
/// next to its definition ("72 + 1932 z + 31248 z^3 + ...").
struct DisplayedF {
    Rational d0{72};
    Rational d1{1932};
    Rational third_term{31248};
    std::size_t third_term_power = 3;
};

inline DisplayedF displayed_f() { return {}; }

/// z(z-1)(z^2-6z+1)(z+1)^2 y'' + (z+1)(5z^4-8z^3-32z^2+28z-1) y'
///   + (4z^4+11z^3-z^2-43z+13) y
inline const DifferentialOperator& abar_operator() {
    static const DifferentialOperator op = [] {
        const Polynomial z{0, 1};
        const Polynomial zm1{-1, 1};
        const Polynomial zp1{1, 1};
        const Polynomial q{1, -6, 1};
        Polynomial p2 = poly_mul({z, zm1, q, zp1, zp1});
        Polynomial p1 = poly_mul(zp1, Polynomial{-1, 28, -32, -8, 5});
        Polynomial p0{13, -43, -1, 11, 4};
        return DifferentialOperator({p0, p1, p2});
    }();
    return op;
}

/// z(z-1)(z+1)(z^2-6z+1)^2 y'' + (z^2-6z+1)(7z^4-22z^3-18z^2+26z-1) y'
///   + 3(3z^5-24z^4-2z^3+56z^2-25z+8) y
inline const DifferentialOperator& vbar_operator() {
    static const DifferentialOperator op = [] {
        const Polynomial z{0, 1};
        const Polynomial zm1{-1, 1};
        const Polynomial zp1{1, 1};
        const Polynomial q{1, -6, 1};
        Polynomial p2 = poly_mul({z, zm1, zp1, q, q});
        Polynomial p1 = poly_mul(q, Polynomial{-1, 26, -18, -22, 7});
        Polynomial p0 = poly_scale(Polynomial{8, -25, 56, -2, -24, 3}, Rational(3));
        return DifferentialOperator({p0, p1, p2});
    }();
    return op;
}

inline HypergeometricSpec area_spec() { return {Rational(-1, 2), Rational(-1, 2), Rational(1)}; }
inline HypergeometricSpec volume_spec() { return {Rational(-3, 2), Rational(-3, 2), Rational(1)}; }

/// r(z) = 4z / (1 - z)^2, the argument of both closed forms.
inline PowerSeries clifford_argument(std::size_t order) {
    std::vector<Rational> c(order + 1);
    for (std::size_t n = 1; n <= order; ++n) c[n] = Rational(4 * n);  // 4z * sum (k+1) z^k
    return PowerSeries(std::move(c));
}

/// Abar(z) = 4(1 - z^2) / (z^2 - 6z + 1)^2 * 2F1(-1/2, -1/2; 1; r(z)).
inline PowerSeries expand_abar(std::size_t order, const Substitution& r) {
    const auto q = PowerSeries::polynomial({1, -6, 1}, order);
    const auto prefactor = PowerSeries::polynomial({4, 0, -4}, order) / (q * q);
    return prefactor * r.apply(hypergeometric_series(area_spec(), order));
}

/// Vbar(z) = 2(1 - z)^3 / (z^2 - 6z + 1)^3 * 2F1(-3/2, -3/2; 1; r(z)).
inline PowerSeries expand_vbar(std::size_t order, const Substitution& r) {
    const auto q = PowerSeries::polynomial({1, -6, 1}, order);
    const auto prefactor = PowerSeries::polynomial({2, -6, 6, -2}, order) / (q * q * q);
    return prefactor * r.apply(hypergeometric_series(volume_spec(), order));
}

inline PowerSeries expand_abar(std::size_t order) {
    return expand_abar(order, Substitution(clifford_argument(order)));
}
inline PowerSeries expand_vbar(std::size_t order) {
    return expand_vbar(order, Substitution(clifford_argument(order)));
}

/// F = 2 Vbar' Abar - 3 Vbar Abar', exact through the requested order.
inline PowerSeries expand_f(std::size_t order) {
    const Substitution r(clifford_argument(order + 1));
    const auto a = expand_abar(order + 1, r);
    const auto v = expand_vbar(order + 1, r);
    return Rational(2) * series_derivative(v) * a.truncated(order) -
           Rational(3) * v.truncated(order) * series_derivative(a);
}

/// Abar and Vbar from their operators' recurrences (one initial value each).
inline PowerSeries abar_from_operator(std::size_t order) {
    const std::array<Rational, 1> init{Rational(4)};
    return series_solution(abar_operator(), init, order);
}
inline PowerSeries vbar_from_operator(std::size_t order) {
    const std::array<Rational, 1> init{Rational(2)};
    return series_solution(vbar_operator(), init, order);
}

}  // namespace cliso
