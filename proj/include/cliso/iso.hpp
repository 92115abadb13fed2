#pragma once

// Isoperimetric ratio Iso(z) = 6 sqrt(pi) V(z) / A(z)^(3/2) of the Clifford
// torus family, evaluated with certified error bounds.

#include "certified.hpp"
#include "clifford.hpp"
#include "hypergeometric_eval.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace cliso {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// True iff 0 <= z < sqrt(2) - 1, decided exactly.
inline bool in_iso_domain(double z) {
    if (!(z >= 0.0) || !std::isfinite(z)) return false;
    const Rational zp1 = Rational::from_double(z) + Rational(1);
    return zp1 * zp1 < Rational(2);
}

/// Largest double below sqrt(2) - 1.
inline double iso_domain_sup() {
    double z = std::sqrt(2.0) - 1.0;
    while (!in_iso_domain(z)) z = std::nextafter(z, 0.0);
    while (in_iso_domain(std::nextafter(z, 1.0))) z = std::nextafter(z, 1.0);
    return z;
}

/// True iff 0 <= u < 3 - 2 sqrt(2), the image of the domain under z -> z^2.
inline bool in_iso_u_domain(const Rational& u) {
    if (u.sign() < 0) return false;
    const Rational three_minus = Rational(3) - u;  // need 3 - u > 2 sqrt 2
    return three_minus.sign() > 0 && three_minus * three_minus > Rational(8);
}

/// Iso(0) = 3/2 (2 pi^2)^(-1/4), the left end of the range.
inline CertifiedValue iso_at_zero_closed_form() {
    using namespace certified;
    const auto two_pi2 = mul(exact(2.0), square(pi()));
    return div(exact(1.5), sqrt(sqrt(two_pi2)));
}

namespace detail {

/// 4u / (1 - u)^2, exact.
inline Rational clifford_x(const Rational& u) {
    const Rational d = Rational(1) - u;
    return Rational(4) * u / (d * d);
}

inline void require_u_domain(const Rational& u) {
    if (!in_iso_u_domain(u)) throw DomainError("Iso: argument outside [0, sqrt(2) - 1)");
}

}  // namespace detail

/// Iso^2 as a function of u = z^2:
///   (9 sqrt2 / 8 pi) 2F1(-3/2,-3/2;1;x)^2 / 2F1(-1/2,-1/2;1;x)^3 ((1-u)/(1+u))^3,
///   x = 4u / (1 - u)^2.
inline CertifiedValue iso_squared_of_u(const Rational& u, const EvalOptions& opt = {}) {
    using namespace certified;
    detail::require_u_domain(u);
    const auto x = from_rational(detail::clifford_x(u));
    const auto q = from_rational((Rational(1) - u) / (Rational(1) + u));
    const auto f1 = eval_2f1(area_spec(), x, opt);
    const auto f3 = eval_2f1(volume_spec(), x, opt);
    const auto k = div(mul(exact(9.0), sqrt(exact(2.0))), mul(exact(8.0), pi()));
    return mul(mul(k, div(square(f3), integer_power(f1, 3))), integer_power(q, 3));
}

inline CertifiedValue iso_of_u(const Rational& u, const EvalOptions& opt = {}) {
    return certified::sqrt(iso_squared_of_u(u, opt));
}

inline CertifiedValue iso_squared(double z, const EvalOptions& opt = {}) {
    if (!in_iso_domain(z)) throw DomainError("Iso: z outside [0, sqrt(2) - 1)");
    const Rational zr = Rational::from_double(z);
    return iso_squared_of_u(zr * zr, opt);
}

/// Iso(z) on [0, sqrt(2) - 1), positive root of the closed form.
inline CertifiedValue iso(double z, const EvalOptions& opt = {}) {
    return certified::sqrt(iso_squared(z, opt));
}

/// w_a(x) = 2F1(-a, -a; 1; x) / (1 + x)^a on [0, 1].
inline CertifiedValue eval_w(const Rational& a, const CertifiedValue& x, const EvalOptions& opt = {}) {
    using namespace certified;
    if (a.is_zero() || a == Rational(1)) return exact(1.0);  // w_0 = w_1 = 1
    const auto f = eval_2f1({-a, -a, Rational(1)}, x, opt);
    return div(f, power(add(exact(1.0), x), a));
}

inline CertifiedValue eval_w(const Rational& a, double x, const EvalOptions& opt = {}) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("w_a: x outside [0, 1]");
    return eval_w(a, certified::exact(x), opt);
}

/// h(x) = 2F1(-3/2,-3/2;1;x)^2 / 2F1(-1/2,-1/2;1;x)^3 (x+1)^(-3/2) on [0, 1].
inline CertifiedValue eval_h(double x, const EvalOptions& opt = {}) {
    using namespace certified;
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("h: x outside [0, 1]");
    const auto f1 = eval_2f1(area_spec(), x, opt);
    const auto f3 = eval_2f1(volume_spec(), x, opt);
    return mul(div(square(f3), integer_power(f1, 3)), power(exact(1.0 + x), Rational(-3, 2)));
}

/// d/dt w_a(r(t)), r(t) = 4t/(1-t)^2, from
///   4a(a-1) 2F1(a+1, a; 2; r) (1-r)^(2a) (1-t)^(2a-1) / (1+t)^(2a+1)
/// with 2F1(a+1, a; 2; r)(1-r)^(2a) = (1-r) 2F1(1-a, 2-a; 2; r) (Euler).
inline CertifiedValue w_of_r_derivative(const Rational& a, const Rational& t, const EvalOptions& opt = {}) {
    using namespace certified;
    const Rational one(1);
    const Rational two(2);
    if (a.is_zero() || a == one) return exact(0.0);
    const Rational r = detail::clifford_x(t);
    const auto f = eval_2f1({one - a, two - a, two}, from_rational(r), opt);
    auto v = mul(from_rational(Rational(4) * a * (a - one) * (one - r)), f);
    v = mul(v, power(from_rational(one - t), two * a - one));
    return div(v, power(from_rational(one + t), two * a + one));
}

/// dIso/dz. With Iso^2(sqrt t) = K w_{3/2}(r(t))^2 / w_{1/2}(r(t))^3,
///   Iso'(z) = Iso(z) z (2 D_{3/2} / w_{3/2} - 3 D_{1/2} / w_{1/2}),  t = z^2,
/// where D_a = d/dt w_a(r(t)).
inline CertifiedValue iso_derivative(double z, const EvalOptions& opt = {}) {
    using namespace certified;
    if (!in_iso_domain(z)) throw DomainError("Iso': z outside [0, sqrt(2) - 1)");
    if (z == 0.0) return exact(0.0);  // Iso is even in z
    const Rational zr = Rational::from_double(z);
    const Rational t = zr * zr;
    const Rational half(1, 2);
    const Rational three_halves(3, 2);
    const auto r = from_rational(detail::clifford_x(t));
    const auto w1 = eval_w(half, r, opt);
    const auto w3 = eval_w(three_halves, r, opt);
    const auto d1 = w_of_r_derivative(half, t, opt);
    const auto d3 = w_of_r_derivative(three_halves, t, opt);
    const auto bracket = sub(mul(exact(2.0), div(d3, w3)), mul(exact(3.0), div(d1, w1)));
    return mul(mul(iso_of_u(t, opt), exact(z)), bracket);
}

namespace detail {

/// Exact Abar, Vbar coefficients (from the annihilating operators), cached as
/// c_n q^n rounded up, q = 11/64 just above the radius 3 - 2 sqrt 2, so that
/// the stored values stay in double range.
inline Rational direct_scale() { return Rational(11, 64); }

struct DirectTables {
    std::vector<double> abar;
    std::vector<double> vbar;
};

inline constexpr std::size_t kDirectMaxOrder = 3000;

inline const DirectTables& direct_tables() {
    static const DirectTables tables = [] {
        DirectTables t;
        const auto a = abar_from_operator(kDirectMaxOrder);
        const auto v = vbar_from_operator(kDirectMaxOrder);
        Rational qn(1);
        for (std::size_t n = 0; n <= kDirectMaxOrder; ++n) {
            t.abar.push_back(round_up(a[n] * qn));
            t.vbar.push_back(round_up(v[n] * qn));
            qn *= direct_scale();
        }
        return t;
    }();
    return tables;
}

/// Certified upper bounds of Abar(u1), Vbar(u1) from the closed forms.
inline std::pair<double, double> closed_form_upper(const Rational& u1) {
    using namespace certified;
    const Rational one(1);
    const Rational q = u1 * u1 - Rational(6) * u1 + one;
    const auto x = from_rational(clifford_x(u1));
    EvalOptions opt;
    opt.target_bound = 1e-6;
    const auto f1 = eval_2f1(area_spec(), x, opt);
    const auto f3 = eval_2f1(volume_spec(), x, opt);
    const auto abar = mul(from_rational(Rational(4) * (one - u1 * u1) / (q * q)), f1);
    const auto vbar = mul(from_rational(Rational(2) * pow(one - u1, 3) / pow(q, 3)), f3);
    return {abar.hi(), vbar.hi()};
}

/// Horner sum of positive coefficients c_0..c_n at u >= 0 (coefficients
/// already rounded up), plus a rigorous bound on the rounding error.
inline std::pair<double, double> positive_horner(const std::vector<double>& c, std::size_t n, double u) {
    double p = c[n];
    for (std::size_t k = n; k-- > 0;) p = p * u + c[k];
    // Higham: |fl - p| <= gamma_{2n+2} p~(u), p~ = p for positive data;
    // the rounded-up coefficients overestimate by at most 2u each.
    const double g = certified::gamma(2.0 * static_cast<double>(n) + 4.0);
    return {p, certified::up(certified::mul_up(g, p) / (1.0 - g))};
}

}  // namespace detail

/// Iso(z) = 6 / (2^(1/4) sqrt(pi)) Vbar(z^2) / Abar(z^2)^(3/2) summed directly
/// from the exact coefficients, through z^(2*terms). The tail uses the Cauchy
/// majorant c_n <= G(u1) / u1^n for an intermediate radius u1, valid because
/// all coefficients are positive. `terms` == 0 picks the smallest sufficient
/// truncation.
inline CertifiedValue iso_direct(double z, std::size_t terms = 0) {
    using namespace certified;
    if (!in_iso_domain(z)) throw DomainError("Iso: z outside [0, sqrt(2) - 1)");
    const Rational zr = Rational::from_double(z);
    const Rational u = zr * zr;
    const auto& tab = detail::direct_tables();

    // intermediate radius between u and 3 - 2 sqrt 2
    const double rho_lo = 3.0 - 2.0 * std::sqrt(2.0) - 1e-15;
    Rational u1 = Rational::from_double(0.5 * (u.to_double() + rho_lo));
    if (!in_iso_u_domain(u1) || u1 <= u) throw DomainError("iso_direct: z too close to the domain boundary");
    const auto [abar_u1, vbar_u1] = detail::closed_form_upper(u1);
    const double ratio = up(round_up(u) / round_down(u1));
    const auto vc = from_rational(u / detail::direct_scale());  // evaluation point of the scaled tables

    auto tail = [&](std::size_t n, double majorant) {
        // sum_{k > n} G (u/u1)^k = G ratio^(n+1) / (1 - ratio)
        return div_up(mul_up(majorant, up(std::pow(ratio, static_cast<double>(n + 1)) * (1 + 1e-12))),
                      down(1.0 - ratio));
    };

    std::size_t n = terms;
    if (n == 0) {
        n = 1;
        while (n < detail::kDirectMaxOrder &&
               std::max(tail(n, abar_u1), tail(n, vbar_u1)) > 1e-17)
            ++n;
    }
    n = std::min(n, detail::kDirectMaxOrder);

    auto series_value = [&](const std::vector<double>& c, double majorant) {
        const auto [p, herr] = detail::positive_horner(c, n, vc.value);
        // perturbation of v by e: p(v(1+d)) <= (1+d)^n p(v) for positive coefficients
        const double rel = vc.value > 0 ? vc.abs_error_bound / vc.value : 0.0;
        const double perr = mul_up(up(std::expm1(static_cast<double>(n) * std::log1p(rel)) * 1.01), up(p + herr));
        // coefficients were rounded up: the rounded sum exceeds the exact one by at most 2u p
        const double cerr = mul_up(2 * kUnit, up(p + herr));
        return CertifiedValue{p, add_up(add_up(add_up(herr, perr), cerr), tail(n, majorant)), true};
    };
    const auto abar = series_value(tab.abar, abar_u1);
    const auto vbar = series_value(tab.vbar, vbar_u1);
    const auto k = div(exact(6.0), mul(power(exact(2.0), Rational(1, 4)), sqrt(pi())));
    if (!(abar.value - abar.abs_error_bound > 0.0)) {
        // too few terms: the tail swamps the sum
        return {k.value * vbar.value / std::pow(abar.value, 1.5), INFINITY, false};
    }
    auto result = mul(k, div(vbar, power(abar, Rational(3, 2))));
    result.bound_achieved = n < detail::kDirectMaxOrder || terms != 0;
    return result;
}

}  // namespace cliso
