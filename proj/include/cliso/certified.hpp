#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace cliso {

/// A double together with a rigorous absolute error bound: the exact value
/// lies in [value - abs_error_bound, value + abs_error_bound].
struct CertifiedValue {
    double value = 0.0;
    double abs_error_bound = 0.0;
    /// False when an evaluation stopped before reaching its requested bound.
    /// The bound is still valid, only larger than asked for.
    bool bound_achieved = true;

    [[nodiscard]] double lo() const { return std::nextafter(value - abs_error_bound, -INFINITY); }
    [[nodiscard]] double hi() const { return std::nextafter(value + abs_error_bound, INFINITY); }
    [[nodiscard]] bool contains(double x) const { return lo() <= x && x <= hi(); }
    [[nodiscard]] bool certainly_positive() const { return lo() > 0.0; }
    [[nodiscard]] bool certainly_negative() const { return hi() < 0.0; }
};

inline nlohmann::json to_json(const CertifiedValue& v) {
    return {{"value", v.value}, {"bound", v.abs_error_bound}, {"bound_achieved", v.bound_achieved}};
}

namespace certified {

inline constexpr double kUnit = 0x1p-53;

/// Upward-safe versions of round-to-nearest results for nonnegative operands.
inline double up(double x) { return std::nextafter(x, INFINITY); }
inline double down(double x) { return std::nextafter(x, -INFINITY); }
inline double add_up(double a, double b) { return up(a + b); }
inline double mul_up(double a, double b) { return up(a * b); }
inline double div_up(double a, double b) { return up(a / b); }

/// Bound on |fl(op) - op| for a correctly rounded result r.
inline double rounding(double r) { return up(2 * kUnit * std::abs(r)) + DBL_TRUE_MIN; }

/// gamma_k = k u / (1 - k u).
inline double gamma(double k) {
    const double ku = k * kUnit;
    if (ku >= 0.5) return INFINITY;
    return up(up(ku) / down(1.0 - ku));
}

inline CertifiedValue exact(double v) { return {v, 0.0, true}; }

/// Nearest double to r, with the exact conversion error.
inline CertifiedValue from_rational(const Rational& r) {
    const double lo = round_down(r);
    const double hi = round_up(r);
    const double v = (Rational::from_double(hi) - r < r - Rational::from_double(lo)) ? hi : lo;
    return {v, round_up(abs(r - Rational::from_double(v))), true};
}

inline CertifiedValue pi() { return {M_PI, up(kUnit * M_PI), true}; }

inline bool both(const CertifiedValue& x, const CertifiedValue& y) {
    return x.bound_achieved && y.bound_achieved;
}

inline CertifiedValue add(const CertifiedValue& x, const CertifiedValue& y) {
    const double v = x.value + y.value;
    return {v, add_up(add_up(x.abs_error_bound, y.abs_error_bound), rounding(v)), both(x, y)};
}

inline CertifiedValue sub(const CertifiedValue& x, const CertifiedValue& y) {
    const double v = x.value - y.value;
    return {v, add_up(add_up(x.abs_error_bound, y.abs_error_bound), rounding(v)), both(x, y)};
}

inline CertifiedValue mul(const CertifiedValue& x, const CertifiedValue& y) {
    const double v = x.value * y.value;
    double e = mul_up(std::abs(x.value), y.abs_error_bound);
    e = add_up(e, mul_up(std::abs(y.value), x.abs_error_bound));
    e = add_up(e, mul_up(x.abs_error_bound, y.abs_error_bound));
    return {v, add_up(e, rounding(v)), both(x, y)};
}

inline CertifiedValue div(const CertifiedValue& x, const CertifiedValue& y) {
    const double gap = down(std::abs(y.value) - y.abs_error_bound);
    if (!(gap > 0.0)) throw std::domain_error("certified division: divisor interval contains zero");
    const double v = x.value / y.value;
    const double num = add_up(x.abs_error_bound, mul_up(std::abs(v), y.abs_error_bound));
    return {v, add_up(div_up(num, gap), rounding(v)), both(x, y)};
}

inline CertifiedValue sqrt(const CertifiedValue& x) {
    if (x.value - x.abs_error_bound < 0.0) throw std::domain_error("certified sqrt: interval reaches below zero");
    const double v = std::sqrt(x.value);
    if (x.abs_error_bound == 0.0) return {v, rounding(v), x.bound_achieved};
    // |sqrt(x) - sqrt(x^)| = |x - x^| / (sqrt(x) + sqrt(x^)) <= e / sqrt(x^)
    return {v, add_up(div_up(x.abs_error_bound, down(v)), rounding(v)), x.bound_achieved};
}

inline CertifiedValue square(const CertifiedValue& x) { return mul(x, x); }

inline CertifiedValue integer_power(const CertifiedValue& x, int k) {
    if (k < 0) return div(exact(1.0), integer_power(x, -k));
    CertifiedValue r = exact(1.0);
    for (int i = 0; i < k; ++i) r = mul(r, x);
    return r;
}

/// x^p for x > 0 and rational p, using monotonicity of t -> t^p.
/// Assumes std::pow is faithful (error below one ulp).
inline CertifiedValue power(const CertifiedValue& x, const Rational& p) {
    if (p.is_integer()) return integer_power(x, static_cast<int>(p.numerator().get_si()));
    const double xl = down(x.value - x.abs_error_bound);
    if (!(xl > 0.0)) throw std::domain_error("certified power: base interval reaches zero");
    const double xh = up(x.value + x.abs_error_bound);
    const double pd = p.to_double();
    const double v = std::pow(x.value, pd);
    const double fl = std::pow(xl, pd);
    const double fh = std::pow(xh, pd);
    double e = std::max(std::abs(fh - v), std::abs(v - fl));
    e = add_up(e, up(4 * kUnit * (std::abs(fh) + std::abs(fl) + std::abs(v))));
    if (!p.exact_in_double()) {
        // |d/dp t^p| = t^p |ln t|, over the whole base interval
        const double dp = round_up(abs(p - Rational::from_double(pd)));
        const double slope = mul_up(std::max(std::abs(fl), std::abs(fh)),
                                    std::max(std::abs(std::log(xl)), std::abs(std::log(xh))) * 1.01);
        e = add_up(e, mul_up(slope, dp * 1.01));
    }
    return {v, up(e), x.bound_achieved};
}

}  // namespace certified
}  // namespace cliso
