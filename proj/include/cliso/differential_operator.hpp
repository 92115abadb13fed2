#pragma once

#include "power_series.hpp"

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliso {

class OrderTooLow : public std::invalid_argument {
public:
    OrderTooLow(std::size_t have, std::size_t need)
        : std::invalid_argument("apply_operator: series order " + std::to_string(have) +
                                " below operator order " + std::to_string(need)) {}
};

/// Polynomial in z with rational coefficients, lowest degree first.
using Polynomial = std::vector<Rational>;

/// Linear differential operator sum_i p_i(z) d^i/dz^i.
class DifferentialOperator {
public:
    explicit DifferentialOperator(std::vector<Polynomial> poly_coeffs) : p_(std::move(poly_coeffs)) {
        for (auto& p : p_) {
            while (!p.empty() && p.back().is_zero()) p.pop_back();
        }
        if (p_.empty() || p_.back().empty()) {
            throw std::invalid_argument("DifferentialOperator: leading coefficient is identically zero");
        }
    }

    /// Highest derivative present.
    [[nodiscard]] std::size_t order() const { return p_.size() - 1; }
    [[nodiscard]] const std::vector<Polynomial>& coefficients() const { return p_; }

    /// Coefficient of z^degree in p_derivative (zero when absent).
    [[nodiscard]] Rational coefficient(std::size_t derivative, std::size_t degree) const {
        const auto& p = p_.at(derivative);
        return degree < p.size() ? p[degree] : Rational(0);
    }

    /// Copy with z^degree in p_derivative shifted by delta.
    [[nodiscard]] DifferentialOperator perturbed(std::size_t derivative, std::size_t degree,
                                                 const Rational& delta) const {
        auto p = p_;
        if (p.at(derivative).size() <= degree) p[derivative].resize(degree + 1);
        p[derivative][degree] += delta;
        return DifferentialOperator(std::move(p));
    }

private:
    std::vector<Polynomial> p_;
};

/// Product of polynomials.
inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    Polynomial out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline Polynomial poly_mul(std::initializer_list<Polynomial> factors) {
    Polynomial out{Rational(1)};
    for (const auto& f : factors) out = poly_mul(out, f);
    return out;
}

inline Polynomial poly_scale(Polynomial p, const Rational& k) {
    for (auto& c : p) c *= k;
    return p;
}

/// sum_i p_i(z) s^(i)(z). The result is exact through order(s) - order(op).
inline PowerSeries apply_operator(const DifferentialOperator& op, const PowerSeries& s) {
    const std::size_t r = op.order();
    if (s.order() < r) throw OrderTooLow(s.order(), r);
    const std::size_t out_order = s.order() - r;
    auto result = PowerSeries::zero(out_order);
    PowerSeries deriv = s;
    for (std::size_t i = 0; i <= r; ++i) {
        if (i > 0) deriv = series_derivative(deriv);
        const auto& p = op.coefficients()[i];
        if (p.empty()) continue;
        result = result + series_mul(PowerSeries::polynomial(p, out_order), deriv.truncated(out_order));
    }
    return result;
}

/// Power-series solution of op(y) = 0 from its leading coefficients, obtained
/// by solving the coefficient recurrence the operator induces. `initial` must
/// fix every coefficient the recurrence leaves free.
inline PowerSeries series_solution(const DifferentialOperator& op, std::span<const Rational> initial,
                                   std::size_t order) {
    const auto& p = op.coefficients();
    // shift = max(i - j) over nonzero p_{i,j}; the residual at z^n involves
    // y_m for m <= n + shift.
    long shift = std::numeric_limits<long>::min();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p[i].size(); ++j)
            if (!p[i][j].is_zero()) shift = std::max(shift, static_cast<long>(i) - static_cast<long>(j));
    if (shift < 0) throw std::invalid_argument("series_solution: operator has no power-series recurrence");

    auto falling = [](long m, std::size_t k) {
        Rational f(1);
        for (std::size_t t = 0; t < k; ++t) f *= Rational(m - static_cast<long>(t));
        return f;
    };

    std::vector<Rational> y(order + 1);
    for (std::size_t k = 0; k < initial.size() && k <= order; ++k) y[k] = initial[k];

    for (long n = 0; n + shift <= static_cast<long>(order); ++n) {
        const long top = n + shift;
        Rational lead(0);
        Rational rest(0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t j = 0; j < p[i].size(); ++j) {
                if (p[i][j].is_zero()) continue;
                const long m = n - static_cast<long>(j) + static_cast<long>(i);  // index of y
                if (n < static_cast<long>(j) || m < 0) continue;
                const Rational term = p[i][j] * falling(m, i);
                if (m == top) {
                    lead += term;
                } else {
                    rest += term * y[static_cast<std::size_t>(m)];
                }
            }
        }
        if (top < static_cast<long>(initial.size())) {
            if (!(rest + lead * y[static_cast<std::size_t>(top)]).is_zero()) {
                throw std::domain_error("series_solution: initial values violate the recurrence at z^" +
                                        std::to_string(n));
            }
            continue;
        }
        if (lead.is_zero()) {
            throw std::domain_error("series_solution: coefficient " + std::to_string(top) +
                                    " is free; supply it as an initial value");
        }
        y[static_cast<std::size_t>(top)] = -rest / lead;
    }
    return PowerSeries(std::move(y));
}

}  // namespace cliso
