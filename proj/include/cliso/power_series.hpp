#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cliso {

class DivisionByNonUnit : public std::domain_error {
public:
    DivisionByNonUnit() : std::domain_error("series division: divisor has zero constant term") {}
};

class CompositionRequiresZeroConstant : public std::domain_error {
public:
    CompositionRequiresZeroConstant()
        : std::domain_error("series composition: inner series has nonzero constant term") {}
};

/// Truncated power series sum_{n<=N} c_n z^n over the rationals. Coefficients
/// are exact for every n <= order(); nothing beyond the order is claimed.
class PowerSeries {
public:
    PowerSeries() : c_(1) {}
    explicit PowerSeries(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
        if (c_.empty()) throw std::invalid_argument("PowerSeries: empty coefficient list");
    }

    static PowerSeries zero(std::size_t order) { return PowerSeries(std::vector<Rational>(order + 1)); }
    static PowerSeries constant(const Rational& value, std::size_t order) {
        auto s = zero(order);
        s.c_[0] = value;
        return s;
    }
    static PowerSeries one(std::size_t order) { return constant(Rational(1), order); }
    /// The series z, known exactly to the given order.
    static PowerSeries variable(std::size_t order) { return monomial(Rational(1), 1, order); }
    static PowerSeries monomial(const Rational& coeff, std::size_t degree, std::size_t order) {
        auto s = zero(order);
        if (degree <= order) s.c_[degree] = coeff;
        return s;
    }
    /// A polynomial (lowest degree first) viewed as a series of the given order.
    static PowerSeries polynomial(std::span<const Rational> coeffs, std::size_t order) {
        auto s = zero(order);
        for (std::size_t i = 0; i < coeffs.size() && i <= order; ++i) s.c_[i] = coeffs[i];
        return s;
    }
    static PowerSeries polynomial(std::initializer_list<Rational> coeffs, std::size_t order) {
        return polynomial(std::span<const Rational>(coeffs.begin(), coeffs.size()), order);
    }

    [[nodiscard]] std::size_t order() const { return c_.size() - 1; }
    [[nodiscard]] const Rational& operator[](std::size_t n) const { return c_.at(n); }
    [[nodiscard]] std::span<const Rational> coefficients() const { return c_; }

    [[nodiscard]] PowerSeries truncated(std::size_t order) const {
        if (order > this->order()) throw std::invalid_argument("PowerSeries::truncated: cannot raise order");
        return PowerSeries(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order) + 1));
    }

    /// Copy with coefficient n replaced by c_n + delta (fault injection in tests).
    [[nodiscard]] PowerSeries perturbed(std::size_t n, const Rational& delta) const {
        PowerSeries s = *this;
        if (n <= order()) s.c_[n] += delta;
        return s;
    }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
    }

    /// Index of the first nonzero coefficient, or order()+1 when identically zero.
    [[nodiscard]] std::size_t valuation() const {
        std::size_t n = 0;
        while (n < c_.size() && c_[n].is_zero()) ++n;
        return n;
    }

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    friend PowerSeries series_add(const PowerSeries&, const PowerSeries&);
    friend PowerSeries series_sub(const PowerSeries&, const PowerSeries&);
    friend PowerSeries series_mul(const PowerSeries&, const PowerSeries&);
    friend PowerSeries series_scale(const PowerSeries&, const Rational&);
    friend PowerSeries series_div(const PowerSeries&, const PowerSeries&);
    friend PowerSeries series_derivative(const PowerSeries&);

    std::vector<Rational> c_;
};

inline PowerSeries series_add(const PowerSeries& s1, const PowerSeries& s2) {
    const std::size_t n = std::min(s1.order(), s2.order());
    std::vector<Rational> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out[i] = s1.c_[i] + s2.c_[i];
    return PowerSeries(std::move(out));
}

inline PowerSeries series_sub(const PowerSeries& s1, const PowerSeries& s2) {
    const std::size_t n = std::min(s1.order(), s2.order());
    std::vector<Rational> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out[i] = s1.c_[i] - s2.c_[i];
    return PowerSeries(std::move(out));
}

inline PowerSeries series_scale(const PowerSeries& s, const Rational& k) {
    std::vector<Rational> out(s.c_);
    for (auto& c : out) c *= k;
    return PowerSeries(std::move(out));
}

/// Cauchy product truncated at the smaller order.
inline PowerSeries series_mul(const PowerSeries& s1, const PowerSeries& s2) {
    const std::size_t n = std::min(s1.order(), s2.order());
    const std::size_t v1 = s1.valuation();
    const std::size_t v2 = s2.valuation();
    std::vector<mpq_class> acc(n + 1);
    mpq_class term;
    for (std::size_t i = v1; i <= n; ++i) {
        const mpq_class& a = s1.c_[i].raw();
        if (sgn(a) == 0) continue;
        for (std::size_t j = v2; i + j <= n; ++j) {
            const mpq_class& b = s2.c_[j].raw();
            if (sgn(b) == 0) continue;
            mpq_mul(term.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
            mpq_add(acc[i + j].get_mpq_t(), acc[i + j].get_mpq_t(), term.get_mpq_t());
        }
    }
    std::vector<Rational> out;
    out.reserve(n + 1);
    for (auto& q : acc) out.emplace_back(std::move(q));
    return PowerSeries(std::move(out));
}

/// Quotient q with q * s2 = s1 through min order.
inline PowerSeries series_div(const PowerSeries& s1, const PowerSeries& s2) {
    if (s2.c_[0].is_zero()) throw DivisionByNonUnit();
    const std::size_t n = std::min(s1.order(), s2.order());
    const Rational inv0 = Rational(1) / s2.c_[0];
    std::vector<Rational> q(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        mpq_class acc = s1.c_[k].raw();
        mpq_class term;
        for (std::size_t i = 1; i <= k; ++i) {
            if (s2.c_[i].is_zero()) continue;
            mpq_mul(term.get_mpq_t(), s2.c_[i].raw().get_mpq_t(), q[k - i].raw().get_mpq_t());
            mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), term.get_mpq_t());
        }
        q[k] = Rational(std::move(acc)) * inv0;
    }
    return PowerSeries(std::move(q));
}

/// Termwise derivative; the order drops by one.
inline PowerSeries series_derivative(const PowerSeries& s) {
    if (s.order() < 1) throw std::invalid_argument("series_derivative: order must be at least 1");
    std::vector<Rational> out(s.order());
    for (std::size_t n = 1; n <= s.order(); ++n) out[n - 1] = s.c_[n] * Rational(n);
    return PowerSeries(std::move(out));
}

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) { return series_add(a, b); }
inline PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return series_sub(a, b); }
inline PowerSeries operator-(const PowerSeries& a) { return series_scale(a, Rational(-1)); }
inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) { return series_mul(a, b); }
inline PowerSeries operator*(const Rational& k, const PowerSeries& s) { return series_scale(s, k); }
inline PowerSeries operator*(const PowerSeries& s, const Rational& k) { return series_scale(s, k); }
inline PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return series_div(a, b); }

/// Reusable substitution z -> inner(z). Powers of the inner series are built
/// once, so many outer series can be composed with the same inner one cheaply.
class Substitution {
public:
    explicit Substitution(PowerSeries inner) : inner_(std::move(inner)) {
        if (!inner_[0].is_zero()) throw CompositionRequiresZeroConstant();
        const std::size_t n = inner_.order();
        powers_.reserve(n + 1);
        powers_.push_back(PowerSeries::one(n));
        for (std::size_t k = 1; k <= n; ++k) powers_.push_back(series_mul(powers_.back(), inner_));
    }

    [[nodiscard]] const PowerSeries& inner() const { return inner_; }

    /// outer(inner(z)), truncated to min(order(outer), order(inner)).
    [[nodiscard]] PowerSeries apply(const PowerSeries& outer) const {
        const std::size_t n = std::min(outer.order(), inner_.order());
        std::vector<mpq_class> acc(n + 1);
        mpq_class term;
        for (std::size_t k = 0; k <= n; ++k) {
            const mpq_class& ck = outer[k].raw();
            if (sgn(ck) == 0) continue;
            // inner^k vanishes below z^k
            for (std::size_t m = k; m <= n; ++m) {
                const mpq_class& p = powers_[k][m].raw();
                if (sgn(p) == 0) continue;
                mpq_mul(term.get_mpq_t(), ck.get_mpq_t(), p.get_mpq_t());
                mpq_add(acc[m].get_mpq_t(), acc[m].get_mpq_t(), term.get_mpq_t());
            }
        }
        std::vector<Rational> out;
        out.reserve(n + 1);
        for (auto& q : acc) out.emplace_back(std::move(q));
        return PowerSeries(std::move(out));
    }

private:
    PowerSeries inner_;
    std::vector<PowerSeries> powers_;
};

inline PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner) {
    if (!inner[0].is_zero()) throw CompositionRequiresZeroConstant();
    const std::size_t n = std::min(outer.order(), inner.order());
    return Substitution(inner.truncated(n)).apply(outer);
}

/// (1 + z)^alpha with generalized binomial coefficients.
inline PowerSeries binomial_series(const Rational& alpha, std::size_t order) {
    std::vector<Rational> out(order + 1);
    out[0] = Rational(1);
    for (std::size_t n = 1; n <= order; ++n) {
        out[n] = out[n - 1] * (alpha - Rational(n - 1)) / Rational(n);
    }
    return PowerSeries(std::move(out));
}

/// (1 + t(z))^alpha for a series t with zero constant term.
inline PowerSeries binomial_power(const PowerSeries& t, const Rational& alpha) {
    return series_compose(binomial_series(alpha, t.order()), t);
}

/// "p/q" strings, lowest degree first.
inline std::vector<std::string> coefficient_strings(const PowerSeries& s) {
    std::vector<std::string> out;
    out.reserve(s.order() + 1);
    for (const auto& c : s.coefficients()) out.push_back(c.str());
    return out;
}

}  // namespace cliso
