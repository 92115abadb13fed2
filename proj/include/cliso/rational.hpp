#pragma once

#include <gmpxx.h>

#include <cfloat>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace cliso {

/// Exact rational number backed by GMP. Always canonical: lowest terms,
/// positive denominator.
class Rational {
public:
    Rational() = default;
    template <std::integral T>
    Rational(T value) {  // NOLINT(google-explicit-constructor)
        if constexpr (std::is_signed_v<T>) {
            q_ = static_cast<long>(value);
        } else {
            q_ = static_cast<unsigned long>(value);
        }
    }
    Rational(long numerator, long denominator) {
        if (denominator == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(mpz_class(numerator), mpz_class(denominator));
        q_.canonicalize();
    }
    Rational(const mpz_class& numerator, const mpz_class& denominator) {
        if (denominator == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(numerator, denominator);
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Exact value of a finite double (every double is a dyadic rational).
    static Rational from_double(double value) {
        if (!std::isfinite(value)) throw std::domain_error("Rational: non-finite double");
        return Rational(mpq_class(value));
    }

    /// Parses "p/q" or "p" (optional sign on p).
    static Rational parse(std::string_view text) {
        std::string s(text);
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        q.canonicalize();
        return Rational(q);
    }

    [[nodiscard]] std::string str() const { return q_.get_str(10); }
    [[nodiscard]] double to_double() const { return q_.get_d(); }
    [[nodiscard]] const mpq_class& raw() const { return q_; }
    [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }

    [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
    [[nodiscard]] int sign() const { return sgn(q_); }
    [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
    /// True for 0, -1, -2, ...
    [[nodiscard]] bool is_nonpositive_integer() const { return is_integer() && sign() <= 0; }
    /// True when the value is exactly representable as a double.
    [[nodiscard]] bool exact_in_double() const { return from_double(to_double()) == *this; }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// r^k for an integer exponent (negative allowed when r != 0).
inline Rational pow(const Rational& r, long k) {
    if (k < 0) return Rational(1) / pow(r, -k);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), r.numerator().get_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(d.get_mpz_t(), r.denominator().get_mpz_t(), static_cast<unsigned long>(k));
    return Rational(n, d);
}

/// Largest double not above r, and smallest double not below r.
/// Values beyond the double range go to +-infinity or +-DBL_MAX accordingly.
inline double round_down(const Rational& r) {
    double d = r.to_double();
    if (std::isinf(d)) return d > 0 ? DBL_MAX : d;
    while (Rational::from_double(d) > r) d = std::nextafter(d, -INFINITY);
    return d;
}
inline double round_up(const Rational& r) {
    double d = r.to_double();
    if (std::isinf(d)) return d < 0 ? -DBL_MAX : d;
    while (Rational::from_double(d) < r) d = std::nextafter(d, INFINITY);
    return d;
}

}  // namespace cliso

template <>
struct std::hash<cliso::Rational> {
    std::size_t operator()(const cliso::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
