#pragma once

#include "certified.hpp"
#include "hypergeometric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cliso {

class Divergent : public std::domain_error {
public:
    explicit Divergent(const HypergeometricSpec& s)
        : std::domain_error("2F1" + s.str() + " diverges at x = 1 (c - a - b <= 0)") {}
};

struct EvalOptions {
    std::size_t max_terms = 1'000'000;
    /// Requested absolute error bound; evaluation stops as soon as it is met.
    double target_bound = 1e-13;
};

namespace detail {

struct SeriesSum {
    double value = 0.0;
    double bound = INFINITY;
    std::size_t terms = 0;
};

/// Certified partial summation of 2F1(a, b; c; x) for 0 <= x <= 1, c > 0.
///
/// Tail after m terms, once (n+a)(n+b) > 0 for all n >= m:
///  * geometric: |t_{n+1}/t_n| <= x rho_m with
///      rho_m = 1 + max(0, a+b-c-1)/(m+c) + max(0, ab-c)/((m+c)(m+1)),
///    so |tail| <= |t_m| / (1 - x rho_m) when x rho_m < 1;
///  * telescoping: u_n = (n+c-1)|t_n| satisfies
///      u_n - u_{n+1} >= |t_n| (s - (1-a)(1-b)/(n+1)),  s = c-a-b,
///    so |tail| <= (m+c-1)|t_m| / sigma_m with sigma_m = s - max(0,(1-a)(1-b))/(m+1),
///    valid for every x in [0, 1] including x = 1.
/// With `absolute` the sum of |t_n| x^n is bounded instead.
inline SeriesSum sum_2f1(const HypergeometricSpec& spec, double x, const EvalOptions& opt, bool absolute) {
    using namespace certified;
    const Rational& A = spec.a;
    const Rational& B = spec.b;
    const Rational& C = spec.c;
    if (C.sign() <= 0) throw std::domain_error("2F1 evaluation requires c > 0, got c = " + C.str());
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("2F1 evaluation requires 0 <= x <= 1");
    const Rational s = spec.excess();
    if (x == 1.0 && s.sign() <= 0) throw Divergent(spec);

    const double a = A.to_double();
    const double b = B.to_double();
    const double c = C.to_double();
    const bool exact_params = A.exact_in_double() && B.exact_in_double() && C.exact_in_double();

    const Rational one(1);
    const double s_lo = round_down(s);
    const Rational k_raabe = (one - A) * (one - B);
    const double k_hi = k_raabe.sign() > 0 ? round_up(k_raabe) : 0.0;
    const Rational g1 = A + B - C - one;
    const Rational g2 = A * B - C;
    const double g1_hi = g1.sign() > 0 ? round_up(g1) : 0.0;
    const double g2_hi = g2.sign() > 0 ? round_up(g2) : 0.0;
    const double c_lo = round_down(C);

    // first index past which n+a > 0, n+b > 0 and n+c-1 >= 0
    auto past = [](const Rational& p) {
        const double f = std::floor(-p.to_double());
        return f < 0 ? 0.0 : f + 1.0;
    };
    const double m_min = std::max({past(A), past(B), std::ceil(std::max(0.0, 1.0 - c))});

    SeriesSum out;
    double sum = 0.0;
    double comp = 0.0;
    double comp_err = 0.0;
    double term_err = 0.0;
    double units = 0.0;  // accumulated rounding units in the current term
    double t = 1.0;
    bool terminated = false;

    for (std::size_t n = 0; n < opt.max_terms; ++n) {
        const double term = absolute ? std::abs(t) : t;
        // TwoSum: sum + term == s_new + e exactly
        const double s_new = sum + term;
        const double bb = s_new - sum;
        const double e = (sum - (s_new - bb)) + (term - bb);
        sum = s_new;
        comp += e;
        comp_err = add_up(comp_err, mul_up(kUnit, std::abs(comp)));
        term_err = add_up(term_err, mul_up(std::abs(t), gamma(units) * (1 + 1e-6)));
        out.terms = n + 1;

        // next term
        const double nd = static_cast<double>(n);
        const double fa = nd + a;
        const double fb = nd + b;
        if (fa == 0.0 || fb == 0.0 || x == 0.0) terminated = true;
        t = t * (x * (fa * fb)) / ((nd + c) * (nd + 1.0));
        units += 8.0;
        if (!exact_params) {
            units += std::abs(a) / std::max(std::abs(fa), 1e-300) + std::abs(b) / std::max(std::abs(fb), 1e-300) +
                     std::abs(c) / std::abs(nd + c) + 3.0;
        }

        // tail bound from the first omitted term t_m, m = n + 1
        double tail = INFINITY;
        const double md = nd + 1.0;
        if (terminated) {
            tail = 0.0;
        } else if (md >= m_min) {
            const double tm = mul_up(std::abs(t), 1.0 + gamma(units) * (1 + 1e-6));
            const double mc = down(md + c_lo);
            const double rho = add_up(1.0, add_up(div_up(g1_hi, mc), div_up(g2_hi, down(mc * (md + 1.0)))));
            const double xr = mul_up(x, rho);
            if (xr < 1.0) tail = div_up(tm, down(1.0 - xr));
            const double sigma = down(s_lo - div_up(k_hi, md + 1.0));
            if (sigma > 0.0) tail = std::min(tail, div_up(mul_up(up(md + c - 1.0), tm), sigma));
        }

        const double value = sum + comp;
        const double bound = add_up(add_up(add_up(term_err, comp_err), rounding(value)), tail);
        out.value = value;
        out.bound = bound;
        if (terminated || bound <= opt.target_bound) break;
    }
    return out;
}

}  // namespace detail

/// 2F1(a, b; c; x) at an exact double x in [0, 1], with certified error bound.
inline CertifiedValue eval_2f1(const HypergeometricSpec& spec, double x, const EvalOptions& opt = {}) {
    const auto r = detail::sum_2f1(spec, x, opt, false);
    return {r.value, r.bound, r.bound <= opt.target_bound};
}

/// Upper bound for sum |t_n| x^n (used as a Lipschitz constant).
inline double abs_2f1_upper(const HypergeometricSpec& spec, double x, const EvalOptions& opt = {}) {
    const auto r = detail::sum_2f1(spec, x, opt, true);
    return certified::add_up(r.value, r.bound);
}

/// 2F1 at an uncertain argument x in [0, 1]: the evaluation error at the
/// centre plus |2F1'| * |x - x^|, where
/// |2F1'(xi)| <= |ab/c| sum |coeffs of 2F1(a+1, b+1; c+1)| xi^n.
inline CertifiedValue eval_2f1(const HypergeometricSpec& spec, const CertifiedValue& x,
                               const EvalOptions& opt = {}) {
    using namespace certified;
    auto centre = eval_2f1(spec, x.value, opt);
    centre.bound_achieved = centre.bound_achieved && x.bound_achieved;
    if (x.abs_error_bound == 0.0) return centre;
    const double xi = std::min(1.0, up(x.value + x.abs_error_bound));
    const Rational one(1);
    const HypergeometricSpec dspec{spec.a + one, spec.b + one, spec.c + one};
    double lip = INFINITY;
    try {
        EvalOptions lopt;
        lopt.max_terms = std::min<std::size_t>(opt.max_terms, 200'000);
        lopt.target_bound = 1e-3;
        lip = mul_up(round_up(abs(spec.a * spec.b / spec.c)), abs_2f1_upper(dspec, xi, lopt));
    } catch (const Divergent&) {
        lip = INFINITY;
    }
    centre.abs_error_bound = add_up(centre.abs_error_bound, mul_up(lip, x.abs_error_bound));
    if (!std::isfinite(centre.abs_error_bound)) centre.bound_achieved = false;
    return centre;
}

}  // namespace cliso
