#pragma once

#include "clifford.hpp"
#include "differential_operator.hpp"
#include "hypergeometric.hpp"
#include "power_series.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cliso {

/// First coefficient where the two sides of an identity disagree.
struct IdentityFailure {
    std::string label;  // which sub-check (e.g. "abar" in the ODE report)
    std::size_t sample_index = 0;
    std::size_t coefficient = 0;
    Rational difference;
};

struct IdentityReport {
    std::string name;
    std::size_t verified_order = 0;
    std::vector<Rational> samples;
    std::optional<IdentityFailure> failure;
    /// Degree in the free parameter of every compared coefficient, when the
    /// identity is polynomial in one parameter.
    std::optional<std::size_t> degree_bound;

    [[nodiscard]] bool verified() const { return !failure.has_value(); }

    /// Sampling at more distinct points than the degree bound proves the
    /// identity for every parameter value through verified_order.
    [[nodiscard]] bool certifies_all_parameters() const {
        if (!verified() || !degree_bound) return false;
        const std::set<Rational, std::less<>> distinct(samples.begin(), samples.end());
        return distinct.size() > *degree_bound;
    }
};

inline nlohmann::json to_json(const IdentityReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["verified_order"] = r.verified_order;
    auto samples = nlohmann::json::array();
    for (const auto& s : r.samples) samples.push_back(s.str());
    j["samples"] = samples;
    j["status"] = r.verified() ? "Verified" : "Failed";
    if (r.failure) {
        j["failure_detail"] = {{"label", r.failure->label},
                               {"sample_index", r.failure->sample_index},
                               {"coefficient", r.failure->coefficient},
                               {"difference", r.failure->difference.str()}};
    }
    if (r.degree_bound) {
        j["degree_bound"] = *r.degree_bound;
        j["certifies_all_parameters"] = r.certifies_all_parameters();
    }
    return j;
}

/// Deliberate corruption of one check, used to show the checks can fail.
struct Fault {
    enum class Kind { none, input_coefficient, operator_coefficient, rhs_parameter_shift };
    Kind kind = Kind::none;
    std::size_t index = 0;       // series coefficient, or z-degree for operator faults
    std::size_t derivative = 0;  // operator faults only
    Rational delta{1};

    static Fault coefficient(std::size_t n, Rational delta = Rational(1)) {
        return {Kind::input_coefficient, n, 0, std::move(delta)};
    }
    static Fault operator_term(std::size_t derivative, std::size_t degree, Rational delta = Rational(1)) {
        return {Kind::operator_coefficient, degree, derivative, std::move(delta)};
    }
    static Fault rhs_parameter(Rational delta = Rational(1)) {
        return {Kind::rhs_parameter_shift, 0, 0, std::move(delta)};
    }

    [[nodiscard]] PowerSeries apply(const PowerSeries& s) const {
        return kind == Kind::input_coefficient ? s.perturbed(index, delta) : s;
    }
    [[nodiscard]] DifferentialOperator apply(const DifferentialOperator& op) const {
        return kind == Kind::operator_coefficient ? op.perturbed(derivative, index, delta) : op;
    }
    [[nodiscard]] Rational rhs_shift() const {
        return kind == Kind::rhs_parameter_shift ? delta : Rational(0);
    }
};

/// Parameter triple for identities with three free parameters.
struct ParameterTriple {
    Rational a;
    Rational b;
    Rational c;
};

/// Distinct small rationals ordered by height max(|p|, q): 0, 1, -1, 2, -2,
/// 1/2, -1/2, 3, -3, 3/2, -3/2, 1/3, -1/3, 2/3, ...
inline std::vector<Rational> parameter_samples(std::size_t count) {
    std::vector<Rational> out;
    if (count == 0) return out;
    out.emplace_back(0);
    for (long h = 1; out.size() < count; ++h) {
        for (long q = 1; q <= h && out.size() < count; ++q) {
            for (long p = 1; p <= h && out.size() < count; ++p) {
                if (std::max(p, q) != h || std::gcd(p, q) != 1) continue;
                out.emplace_back(p, q);
                if (out.size() < count) out.emplace_back(-p, q);
            }
        }
    }
    return out;
}

/// Sample count giving the all-parameter certificate through `order`.
inline std::size_t certificate_sample_count(std::size_t order) { return 2 * order + 3; }

/// Default triples for the contiguous relations and Euler's transformation.
/// All have b != 0 and c, c + 1 valid lower parameters.
inline std::vector<ParameterTriple> default_triples() {
    return {
        {Rational(1), Rational(1), Rational(1)},
        {Rational(1, 2), Rational(3, 2), Rational(1)},
        {Rational(-1, 2), Rational(-1, 2), Rational(1)},
        {Rational(-3, 2), Rational(-1, 2), Rational(1)},
        {Rational(1, 3), Rational(1, 5), Rational(2)},
        {Rational(3, 2), Rational(5, 2), Rational(2)},
        {Rational(-2), Rational(7, 3), Rational(1, 2)},
        {Rational(2, 7), Rational(-5, 4), Rational(3)},
        {Rational(5, 3), Rational(-1), Rational(7, 2)},
        {Rational(-1, 4), Rational(2), Rational(5, 3)},
        {Rational(0), Rational(3, 4), Rational(4)},
        {Rational(4), Rational(1, 6), Rational(3, 4)},
    };
}

inline std::vector<Rational> flatten(const std::vector<ParameterTriple>& triples) {
    std::vector<Rational> out;
    for (const auto& t : triples) {
        out.push_back(t.a);
        out.push_back(t.b);
        out.push_back(t.c);
    }
    return out;
}

namespace detail {

/// First index <= order where lhs and rhs differ.
inline std::optional<std::pair<std::size_t, Rational>> first_difference(const PowerSeries& lhs,
                                                                        const PowerSeries& rhs,
                                                                        std::size_t order) {
    for (std::size_t n = 0; n <= order; ++n) {
        Rational d = lhs[n] - rhs[n];
        if (!d.is_zero()) return std::make_pair(n, std::move(d));
    }
    return std::nullopt;
}

using SidePair = std::pair<PowerSeries, PowerSeries>;

inline IdentityReport check_samples(std::string name, std::size_t order, std::vector<Rational> samples,
                                    std::size_t sample_count,
                                    const std::function<SidePair(std::size_t)>& sides) {
    IdentityReport report{std::move(name), order, std::move(samples), std::nullopt, std::nullopt};
    for (std::size_t i = 0; i < sample_count; ++i) {
        const auto [lhs, rhs] = sides(i);
        if (auto diff = first_difference(lhs, rhs, order)) {
            report.failure = IdentityFailure{"", i, diff->first, diff->second};
            break;
        }
    }
    return report;
}

/// (1 - x)^alpha.
inline PowerSeries one_minus_x_power(const Rational& alpha, std::size_t order) {
    auto s = binomial_series(alpha, order);
    std::vector<Rational> c(s.coefficients().begin(), s.coefficients().end());
    for (std::size_t n = 1; n < c.size(); n += 2) c[n] = -c[n];
    return PowerSeries(std::move(c));
}

/// w_a(x) = 2F1(-a, -a; 1; x) (1 + x)^(-a).
inline PowerSeries w_series(const Rational& a, std::size_t order) {
    return hypergeometric_series({-a, -a, Rational(1)}, order) * binomial_series(-a, order);
}

inline PowerSeries x_times(const PowerSeries& s) {
    return PowerSeries::variable(s.order()) * s;
}

}  // namespace detail

/// Both printed operators applied to the closed-form expansions; the residuals
/// must vanish through order - 2.
inline IdentityReport verify_odes(std::size_t order, const Fault& abar_fault = {},
                                  const Fault& vbar_fault = {}) {
    if (order < 3) throw std::invalid_argument("verify_odes: order must be at least 3");
    const Substitution r(clifford_argument(order));
    IdentityReport report{"odes", order - 2, {}, std::nullopt, std::nullopt};
    const auto check = [&](const std::string& label, const DifferentialOperator& op, const PowerSeries& s,
                           const Fault& fault) {
        const auto residual = apply_operator(fault.apply(op), fault.apply(s));
        const auto zero = PowerSeries::zero(residual.order());
        if (auto diff = detail::first_difference(residual, zero, residual.order())) {
            report.failure = IdentityFailure{label, 0, diff->first, diff->second};
        }
    };
    check("abar", abar_operator(), expand_abar(order, r), abar_fault);
    if (report.verified()) check("vbar", vbar_operator(), expand_vbar(order, r), vbar_fault);
    return report;
}

/// (a+1)(1-x) 2F1(a+1, a+2; 2; x) = a(x+1) 2F1(a+1, a+1; 2; x) + 2F1(a, a; 1; x).
inline IdentityReport verify_lemma1(const std::vector<Rational>& a_samples, std::size_t order,
                                    const Fault& fault = {}) {
    const auto one = Rational(1);
    auto report = detail::check_samples(
        "lemma1", order, a_samples, a_samples.size(), [&](std::size_t i) -> detail::SidePair {
            const Rational& a = a_samples[i];
            const auto f_lhs = fault.apply(hypergeometric_series({a + one, a + Rational(2), Rational(2)}, order));
            const auto lhs = (a + one) * PowerSeries::polynomial({1, -1}, order) * f_lhs;
            const auto rhs = a * PowerSeries::polynomial({1, 1}, order) *
                                 hypergeometric_series({a + one, a + one, Rational(2)}, order) +
                             hypergeometric_series({a, a, one}, order);
            return {lhs, rhs};
        });
    report.degree_bound = 2 * order + 2;
    return report;
}

enum class Contiguous { cont1, cont2 };

/// cont1 (cleared by b x): b x 2F1(a+1, b+1; c+1; x) = c (2F1(a+1, b; c; x) - 2F1(a, b; c; x)).
/// cont2 (cleared by 1 - x): a (1-x) (2F1(a+1, b; c) - 2F1(a, b; c))
///                          = (c-b) 2F1(a, b-1; c) + (b - c + a x) 2F1(a, b; c).
inline IdentityReport verify_contiguous(Contiguous which, const std::vector<ParameterTriple>& samples,
                                        std::size_t order, const Fault& fault = {}) {
    const auto one = Rational(1);
    const std::string name = which == Contiguous::cont1 ? "contiguous_cont1" : "contiguous_cont2";
    return detail::check_samples(
        name, order, flatten(samples), samples.size(), [&](std::size_t i) -> detail::SidePair {
            const auto& [a, b, c] = samples[i];
            const Rational rc = c + fault.rhs_shift();
            if (which == Contiguous::cont1) {
                const auto lhs = b * detail::x_times(hypergeometric_series({a + one, b + one, c + one}, order));
                const auto f = fault.apply(hypergeometric_series({a + one, b, rc}, order));
                const auto rhs = rc * (f - hypergeometric_series({a, b, rc}, order));
                return {lhs, rhs};
            }
            const auto f = fault.apply(hypergeometric_series({a + one, b, c}, order));
            const auto fab = hypergeometric_series({a, b, c}, order);
            const auto lhs = a * PowerSeries::polynomial({1, -1}, order) * (f - fab);
            const auto rhs = (rc - b) * hypergeometric_series({a, b - one, rc}, order) +
                             PowerSeries::polynomial({b - rc, a}, order) * hypergeometric_series({a, b, rc}, order);
            return {lhs, rhs};
        });
}

/// 2F1(a, b; c; x) = (1-x)^(c-a-b) 2F1(c-a, c-b; c; x).
inline IdentityReport verify_euler_transform(const std::vector<ParameterTriple>& samples, std::size_t order,
                                             const Fault& fault = {}) {
    return detail::check_samples(
        "euler_transform", order, flatten(samples), samples.size(), [&](std::size_t i) -> detail::SidePair {
            const auto& [a, b, c] = samples[i];
            const Rational rc = c + fault.rhs_shift();
            const auto lhs = fault.apply(hypergeometric_series({a, b, c}, order));
            const auto rhs = detail::one_minus_x_power(rc - a - b, order) *
                             hypergeometric_series({rc - a, rc - b, rc}, order);
            return {lhs, rhs};
        });
}

/// w_a'(x) (x+1)^(a+1) = a(a-1) (1-x)^(2a) 2F1(a+1, a; 2; x).
inline IdentityReport verify_id_hyp(const std::vector<Rational>& a_samples, std::size_t order,
                                    const Fault& fault = {}) {
    const auto one = Rational(1);
    auto report = detail::check_samples(
        "id_hyp", order, a_samples, a_samples.size(), [&](std::size_t i) -> detail::SidePair {
            const Rational& a = a_samples[i];
            const auto dw = series_derivative(detail::w_series(a, order + 1));
            const auto lhs = dw * binomial_series(a + one, order);
            const auto f = fault.apply(hypergeometric_series({a + one, a, Rational(2)}, order));
            const auto rhs = (a * (a - one)) * detail::one_minus_x_power(Rational(2) * a, order) * f;
            return {lhs, rhs};
        });
    report.degree_bound = 2 * order + 2;
    return report;
}

/// d/dz w_a(r(z)) = 4a(a-1) 2F1(a+1, a; 2; r(z)) (1-6z+z^2)^(2a) / (1-z)^(4a)
///                  * (1-z)^(2a-1) / (1+z)^(2a+1),   r(z) = 4z / (1-z)^2.
inline IdentityReport verify_id_war(const std::vector<Rational>& a_samples, std::size_t order,
                                    const Fault& fault = {}) {
    const auto one = Rational(1);
    const auto two = Rational(2);
    const Substitution r_hi(clifford_argument(order + 1));
    const Substitution r(clifford_argument(order));
    const Substitution q(PowerSeries::polynomial({0, -6, 1}, order));  // 1 + q = 1 - 6z + z^2
    auto report = detail::check_samples(
        "id_war", order, a_samples, a_samples.size(), [&](std::size_t i) -> detail::SidePair {
            const Rational& a = a_samples[i];
            const auto lhs = series_derivative(r_hi.apply(detail::w_series(a, order + 1)));
            const auto f = fault.apply(hypergeometric_series({a + one, a, two}, order));
            const auto rhs = (Rational(4) * a * (a - one)) * r.apply(f) *
                             q.apply(binomial_series(two * a, order)) *
                             detail::one_minus_x_power(Rational(-4) * a, order) *
                             detail::one_minus_x_power(two * a - one, order) *
                             binomial_series(-(two * a + one), order);
            return {lhs, rhs};
        });
    report.degree_bound = 2 * order + 2;
    return report;
}

/// d/dx [2F1(a+1, a; 2; x) (1-x)^(2a)]
///   = -(a(3-a)/2 2F1(a, a+1; 3; x) + a(a+1)x/6 2F1(a+1, a+2; 4; x)) (1-x)^(2a-1).
inline IdentityReport verify_remark1_derivative(const std::vector<Rational>& a_samples, std::size_t order,
                                                const Fault& fault = {}) {
    const auto one = Rational(1);
    const auto two = Rational(2);
    auto report = detail::check_samples(
        "remark1_derivative", order, a_samples, a_samples.size(), [&](std::size_t i) -> detail::SidePair {
            const Rational& a = a_samples[i];
            const auto lhs = series_derivative(hypergeometric_series({a + one, a, two}, order + 1) *
                                               detail::one_minus_x_power(two * a, order + 1));
            const auto f3 = fault.apply(hypergeometric_series({a, a + one, Rational(3)}, order));
            const auto f4 = hypergeometric_series({a + one, a + two, Rational(4)}, order);
            const auto bracket = (a * (Rational(3) - a) / two) * f3 + (a * (a + one) / Rational(6)) * detail::x_times(f4);
            const auto rhs = -(bracket * detail::one_minus_x_power(two * a - one, order));
            return {lhs, rhs};
        });
    report.degree_bound = 2 * order + 2;
    return report;
}

/// (x R^(2a) w_a')' = a(a-1) (1+x)^(-2) R^(2a) w_a with R = (1+x)/(1-x).
inline IdentityReport verify_adjoint_form(const std::vector<Rational>& a_samples, std::size_t order,
                                          const Fault& fault = {}) {
    const auto one = Rational(1);
    const auto two = Rational(2);
    auto report = detail::check_samples(
        "adjoint_form", order, a_samples, a_samples.size(), [&](std::size_t i) -> detail::SidePair {
            const Rational& a = a_samples[i];
            const std::size_t hi = order + 1;
            const auto ratio_hi = binomial_series(two * a, hi) / detail::one_minus_x_power(two * a, hi);
            const auto dw = series_derivative(detail::w_series(a, hi + 1));
            const auto lhs = series_derivative(detail::x_times(ratio_hi * dw));
            const auto ratio = binomial_series(two * a, order) / detail::one_minus_x_power(two * a, order);
            const auto w = fault.apply(detail::w_series(a, order));
            const auto rhs = (a * (a - one)) * binomial_series(Rational(-2), order) * ratio * w;
            return {lhs, rhs};
        });
    report.degree_bound = 2 * order + 2;
    return report;
}

/// The displayed variant with an extra factor x and the power 4a on the right.
/// It only holds for a in {0, 1}; kept so the discrepancy can be reported.
inline IdentityReport verify_adjoint_form_as_printed(const std::vector<Rational>& a_samples, std::size_t order) {
    const auto one = Rational(1);
    const auto two = Rational(2);
    const auto four = Rational(4);
    return detail::check_samples(
        "adjoint_form_as_printed", order, a_samples, a_samples.size(), [&](std::size_t i) -> detail::SidePair {
            const Rational& a = a_samples[i];
            const std::size_t hi = order + 1;
            const auto ratio_hi = binomial_series(two * a, hi) / detail::one_minus_x_power(two * a, hi);
            const auto dw = series_derivative(detail::w_series(a, hi + 1));
            const auto lhs = series_derivative(detail::x_times(ratio_hi * dw));
            const auto ratio4 = binomial_series(four * a, order) / detail::one_minus_x_power(four * a, order);
            const auto rhs = (a * (a - one)) * detail::x_times(binomial_series(Rational(-2), order)) * ratio4 *
                             detail::w_series(a, order);
            return {lhs, rhs};
        });
}

/// Closed-form expansions reproduce the six reference coefficients exactly.
inline IdentityReport verify_reference_coefficients(std::string name, const PowerSeries& expansion,
                                                    const std::array<Rational, 6>& reference) {
    IdentityReport report{std::move(name), reference.size() - 1, {}, std::nullopt, std::nullopt};
    for (std::size_t n = 0; n < reference.size(); ++n) {
        if (expansion[n] != reference[n]) {
            report.failure = IdentityFailure{"", 0, n, expansion[n] - reference[n]};
            break;
        }
    }
    return report;
}

/// Positivity window and leading values of the coefficients d_n of F.
struct FCoefficientReport {
    PowerSeries coefficients;
    bool d0_matches = false;
    bool d1_matches = false;
    /// Computed coefficient of z^3 against the displayed "31248 z^3".
    Rational computed_third_power;
    bool third_term_matches = false;
    /// Power whose computed coefficient equals the displayed 31248, if any.
    std::optional<std::size_t> displayed_value_found_at;
    std::optional<std::size_t> first_nonpositive;

    [[nodiscard]] bool all_positive() const { return !first_nonpositive.has_value(); }
};

inline FCoefficientReport check_f_coefficients(std::size_t window) {
    const auto shown = displayed_f();
    FCoefficientReport rep{expand_f(std::max<std::size_t>(window, shown.third_term_power)), false, false,
                           Rational(0), false, std::nullopt, std::nullopt};
    const auto& d = rep.coefficients;
    rep.d0_matches = d[0] == shown.d0;
    rep.d1_matches = d[1] == shown.d1;
    rep.computed_third_power = d[shown.third_term_power];
    rep.third_term_matches = rep.computed_third_power == shown.third_term;
    for (std::size_t n = 0; n <= d.order(); ++n) {
        if (!rep.displayed_value_found_at && d[n] == shown.third_term) rep.displayed_value_found_at = n;
        if (n <= window && d[n].sign() <= 0 && !rep.first_nonpositive) rep.first_nonpositive = n;
    }
    return rep;
}

inline nlohmann::json to_json(const FCoefficientReport& r) {
    nlohmann::json j;
    j["d0"] = r.coefficients[0].str();
    j["d1"] = r.coefficients[1].str();
    j["d2"] = r.coefficients[2].str();
    j["d3"] = r.coefficients[3].str();
    j["d0_matches"] = r.d0_matches;
    j["d1_matches"] = r.d1_matches;
    j["displayed_z3_term_matches"] = r.third_term_matches;
    if (r.displayed_value_found_at) j["displayed_31248_is_coefficient_of_power"] = *r.displayed_value_found_at;
    j["positivity_window"] = r.coefficients.order();
    j["all_positive"] = r.all_positive();
    if (r.first_nonpositive) j["first_nonpositive"] = *r.first_nonpositive;
    return j;
}

/// A fault routed to one named check of verify_all. Targets are report names
/// ("lemma1", "id_war", ...), plus "odes:abar" / "odes:vbar" for the ODE
/// residuals and "abar_coefficients" / "vbar_coefficients" for the expansions.
struct InjectedFault {
    std::string target;
    Fault fault;
};

struct VerifyOptions {
    std::size_t order = 40;
    /// Parameter samples for one-parameter identities; 0 means the
    /// certificate count 2 * order + 3.
    std::size_t samples = 0;
    std::optional<InjectedFault> fault;
};

/// Every identity check, in a fixed order.
inline std::vector<IdentityReport> verify_all(const VerifyOptions& opt) {
    const std::size_t n = opt.order;
    const auto a = parameter_samples(opt.samples == 0 ? certificate_sample_count(n) : opt.samples);
    const auto triples = default_triples();
    const auto fault_for = [&](std::string_view target) {
        return (opt.fault && opt.fault->target == target) ? opt.fault->fault : Fault{};
    };
    std::vector<IdentityReport> out;
    const std::size_t golden_order = std::max<std::size_t>(n, 5);
    const Substitution r(clifford_argument(golden_order));
    out.push_back(verify_reference_coefficients(
        "abar_coefficients", fault_for("abar_coefficients").apply(expand_abar(golden_order, r)),
        abar_reference_coefficients()));
    out.push_back(verify_reference_coefficients(
        "vbar_coefficients", fault_for("vbar_coefficients").apply(expand_vbar(golden_order, r)),
        vbar_reference_coefficients()));
    out.push_back(verify_odes(std::max<std::size_t>(n, 3), fault_for("odes:abar"), fault_for("odes:vbar")));
    out.push_back(verify_lemma1(a, n, fault_for("lemma1")));
    out.push_back(verify_contiguous(Contiguous::cont1, triples, n, fault_for("contiguous_cont1")));
    out.push_back(verify_contiguous(Contiguous::cont2, triples, n, fault_for("contiguous_cont2")));
    out.push_back(verify_euler_transform(triples, n, fault_for("euler_transform")));
    out.push_back(verify_id_hyp(a, n, fault_for("id_hyp")));
    out.push_back(verify_id_war(a, n, fault_for("id_war")));
    out.push_back(verify_remark1_derivative(a, n, fault_for("remark1_derivative")));
    out.push_back(verify_adjoint_form(a, n, fault_for("adjoint_form")));
    return out;
}

}  // namespace cliso
