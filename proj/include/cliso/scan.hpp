#pragma once

#include "certified.hpp"
#include "iso.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cliso {

enum class Verdict { none, ok, violation, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::none: return "";
        case Verdict::ok: return "ok";
        case Verdict::violation: return "violation";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "";
}

struct ScanPoint {
    double t = 0.0;
    CertifiedValue value;
    /// Verdict for the pair (or triple) ending at this point.
    Verdict verdict = Verdict::none;
};

/// Two grid points with certified second differences of opposite sign.
struct SignChangeWitness {
    double convex_at;
    double concave_at;
};

struct ScanReport {
    std::string target;
    std::string expectation;
    std::vector<ScanPoint> points;
    std::size_t violations = 0;
    std::size_t inconclusive = 0;
    std::size_t unattained_bounds = 0;  // points whose evaluation hit its term cap
    std::optional<SignChangeWitness> witness;

    [[nodiscard]] std::size_t grid_size() const { return points.size(); }
    [[nodiscard]] std::size_t comparisons() const {
        std::size_t n = 0;
        for (const auto& p : points) n += p.verdict != Verdict::none;
        return n;
    }
};

enum class Direction { nondecreasing, nonincreasing, constant };

using CertifiedFunction = std::function<CertifiedValue(double)>;

/// Grid lo + k h with h rounded to a multiple of 2^-44, so that for lo = 0
/// every point and every spacing is exact.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("uniform_grid: need n >= 2 and hi > lo");
    const double scale = 0x1p44;
    const double h = std::floor((hi - lo) / static_cast<double>(n - 1) * scale) / scale;
    if (!(h > 0.0)) throw std::invalid_argument("uniform_grid: grid too fine");
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = lo + static_cast<double>(k) * h;
    return g;
}

/// Checks the claimed direction between consecutive certified values. A pair
/// counts only when its intervals are disjoint; overlaps are inconclusive.
inline ScanReport scan_monotonicity(std::string target, const CertifiedFunction& f, const std::vector<double>& grid,
                                    Direction dir) {
    if (grid.size() < 2) throw std::invalid_argument("scan_monotonicity: need at least 2 points");
    ScanReport rep;
    rep.target = std::move(target);
    rep.expectation = dir == Direction::nondecreasing   ? "nondecreasing"
                      : dir == Direction::nonincreasing ? "nonincreasing"
                                                        : "constant";
    rep.points.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        ScanPoint p{grid[k], f(grid[k]), Verdict::none};
        if (!p.value.bound_achieved) ++rep.unattained_bounds;
        if (k > 0) {
            const auto& prev = rep.points.back().value;
            const bool up = p.value.lo() > prev.hi();
            const bool down = p.value.hi() < prev.lo();
            switch (dir) {
                case Direction::nondecreasing:
                    p.verdict = up ? Verdict::ok : (down ? Verdict::violation : Verdict::inconclusive);
                    break;
                case Direction::nonincreasing:
                    p.verdict = down ? Verdict::ok : (up ? Verdict::violation : Verdict::inconclusive);
                    break;
                case Direction::constant:
                    p.verdict = (up || down) ? Verdict::violation : Verdict::ok;
                    break;
            }
            rep.violations += p.verdict == Verdict::violation;
            rep.inconclusive += p.verdict == Verdict::inconclusive;
        }
        rep.points.push_back(p);
    }
    return rep;
}

enum class Curvature { concave, convex, sign_change };

/// Signs of second differences f(t_{k-1}) - 2 f(t_k) + f(t_{k+1}) on a uniform
/// grid. For `sign_change` the scan passes when certified differences of both
/// signs occur; the first such pair is recorded as the witness.
inline ScanReport scan_convexity(std::string target, const CertifiedFunction& f, const std::vector<double>& grid,
                                 Curvature expect) {
    using namespace certified;
    if (grid.size() < 3) throw std::invalid_argument("scan_convexity: need at least 3 points");
    const double h = grid[1] - grid[0];
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (grid[k] - grid[k - 1] != h) throw std::invalid_argument("scan_convexity: grid is not exactly uniform");
    }
    ScanReport rep;
    rep.target = std::move(target);
    rep.expectation = expect == Curvature::concave ? "concave" : expect == Curvature::convex ? "convex" : "sign_change";
    for (double t : grid) {
        rep.points.push_back({t, f(t), Verdict::none});
        if (!rep.points.back().value.bound_achieved) ++rep.unattained_bounds;
    }
    std::optional<double> first_pos;
    std::optional<double> first_neg;
    for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
        const auto d2 = add(sub(rep.points[k - 1].value, mul(exact(2.0), rep.points[k].value)), rep.points[k + 1].value);
        Verdict v = Verdict::inconclusive;
        if (d2.certainly_positive()) {
            v = expect == Curvature::concave ? Verdict::violation : Verdict::ok;
            if (!first_pos) first_pos = grid[k];
        } else if (d2.certainly_negative()) {
            v = expect == Curvature::convex ? Verdict::violation : Verdict::ok;
            if (!first_neg) first_neg = grid[k];
        }
        rep.points[k].verdict = v;
        rep.violations += v == Verdict::violation;
        rep.inconclusive += v == Verdict::inconclusive;
    }
    if (expect == Curvature::sign_change) {
        if (first_pos && first_neg) {
            rep.witness = SignChangeWitness{*first_pos, *first_neg};
        } else {
            ++rep.violations;
        }
    }
    return rep;
}

inline nlohmann::json summary_json(const ScanReport& r) {
    nlohmann::json j{{"target", r.target},
                     {"expectation", r.expectation},
                     {"violations", r.violations},
                     {"inconclusive", r.inconclusive},
                     {"grid_size", r.grid_size()},
                     {"unattained_bounds", r.unattained_bounds}};
    if (r.witness) j["witness"] = {{"convex_at", r.witness->convex_at}, {"concave_at", r.witness->concave_at}};
    return j;
}

inline void write_csv(std::ostream& os, const ScanReport& r) {
    os << "z,value,bound,verdict\n";
    char buf[128];
    for (const auto& p : r.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", p.t, p.value.value, p.value.abs_error_bound);
        os << buf << to_string(p.verdict) << '\n';
    }
}

// Named scans.

/// Iso on [0, sqrt2 - 1 - margin].
inline ScanReport scan_iso_monotone(std::size_t grid, double margin = 1e-4, const EvalOptions& opt = {}) {
    const auto g = uniform_grid(0.0, iso_domain_sup() - margin, grid);
    return scan_monotonicity("mono-iso", [&](double z) { return iso(z, opt); }, g, Direction::nondecreasing);
}

/// w_a on [0, 1]: decreasing for 0 < a < 1, increasing for a > 1, constant for a in {0, 1}.
inline ScanReport scan_w_monotone(const Rational& a, std::size_t grid, const EvalOptions& opt = {}) {
    if (a.sign() < 0) throw std::invalid_argument("scan_w_monotone: requires a >= 0");
    const Direction dir = (a.is_zero() || a == Rational(1)) ? Direction::constant
                          : a < Rational(1)                   ? Direction::nonincreasing
                                                              : Direction::nondecreasing;
    const auto g = uniform_grid(0.0, 1.0, grid);
    return scan_monotonicity("mono-w(a=" + a.str() + ")", [&](double x) { return eval_w(a, x, opt); }, g, dir);
}

/// h(x) = 2F1(-3/2,-3/2;1;x)^2 / 2F1(-1/2,-1/2;1;x)^3 (1+x)^(-3/2) on [0, 1).
inline ScanReport scan_h_monotone(std::size_t grid, const EvalOptions& opt = {}) {
    const auto g = uniform_grid(0.0, 1.0 - 1e-6, grid);
    return scan_monotonicity("mono-h", [&](double x) { return eval_h(x, opt); }, g, Direction::nondecreasing);
}

/// t -> Iso(sqrt t) and t -> 1/Iso(sqrt t) on [0, 3 - 2 sqrt2).
inline ScanReport scan_iso_sqrt_convexity(bool reciprocal, std::size_t grid, const EvalOptions& opt = {}) {
    const double t_hi = 3.0 - 2.0 * std::sqrt(2.0) - 1e-9;
    const auto g = uniform_grid(0.0, t_hi, grid);
    if (reciprocal) {
        return scan_convexity(
            "convex-inv-iso-sqrt",
            [&](double t) { return certified::div(certified::exact(1.0), iso_of_u(Rational::from_double(t), opt)); },
            g, Curvature::convex);
    }
    return scan_convexity(
        "convex-iso-sqrt", [&](double t) { return iso_of_u(Rational::from_double(t), opt); }, g, Curvature::concave);
}

/// Iso (or 1/Iso) itself: a certified sign change of the second difference.
inline ScanReport scan_iso_nonconvexity(bool reciprocal, std::size_t grid, const EvalOptions& opt = {}) {
    const auto g = uniform_grid(0.0, iso_domain_sup() - 1e-4, grid);
    if (reciprocal) {
        return scan_convexity(
            "nonconvex-inv-iso", [&](double z) { return certified::div(certified::exact(1.0), iso(z, opt)); }, g,
            Curvature::sign_change);
    }
    return scan_convexity("nonconvex-iso", [&](double z) { return iso(z, opt); }, g, Curvature::sign_change);
}

}  // namespace cliso
