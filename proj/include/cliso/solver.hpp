#pragma once

#include "iso.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cliso {

class TargetOutOfRange : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct InverseQuery {
    double rho = 0.0;
    double tolerance = 1e-10;
    std::size_t max_iterations = 200;
    bool polish = true;
    bool record_brackets = false;
};

enum class InverseFlag { ok, precision_exhausted };

struct InverseResult {
    double rho = 0.0;
    double z = 0.0;
    double residual_bound = 0.0;  // |Iso(z) - rho| <= residual_bound
    std::size_t iterations = 0;
    InverseFlag flag = InverseFlag::ok;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::vector<std::pair<double, double>> brackets;
};

inline nlohmann::json to_json(const InverseResult& r) {
    return {{"rho", r.rho},
            {"z", r.z},
            {"residual_bound", r.residual_bound},
            {"iterations", r.iterations},
            {"flag", r.flag == InverseFlag::ok ? "ok" : "PrecisionExhausted"}};
}

/// Right end of the search bracket, sqrt(2) - 1 - 1e-12.
inline double inverse_search_sup() { return iso_domain_sup() - 1e-12; }

/// z in [0, sqrt2 - 1) with Iso(z) = rho. Guaranteed bisection: the bracket
/// moves only when the certified value at the midpoint lies entirely on one
/// side of rho, so Iso(lo) < rho < Iso(hi) holds throughout.
inline InverseResult invert_iso(const InverseQuery& q, const EvalOptions& opt = {}) {
    if (!(q.tolerance > 0.0)) throw std::invalid_argument("invert_iso: tolerance must be positive");
    if (!std::isfinite(q.rho)) throw TargetOutOfRange("invert_iso: rho is not finite");
    InverseResult res;
    res.rho = q.rho;

    auto finish = [&](double z) {
        const auto v = iso(z, opt);
        res.z = z;
        res.residual_bound = certified::add_up(std::abs(v.value - q.rho), v.abs_error_bound);
        return v;
    };

    const auto f0 = iso(0.0, opt);
    if (q.rho >= 1.0 || q.rho < f0.lo()) {
        throw TargetOutOfRange("invert_iso: rho must lie in [Iso(0), 1) = [" + std::to_string(f0.value) + ", 1)");
    }
    if (f0.contains(q.rho)) {
        finish(0.0);
        return res;
    }

    double lo = 0.0;
    double hi = inverse_search_sup();
    const auto fhi = iso(hi, opt);
    if (!(fhi.lo() > q.rho)) {
        // rho sits within the bound of Iso at the search limit
        res.flag = fhi.contains(q.rho) ? InverseFlag::ok : InverseFlag::precision_exhausted;
        res.bracket_lo = res.bracket_hi = hi;
        finish(hi);
        return res;
    }

    auto record = [&] {
        if (q.record_brackets) res.brackets.emplace_back(lo, hi);
    };
    record();
    bool separated = true;
    double stuck_at = 0.0;
    while (hi - lo > q.tolerance && res.iterations < q.max_iterations) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        ++res.iterations;
        const auto fm = iso(mid, opt);
        if (fm.hi() < q.rho) {
            lo = mid;
        } else if (fm.lo() > q.rho) {
            hi = mid;
        } else {
            // rho inside the certified interval at mid: try to close the
            // bracket around mid at the requested width
            separated = false;
            stuck_at = mid;
            const double step = 0.25 * q.tolerance;
            const double l = std::max(lo, mid - step);
            const double h = std::min(hi, mid + step);
            if (l == lo || iso(l, opt).hi() < q.rho) {
                if (h == hi || iso(h, opt).lo() > q.rho) {
                    lo = l;
                    hi = h;
                    separated = true;
                }
            }
            record();
            break;
        }
        record();
    }
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    const bool narrow = hi - lo <= q.tolerance;
    res.flag = narrow ? InverseFlag::ok : InverseFlag::precision_exhausted;

    double z = separated ? lo + 0.5 * (hi - lo) : stuck_at;
    const auto v = finish(z);

    if (q.polish && res.flag == InverseFlag::ok && z > 0.0) {
        const auto d = iso_derivative(z, opt);
        if (d.certainly_positive()) {
            const double zn = z - (v.value - q.rho) / d.value;
            if (zn >= lo && zn <= hi && in_iso_domain(zn)) {
                const auto vn = iso(zn, opt);
                const double rn = certified::add_up(std::abs(vn.value - q.rho), vn.abs_error_bound);
                if (rn < res.residual_bound) {
                    res.z = zn;
                    res.residual_bound = rn;
                }
            }
        }
    }
    return res;
}

}  // namespace cliso
