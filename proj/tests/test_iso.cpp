#include "oracle.hpp"

#include <cliso/cliso.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace cliso;

namespace {

const double kIsoZero = 1.5 * std::pow(2.0 * M_PI * M_PI, -0.25);

}  // namespace

TEST(IsoDomain, ExactBoundary) {
    const double sup = iso_domain_sup();
    EXPECT_TRUE(in_iso_domain(0.0));
    EXPECT_TRUE(in_iso_domain(sup));
    EXPECT_FALSE(in_iso_domain(std::nextafter(sup, 1.0)));
    EXPECT_FALSE(in_iso_domain(-1e-300));
    EXPECT_FALSE(in_iso_domain(NAN));
    EXPECT_NEAR(sup, std::sqrt(2.0) - 1.0, 1e-15);
    EXPECT_THROW(iso(0.5), DomainError);
    EXPECT_THROW(iso(-0.1), DomainError);
    EXPECT_THROW(iso_direct(0.42), DomainError);
    EXPECT_THROW(iso_derivative(std::nextafter(sup, 1.0)), DomainError);
}

TEST(Iso, ValueAtZero) {
    const auto v = iso(0.0);
    EXPECT_NEAR(v.value, kIsoZero, 1e-12);
    EXPECT_NEAR(v.value, 0.7116374974931915, 1e-15);
    EXPECT_TRUE(v.contains(iso_at_zero_closed_form().value));
    EXPECT_LE(v.abs_error_bound, 1e-14);
}

TEST(Iso, ApproachesOneAtTheEndpoint) {
    const auto v = iso(std::sqrt(2.0) - 1.0 - 1e-6);
    EXPECT_GE(v.lo(), 1.0 - 1e-3);
    EXPECT_LE(v.value, 1.0);
    EXPECT_TRUE(v.bound_achieved);
    EXPECT_LE(v.abs_error_bound, 1e-10);
}

TEST(Iso, SquaredIsConsistent) {
    for (double z : {0.0, 0.1, 0.25, 0.4}) {
        const auto s = iso_squared(z);
        const auto v = iso(z);
        EXPECT_LE(std::abs(v.value * v.value - s.value), s.abs_error_bound + 2 * v.abs_error_bound + 1e-15);
    }
}

TEST(Iso, DependsOnlyOnTheSquare) {
    // the formula in u = z^2 evaluated at the square of a negative input
    for (double z : {0.05, 0.2, 0.33}) {
        const Rational neg = -Rational::from_double(z);
        const auto a = iso_of_u(neg * neg);
        const auto b = iso(z);
        EXPECT_EQ(a.value, b.value);
        EXPECT_EQ(a.abs_error_bound, b.abs_error_bound);
    }
}

TEST(IsoDirect, AgreesWithClosedFormPath) {
    for (double z : {0.0, 0.05, 0.1, 0.2, 0.3, 0.35, 0.4}) {
        const auto a = iso(z);
        const auto b = iso_direct(z);
        EXPECT_LE(std::abs(a.value - b.value), a.abs_error_bound + b.abs_error_bound) << z;
        EXPECT_TRUE(b.bound_achieved) << z;
        EXPECT_LE(b.abs_error_bound, 1e-11) << z;
    }
}

TEST(IsoDirect, AgreesWithExactSeriesAtRationalPoint) {
    // z = 1/4 exactly: partial sums of Abar, Vbar through u^120 in rationals;
    // the omitted tail is below (u / 0.1716)^121 ~ 1e-75.
    const Rational u(1, 16);
    const auto a = oracle::horner(abar_from_operator(120), u);
    const auto v = oracle::horner(vbar_from_operator(120), u);
    const long double ref = 6.0L / (std::pow(2.0L, 0.25L) * std::sqrt(static_cast<long double>(M_PI))) *
                            static_cast<long double>(v.to_double()) /
                            std::pow(static_cast<long double>(a.to_double()), 1.5L);
    const auto d = iso_direct(0.25);
    EXPECT_LE(std::abs(static_cast<long double>(d.value) - ref), d.abs_error_bound + 1e-15L);
}

TEST(IsoDirect, ExplicitTermCount) {
    const auto few = iso_direct(0.3, 40);
    const auto many = iso_direct(0.3);
    EXPECT_GT(few.abs_error_bound, many.abs_error_bound);
    EXPECT_TRUE(std::isfinite(few.abs_error_bound));
    EXPECT_LE(std::abs(few.value - many.value), few.abs_error_bound + many.abs_error_bound);
    const auto swamped = iso_direct(0.3, 2);
    EXPECT_FALSE(swamped.bound_achieved);
    EXPECT_TRUE(std::isinf(swamped.abs_error_bound));
}

TEST(IsoDerivative, VanishesAtZeroAndIsPositiveInside) {
    EXPECT_EQ(iso_derivative(0.0).value, 0.0);
    for (double z : {0.01, 0.2, 0.35, 0.41}) {
        const auto d = iso_derivative(z);
        EXPECT_TRUE(d.certainly_positive()) << z;
    }
}

TEST(IsoDerivative, MatchesCentralDifferences) {
    const double h = 1e-5;
    for (double z = 0.02; z < 0.41; z += 0.03) {
        const double fd = (iso(z + h).value - iso(z - h).value) / (2 * h);
        const auto d = iso_derivative(z);
        EXPECT_NEAR(d.value, fd, 1e-6) << z;
    }
}

TEST(IsoDerivative, MatchesDifferencesOfTheDirectPath) {
    const double h = 1e-5;
    for (double z : {0.0, 0.15, 0.3}) {
        const double fd = (iso_direct(z + h).value - iso_direct(std::max(0.0, z - h)).value) /
                          (z == 0.0 ? h : 2 * h);
        EXPECT_NEAR(iso_derivative(z).value, fd, z == 0.0 ? 1e-4 : 1e-6) << z;
    }
}

TEST(WOfRDerivative, MatchesDifferences) {
    const double h = 1e-6;
    for (const auto& a : {Rational(1, 2), Rational(3, 2)}) {
        for (double t : {0.02, 0.08, 0.15}) {
            const auto r = [](double s) { return 4 * s / ((1 - s) * (1 - s)); };
            const double fd = (eval_w(a, r(t + h)).value - eval_w(a, r(t - h)).value) / (2 * h);
            EXPECT_NEAR(w_of_r_derivative(a, Rational::from_double(t)).value, fd, 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST(EvalH, IncreasingSpotChecks) {
    const auto h0 = eval_h(0.0);
    EXPECT_EQ(h0.value, 1.0);
    double prev = h0.value;
    for (double x : {0.1, 0.4, 0.7, 1.0}) {
        const auto h = eval_h(x);
        EXPECT_GT(h.value, prev);
        prev = h.value;
    }
}
