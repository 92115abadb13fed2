#include <cliso/cliso.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace cliso;

namespace {

// Rising factorial computed term by term; the reference for 2F1 coefficients.
Rational rising(const Rational& a, std::size_t n) {
    Rational r(1);
    for (std::size_t k = 0; k < n; ++k) r *= a + Rational(k);
    return r;
}

Rational factorial(std::size_t n) { return rising(Rational(1), n); }

PowerSeries random_series(std::mt19937& gen, std::size_t order, bool unit = false) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    std::vector<Rational> c(order + 1);
    for (auto& x : c) x = Rational(num(gen), den(gen));
    if (unit && c[0].is_zero()) c[0] = Rational(1);
    return PowerSeries(std::move(c));
}

}  // namespace

TEST(Rational, CanonicalForm) {
    EXPECT_EQ(Rational(6, -4).str(), "-3/2");
    EXPECT_EQ(Rational::parse("451625/16"), Rational(451625, 16));
    EXPECT_EQ(Rational::parse("-12/8").str(), "-3/2");
    EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
    EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
}

TEST(Rational, DirectedRoundingBrackets) {
    for (const auto& r : {Rational(1, 3), Rational(-2, 7), Rational(10, 1), Rational(1, 1 << 20)}) {
        const double lo = round_down(r);
        const double hi = round_up(r);
        EXPECT_LE(Rational::from_double(lo), r);
        EXPECT_GE(Rational::from_double(hi), r);
        EXPECT_LE(hi - lo, std::abs(hi) * 3e-16);
    }
    const Rational huge = pow(Rational(10), 400);
    EXPECT_EQ(round_down(huge), DBL_MAX);
    EXPECT_TRUE(std::isinf(round_up(huge)));
}

TEST(PowerSeries, GeometricReciprocal) {
    // 1 / (1 - x) has all coefficients 1.
    const auto s = PowerSeries::one(12) / PowerSeries::polynomial({Rational(1), Rational(-1)}, 12);
    for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(s[n], Rational(1)) << n;
}

TEST(PowerSeries, DivisionByNonUnitThrows) {
    EXPECT_THROW(PowerSeries::one(4) / PowerSeries::variable(4), DivisionByNonUnit);
}

TEST(PowerSeries, TruncationOrderIsMinimum) {
    const auto a = PowerSeries::one(10);
    const auto b = PowerSeries::one(6);
    EXPECT_EQ((a + b).order(), 6u);
    EXPECT_EQ((a * b).order(), 6u);
    EXPECT_EQ(series_derivative(a).order(), 9u);
    EXPECT_THROW(series_derivative(PowerSeries::one(0)), std::invalid_argument);
}

TEST(PowerSeries, RingAxiomsOnRandomInputs) {
    std::mt19937 gen(20240611);
    for (int trial = 0; trial < 25; ++trial) {
        const auto a = random_series(gen, 9);
        const auto b = random_series(gen, 9);
        const auto c = random_series(gen, 9);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
        const auto u = random_series(gen, 9, true);
        EXPECT_EQ((a / u) * u, a);
        EXPECT_EQ(series_derivative(a * b), series_derivative(a) * b.truncated(8) + a.truncated(8) * series_derivative(b));
    }
}

TEST(Hypergeometric, CoefficientsMatchRisingFactorials) {
    const std::vector<HypergeometricSpec> specs{
        area_spec(), volume_spec(), {Rational(1, 3), Rational(-5, 2), Rational(7, 4)}, {Rational(2), Rational(3), Rational(4)}};
    for (const auto& spec : specs) {
        const auto s = hypergeometric_series(spec, 15);
        for (std::size_t n = 0; n <= 15; ++n) {
            const Rational expected = rising(spec.a, n) * rising(spec.b, n) / (rising(spec.c, n) * factorial(n));
            EXPECT_EQ(s[n], expected) << spec.str() << " n=" << n;
        }
    }
}

TEST(Hypergeometric, TerminatesForNegativeIntegerNumerator) {
    const auto s = hypergeometric_series({Rational(-3), Rational(1, 2), Rational(1)}, 10);
    for (std::size_t n = 4; n <= 10; ++n) EXPECT_TRUE(s[n].is_zero());
    EXPECT_FALSE(s[3].is_zero());
}

TEST(Hypergeometric, RejectsNonpositiveIntegerLowerParameter) {
    EXPECT_THROW((HypergeometricSpec{Rational(1), Rational(1), Rational(0)}), InvalidLowerParameter);
    EXPECT_THROW((HypergeometricSpec{Rational(1), Rational(1), Rational(-2)}), InvalidLowerParameter);
    EXPECT_NO_THROW((HypergeometricSpec{Rational(1), Rational(1), Rational(-1, 2)}));
}

TEST(Binomial, IntegerPowerIsPolynomial) {
    const auto s = binomial_series(Rational(2), 6);
    EXPECT_EQ(s[0], Rational(1));
    EXPECT_EQ(s[1], Rational(2));
    EXPECT_EQ(s[2], Rational(1));
    for (std::size_t n = 3; n <= 6; ++n) EXPECT_TRUE(s[n].is_zero());
    EXPECT_EQ(binomial_series(Rational(0), 5), PowerSeries::one(5));
}

TEST(Binomial, SquareRootSquared) {
    const auto h = binomial_series(Rational(1, 2), 20);
    EXPECT_EQ(h * h, PowerSeries::polynomial({Rational(1), Rational(1)}, 20));
}

TEST(Binomial, ReciprocalPowers) {
    for (const auto& alpha : {Rational(1, 2), Rational(-3, 2), Rational(7, 3), Rational(-5)}) {
        EXPECT_EQ(binomial_series(alpha, 18) * binomial_series(-alpha, 18), PowerSeries::one(18)) << alpha;
    }
}

TEST(Compose, IdentityInnerIsNoOp) {
    std::mt19937 gen(7);
    const auto outer = random_series(gen, 10);
    EXPECT_EQ(series_compose(outer, PowerSeries::variable(10)), outer);
}

TEST(Compose, ConstantOuter) {
    const auto inner = clifford_argument(8);
    EXPECT_EQ(series_compose(PowerSeries::constant(Rational(5, 3), 8), inner),
              PowerSeries::constant(Rational(5, 3), 8));
}

TEST(Compose, LinearOuterWithCliffordArgument) {
    // 4z/(1-z)^2 = 4z (1 + z + z^2 + ...)^2 = sum 4n z^n
    const auto geometric = PowerSeries::one(10) / PowerSeries::polynomial({Rational(1), Rational(-1)}, 10);
    const auto expected_inner = Rational(4) * PowerSeries::variable(10) * geometric * geometric;
    EXPECT_EQ(clifford_argument(10), expected_inner);
    const auto s = series_compose(PowerSeries::polynomial({Rational(1), Rational(1)}, 10), clifford_argument(10));
    EXPECT_EQ(s[0], Rational(1));
    EXPECT_EQ(s[1], Rational(4));
    EXPECT_EQ(s[2], Rational(8));
    EXPECT_EQ(s[3], Rational(12));
}

TEST(Compose, AgreesWithCachedSubstitution) {
    std::mt19937 gen(99);
    const auto inner = random_series(gen, 12);
    std::vector<Rational> c(inner.coefficients().begin(), inner.coefficients().end());
    c[0] = Rational(0);
    const PowerSeries g(c);
    const Substitution sub(g);
    for (int i = 0; i < 4; ++i) {
        const auto f = random_series(gen, 12);
        EXPECT_EQ(sub.apply(f), series_compose(f, g));
    }
}

TEST(Compose, RequiresZeroConstant) {
    EXPECT_THROW(series_compose(PowerSeries::variable(5), PowerSeries::one(5)), CompositionRequiresZeroConstant);
}

TEST(Compose, ChainRule) {
    std::mt19937 gen(3);
    const auto f = random_series(gen, 10);
    auto gc = random_series(gen, 10);
    std::vector<Rational> c(gc.coefficients().begin(), gc.coefficients().end());
    c[0] = Rational(0);
    const PowerSeries g(c);
    const auto lhs = series_derivative(series_compose(f, g));
    const auto rhs = series_compose(series_derivative(f), g.truncated(9)) * series_derivative(g);
    EXPECT_EQ(lhs, rhs);
}
