#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "gkcs/specfun.hpp"

using gkcs::BesselOrder;
using gkcs::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

// Power series for I_m(x) with real (possibly negative, non-integer) order.
double series_I(double m, double x, int terms) {
    double sum = 0.0;
    for (int k = 0; k < terms; ++k) sum += std::pow(x / 2.0, 2.0 * k + m) / (std::tgamma(k + 1.0) * std::tgamma(k + m + 1.0));
    return sum;
}

// K_m(x) = int_0^inf exp(-x cosh t) cosh(m t) dt by the trapezoid rule; the
// integrand decays doubly exponentially so h = 1e-3 on [0, 12] is converged.
double integral_K(double m, double x) {
    const double h = 1e-3;
    double sum = 0.5 * std::exp(-x);
    for (int i = 1; i * h <= 12.0; ++i) {
        const double t = i * h;
        sum += std::exp(-x * std::cosh(t)) * std::cosh(m * t);
    }
    return sum * h;
}

// Three-term recurrence for Jacobi polynomials, independent of the
// hypergeometric sum used by the library.
Complex recurrence_jacobi(unsigned n, Complex a, Complex b, Complex z) {
    Complex p0 = 1.0;
    if (n == 0) return p0;
    Complex p1 = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
    for (unsigned k = 2; k <= n; ++k) {
        const double kk = k;
        const Complex c = 2.0 * kk + a + b;
        const Complex a1 = 2.0 * kk * (kk + a + b) * (c - 2.0);
        const Complex a2 = (c - 1.0) * (a * a - b * b);
        const Complex a3 = (c - 2.0) * (c - 1.0) * c;
        const Complex a4 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * c;
        const Complex p2 = ((a2 + a3 * z) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

}  // namespace

TEST(LnGamma, SpecialValues) {
    EXPECT_NEAR(std::abs(gkcs::ln_gamma(Complex(1.0))), 0.0, 1e-15);
    EXPECT_NEAR(gkcs::ln_gamma(Complex(5.0)).real(), std::log(24.0), 1e-14);
    // Reflection at z = 1/2: Gamma(1/2)^2 = pi / sin(pi/2).
    const double lg_half = gkcs::ln_gamma(Complex(0.5)).real();
    EXPECT_NEAR(std::exp(2.0 * lg_half), kPi, 1e-14);
    EXPECT_NEAR(lg_half, 0.5723649429247001, 1e-13);
}

TEST(LnGamma, MatchesStdOnPositiveReals) {
    for (double x = 0.05; x < 50.0; x *= 1.37) EXPECT_NEAR(gkcs::ln_gamma(Complex(x)).real(), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x))));
}

TEST(LnGamma, ReflectionOffAxis) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z) for complex z.
    for (Complex z : {Complex(0.3, 0.7), Complex(-2.4, 1.1), Complex(1.7, -3.0)}) {
        const Complex lhs = gkcs::ln_gamma(z) + gkcs::ln_gamma(1.0 - z);
        const Complex rhs = std::log(kPi / std::sin(kPi * z));
        EXPECT_NEAR(std::abs(std::exp(lhs - rhs) - 1.0), 0.0, 1e-12);
    }
}

TEST(LnGamma, RecurrenceOnRandomStrip) {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> re(0.1, 20.0);
    std::uniform_real_distribution<double> im(-20.0, 20.0);
    for (int i = 0; i < 100; ++i) {
        const Complex z(re(rng), im(rng));
        // |Gamma(z+1) - z Gamma(z)| / |Gamma(z+1)| in log form to avoid overflow.
        const Complex d = gkcs::ln_gamma(z) + std::log(z) - gkcs::ln_gamma(z + 1.0);
        EXPECT_LE(std::abs(std::exp(d) - 1.0), 1e-12) << z;
    }
}

TEST(LnGamma, PolesThrow) {
    EXPECT_THROW(gkcs::ln_gamma(Complex(0.0)), gkcs::PoleError);
    EXPECT_THROW(gkcs::ln_gamma(Complex(-3.0)), gkcs::PoleError);
    EXPECT_THROW(gkcs::ln_gamma(Complex(NAN, 0.0)), gkcs::DomainError);
}

TEST(Pochhammer, Examples) {
    EXPECT_EQ(gkcs::pochhammer(Complex(2.5, 1.0), 0), Complex(1.0));
    EXPECT_EQ(gkcs::pochhammer(Complex(1.0), 4), Complex(24.0));
    EXPECT_EQ(gkcs::pochhammer(Complex(-3.0), 5), Complex(0.0));
    EXPECT_EQ(gkcs::pochhammer(-3.0, 5), 0.0);
    EXPECT_DOUBLE_EQ(gkcs::pochhammer(3.0, 4), 3.0 * 4.0 * 5.0 * 6.0);
}

TEST(Pochhammer, ComplexMatchesGammaRatio) {
    const Complex z(-1.3, 0.8);
    for (unsigned k = 0; k < 12; ++k) {
        const Complex ratio = std::exp(gkcs::ln_gamma(z + double(k)) - gkcs::ln_gamma(z));
        EXPECT_NEAR(std::abs(gkcs::pochhammer(z, k) / ratio - 1.0), 0.0, 1e-12);
    }
}

TEST(BesselI, Examples) {
    EXPECT_EQ(gkcs::bessel_I(BesselOrder(0.0), 0.0), 1.0);
    EXPECT_EQ(gkcs::bessel_I(BesselOrder(2.0), 0.0), 0.0);

    const double i2_small = series_I(2.0, 0.2, 5);
    EXPECT_NEAR(i2_small, 0.0050166875, 1e-10);
    EXPECT_NEAR(gkcs::bessel_I(BesselOrder(2.0), 0.2), i2_small, 1e-12 * i2_small);

    const double i2_two = series_I(2.0, 2.0, 25);
    EXPECT_NEAR(i2_two, 0.6889484, 1e-7);
    EXPECT_NEAR(gkcs::bessel_I(BesselOrder(2.0), 2.0), i2_two, 1e-13 * i2_two);
}

TEST(BesselI, SeriesAgreementUpTo100) {
    // Long-double series oracle, all positive terms.
    for (double m : {0.0, 0.5, 2.0, 3.4, 7.0})
        for (double x : {0.5, 5.0, 24.0, 26.0, 40.0, 70.0, 100.0}) {
            long double sum = 0.0L;
            for (int k = 0; k < 400; ++k)
                sum += std::exp((2.0L * k + m) * std::log(x / 2.0L) - std::lgamma(k + 1.0L) - std::lgamma(k + m + 1.0L));
            const double ref = static_cast<double>(sum);
            EXPECT_NEAR(gkcs::bessel_I(BesselOrder(m), x) / ref, 1.0, 1e-12) << "m=" << m << " x=" << x;
        }
}

TEST(BesselI, ScaledAndOverflow) {
    EXPECT_NEAR(gkcs::bessel_I_scaled(BesselOrder(1.5), 50.0) * std::exp(50.0), gkcs::bessel_I(BesselOrder(1.5), 50.0),
                1e-13 * gkcs::bessel_I(BesselOrder(1.5), 50.0));
    EXPECT_THROW(gkcs::bessel_I(BesselOrder(0.0), 1000.0), gkcs::OverflowError);
    EXPECT_GT(gkcs::bessel_I_scaled(BesselOrder(0.0), 1000.0), 0.0);
    EXPECT_THROW(gkcs::bessel_I(BesselOrder(0.0), -1.0), gkcs::DomainError);
    EXPECT_THROW(BesselOrder(-0.5), gkcs::DomainError);
}

TEST(BesselK, Examples) {
    EXPECT_NEAR(gkcs::bessel_K(BesselOrder(0.5), 1.0), std::sqrt(kPi / 2.0) * std::exp(-1.0), 1e-14);
    const double k2 = integral_K(2.0, 1.0);
    EXPECT_NEAR(k2, 1.6248389, 1e-7);
    EXPECT_NEAR(gkcs::bessel_K(BesselOrder(2.0), 1.0), k2, 1e-12 * k2);
    EXPECT_THROW(gkcs::bessel_K(BesselOrder(1.0), 0.0), gkcs::DomainError);
}

TEST(BesselK, IntegralOracleAcrossOrders) {
    for (double m : {0.0, 1.0, 2.0, 2.5, 4.6})
        for (double x : {0.3, 1.0, 4.0, 15.0}) {
            const double ref = integral_K(m, x);
            EXPECT_NEAR(gkcs::bessel_K(BesselOrder(m), x) / ref, 1.0, 1e-11) << "m=" << m << " x=" << x;
        }
}

TEST(BesselK, ReproducesIDifferenceForNonIntegerOrder) {
    for (double m : {0.5, 1.3, 2.7})
        for (double x : {0.2, 1.0, 3.0}) {
            const double ref = kPi / 2.0 * (series_I(-m, x, 60) - series_I(m, x, 60)) / std::sin(m * kPi);
            EXPECT_NEAR(gkcs::bessel_K(BesselOrder(m), x) / ref, 1.0, 1e-10) << "m=" << m << " x=" << x;
        }
}

TEST(BesselK, ContinuousInOrderAtIntegers) {
    for (double m : {0.0, 1.0, 2.0, 4.0}) {
        const double k = gkcs::bessel_K(BesselOrder(m), 1.3);
        const double up = gkcs::bessel_K(BesselOrder(m + 1e-6), 1.3);
        EXPECT_NEAR(up / k, 1.0, 1e-5);
        if (m > 0.0) EXPECT_NEAR(gkcs::bessel_K(BesselOrder(m - 1e-6), 1.3) / k, 1.0, 1e-5);
    }
}

TEST(Bessel, Wronskian) {
    const double nu = 0.7;
    for (double m : {0.0, 0.5, 2.0, 2.0 * nu + 2.0})
        for (double x = 0.1; x <= 30.0; x += 0.37) {
            const double w = gkcs::bessel_I(BesselOrder(m), x) * gkcs::bessel_K(BesselOrder(m + 1.0), x) +
                             gkcs::bessel_I(BesselOrder(m + 1.0), x) * gkcs::bessel_K(BesselOrder(m), x);
            EXPECT_NEAR(w * x, 1.0, 1e-10) << "m=" << m << " x=" << x;
        }
}

TEST(Bessel, LargeArgumentScaledForms) {
    // Leading Hankel terms: e^{-x} I_m ~ 1/sqrt(2 pi x), e^{x} K_m ~ sqrt(pi/(2x)).
    const double x = 1e7;
    EXPECT_NEAR(gkcs::bessel_I_scaled(BesselOrder(2.0), x) * std::sqrt(2.0 * kPi * x), 1.0, 1e-6);
    EXPECT_NEAR(gkcs::bessel_K_scaled(BesselOrder(2.0), x) / std::sqrt(kPi / (2.0 * x)), 1.0, 1e-6);
}

TEST(Jacobi, Examples) {
    const Complex a(-2.0, 0.35), b = std::conj(a), z(0.0, 1.7);
    EXPECT_EQ(gkcs::jacobi_P(0, a, b, z), Complex(1.0));
    const Complex p1 = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
    EXPECT_NEAR(std::abs(gkcs::jacobi_P(1, a, b, z) - p1), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(gkcs::jacobi_P(2, 0.0, 0.0, 1.0) - 1.0), 0.0, 1e-15);
}

TEST(Jacobi, MatchesRecurrence) {
    for (unsigned n = 0; n <= 12; ++n) {
        const double c = n + 1.5;
        const Complex a(-c, 0.7 / c);
        const Complex z(0.0, 1.0 / std::tan(0.9));
        const Complex ref = recurrence_jacobi(n, a, std::conj(a), z);
        EXPECT_NEAR(std::abs(gkcs::jacobi_P(n, a, std::conj(a), z) - ref), 0.0, 1e-11 * std::max(1.0, std::abs(ref))) << n;
    }
    // Real interior argument: the sum alternates, so the tolerance scales with
    // sum |A_k w^k|.
    for (unsigned n = 0; n <= 20; ++n) {
        const Complex ref = recurrence_jacobi(n, 0.5, 1.5, 0.3);
        double cond = 0.0;
        const auto coeffs = gkcs::jacobi_coefficients(n, 0.5, 1.5);
        for (unsigned k = 0; k <= n; ++k) cond += std::abs(coeffs[k]) * std::pow(0.35, k);
        EXPECT_NEAR(std::abs(gkcs::jacobi_P(n, 0.5, 1.5, 0.3) - ref), 0.0, 1e-14 * std::max(1.0, cond)) << n;
    }
}

TEST(Jacobi, ConjugationSymmetry) {
    for (unsigned n = 0; n <= 10; ++n) {
        const double c = n + 2.3;
        const Complex a(-c, 2.0 / c), b = std::conj(a);
        const Complex z(0.0, -0.8);
        const Complex lhs = std::conj(gkcs::jacobi_P(n, a, b, z));
        const Complex rhs = gkcs::jacobi_P(n, b, a, -z);
        // The conjugate of the defining sum, term by term.
        const Complex conj_sum = gkcs::jacobi_P(n, std::conj(a), std::conj(b), std::conj(z));
        EXPECT_NEAR(std::abs(lhs - conj_sum), 0.0, 1e-12 * std::max(1.0, std::abs(lhs)));
        // With b = conj(a) and purely imaginary z the conjugate equals the swapped evaluation at -z.
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12 * std::max(1.0, std::abs(lhs))) << n;
    }
}

TEST(Jacobi, SingularParameter) {
    EXPECT_THROW(gkcs::jacobi_coefficients(3, Complex(-2.0), Complex(0.0)), gkcs::SingularParameterError);
}

TEST(Gegenbauer, Examples) {
    EXPECT_EQ(gkcs::gegenbauer_C(0, 1.7, 0.3), 1.0);
    EXPECT_DOUBLE_EQ(gkcs::gegenbauer_C(1, 2.0, 0.5), 2.0);
    EXPECT_DOUBLE_EQ(gkcs::gegenbauer_C(2, 1.0, 1.0), 3.0);
}

TEST(Gegenbauer, EndpointValue) {
    for (double lam : {0.5, 1.0, 1.7, 3.3})
        for (unsigned n = 0; n <= 15; ++n) {
            const double ref = gkcs::pochhammer(2.0 * lam, n) / std::tgamma(n + 1.0);
            EXPECT_NEAR(gkcs::gegenbauer_C(n, lam, 1.0) / ref, 1.0, 1e-13);
        }
}

TEST(Gegenbauer, LegendreAtHalf) {
    // lam = 1/2 gives Legendre polynomials; P_3(x) = (5x^3 - 3x)/2.
    const double x = 0.37;
    EXPECT_NEAR(gkcs::gegenbauer_C(3, 0.5, x), 0.5 * (5 * x * x * x - 3 * x), 1e-15);
}
