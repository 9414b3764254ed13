#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <gtest/gtest.h>

#include "gkcs/quantize.hpp"

using gkcs::Complex;
using gkcs::ModelParams;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd identity(unsigned n_max) { return Eigen::MatrixXcd::Identity(n_max + 1, n_max + 1); }

// diag(e^{-i gamma E(n)}).
Eigen::MatrixXcd phase_matrix(const ModelParams& p, double gamma, unsigned n_max) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) d(n, n) = std::polar(1.0, -gamma * gkcs::excitation(p, n));
    return d;
}

double residual(const gkcs::VerificationReport& rep, const std::string& name) {
    for (const auto& e : rep.entries())
        if (e.name == name) return e.residual;
    throw std::runtime_error("no entry " + name);
}

}  // namespace

TEST(OpRadial, IdentityAndLinear) {
    const ModelParams p(0.0);
    const unsigned n_max = 20;
    const auto id = gkcs::op_radial(p, [](double) { return 1.0; }, n_max);
    EXPECT_LE(max_abs(id.entries - identity(n_max)), 1e-8);
    EXPECT_EQ(id.n_max(), n_max);
    EXPECT_EQ(id.symbol, gkcs::SymbolKind::radial);

    const auto lin = gkcs::op_radial(p, [](double x) { return x; }, n_max);
    EXPECT_NEAR(lin.entries(0, 0).real(), 3.0, 3e-8);
    for (unsigned n = 0; n <= n_max; ++n) {
        const double e = gkcs::excitation(p, n + 1);
        EXPECT_NEAR(lin.entries(n, n).real() / e, 1.0, 1e-8) << n;
    }
    const auto mono = gkcs::op_monomial(p, 1, 1, 0.0, n_max);
    for (unsigned n = 0; n <= n_max; ++n)
        EXPECT_NEAR(std::abs(lin.entries(n, n) / mono.entries(n, n) - 1.0), 0.0, 1e-8);
}

TEST(OpRadial, PositiveSymbolGivesNonnegativeDiagonal) {
    const ModelParams p(1.0, 0.0, 0.6);
    const auto op = gkcs::op_radial(p, [](double x) { return x * std::exp(-x); }, 16);
    for (unsigned n = 0; n <= 16; ++n) {
        EXPECT_GE(op.entries(n, n).real(), 0.0);
        EXPECT_EQ(op.entries(n, n).imag(), 0.0);
    }
    EXPECT_LE(max_abs(op.entries - op.entries.adjoint()), 1e-10);
}

TEST(OpAngular, ConstantIsIdentity) {
    const ModelParams p(0.8, 0.0, 1.7);
    const auto op = gkcs::op_angular(p, [](int k) { return k == 0 ? Complex(1.0) : Complex(0.0); }, 0.4, 30);
    EXPECT_LE(max_abs(op.entries - identity(30)), 1e-12);
}

TEST(OpAngular, FirstHarmonicEntry) {
    const ModelParams p(0.0);
    const auto op = gkcs::op_angular(p, [](int k) { return k == 1 ? Complex(1.0) : Complex(0.0); }, 0.0, 8);
    EXPECT_NEAR(op.entries(0, 1).real(), std::tgamma(3.5) * std::tgamma(1.5) / (2.0 * std::sqrt(3.0)), 1e-14);
    for (unsigned n = 0; n <= 8; ++n)
        for (unsigned m = 0; m <= 8; ++m)
            if (m != n + 1) EXPECT_EQ(op.entries(n, m), Complex(0.0));
}

TEST(OpAngular, RealSymbolIsHermitian) {
    const ModelParams p(0.5);
    // F = cos(theta) + 0.3 sin(2 theta).
    auto fourier = [](int k) -> Complex {
        if (k == 1 || k == -1) return 0.5;
        if (k == 2) return Complex(0.0, -0.15);
        if (k == -2) return Complex(0.0, 0.15);
        return 0.0;
    };
    for (double gamma : {0.0, 1.1}) {
        const auto op = gkcs::op_angular(p, fourier, gamma, 24);
        EXPECT_LE(max_abs(op.entries - op.entries.adjoint()), 1e-10 * max_abs(op.entries));
    }
}

TEST(OpMonomial, IdentityAndBand) {
    const ModelParams p(0.3, 0.0, 0.9);
    EXPECT_LE(max_abs(gkcs::op_monomial(p, 0, 0, 0.7, 20).entries - identity(20)), 1e-13);
    const auto op = gkcs::op_monomial(p, 3, 1, 0.0, 20);
    for (unsigned n = 0; n <= 20; ++n)
        for (unsigned m = 0; m <= 20; ++m)
            if (static_cast<int>(m) - static_cast<int>(n) != 2) EXPECT_EQ(op.entries(n, m), Complex(0.0));
}

TEST(OpMonomial, LadderAgreement) {
    for (double gamma : {0.0, 0.7}) {
        const ModelParams p(1.2, 0.0, 0.5);
        EXPECT_LE(max_abs(gkcs::op_monomial(p, 1, 0, gamma, 30).entries - gkcs::op_z(p, gamma, 30).entries), 1e-10);
        EXPECT_LE(max_abs(gkcs::op_monomial(p, 0, 1, gamma, 30).entries - gkcs::op_zbar(p, gamma, 30).entries), 1e-10);
    }
}

TEST(OpMonomial, QuarticDiagonal) {
    const ModelParams p(0.6, 0.0, 1.4);
    const unsigned n_max = 20;
    const auto op = gkcs::op_monomial(p, 2, 2, 0.0, n_max);
    const auto az = gkcs::op_z(p, 0.0, n_max).entries;
    const auto azb = gkcs::op_zbar(p, 0.0, n_max).entries;
    const Eigen::MatrixXcd ladder = az * az * azb * azb;
    for (unsigned n = 0; n <= n_max; ++n) {
        const double ref = gkcs::excitation(p, n + 1) * gkcs::excitation(p, n + 2);
        EXPECT_NEAR(op.entries(n, n).real() / ref, 1.0, 1e-12);
        if (n + 2 <= n_max) EXPECT_NEAR(ladder(n, n).real() / ref, 1.0, 1e-12);
    }
    const auto rad = gkcs::op_radial(p, [](double x) { return x * x; }, n_max);
    for (unsigned n = 0; n <= n_max; ++n) EXPECT_NEAR(rad.entries(n, n).real() / op.entries(n, n).real(), 1.0, 1e-8);
}

TEST(OpZ, EntriesAndAction) {
    const ModelParams p(0.0);
    const auto az = gkcs::op_z(p, 0.0, 40);
    EXPECT_NEAR(az.entries(0, 1).real(), std::sqrt(3.0), 1e-15);
    EXPECT_EQ(az.entries.col(0).norm(), 0.0);

    const Complex z(1.1, -0.7);
    const auto st = gkcs::make_state(p, z, 0.3, 1e-14);
    const auto a = gkcs::op_z(p, 0.3, st.n_max);
    const auto v = gkcs::state_vector(st, st.n_max + 1);
    const Eigen::VectorXcd r = a.entries * v - z * v;
    // Only the last component feels the truncation: it is -z c_{n_max}, and
    // |z c_{n_max}| = sqrt(E(n_max+1)) |c_{n_max+1}|, bounded by the tail.
    EXPECT_LE(r.head(st.n_max).norm(), 1e-14);
    EXPECT_LE(r.norm(), std::sqrt(gkcs::excitation(p, st.n_max + 1) * st.tail_bound) + 1e-14);
}

TEST(OpZ, HermiticityAndGammaCovariance) {
    const ModelParams p(0.4, 0.0, 1.3);
    const unsigned n_max = 25;
    const double gamma = 0.83;
    const auto d = phase_matrix(p, gamma, n_max);
    auto covariant = [&](const Eigen::MatrixXcd& at_zero, const Eigen::MatrixXcd& at_gamma) {
        return max_abs(d * at_zero * d.adjoint() - at_gamma) / std::max(1.0, max_abs(at_gamma));
    };
    // Phase angles reach gamma E(n_max); the comparison is exact up to their rounding.
    const double exact = 4.0 * std::numeric_limits<double>::epsilon() * gamma * gkcs::excitation(p, n_max);
    EXPECT_LE(covariant(gkcs::op_z(p, 0.0, n_max).entries, gkcs::op_z(p, gamma, n_max).entries), exact);
    EXPECT_LE(covariant(gkcs::op_monomial(p, 3, 1, 0.0, n_max).entries, gkcs::op_monomial(p, 3, 1, gamma, n_max).entries),
              exact);
    auto fourier = [](int k) { return k == 2 ? Complex(0.2, 0.1) : Complex(0.0); };
    EXPECT_LE(covariant(gkcs::op_angular(p, fourier, 0.0, n_max).entries, gkcs::op_angular(p, fourier, gamma, n_max).entries),
              exact);

    const auto xx = gkcs::op_monomial(p, 2, 2, gamma, n_max).entries;
    EXPECT_LE(max_abs(xx - xx.adjoint()), 1e-10);
}

TEST(RescaledBoson, Algebra) {
    const unsigned n_max = 15;
    const auto b = gkcs::rescaled_boson(ModelParams(0.9), 0.5, n_max);
    EXPECT_EQ(b.a.entries(0, 1), Complex(1.0));
    const Eigen::MatrixXcd comm = b.a.entries * b.adag.entries - b.adag.entries * b.a.entries;
    const Eigen::MatrixXcd number = b.adag.entries * b.a.entries;
    for (unsigned n = 0; n <= n_max; ++n) {
        if (n + 2 <= n_max) EXPECT_NEAR(std::abs(comm(n, n) - 1.0), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(number(n, n) - double(n)), 0.0, 1e-13);
    }
}

TEST(Expectations, ReportPassesAndExamples) {
    const ModelParams p(0.0);
    const auto rep = gkcs::verify_quantize_expectations(p, {1.3, 0.4}, 0.5);
    for (const auto& e : rep.entries()) EXPECT_TRUE(e.passed) << e.name << " " << e.residual;
    EXPECT_LE(residual(rep, "<A_zbar A_z> = |z|^2"), 1e-9);
    EXPECT_LE(residual(rep, "[A_z, A_zbar] = f(N)"), 1e-9);

    // z = 0: <A_z A_zbar> = E(1) = s (2nu+3), checked through the closed-form entry.
    const ModelParams q(1.5, 0.0, 0.7);
    const auto zero = gkcs::verify_quantize_expectations(q, 0.0, 0.0);
    EXPECT_TRUE(zero.all_passed());
    const Eigen::MatrixXcd az = gkcs::op_z(q, 0.0, 4).entries;
    EXPECT_NEAR((az * az.adjoint())(0, 0).real(), q.s() * (2 * q.nu() + 3), 1e-14);
}

TEST(Expectations, AcrossParameters) {
    for (double nu : {0.0, 1.0, 2.5})
        for (double s : {0.5, 2.0})
            for (Complex z : {Complex(0.2, 0.1), Complex(-2.0, 1.5), Complex(4.0, 0.0)}) {
                const auto rep = gkcs::verify_quantize_expectations(ModelParams(nu, 0.0, s), z, 0.9);
                EXPECT_TRUE(rep.all_passed()) << nu << " " << s << " " << z;
            }
}

TEST(Quantize, RejectsNonzeroBeta) {
    const ModelParams p(1.0, 0.3);
    EXPECT_THROW(gkcs::op_z(p, 0.0, 4), gkcs::DomainError);
    EXPECT_THROW(gkcs::op_monomial(p, 1, 0, 0.0, 4), gkcs::DomainError);
    EXPECT_THROW(gkcs::op_radial(p, [](double) { return 1.0; }, 4), gkcs::DomainError);
    EXPECT_THROW(gkcs::rescaled_boson(p, 0.0, 4), gkcs::DomainError);
}
