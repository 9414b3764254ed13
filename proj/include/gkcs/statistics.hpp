#pragma once

// Number statistics and quadrature variances of |z, gamma>. Everything is
// built from the series for N and its term-wise derivatives.

#include <cmath>
#include <complex>
#include <string>

#include "gkcs/coherent.hpp"
#include "gkcs/error.hpp"
#include "gkcs/quantize.hpp"
#include "gkcs/spectrum.hpp"

namespace gkcs {

struct NDerivatives {
    double x = 0.0;
    double N0 = 1.0;
    double N1 = 0.0;
    double N2 = 0.0;
    double N3 = 0.0;
};

inline NDerivatives n_derivatives(const ModelParams& p, double x) {
    return {x, normalization_N_derivative(p, x, 0), normalization_N_derivative(p, x, 1),
            normalization_N_derivative(p, x, 2), normalization_N_derivative(p, x, 3)};
}

/// S^{(s,r)}(x) = N^{-1} sum_m e^{i gamma (E(m+s) - E(m+r))}
///                sqrt((m+r)! (m+s)! / (rho_{m+s} rho_{m+r})) x^m / m!.
inline Complex s_kernel(const ModelParams& p, unsigned s, unsigned r, double x, double gamma) {
    detail::require_x(x, "s_kernel");
    const double log_n = log_normalization_N(p, x);
    auto log_term = [&](unsigned m) {
        const double lxm = m == 0 ? 0.0 : m * std::log(x);
        return 0.5 * (std::lgamma(m + r + 1.0) + std::lgamma(m + s + 1.0) - log_rho(p, m + s) - log_rho(p, m + r)) +
               lxm - std::lgamma(m + 1.0) - log_n;
    };
    auto phase = [&](unsigned m) { return std::polar(1.0, gamma * (excitation(p, m + s) - excitation(p, m + r))); };
    if (x == 0.0) return std::exp(log_term(0)) * phase(0);

    detail::CompensatedComplexSum sum;
    double peak = -std::numeric_limits<double>::infinity();
    double prev = peak;
    for (unsigned m = 0;; ++m) {
        const double lt = log_term(m);
        sum.add(std::exp(lt) * phase(m));
        peak = std::max(peak, lt);
        if (m > 0 && lt < prev && lt < peak + std::log(kSeriesRelativeCutoff)) break;
        prev = lt;
    }
    return sum.value();
}

/// <N> = x N'/N.
inline double mean_N(const ModelParams& p, double x) {
    if (x == 0.0) return 0.0;
    return x * normalization_N_derivative(p, x, 1) / normalization_N(p, x);
}

/// <N^2> = x^2 N''/N + x N'/N.
inline double mean_N2(const ModelParams& p, double x) {
    if (x == 0.0) return 0.0;
    const double n0 = normalization_N(p, x);
    return (x * x * normalization_N_derivative(p, x, 2) + x * normalization_N_derivative(p, x, 1)) / n0;
}

/// P(x, n) = x^n / (rho_n N(x)).
inline double photon_pdf(const ModelParams& p, double x, unsigned n) {
    detail::require_x(x, "photon_pdf");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(x) - log_rho(p, n) - log_normalization_N(p, x));
}

/// Mandel parameter x (N''/N' - N'/N); Q(0) = 0 by continuity.
inline double mandel_Q(const ModelParams& p, double x) {
    detail::require_x(x, "mandel_Q");
    if (x == 0.0) return 0.0;
    const auto d = n_derivatives(p, x);
    return x * (d.N2 / d.N1 - d.N1 / d.N0);
}

inline double fano(const ModelParams& p, double x) { return mandel_Q(p, x) + 1.0; }

/// g2 = N'' N / N'^2. At x = 0 this is the limit (2nu+3)/(2nu+4).
inline double g2(const ModelParams& p, double x) {
    const auto d = n_derivatives(p, x);
    return (d.N2 / d.N1) * (d.N0 / d.N1);
}

enum class PoissonClass { sub, poisson, super };

inline PoissonClass classify_poisson(double q) {
    if (q < 0.0) return PoissonClass::sub;
    if (q > 0.0) return PoissonClass::super;
    return PoissonClass::poisson;
}

inline const char* to_string(PoissonClass c) {
    switch (c) {
        case PoissonClass::sub: return "sub-Poissonian";
        case PoissonClass::poisson: return "Poissonian";
        case PoissonClass::super: return "super-Poissonian";
    }
    return "unknown";
}

/// Energy spread sqrt(<H^2> - <H>^2) with <H> = |z|^2 and
/// <H^2> = x s (<N^2> + (2nu+4)<N> + 2nu+3).
inline double energy_spread(const ModelParams& p, double x) {
    if (x == 0.0) return 0.0;
    const double h2 = x * p.s() * (mean_N2(p, x) + (2.0 * p.nu() + 4.0) * mean_N(p, x) + 2.0 * p.nu() + 3.0);
    return std::sqrt(std::max(0.0, h2 - x * x));
}

enum class SqueezeLabel { x_squeezed, p_squeezed, none };

inline const char* to_string(SqueezeLabel l) {
    switch (l) {
        case SqueezeLabel::x_squeezed: return "X-squeezed";
        case SqueezeLabel::p_squeezed: return "P-squeezed";
        case SqueezeLabel::none: return "none";
    }
    return "unknown";
}

/// sigma_X < Delta_H < sigma_P gives X, the mirror image gives P.
inline SqueezeLabel squeeze_label(double sigma_x, double sigma_p, double delta_h) {
    if (sigma_x < delta_h && delta_h < sigma_p) return SqueezeLabel::x_squeezed;
    if (sigma_p < delta_h && delta_h < sigma_x) return SqueezeLabel::p_squeezed;
    return SqueezeLabel::none;
}

struct QuadratureVariances {
    double sigma_X = 0.0;
    double sigma_P = 0.0;
    // Same quantities from truncated matrices of a and a^dagger.
    double sigma_X_matrix = 0.0;
    double sigma_P_matrix = 0.0;
    double commutator = 0.0;  // |<[X, P]>|
    double delta_H = 0.0;
    SqueezeLabel label = SqueezeLabel::none;
};

inline constexpr double kVarianceAbortTolerance = 1e-6;

/// Variances of X = (a^dagger + a)/sqrt2 and P = i(a^dagger - a)/sqrt2 from the
/// S-kernel formulas, with an independent matrix evaluation as a guard.
inline QuadratureVariances quadrature_variances(const CoherentState& st) {
    const ModelParams& p = st.params;
    const Complex z = st.z;
    const double x = std::norm(z);
    const double g = st.gamma;
    const Complex s10 = s_kernel(p, 1, 0, x, g);
    const Complex s20 = s_kernel(p, 2, 0, x, g);
    const double s11 = s_kernel(p, 1, 1, x, g).real();
    const double cross = (std::conj(z) * std::conj(z) * (s20 - s10 * s10)).real();
    const double diag = x * (s11 - std::norm(s10)) + 0.5;

    QuadratureVariances out;
    out.sigma_X = cross + diag;
    out.sigma_P = -cross + diag;

    const unsigned n_max = st.n_max + 2;
    const auto b = rescaled_boson(p, g, n_max);
    const auto v = state_vector(st, n_max + 1);
    const double r2 = std::sqrt(0.5);
    const Eigen::MatrixXcd X = r2 * (b.adag.entries + b.a.entries);
    const Eigen::MatrixXcd P = Complex(0.0, r2) * (b.adag.entries - b.a.entries);
    auto variance = [&](const Eigen::MatrixXcd& op) {
        const double m = expectation(op, v).real();
        return expectation(op * op, v).real() - m * m;
    };
    out.sigma_X_matrix = variance(X);
    out.sigma_P_matrix = variance(P);
    // [X, P] = i on the untruncated space; the corner of the truncated
    // commutator carries no weight for a converged state.
    out.commutator = std::abs(expectation(X * P - P * X, v));

    if (std::abs(out.sigma_X - out.sigma_X_matrix) > kVarianceAbortTolerance ||
        std::abs(out.sigma_P - out.sigma_P_matrix) > kVarianceAbortTolerance)
        throw VerificationFailure("quadrature_variances: S-kernel formula and matrix evaluation disagree");

    out.delta_H = energy_spread(p, x);
    out.label = squeeze_label(out.sigma_X, out.sigma_P, out.delta_H);
    return out;
}

}  // namespace gkcs
