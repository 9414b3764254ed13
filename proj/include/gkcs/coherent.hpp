#pragma once

// Gazeau-Klauder coherent states of the beta = 0 problem,
//
//   |z, gamma> = N(|z|^2)^{-1/2} sum_n z^n e^{-i gamma E(n)} / sqrt(rho_n) |n>,
//
// with rho_n = s^n n! (2nu+3)_n. The power series for N and its derivatives
// are the ground truth; Bessel closed forms are cross-checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "gkcs/error.hpp"
#include "gkcs/quadrature.hpp"
#include "gkcs/specfun.hpp"
#include "gkcs/spectrum.hpp"
#include "gkcs/verification.hpp"

namespace gkcs {

inline constexpr double kSeriesRelativeCutoff = 1e-17;
inline constexpr double kDefaultTailTolerance = 1e-12;
inline constexpr unsigned kDefaultTruncationCap = 400;

namespace detail {

inline void require_beta_zero(const ModelParams& p, const char* where) {
    if (p.beta() != 0.0) throw DomainError(std::string(where) + ": coherent states require beta = 0");
}

inline void require_x(double x, const char* where) {
    if (!std::isfinite(x) || x < 0.0) throw DomainError(std::string(where) + ": x must be finite and >= 0");
}

}  // namespace detail

/// r-th derivative of N(x) = sum_n (x/s)^n / ((2nu+3)_n n!), summed term by
/// term: N^{(r)}(x) = sum_m x^m / (m! s^{m+r} (2nu+3)_{m+r}).
inline double normalization_N_derivative(const ModelParams& p, double x, unsigned r) {
    detail::require_x(x, "normalization_N");
    const double a = 2.0 * p.nu() + 3.0;
    double t = 1.0;
    for (unsigned j = 0; j < r; ++j) t /= p.s() * (a + j);
    detail::CompensatedSum sum;
    sum.add(t);
    if (x == 0.0) return t;
    for (unsigned m = 0;; ++m) {
        const double ratio = x / ((m + 1.0) * p.s() * (a + m + r));
        t *= ratio;
        sum.add(t);
        if (!std::isfinite(sum.value())) throw OverflowError("normalization_N: series overflows");
        if (ratio < 1.0 && t < kSeriesRelativeCutoff * sum.value()) break;
    }
    return sum.value();
}

inline double normalization_N(const ModelParams& p, double x) { return normalization_N_derivative(p, x, 0); }

/// log N(x), valid beyond the range where N itself overflows.
inline double log_normalization_N(const ModelParams& p, double x) {
    detail::require_x(x, "log_normalization_N");
    if (x == 0.0) return 0.0;
    const double a = 2.0 * p.nu() + 3.0;
    const double lx = std::log(x / p.s());
    // Terms are log-concave in m; sum around the peak with a shift.
    std::vector<double> logs;
    double lt = 0.0;
    double peak = 0.0;
    for (unsigned m = 0;; ++m) {
        logs.push_back(lt);
        peak = std::max(peak, lt);
        const double step = lx - std::log((m + 1.0) * (a + m));
        lt += step;
        if (step < 0.0 && lt < peak + std::log(kSeriesRelativeCutoff)) break;
    }
    detail::CompensatedSum sum;
    for (double l : logs) sum.add(std::exp(l - peak));
    return peak + std::log(sum.value());
}

/// Bessel closed form Gamma(2nu+3) (x/s)^{-(nu+1)} I_{2nu+2}(2 sqrt(x/s)).
inline double normalization_N_bessel(const ModelParams& p, double x) {
    detail::require_x(x, "normalization_N_bessel");
    if (x == 0.0) return 1.0;
    const double u = x / p.s();
    const double m = 2.0 * p.nu() + 2.0;
    return std::tgamma(m + 1.0) * std::pow(u, -(p.nu() + 1.0)) * bessel_I(BesselOrder(m), 2.0 * std::sqrt(u));
}

/// The closed form as printed alongside the series definition,
/// Gamma(2nu+3) (x/s)^{-(2nu+2)} I_{2nu+2}(2x/s). It does not reproduce the
/// series; it is kept only to report the discrepancy.
inline double normalization_N_printed(const ModelParams& p, double x) {
    detail::require_x(x, "normalization_N_printed");
    if (x == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double u = x / p.s();
    const double m = 2.0 * p.nu() + 2.0;
    return std::tgamma(m + 1.0) * std::pow(u, -m) * bessel_I(BesselOrder(m), 2.0 * u);
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

struct CoherentState {
    ModelParams params;
    Complex z;
    double gamma = 0.0;
    unsigned n_max = 0;
    std::vector<Complex> coeffs;
    // Relative weight of the discarded tail, sum_{n > n_max} |c_n|^2 <= tail_bound.
    double tail_bound = 0.0;
};

namespace detail {

inline double log_term(const ModelParams& p, double lx, unsigned n) { return n * lx - log_rho(p, n); }

}  // namespace detail

/// Truncated, normalized coherent state. n_max is the smallest index at which
/// the ratio-test bound on the discarded tail falls below tail_tol; the
/// coefficients are normalized by the full series N(|z|^2).
inline CoherentState make_state(const ModelParams& p, Complex z, double gamma, double tail_tol = kDefaultTailTolerance,
                                unsigned cap = kDefaultTruncationCap) {
    detail::require_beta_zero(p, "make_state");
    detail::require_finite(z, "make_state");
    if (!std::isfinite(gamma)) throw DomainError("make_state: gamma must be finite");
    if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) throw DomainError("make_state: tail_tol must lie in (0, 1e-6]");

    CoherentState st{p, z, gamma, 0, {}, 0.0};
    const double x = std::norm(z);
    if (x == 0.0) {
        st.coeffs = {Complex(1.0)};
        return st;
    }
    const double lx = std::log(x);
    const double log_n = log_normalization_N(p, x);
    const double log_tol = std::log(tail_tol);

    unsigned n = 0;
    for (;; ++n) {
        if (n > cap)
            throw TruncationError("make_state: |z| = " + std::to_string(std::abs(z)) + " needs more than " +
                                  std::to_string(cap) + " Fock levels");
        // tail after n: u_{n+1} / (1 - r), r = x / E(n+2) bounds every later ratio.
        const double r = x / excitation(p, n + 2);
        if (r >= 1.0) continue;
        const double log_tail = detail::log_term(p, lx, n + 1) - std::log1p(-r) - log_n;
        if (log_tail <= log_tol) {
            st.tail_bound = std::exp(log_tail);
            break;
        }
    }
    st.n_max = n;
    st.coeffs.resize(n + 1);
    const double phase_z = std::arg(z);
    for (unsigned k = 0; k <= n; ++k) {
        const double mag = std::exp(0.5 * (detail::log_term(p, lx, k) - log_n));
        st.coeffs[k] = std::polar(mag, k * phase_z - gamma * excitation(p, k));
    }
    return st;
}

/// <a|b> from the series in conj(z_a) z_b / s; both states must share
/// parameters and gamma.
inline Complex overlap(const CoherentState& a, const CoherentState& b) {
    const ModelParams& p = a.params;
    if (p.nu() != b.params.nu() || p.s() != b.params.s()) throw DomainError("overlap: states have different parameters");
    if (a.gamma != b.gamma) throw DomainError("overlap: states have different gamma");
    const Complex w = std::conj(a.z) * b.z / p.s();
    const double prefactor = -0.5 * (log_normalization_N(p, std::norm(a.z)) + log_normalization_N(p, std::norm(b.z)));
    if (w == Complex(0.0)) return std::exp(prefactor);

    const double aa = 2.0 * p.nu() + 3.0;
    const double lw = std::log(std::abs(w));
    const double arg = std::arg(w);
    // Term magnitudes are tracked in logs so that tiny leading terms of a
    // large-|z| sum do not underflow.
    detail::CompensatedComplexSum sum;
    double lt = prefactor;
    double peak = lt;
    for (unsigned m = 0;; ++m) {
        sum.add(std::polar(std::exp(lt), m * arg));
        const double step = lw - std::log((m + 1.0) * (aa + m));
        lt += step;
        peak = std::max(peak, lt);
        if (step < 0.0 && lt < peak + std::log(kSeriesRelativeCutoff)) break;
    }
    return sum.value();
}

/// || |a> - |b> ||^2 = 2 (1 - Re <b|a>).
inline double distance_squared(const CoherentState& a, const CoherentState& b) {
    return 2.0 * (1.0 - overlap(b, a).real());
}

/// Same z, gamma -> gamma + t; each coefficient picks up e^{-i t E(n)}.
inline CoherentState evolve(const CoherentState& st, double t) {
    CoherentState out = st;
    out.gamma = st.gamma + t;
    for (unsigned n = 0; n < out.coeffs.size(); ++n)
        out.coeffs[n] *= std::polar(1.0, -t * excitation(st.params, n));
    return out;
}

/// <H> = sum_n E(n) |c_n|^2.
inline double action_identity(const CoherentState& st) {
    detail::CompensatedSum sum;
    for (unsigned n = 0; n < st.coeffs.size(); ++n) sum.add(excitation(st.params, n) * std::norm(st.coeffs[n]));
    return sum.value();
}

inline double norm_squared(const CoherentState& st) {
    detail::CompensatedSum sum;
    for (const auto& c : st.coeffs) sum.add(std::norm(c));
    return sum.value();
}

// ---------------------------------------------------------------------------
// Measure and moments
// ---------------------------------------------------------------------------

/// log of (t/2)^m K_m(t). For small t the leading behaviour Gamma(m)/2 is used
/// directly; otherwise the exponentially scaled K avoids overflow.
inline double log_scaled_bessel_k(double m, double t) {
    if (t < 1e-6 && m > 1.0) return std::lgamma(m) - std::log(2.0) + std::log1p(-t * t / (4.0 * (m - 1.0)));
    return m * std::log(0.5 * t) + std::log(bessel_K_scaled(BesselOrder(m), t)) - t;
}

/// log of the weight 2 x^{nu+1} / (s^{nu+2} Gamma(2nu+3)) K_{2nu+2}(2 sqrt(x/s)).
inline double log_omega_tilde(const ModelParams& p, double x) {
    detail::require_x(x, "omega_tilde");
    const double m = 2.0 * p.nu() + 2.0;
    const double t = 2.0 * std::sqrt(x / p.s());
    // x^{nu+1} = s^{nu+1} (t/2)^m
    return std::log(2.0) - std::log(p.s()) - std::lgamma(m + 1.0) + log_scaled_bessel_k(m, t);
}

inline double omega_tilde(const ModelParams& p, double x) { return std::exp(log_omega_tilde(p, x)); }

/// Radial part of the measure, x -> (1/pi) omega_tilde(x) N(x).
struct MeasureDensity {
    ModelParams params;

    double operator()(double x) const {
        return std::exp(log_omega_tilde(params, x) + log_normalization_N(params, x)) / std::numbers::pi;
    }
};

inline MeasureDensity measure_density(const ModelParams& p) {
    detail::require_beta_zero(p, "measure_density");
    return MeasureDensity{p};
}

inline double moment_scale_hint(const ModelParams& p, double mu) {
    const double c = mu + p.nu() + 1.25;
    return p.s() * c * c;
}

/// int_0^inf x^mu omega_tilde(x) dx by quadrature.
inline quad::QuadratureResult<double> moment_quadrature(const ModelParams& p, double mu, quad::Options opt = {}) {
    if (!(mu >= 0.0)) throw DomainError("moment: mu must be >= 0");
    return quad::integrate_semi_infinite(
        [&](double x) {
            if (x <= 0.0) return mu == 0.0 ? omega_tilde(p, 0.0) : 0.0;
            return std::exp(mu * std::log(x) + log_omega_tilde(p, x));
        },
        opt, moment_scale_hint(p, mu));
}

/// Closed form of the same integral: s^mu Gamma(mu+1) Gamma(mu+2nu+3) / Gamma(2nu+3).
inline double moment_closed_form(const ModelParams& p, double mu) {
    const double a = 2.0 * p.nu() + 3.0;
    return std::exp(mu * std::log(p.s()) + std::lgamma(mu + 1.0) + std::lgamma(mu + a) - std::lgamma(a));
}

inline double moment(const ModelParams& p, unsigned n, quad::Options opt = {}) {
    return moment_quadrature(p, n, opt).value;
}

/// <n| int dmu |z><z| |m>. The angular integral of e^{i(n-m) theta} is taken
/// by the trapezoid rule and must vanish for n != m; the radial part is the
/// moment of order (n+m)/2 divided by sqrt(rho_n rho_m).
inline VerificationReport verify_resolution_of_identity(const ModelParams& p, unsigned n, unsigned m, double tol = 1e-8) {
    detail::require_beta_zero(p, "verify_resolution_of_identity");
    VerificationReport rep("resolution_of_identity[" + std::to_string(n) + "," + std::to_string(m) + "]");
    const int k = static_cast<int>(n) - static_cast<int>(m);
    const auto ang = quad::integrate_circle([k](double th) { return std::polar(1.0, k * th); });
    const double delta = n == m ? 1.0 : 0.0;
    rep.check("angular", std::abs(ang.value - delta), 1e-14);

    const double mu = 0.5 * (n + m);
    const auto rad = moment_quadrature(p, mu, {1e-11, quad::default_eval_budget()});
    const double radial = rad.value / std::exp(0.5 * (log_rho(p, n) + log_rho(p, m)));
    const double closed = moment_closed_form(p, mu) / std::exp(0.5 * (log_rho(p, n) + log_rho(p, m)));
    rep.check("radial_vs_closed_form", std::abs(radial - closed) / closed, tol);
    rep.check("matrix_element", std::abs(ang.value * radial - delta), tol);
    return rep;
}

}  // namespace gkcs
