#pragma once

// Coherent-state (anti-Wick) quantization on the truncated Fock basis
// {|0>, ..., |n_max>}. Matrix entries follow
//
//   (A_f)_{n n'} = <n| int f |z><z| dmu |n'>,
//
// so the phase of entry (n, n') is e^{i gamma (E(n') - E(n))}.

#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "gkcs/coherent.hpp"
#include "gkcs/error.hpp"
#include "gkcs/quadrature.hpp"
#include "gkcs/spectrum.hpp"
#include "gkcs/verification.hpp"

namespace gkcs {

inline constexpr unsigned kDefaultMatrixNMax = 64;

enum class SymbolKind { radial, angular, monomial, ladder, boson };

inline const char* to_string(SymbolKind k) {
    switch (k) {
        case SymbolKind::radial: return "radial";
        case SymbolKind::angular: return "angular";
        case SymbolKind::monomial: return "monomial";
        case SymbolKind::ladder: return "ladder";
        case SymbolKind::boson: return "boson";
    }
    return "unknown";
}

struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    SymbolKind symbol = SymbolKind::radial;
    std::string descriptor;
    double gamma = 0.0;

    unsigned n_max() const { return static_cast<unsigned>(entries.rows()) - 1; }
};

namespace detail {

inline Complex gamma_phase(const ModelParams& p, double gamma, unsigned row, unsigned col) {
    return std::polar(1.0, gamma * (excitation(p, col) - excitation(p, row)));
}

/// log of s^mu Gamma(mu+1) Gamma(mu+2nu+3) / (Gamma(2nu+3) sqrt(rho_n rho_n')).
inline double log_moment_ratio(const ModelParams& p, double mu, unsigned n, unsigned np) {
    const double a = 2.0 * p.nu() + 3.0;
    return mu * std::log(p.s()) + std::lgamma(mu + 1.0) + std::lgamma(mu + a) - std::lgamma(a) -
           0.5 * (log_rho(p, n) + log_rho(p, np));
}

inline void require_matrix_params(const ModelParams& p, const char* where) {
    if (p.beta() != 0.0) throw DomainError(std::string(where) + ": quantization requires beta = 0");
}

}  // namespace detail

/// Symbol depending on x = |z|^2 only. Diagonal entries
/// (1/rho_n) int x^n f(x) omega_tilde(x) dx by quadrature.
inline OperatorMatrix op_radial(const ModelParams& p, const std::function<double(double)>& f,
                                unsigned n_max = kDefaultMatrixNMax, quad::Options opt = {1e-11, quad::default_eval_budget()},
                                std::string descriptor = "f(|z|^2)") {
    detail::require_matrix_params(p, "op_radial");
    OperatorMatrix op{Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1), SymbolKind::radial, std::move(descriptor), 0.0};
    for (unsigned n = 0; n <= n_max; ++n) {
        const double lr = log_rho(p, n);
        const auto r = quad::integrate_semi_infinite(
            [&](double x) {
                if (x <= 0.0) return n == 0 ? f(0.0) * omega_tilde(p, 0.0) : 0.0;
                return f(x) * std::exp(n * std::log(x) - lr + log_omega_tilde(p, x));
            },
            opt, moment_scale_hint(p, n));
        op.entries(n, n) = r.value;
    }
    return op;
}

/// Symbol F(arg z), given through its Fourier coefficients c_k(F) for
/// |k| <= n_max.
inline OperatorMatrix op_angular(const ModelParams& p, const std::function<Complex(int)>& fourier, double gamma,
                                 unsigned n_max = kDefaultMatrixNMax, std::string descriptor = "F(arg z)") {
    detail::require_matrix_params(p, "op_angular");
    OperatorMatrix op{Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1), SymbolKind::angular, std::move(descriptor), gamma};
    for (unsigned n = 0; n <= n_max; ++n)
        for (unsigned np = 0; np <= n_max; ++np) {
            const Complex c = fourier(static_cast<int>(np) - static_cast<int>(n));
            if (c == Complex(0.0)) continue;
            const double mu = 0.5 * (n + np);
            op.entries(n, np) = c * detail::gamma_phase(p, gamma, n, np) * std::exp(detail::log_moment_ratio(p, mu, n, np));
        }
    return op;
}

/// Symbol z^alpha conj(z)^sigma: one band, n' = n + alpha - sigma.
inline OperatorMatrix op_monomial(const ModelParams& p, unsigned alpha, unsigned sigma, double gamma,
                                  unsigned n_max = kDefaultMatrixNMax) {
    detail::require_matrix_params(p, "op_monomial");
    OperatorMatrix op{Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1), SymbolKind::monomial,
                      "z^" + std::to_string(alpha) + " zbar^" + std::to_string(sigma), gamma};
    for (unsigned n = 0; n <= n_max; ++n) {
        const long np_signed = static_cast<long>(n) + alpha - static_cast<long>(sigma);
        if (np_signed < 0 || np_signed > static_cast<long>(n_max)) continue;
        const auto np = static_cast<unsigned>(np_signed);
        const double mu = 0.5 * (n + np + alpha + sigma);
        op.entries(n, np) = detail::gamma_phase(p, gamma, n, np) * std::exp(detail::log_moment_ratio(p, mu, n, np));
    }
    return op;
}

/// A_z: <n-1|A_z|n> = sqrt(E(n)) e^{i gamma (E(n) - E(n-1))}.
inline OperatorMatrix op_z(const ModelParams& p, double gamma, unsigned n_max = kDefaultMatrixNMax) {
    detail::require_matrix_params(p, "op_z");
    OperatorMatrix op{Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1), SymbolKind::ladder, "z", gamma};
    for (unsigned n = 1; n <= n_max; ++n)
        op.entries(n - 1, n) = std::sqrt(excitation(p, n)) * detail::gamma_phase(p, gamma, n - 1, n);
    return op;
}

inline OperatorMatrix op_zbar(const ModelParams& p, double gamma, unsigned n_max = kDefaultMatrixNMax) {
    OperatorMatrix op = op_z(p, gamma, n_max);
    op.entries = op.entries.adjoint().eval();
    op.descriptor = "zbar";
    return op;
}

struct BosonPair {
    OperatorMatrix a;
    OperatorMatrix adag;
};

/// a|n> = sqrt(n)|n-1>, without gamma phases.
inline BosonPair rescaled_boson(const ModelParams& p, double gamma, unsigned n_max = kDefaultMatrixNMax) {
    detail::require_matrix_params(p, "rescaled_boson");
    BosonPair b{{Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1), SymbolKind::boson, "a", gamma},
                {Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1), SymbolKind::boson, "a^dagger", gamma}};
    for (unsigned n = 1; n <= n_max; ++n) b.a.entries(n - 1, n) = std::sqrt(static_cast<double>(n));
    b.adag.entries = b.a.entries.adjoint();
    return b;
}

/// Coefficient vector of a state, zero-padded to dim entries.
inline Eigen::VectorXcd state_vector(const CoherentState& st, Eigen::Index dim) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index n = 0; n < dim && n < static_cast<Eigen::Index>(st.coeffs.size()); ++n) v(n) = st.coeffs[n];
    return v;
}

inline Complex expectation(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& v) { return v.dot(op * v); }

inline constexpr double kQuantizeTolerance = 1e-9;

/// Expectation identities of A_z and A_zbar in |z, gamma>. The product
/// <A_z A_zbar> is checked against |z|^2 + <f(N)>, f(x) = s(2x + 2nu + 3),
/// and separately against the closed form |z|^2 + 2s x N'/N + s(2nu+3).
inline VerificationReport verify_quantize_expectations(const ModelParams& p, Complex z, double gamma,
                                                       double tol = kQuantizeTolerance) {
    VerificationReport rep("quantize_expectations");
    const CoherentState st = make_state(p, z, gamma, 1e-15);
    const unsigned n_max = st.n_max + 2;
    const auto v = state_vector(st, n_max + 1);
    const Eigen::MatrixXcd Az = op_z(p, gamma, n_max).entries;
    const Eigen::MatrixXcd Azb = op_zbar(p, gamma, n_max).entries;
    const double x = std::norm(z);
    const double scale = std::max(1.0, x);

    rep.check("<A_z> = z", std::abs(expectation(Az, v) - z) / scale, tol);
    rep.check("<A_zbar> = zbar", std::abs(expectation(Azb, v) - std::conj(z)) / scale, tol);
    rep.check("<A_z^2> = z^2", std::abs(expectation(Az * Az, v) - z * z) / scale, tol);
    rep.check("<A_zbar A_z> = |z|^2", std::abs(expectation(Azb * Az, v) - x) / scale, tol);

    const Complex azazb = expectation(Az * Azb, v);
    double mean_n = 0.0;
    for (unsigned n = 0; n < st.coeffs.size(); ++n) mean_n += n * std::norm(st.coeffs[n]);
    const double f_mean = p.s() * (2.0 * mean_n + 2.0 * p.nu() + 3.0);
    rep.check("<A_z A_zbar> = |z|^2 + <f(N)>", std::abs(azazb - (x + f_mean)) / scale, tol);

    const double ratio = x == 0.0 ? 0.0 : normalization_N_derivative(p, x, 1) / normalization_N(p, x);
    const double printed = x * (1.0 + 2.0 * p.s() * ratio) + p.s() * (2.0 * p.nu() + 3.0);
    rep.check("<A_z A_zbar> closed form", std::abs(azazb - printed) / scale, tol);

    const Eigen::MatrixXcd comm = Az * Azb - Azb * Az;
    double worst = 0.0;
    for (unsigned n = 0; n + 2 <= n_max; ++n)
        worst = std::max(worst, std::abs(comm(n, n) - p.s() * (2.0 * n + 2.0 * p.nu() + 3.0)));
    rep.check("[A_z, A_zbar] = f(N)", worst, tol);
    return rep;
}

}  // namespace gkcs
