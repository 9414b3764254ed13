#pragma once

// The identity suite behind `gkcs validate`. Spectrum checks use the given
// beta; coherent-state, statistics, geometry and quantization checks run on
// the beta = 0 problem with the same nu, s and L.

#include <cmath>
#include <complex>
#include <string>

#include "gkcs/coherent.hpp"
#include "gkcs/geometry.hpp"
#include "gkcs/quantize.hpp"
#include "gkcs/spectrum.hpp"
#include "gkcs/statistics.hpp"
#include "gkcs/verification.hpp"

namespace gkcs {

struct ValidationOptions {
    unsigned eigen_levels = 8;
    unsigned product_levels = 3;
    unsigned moment_levels = 12;
    Complex z{1.3, 0.4};
    double gamma = 0.5;
};

inline VerificationReport validate_spectrum(const ModelParams& p, const ValidationOptions& o = {}) {
    VerificationReport rep("spectrum");
    rep.merge(verify_orthonormality(p, o.eigen_levels));
    for (unsigned m : {0u, 2u}) rep.merge(verify_supersymmetry(p, m));
    for (unsigned n = 1; n <= o.product_levels; ++n) rep.merge(verify_operator_products(p, n, n));

    double worst = 0.0;
    for (unsigned n = 0; n <= kRhoLogSpaceThreshold; ++n)
        worst = std::max(worst, std::abs(std::exp(log_rho(p, n)) / rho_product(p, n) - 1.0));
    rep.check("rho_log_vs_product", worst, 1e-12);
    return rep;
}

inline VerificationReport validate_coherent(const ModelParams& p, const ValidationOptions& o = {}) {
    VerificationReport rep("coherent");
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double x = 0.25 * i;
        const double series = normalization_N(p, x);
        worst = std::max(worst, std::abs(normalization_N_bessel(p, x) - series) / series);
    }
    rep.check("N_series_vs_bessel", worst, 1e-12);
    double printed = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double x = 0.25 * i;
        printed = std::max(printed, std::abs(normalization_N_printed(p, x) / normalization_N(p, x) - 1.0));
    }
    rep.inform("N_printed_form_discrepancy", printed, "max relative deviation of the printed closed form on (0, 25]");

    worst = 0.0;
    for (unsigned n = 0; n <= o.moment_levels; ++n)
        worst = std::max(worst, std::abs(moment(p, n, {1e-11, quad::default_eval_budget()}) / rho(p, n) - 1.0));
    rep.check("moments", worst, 1e-8);
    for (unsigned n : {0u, 3u}) rep.merge(verify_resolution_of_identity(p, n, n));
    rep.merge(verify_resolution_of_identity(p, 2, 5));

    const auto st = make_state(p, o.z, o.gamma, 1e-14);
    rep.check("norm", std::abs(norm_squared(st) - 1.0), 1e-12);
    rep.check("overlap_self", std::abs(overlap(st, st) - 1.0), 1e-12);
    rep.check("action_identity", std::abs(action_identity(st) - std::norm(o.z)) / std::max(1.0, std::norm(o.z)), 1e-9);

    const auto moved = evolve(st, 0.7);
    double phase_err = 0.0;
    for (std::size_t n = 0; n < st.coeffs.size(); ++n)
        phase_err = std::max(phase_err,
                             std::abs(moved.coeffs[n] - std::polar(1.0, -0.7 * excitation(p, static_cast<unsigned>(n))) *
                                                            st.coeffs[n]));
    rep.check("temporal_stability", phase_err, 0.0);

    // Radial approach z' -> z must give a monotonically shrinking distance.
    double prev = 2.0;
    bool monotone = true;
    for (int k = 1; k <= 12; ++k) {
        const double r = std::pow(2.0, -k);
        const double d = distance_squared(make_state(p, o.z * (1.0 + r), o.gamma, 1e-14), st);
        if (!(d < prev)) monotone = false;
        prev = d;
    }
    rep.check("label_continuity", monotone ? prev : 1.0, 1e-6);
    return rep;
}

inline VerificationReport validate_statistics(const ModelParams& p, const ValidationOptions& o = {}) {
    VerificationReport rep("statistics");
    const double a = 2.0 * p.nu() + 3.0;
    const double x0 = 1e-3;
    const double q_lead = -1.0 / (p.s() * a * (a + 1.0));
    rep.check("Q_small_x", std::abs(mandel_Q(p, x0) / x0 / q_lead - 1.0), 1e-2);
    const double g2_exp = a / (a + 1.0) * (1.0 + 2.0 * x0 / (p.s() * a * (a + 1.0) * (a + 2.0)));
    rep.check("g2_small_x", std::abs(g2(p, x0) / g2_exp - 1.0), 1e-2);

    double worst_pdf = 0.0;
    double worst_n2 = 0.0;
    for (double x : {0.5, 2.0, 10.0}) {
        double total = 0.0;
        double n1 = 0.0;
        double n2 = 0.0;
        for (unsigned n = 0; n < 400; ++n) {
            const double pn = photon_pdf(p, x, n);
            total += pn;
            n1 += n * pn;
            n2 += double(n) * n * pn;
        }
        worst_pdf = std::max({worst_pdf, std::abs(total - 1.0), std::abs(n1 - mean_N(p, x)) / std::max(1.0, n1)});
        const double kernel_n2 =
            x * x * s_kernel(p, 2, 2, x, o.gamma).real() + x * s_kernel(p, 1, 1, x, o.gamma).real();
        worst_n2 = std::max(worst_n2, std::abs(kernel_n2 - n2) / std::max(1.0, n2));
    }
    rep.check("pdf_sum_and_mean", worst_pdf, 1e-10);
    rep.check("N2_kernel_vs_pdf", worst_n2, 1e-10);

    const auto v = quadrature_variances(make_state(p, o.z, o.gamma, 1e-14));
    rep.check("sigma_X_vs_matrix", std::abs(v.sigma_X - v.sigma_X_matrix), 1e-8);
    rep.check("sigma_P_vs_matrix", std::abs(v.sigma_P - v.sigma_P_matrix), 1e-8);
    const auto w = quadrature_variances(make_state(p, Complex(0.0, 1.0) * o.z, o.gamma, 1e-14));
    rep.check("rotation_identity", std::abs(v.sigma_P - w.sigma_X), 1e-12);
    rep.check("uncertainty", std::max(0.0, 0.25 * v.commutator * v.commutator - v.sigma_X * v.sigma_P), 0.0);
    rep.inform("delta_H", v.delta_H, to_string(v.label));
    return rep;
}

inline VerificationReport validate_geometry(const ModelParams& p, const ValidationOptions& = {}) {
    VerificationReport rep("geometry");
    const double a = 2.0 * p.nu() + 3.0;
    rep.check("W_at_zero", std::abs(fubini_metric(p, 0.0) * p.s() * a - 1.0), 1e-9);
    const double x0 = 1e-4;
    const double deficit = 1.0 - fubini_metric(p, x0) * p.s() * a;
    const double expected = 2.0 * x0 / (p.s() * a * (a + 1.0));
    rep.check("W_slope", std::abs(deficit / expected - 1.0), 1e-2);

    double worst_fd = 0.0;
    double worst_split = 0.0;
    double min_w = 1.0;
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
        const double h = 1e-5;
        const double w = fubini_metric(p, x);
        worst_fd = std::max(worst_fd, std::abs((mean_N(p, x + h) - mean_N(p, x - h)) / (2.0 * h) - w));
        const auto c = metric_components(p, x);
        worst_split = std::max(worst_split, std::abs(c.tangent_norm - c.projection - w));
        min_w = std::min(min_w, w);
    }
    rep.check("W_vs_dmeanN", worst_fd, 1e-6);
    rep.check("W_components", worst_split, 1e-10);
    rep.check("W_positive", min_w > 0.0 ? 0.0 : 1.0, 0.0);
    return rep;
}

inline VerificationReport validate_quantize(const ModelParams& p, const ValidationOptions& o = {}) {
    VerificationReport rep("quantize");
    const unsigned n_max = 24;
    const auto id = op_radial(p, [](double) { return 1.0; }, n_max);
    rep.check("radial_identity", (id.entries - Eigen::MatrixXcd::Identity(n_max + 1, n_max + 1)).cwiseAbs().maxCoeff(), 1e-8);
    const auto zm = op_monomial(p, 1, 0, o.gamma, n_max);
    const auto az = op_z(p, o.gamma, n_max);
    rep.check("monomial_vs_ladder", (zm.entries - az.entries).cwiseAbs().maxCoeff(), 1e-10);
    const auto xr = op_radial(p, [](double x) { return x; }, n_max);
    const auto xm = op_monomial(p, 1, 1, o.gamma, n_max);
    double rel = 0.0;
    for (unsigned n = 0; n <= n_max; ++n)
        rel = std::max(rel, std::abs(xr.entries(n, n) - xm.entries(n, n)) / std::abs(xm.entries(n, n)));
    rep.check("radial_vs_monomial", rel, 1e-8);
    rep.merge(verify_quantize_expectations(p, o.z, o.gamma));
    return rep;
}

inline VerificationReport run_validation(const ModelParams& p, const ValidationOptions& o = {}) {
    VerificationReport rep("validate");
    const ModelParams p0 = p.with_beta(0.0);
    rep.merge(validate_spectrum(p, o));
    rep.merge(validate_coherent(p0, o));
    rep.merge(validate_statistics(p0, o));
    rep.merge(validate_geometry(p0, o));
    rep.merge(validate_quantize(p0, o));
    return rep;
}

}  // namespace gkcs
