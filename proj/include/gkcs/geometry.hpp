#pragma once

// Fubini-Study metric of the coherent-state surface, d sigma^2 = W(x) dzbar dz
// with x = |z|^2. No factor-2 conversion to real coordinates is applied.

#include <cmath>

#include "gkcs/coherent.hpp"
#include "gkcs/statistics.hpp"

namespace gkcs {

struct MetricSample {
    double x = 0.0;
    double W = 0.0;
};

/// W = (N' + x N'')/N - x (N'/N)^2.
inline double fubini_metric(const ModelParams& p, double x) {
    const auto d = n_derivatives(p, x);
    const double r = d.N1 / d.N0;
    return (d.N1 + x * d.N2) / d.N0 - x * r * r;
}

inline MetricSample metric_sample(const ModelParams& p, double x) { return {x, fubini_metric(p, x)}; }

struct MetricComponents {
    double tangent_norm = 0.0;   // || d|z> ||^2 / (dzbar dz)
    double projection = 0.0;     // |<z|d|z>|^2 / (dzbar dz)
};

/// The two terms of the metric summed directly from the state series,
/// sum n^2 x^{n-1}/rho_n / N and x (sum n x^{n-1}/rho_n)^2 / N^2.
inline MetricComponents metric_components(const ModelParams& p, double x) {
    detail::require_x(x, "metric_components");
    const double n0 = normalization_N(p, x);
    detail::CompensatedSum a;
    detail::CompensatedSum b;
    for (unsigned n = 1;; ++n) {
        // x^{n-1} / rho_n
        const double t = std::exp((n == 1 ? 0.0 : (n - 1) * std::log(x)) - log_rho(p, n));
        a.add(static_cast<double>(n) * n * t);
        b.add(static_cast<double>(n) * t);
        if (x == 0.0) break;
        if (x < excitation(p, n + 1) && n * n * t < kSeriesRelativeCutoff * a.value()) break;
    }
    return {a.value() / n0, x * b.value() * b.value() / (n0 * n0)};
}

}  // namespace gkcs
