#include <cmath>

#include <gtest/gtest.h>

#include "gkcs/geometry.hpp"
#include "gkcs/statistics.hpp"

using gkcs::ModelParams;

namespace {

// N^{(r)}(x) term by term, independent of the library series.
double series_derivative(const ModelParams& p, double x, unsigned r) {
    const double a = 2.0 * p.nu() + 3.0;
    double sum = 0.0;
    double coeff = 1.0;
    for (unsigned n = 0; n < 600; ++n) {
        if (n >= r) {
            double falling = 1.0;
            for (unsigned j = 0; j < r; ++j) falling *= n - j;
            sum += coeff * falling;
            coeff *= x;
        }
        coeff /= (a + n) * (n + 1.0) * p.s();
    }
    return sum;
}

}  // namespace

TEST(FubiniMetric, ValueAtOrigin) {
    EXPECT_NEAR(gkcs::fubini_metric(ModelParams(0.0), 0.0), 1.0 / 3.0, 1e-15);
    for (double nu : {0.5, 2.0})
        for (double s : {0.4, 3.0}) {
            const ModelParams p(nu, 0.0, s);
            EXPECT_NEAR(gkcs::fubini_metric(p, 0.0) * s * (2 * nu + 3), 1.0, 1e-9);
        }
}

TEST(FubiniMetric, SlopeAtOrigin) {
    for (double nu : {0.0, 1.0, 3.0})
        for (double s : {0.5, 1.0, 2.0}) {
            const ModelParams p(nu, 0.0, s);
            const double a = 2 * nu + 3;
            const double x = 1e-4;
            const double deficit = 1.0 - gkcs::fubini_metric(p, x) * s * a;
            // Relative deficit x / (M eps0 (2nu+3)(2nu+4)) with M eps0 = s/2.
            EXPECT_NEAR(deficit / (2.0 * x / (s * a * (a + 1))), 1.0, 1e-2);
        }
}

TEST(FubiniMetric, DerivativeOfMeanN) {
    for (double nu : {0.0, 1.0, 3.0})
        for (double x : {0.05, 0.5, 3.0, 12.0, 40.0}) {
            const ModelParams p(nu);
            const double h = 1e-5;
            const double fd = (gkcs::mean_N(p, x + h) - gkcs::mean_N(p, x - h)) / (2 * h);
            EXPECT_NEAR(fd, gkcs::fubini_metric(p, x), 1e-6) << nu << " " << x;
        }
}

TEST(FubiniMetric, MatchesSeriesOracle) {
    const ModelParams p(0.7, 0.0, 1.3);
    for (double x : {0.0, 0.2, 5.0, 25.0}) {
        const double n0 = series_derivative(p, x, 0);
        const double n1 = series_derivative(p, x, 1);
        const double n2 = series_derivative(p, x, 2);
        const double ref = (n1 + x * n2) / n0 - x * (n1 / n0) * (n1 / n0);
        EXPECT_NEAR(gkcs::fubini_metric(p, x) / ref, 1.0, 1e-12) << x;
        const auto sample = gkcs::metric_sample(p, x);
        EXPECT_EQ(sample.x, x);
        EXPECT_EQ(sample.W, gkcs::fubini_metric(p, x));
    }
}

TEST(FubiniMetric, PositiveOnGrid) {
    for (double nu : {0.0, 1.0, 3.0}) {
        const ModelParams p(nu);
        for (int i = 0; i <= 1000; ++i) EXPECT_GT(gkcs::fubini_metric(p, 0.05 * i), 0.0) << nu << " " << 0.05 * i;
    }
}

TEST(MetricComponents, DifferenceIsMetric) {
    for (double nu : {0.0, 1.0, 3.0})
        for (double x : {0.0, 0.1, 1.0, 5.0, 20.0, 50.0}) {
            const ModelParams p(nu, 0.0, 0.8);
            const auto c = gkcs::metric_components(p, x);
            const double w = gkcs::fubini_metric(p, x);
            EXPECT_NEAR(c.tangent_norm - c.projection, w, 1e-10 * std::max(1.0, w)) << nu << " " << x;

            const double n0 = series_derivative(p, x, 0);
            const double n1 = series_derivative(p, x, 1);
            const double n2 = series_derivative(p, x, 2);
            EXPECT_NEAR(c.tangent_norm / ((n1 + x * n2) / n0), 1.0, 1e-12);
            if (x > 0.0) EXPECT_NEAR(c.projection / (x * n1 * n1 / (n0 * n0)), 1.0, 1e-12);
        }
}
