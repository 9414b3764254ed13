#pragma once

// Numerical integration used as the independent oracle for orthonormality,
// moments, matrix elements and the resolution of identity.
//
// Finite intervals use double-exponential (tanh-sinh) quadrature, whose nodes
// cluster at the endpoints; the half line is mapped onto (0, 1) first; the
// circle uses the trapezoid rule. Every integrand call is counted against an
// evaluation budget so that a failure to converge is loud.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

#include "gkcs/error.hpp"

namespace gkcs::quad {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// Evaluation budget; GKCS_EVAL_BUDGET overrides the default when set to a
/// positive integer.
inline std::size_t default_eval_budget() {
    if (const char* env = std::getenv("GKCS_EVAL_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultBudget;
}

struct Options {
    double tol = kDefaultTolerance;
    std::size_t budget = default_eval_budget();
};

template <typename T>
struct QuadratureResult {
    T value{};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<std::complex<double>(double)>;

namespace detail {

struct BudgetStop {};

class CountingIntegrand {
public:
    CountingIntegrand(const RealFunction& f, std::size_t budget, std::size_t& count)
        : f_(f), budget_(budget), count_(count) {}

    double operator()(double x) const {
        if (++count_ > budget_) throw BudgetStop{};
        const double v = f_(x);
        return std::isfinite(v) ? v : 0.0;
    }

private:
    const RealFunction& f_;
    std::size_t budget_;
    std::size_t& count_;
};

// Boost stops refining as soon as its difference-of-levels estimate meets the
// request, which can leave it just above our acceptance test. Asking for a
// tighter tolerance costs at most one extra level.
inline double inner_tolerance(double tol) {
    return std::max(tol * 1e-2, std::numeric_limits<double>::epsilon());
}

inline bool converged(double value, double err, double l1, double tol) {
    return err <= std::max({tol * std::abs(value), tol * l1, tol});
}

// Refinement schedule: cheap attempts first, each reusing nothing but giving
// a best estimate to report if the budget runs out mid-way.
inline constexpr std::size_t kRefinementSchedule[] = {6, 9, 12, 15};

template <typename Attempt>
QuadratureResult<double> escalate(const char* what, std::size_t budget, Attempt&& attempt) {
    std::size_t count = 0;
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t levels : kRefinementSchedule) {
        double err = 0.0;
        double l1 = 0.0;
        double value = 0.0;
        bool ok = false;
        try {
            value = attempt(levels, count, err, l1, ok);
        } catch (const BudgetStop&) {
            throw BudgetExceededError(std::string(what) + ": evaluation budget exceeded", best, best_err);
        }
        // The inner estimate is a difference of refinements and misses the
        // rounding in the weighted sum itself.
        err = std::max(err, 8.0 * std::numeric_limits<double>::epsilon() * l1);
        best = value;
        best_err = err;
        if (ok) return {value, err, count};
    }
    throw BudgetExceededError(std::string(what) + ": no convergence at maximum refinement", best, best_err);
}

template <typename F>
inline constexpr bool returns_complex_v =
    std::is_same_v<std::decay_t<std::invoke_result_t<F, double>>, std::complex<double>>;

inline QuadratureResult<double> finite_real(const RealFunction& f, double a, double b, Options opt) {
    if (!(a < b)) throw DomainError("integrate_finite: require a < b");
    return escalate("integrate_finite", opt.budget,
                    [&](std::size_t levels, std::size_t& count, double& err, double& l1, bool& ok) {
                        CountingIntegrand g(f, opt.budget, count);
                        boost::math::quadrature::tanh_sinh<double> integrator(levels);
                        std::size_t used = 0;
                        const double v = integrator.integrate(g, a, b, inner_tolerance(opt.tol), &err, &l1, &used);
                        ok = converged(v, err, l1, opt.tol);
                        return v;
                    });
}

inline QuadratureResult<double> circle_real(const RealFunction& f, Options opt) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto r = escalate("integrate_circle", opt.budget,
                      [&](std::size_t levels, std::size_t& count, double& err, double& l1, bool& ok) {
                          CountingIntegrand g(f, opt.budget, count);
                          const double v =
                              boost::math::quadrature::trapezoidal(g, 0.0, two_pi, inner_tolerance(opt.tol), levels, &err, &l1);
                          ok = converged(v, err, l1, opt.tol);
                          return v;
                      });
    r.value /= two_pi;
    r.error_estimate /= two_pi;
    return r;
}

template <typename F, typename RealRule>
auto split_complex(F&& f, RealRule&& rule) {
    using Result = QuadratureResult<std::complex<double>>;
    const auto re = rule(RealFunction([&](double x) { return f(x).real(); }));
    const auto im = rule(RealFunction([&](double x) { return f(x).imag(); }));
    return Result{{re.value, im.value}, std::hypot(re.error_estimate, im.error_estimate),
                  re.evaluations + im.evaluations};
}

}  // namespace detail

/// Integral of f over (a, b). Endpoint singularities of algebraic type are
/// handled by the endpoint clustering of the tanh-sinh nodes; f is never
/// evaluated exactly at a or b. Complex-valued integrands are integrated part
/// by part.
template <typename F>
auto integrate_finite(F&& f, double a, double b, Options opt = {}) {
    if constexpr (detail::returns_complex_v<F>) {
        return detail::split_complex(f, [&](const RealFunction& g) { return detail::finite_real(g, a, b, opt); });
    } else {
        return detail::finite_real(RealFunction(std::forward<F>(f)), a, b, opt);
    }
}

/// Integral of f over (0, inf) for integrands decaying at least like
/// exp(-c sqrt(x)). The substitution x = scale * u / (1 - u) maps the half
/// line onto (0, 1), which is then integrated by tanh-sinh. A scale near the
/// bulk of the integrand saves evaluations; it does not change the value.
template <typename F>
QuadratureResult<double> integrate_semi_infinite(F&& f, Options opt = {}, double scale = 1.0) {
    static_assert(!detail::returns_complex_v<F>, "integrate_semi_infinite: real integrands only");
    if (!(scale > 0.0)) throw DomainError("integrate_semi_infinite: scale must be > 0");
    const RealFunction mapped = [&f, scale](double u) {
        const double one_minus = 1.0 - u;
        if (one_minus <= 0.0) return 0.0;
        const double x = scale * u / one_minus;
        if (!std::isfinite(x)) return 0.0;
        const double v = f(x);
        if (v == 0.0) return 0.0;
        return v * scale / (one_minus * one_minus);
    };
    return detail::finite_real(mapped, 0.0, 1.0, opt);
}

/// Mean of a 2 pi-periodic function over one period, (1/2pi) int_0^{2pi} F.
/// The trapezoid rule converges geometrically for smooth periodic F.
template <typename F>
auto integrate_circle(F&& f, Options opt = {}) {
    if constexpr (detail::returns_complex_v<F>) {
        return detail::split_complex(f, [&](const RealFunction& g) { return detail::circle_real(g, opt); });
    } else {
        return detail::circle_real(RealFunction(std::forward<F>(f)), opt);
    }
}

/// Fourier coefficient c_n(F) = (1/2pi) int_0^{2pi} e^{-i n t} F(t) dt.
template <typename F>
QuadratureResult<std::complex<double>> fourier_coefficient(F&& F_, int n, Options opt = {}) {
    return integrate_circle(
        [&F_, n](double t) {
            return std::exp(std::complex<double>(0.0, -static_cast<double>(n) * t)) * std::complex<double>(F_(t));
        },
        opt);
}

}  // namespace gkcs::quad
