#pragma once

// Special-function kernels: complex log-Gamma, Pochhammer symbols, modified
// Bessel functions I and K of real order >= 0 and real argument, Jacobi
// polynomials with complex parameters and Gegenbauer polynomials.
//
// All functions are pure and safe to call concurrently.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "gkcs/error.hpp"

namespace gkcs {

using Complex = std::complex<double>;

/// Order of a modified Bessel function. Must be finite and nonnegative.
class BesselOrder {
public:
    explicit BesselOrder(double order) : order_(order) {
        if (!std::isfinite(order) || order < 0.0)
            throw DomainError("BesselOrder: order must be finite and >= 0, got " + std::to_string(order));
    }
    double value() const noexcept { return order_; }

private:
    double order_;
};

namespace detail {

inline void require_finite(Complex z, const char* where) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(where) + ": non-finite complex argument");
}

inline void require_finite(double x, const char* where) {
    if (!std::isfinite(x)) throw DomainError(std::string(where) + ": non-finite argument");
}

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(Complex v) noexcept {
        re_.add(v.real());
        im_.add(v.imag());
        abs_ += std::abs(v);
    }
    Complex value() const noexcept { return {re_.value(), im_.value()}; }
    /// Sum of moduli of the added terms; used to estimate cancellation.
    double magnitude() const noexcept { return abs_; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
    double abs_ = 0.0;
};

// Godfrey's g = 607/128, n = 15 Lanczos coefficients.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosCoeffs = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5,
};

/// log(sin(pi z)) without overflow for large |Im z|.
inline Complex log_sin_pi(Complex z) {
    constexpr double pi = std::numbers::pi;
    const Complex I(0.0, 1.0);
    const Complex w = pi * z;
    if (std::abs(z.imag()) < 8.0) return std::log(std::sin(w));
    if (z.imag() > 0.0) return -I * w + std::log((std::exp(2.0 * I * w) - 1.0) / (2.0 * I));
    return I * w + std::log((1.0 - std::exp(-2.0 * I * w)) / (2.0 * I));
}

inline bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace detail

/// Principal-branch log-Gamma for complex argument. Lanczos approximation in
/// the right half plane, reflection formula for Re z < 1/2. Relative accuracy
/// of exp(ln_gamma(z)) is better than 1e-13 for |z| <= 50.
inline Complex ln_gamma(Complex z) {
    detail::require_finite(z, "ln_gamma");
    if (detail::is_nonpositive_integer(z))
        throw PoleError("ln_gamma: pole at nonpositive integer " + std::to_string(z.real()));
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) return std::log(pi) - detail::log_sin_pi(z) - ln_gamma(1.0 - z);

    const Complex zm1 = z - 1.0;
    Complex series = detail::kLanczosCoeffs[0];
    for (std::size_t k = 1; k < detail::kLanczosCoeffs.size(); ++k)
        series += detail::kLanczosCoeffs[k] / (zm1 + static_cast<double>(k));
    const Complex t = zm1 + detail::kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * pi) + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

inline Complex gamma(Complex z) { return std::exp(ln_gamma(z)); }

/// 1/Gamma(z); zero at the poles of Gamma.
inline Complex rgamma(Complex z) {
    detail::require_finite(z, "rgamma");
    if (detail::is_nonpositive_integer(z)) return 0.0;
    return std::exp(-ln_gamma(z));
}

/// Rising factorial z(z+1)...(z+k-1), computed as a direct product so that a
/// vanishing factor gives an exact zero.
inline Complex pochhammer(Complex z, unsigned k) {
    detail::require_finite(z, "pochhammer");
    Complex p = 1.0;
    for (unsigned j = 0; j < k; ++j) p *= z + static_cast<double>(j);
    return p;
}

inline double pochhammer(double z, unsigned k) {
    double p = 1.0;
    for (unsigned j = 0; j < k; ++j) p *= z + static_cast<double>(j);
    return p;
}

// ---------------------------------------------------------------------------
// Modified Bessel functions
// ---------------------------------------------------------------------------

namespace detail {

/// Below this argument I_m is summed from its power series (positive terms, no
/// cancellation). Above it, the continued-fraction/Wronskian method is used,
/// which delivers exponentially scaled values.
inline constexpr double kBesselSeriesCrossover = 25.0;

// Taylor coefficients of 1/Gamma(1+x) about x = 0.
inline constexpr std::array<double, 27> kRGammaTaylor = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
};

struct TemmeGammas {
    double gam1;   // (1/G(1-mu) - 1/G(1+mu)) / (2 mu)
    double gam2;   // (1/G(1-mu) + 1/G(1+mu)) / 2
    double gampl;  // 1/G(1+mu)
    double gammi;  // 1/G(1-mu)
};

/// |mu| <= 1/2.
inline TemmeGammas temme_gammas(double mu) {
    // 1/G(1+mu) = sum_j d_j mu^j; split into even and odd parts in mu.
    double even = 0.0;
    double odd_over_mu = 0.0;
    double pw = 1.0;  // mu^(2i)
    for (std::size_t j = 0; j < kRGammaTaylor.size(); j += 2) {
        even += kRGammaTaylor[j] * pw;
        if (j + 1 < kRGammaTaylor.size()) odd_over_mu += kRGammaTaylor[j + 1] * pw;
        pw *= mu * mu;
    }
    const double odd = odd_over_mu * mu;
    return {-odd_over_mu, even, even + odd, even - odd};
}

struct BesselIK {
    double i;   // I_nu(x) * exp(-x)
    double k;   // K_nu(x) * exp(x)
    double ip;  // I'_nu(x) * exp(-x)
    double kp;  // K'_nu(x) * exp(x)
};

/// Hankel's large-argument expansions of e^{-x} I_nu(x) and e^{x} K_nu(x).
/// Used once x >> nu^2, where CF1 needs O(x) iterations; the terms keep
/// shrinking until k ~ 2x, far past double precision.
inline std::pair<double, double> bessel_ik_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term_k = 1.0;
    double term_i = 1.0;
    double sum_k = 1.0;
    double sum_i = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double f = (mu - odd * odd) / (8.0 * k * x);
        term_k *= f;
        term_i *= -f;
        sum_k += term_k;
        sum_i += term_i;
        if (std::abs(term_k) < 1e-17 * std::abs(sum_k)) break;
    }
    const double pi = std::numbers::pi;
    return {sum_i / std::sqrt(2.0 * pi * x), sum_k * std::sqrt(pi / (2.0 * x))};
}

inline constexpr double kBesselAsymptoticStart = 1e4;

/// Exponentially scaled I, K and their derivatives for nu >= 0, x > 0.
/// CF1 for I'/I, Temme's series (x < 2) or Steed's CF2 (x >= 2) for K_mu,
/// the Wronskian for I_mu, and recurrences between mu and nu.
inline BesselIK bessel_ik_scaled(double nu, double x) {
    constexpr double eps = 1e-16;
    constexpr double fpmin = 1e-290;
    constexpr double big = 1e250;
    constexpr int maxit = 100000;
    constexpr double pi = std::numbers::pi;

    if (x >= kBesselAsymptoticStart && x >= 100.0 * (nu * nu + 1.0)) {
        const auto [i0, k0] = bessel_ik_asymptotic(nu, x);
        const auto [i1, k1] = bessel_ik_asymptotic(nu + 1.0, x);
        return {i0, k0, i1 + nu / x * i0, -k1 + nu / x * k0};
    }

    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    const double mu2 = mu * mu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;

    double h = nu * xi;
    if (h < fpmin) h = fpmin;
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    int it = 1;
    for (; it <= maxit; ++it) {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        const double del = c * d;
        h *= del;
        // del can settle one ulp away from 1, so the test allows two.
        if (std::abs(del - 1.0) <= 2.0 * std::numeric_limits<double>::epsilon()) break;
    }
    if (it > maxit) throw BudgetExceededError("bessel_ik: CF1 did not converge", 0.0, 0.0);

    double ril = fpmin;
    double ripl = h * ril;
    double ril1 = ril;
    double rip1 = ripl;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
        if (std::abs(ril) > big) {
            ril /= big;
            ripl /= big;
            ril1 /= big;
            rip1 /= big;
        }
    }
    const double f = ripl / ril;

    double rkmu;
    double rk1;
    bool scaled;
    if (x < 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = pi * mu;
        const double fct = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
        double dd = -std::log(x2);
        double e = mu * dd;
        const double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;
        const TemmeGammas g = temme_gammas(mu);
        double ff = fct * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * dd);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / g.gampl;
        double q = 0.5 / (e * g.gammi);
        double cc = 1.0;
        dd = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i <= maxit; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
            cc *= dd / i;
            p /= (i - mu);
            q /= (i + mu);
            const double del = cc * ff;
            sum += del;
            const double del1 = cc * (p - i * ff);
            sum1 += del1;
            if (std::abs(del) < std::abs(sum) * eps) break;
        }
        if (i > maxit) throw BudgetExceededError("bessel_ik: Temme series did not converge", 0.0, 0.0);
        rkmu = sum;
        rk1 = sum1 * xi2;
        scaled = false;
    } else {
        double bb = 2.0 * (1.0 + x);
        double dd = 1.0 / bb;
        double hh = dd;
        double delh = dd;
        double q1 = 0.0;
        double q2 = 1.0;
        const double a1 = 0.25 - mu2;
        double q = a1;
        double cc = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        int i = 2;
        for (; i <= maxit; ++i) {
            a -= 2.0 * (i - 1);
            cc = -a * cc / i;
            const double qnew = (q1 - bb * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += cc * qnew;
            bb += 2.0;
            dd = 1.0 / (bb + a * dd);
            delh = (bb * dd - 1.0) * delh;
            hh += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < eps) break;
        }
        if (i > maxit) throw BudgetExceededError("bessel_ik: CF2 did not converge", 0.0, 0.0);
        hh = a1 * hh;
        rkmu = std::sqrt(pi / (2.0 * x)) / s;
        rk1 = rkmu * (mu + x + 0.5 - hh) * xi;
        scaled = true;
    }
    const double rkmup = mu * xi * rkmu - rk1;
    const double rimu = xi / (f * rkmu - rkmup);
    double ri = (rimu * ril1) / ril;
    double rip = (rimu * rip1) / ril;
    for (int i = 1; i <= nl; ++i) {
        const double rktemp = (mu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    double rk = rkmu;
    double rkp = nu * xi * rkmu - rk1;
    if (!scaled) {
        const double ex = std::exp(x);
        ri /= ex;
        rip /= ex;
        rk *= ex;
        rkp *= ex;
    }
    return {ri, rk, rip, rkp};
}

/// Power series for I_m(x); all terms positive.
inline double bessel_i_series(double m, double x) {
    const double half = 0.5 * x;
    const double q = half * half;
    double term = std::exp(m * std::log(half) - std::lgamma(m + 1.0));
    CompensatedSum sum;
    sum.add(term);
    for (int k = 0; k < 100000; ++k) {
        term *= q / ((k + 1.0) * (k + 1.0 + m));
        sum.add(term);
        if (k + 1.0 > half && term < 1e-17 * sum.value()) break;
    }
    return sum.value();
}

}  // namespace detail

/// Modified Bessel function of the first kind I_m(x), x >= 0. Throws
/// OverflowError when the result exceeds double range; use bessel_I_scaled.
inline double bessel_I(BesselOrder m, double x) {
    detail::require_finite(x, "bessel_I");
    if (x < 0.0) throw DomainError("bessel_I: x must be >= 0");
    if (x == 0.0) return m.value() == 0.0 ? 1.0 : 0.0;
    if (x < detail::kBesselSeriesCrossover) return detail::bessel_i_series(m.value(), x);
    if (x > 700.0) throw OverflowError("bessel_I: exp(x) overflows; use bessel_I_scaled");
    return detail::bessel_ik_scaled(m.value(), x).i * std::exp(x);
}

/// exp(-x) I_m(x).
inline double bessel_I_scaled(BesselOrder m, double x) {
    detail::require_finite(x, "bessel_I_scaled");
    if (x < 0.0) throw DomainError("bessel_I_scaled: x must be >= 0");
    if (x == 0.0) return m.value() == 0.0 ? 1.0 : 0.0;
    if (x < detail::kBesselSeriesCrossover) return detail::bessel_i_series(m.value(), x) * std::exp(-x);
    return detail::bessel_ik_scaled(m.value(), x).i;
}

/// exp(x) K_m(x), x > 0.
inline double bessel_K_scaled(BesselOrder m, double x) {
    detail::require_finite(x, "bessel_K_scaled");
    if (!(x > 0.0)) throw DomainError("bessel_K: x must be > 0");
    const double k = detail::bessel_ik_scaled(m.value(), x).k;
    if (!std::isfinite(k)) throw OverflowError("bessel_K: result overflows");
    return k;
}

/// Modified Bessel function of the second kind K_m(x), x > 0. Integer orders
/// are handled by Temme's series, so there is no sin(m pi) division.
inline double bessel_K(BesselOrder m, double x) {
    const double k = bessel_K_scaled(m, x) * std::exp(-x);
    if (!std::isfinite(k)) throw OverflowError("bessel_K: result overflows");
    return k;
}

// ---------------------------------------------------------------------------
// Orthogonal polynomials
// ---------------------------------------------------------------------------

/// Coefficients A_k of P_n^{(a,b)}(z) = sum_k A_k ((1-z)/2)^k, from the
/// terminating hypergeometric representation.
inline std::vector<Complex> jacobi_coefficients(unsigned n, Complex a, Complex b) {
    detail::require_finite(a, "jacobi_P");
    detail::require_finite(b, "jacobi_P");
    const Complex ap1 = a + 1.0;
    const Complex c = static_cast<double>(n) + a + b + 1.0;
    // (a+1)_n / n!
    Complex lead = 1.0;
    for (unsigned j = 0; j < n; ++j) lead *= (ap1 + static_cast<double>(j)) / static_cast<double>(j + 1);

    std::vector<Complex> coeffs(n + 1);
    Complex ratio = 1.0;  // (-n)_k (c)_k / ((a+1)_k k!)
    for (unsigned k = 0; k <= n; ++k) {
        coeffs[k] = lead * ratio;
        if (k == n) break;
        const Complex denom = (ap1 + static_cast<double>(k)) * static_cast<double>(k + 1);
        if (denom == Complex(0.0)) {
            // (a+1)_{k+1} vanishes: the representation is singular unless the
            // prefactor (a+1)_n vanishes as well, which the caller must resolve.
            throw SingularParameterError("jacobi_P: (a+1)_k vanishes for k = " + std::to_string(k + 1));
        }
        ratio *= (static_cast<double>(k) - static_cast<double>(n)) * (c + static_cast<double>(k)) / denom;
    }
    return coeffs;
}

/// Jacobi polynomial P_n^{(a,b)}(z) with complex parameters and argument,
/// evaluated from its finite hypergeometric sum with compensated summation.
inline Complex jacobi_P(unsigned n, Complex a, Complex b, Complex z) {
    detail::require_finite(z, "jacobi_P");
    const auto coeffs = jacobi_coefficients(n, a, b);
    const Complex w = (1.0 - z) / 2.0;
    detail::CompensatedComplexSum sum;
    Complex pw = 1.0;
    for (unsigned k = 0; k <= n; ++k) {
        sum.add(coeffs[k] * pw);
        pw *= w;
    }
    return sum.value();
}

/// Gegenbauer polynomial C_n^{lam}(x), three-term recurrence.
inline double gegenbauer_C(unsigned n, double lam, double x) {
    detail::require_finite(x, "gegenbauer_C");
    if (!(lam > 0.0)) throw DomainError("gegenbauer_C: lambda must be > 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * lam * x;
    for (unsigned k = 2; k <= n; ++k) {
        const double next = (2.0 * x * (k + lam - 1.0) * cur - (k + 2.0 * lam - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace gkcs
