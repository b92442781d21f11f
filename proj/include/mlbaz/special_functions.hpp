#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mlbaz/series.hpp"

namespace mlbaz {

/// Thrown when an iterative scheme fails to reach its tolerance
/// (series truncation, adaptive quadrature depth).
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients (Godfrey's set). Gives
// ~1e-13 relative accuracy in double precision for |z| <= 20 away from
// the poles; stays accurate for real parts up to ~140 before the power
// t^(z+1/2) overflows, at which point the log form takes over.
inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,   676.5203681218851,    -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,  12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline Cplx lanczos_sum(Cplx zm1) {
    Cplx a = lanczos_c[0];
    for (int i = 1; i < 9; ++i) a += lanczos_c[i] / (zm1 + static_cast<double>(i));
    return a;
}

}  // namespace detail

/// sin(pi z) with range reduction of the real part (avoids the accuracy loss
/// of sin(pi*x) for moderate x).
inline Cplx sin_pi(Cplx z) {
    const double n = std::floor(z.real() + 0.5);
    const double xr = z.real() - n;
    Cplx s = std::sin(Cplx(std::numbers::pi * xr, std::numbers::pi * z.imag()));
    if (std::fmod(std::abs(n), 2.0) == 1.0) s = -s;
    return s;
}

inline bool is_gamma_pole(Cplx z, double tol = 1e-12) {
    if (z.real() > 0.5 || std::abs(z.imag()) > tol) return false;
    const double k = std::round(z.real());
    return k <= 0.0 && std::abs(z.real() - k) <= tol;
}

/// Complex Gamma function (Lanczos; reflection for Re z < 1/2).
inline Cplx gamma(Cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("gamma: non-finite argument");
    if (is_gamma_pole(z))
        throw std::domain_error("gamma: argument at or too close to a pole (non-positive integer)");
    if (z.real() < 0.5)
        return std::numbers::pi / (sin_pi(z) * gamma(1.0 - z));
    const Cplx zm1 = z - 1.0;
    const Cplx t = zm1 + detail::lanczos_g + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, zm1 + 0.5) * std::exp(-t) *
           detail::lanczos_sum(zm1);
}

/// log Gamma for Re z >= 0.5 (no reflection; used where Gamma itself would
/// overflow, e.g. factorial-scale Mittag-Leffler denominators).
inline Cplx log_gamma(Cplx z) {
    if (z.real() < 0.5)
        throw std::domain_error("log_gamma: requires Re z >= 1/2");
    const Cplx zm1 = z - 1.0;
    const Cplx t = zm1 + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (zm1 + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(zm1));
}

/// Two-parameter Mittag-Leffler function: partial sum of sum_n z^n / Gamma(alpha n + beta).
/// Stops once the term magnitude drops below abs_tol; if the budget of
/// `terms` is exhausted while the last term is still above abs_tol, the sum
/// has not converged and a convergence_error is thrown.
///
/// Accuracy is established by tests for |alpha|, |beta| <= 5 (Re > 0) and
/// |z| <= 3; larger parameter boxes are accepted but uncharacterized.
inline Cplx mittag_leffler(Cplx alpha, Cplx beta, Cplx z, int terms = 200,
                           double abs_tol = 1e-14) {
    if (terms < 1) throw std::invalid_argument("mittag_leffler: terms must be >= 1");
    if (!(alpha.real() > 0.0) || !(beta.real() > 0.0))
        throw std::domain_error("mittag_leffler: requires Re(alpha) > 0 and Re(beta) > 0");

    Cplx sum = 0.0;
    Cplx zpow = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int n = 0; n < terms; ++n) {
        const Cplx arg = alpha * static_cast<double>(n) + beta;
        Cplx term;
        if (arg.real() > 140.0) {
            // Gamma would overflow; go through logs. z^n = 0 stays 0.
            term = (zpow == Cplx(0.0))
                       ? Cplx(0.0)
                       : std::exp(static_cast<double>(n) * std::log(z) - log_gamma(arg));
        } else {
            term = zpow / gamma(arg);
        }
        sum += term;
        last = std::abs(term);
        if (n >= 1 && last < abs_tol) return sum;
        zpow *= z;
    }
    if (last >= abs_tol)
        throw convergence_error("mittag_leffler: series did not converge within the term budget");
    return sum;
}

// ---------------------------------------------------------------------------
// One-dimensional quadrature on [0, 1].
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    enum class Scheme { gauss_legendre, adaptive_simpson };

    int node_count = 32;                     // >= 2 (Gauss-Legendre point count)
    Scheme scheme = Scheme::adaptive_simpson;
    double abs_tol = 1e-12;                  // >= 10 * machine epsilon
};

inline void validate(const QuadratureSpec& spec) {
    if (spec.node_count < 2)
        throw std::invalid_argument("QuadratureSpec: node_count must be >= 2");
    if (!(spec.abs_tol >= 10.0 * std::numeric_limits<double>::epsilon()))
        throw std::invalid_argument("QuadratureSpec: abs_tol below 10*epsilon");
}

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
            const double dx = p0 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = -xi;
        x[n - 1 - i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

inline double simpson_step(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_step(a, m, fa, flm, fm);
    const double right = simpson_step(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0)
        throw convergence_error("integrate: adaptive refinement hit maximum depth before reaching abs_tol");
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Integral of f over [0, 1]. Endpoint singularities of type t^(c-1) must be
/// removed by a caller-side substitution (t = u^(1/c)); the core schemes
/// assume a finite integrand.
template <class F>
double integrate(F&& f, const QuadratureSpec& spec) {
    validate(spec);
    if (spec.scheme == QuadratureSpec::Scheme::gauss_legendre) {
        std::vector<double> x, w;
        detail::gauss_legendre_rule(spec.node_count, x, w);
        double s = 0.0;
        for (int i = 0; i < spec.node_count; ++i) s += 0.5 * w[i] * f(0.5 * (x[i] + 1.0));
        return s;
    }
    constexpr int max_depth = 48;
    const double fa = f(0.0), fb = f(1.0), fm = f(0.5);
    const double whole = detail::simpson_step(0.0, 1.0, fa, fm, fb);
    return detail::adaptive_simpson_rec(f, 0.0, 1.0, fa, fm, fb, whole, spec.abs_tol, max_depth);
}

}  // namespace mlbaz
