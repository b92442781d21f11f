#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mlbaz {

using Cplx = std::complex<double>;

/// Default truncation order for series built by the library. Callers that
/// probe behaviour near |z| = 1 should raise this (256 is usually enough).
inline constexpr std::size_t default_order = 64;

/// Tolerance used when checking structural preconditions on coefficients
/// (unit constant term, class-A normalization, ...).
inline constexpr double structural_tol = 1e-12;

/// Taylor polynomial about 0 with complex coefficients: index n holds the
/// coefficient of z^n, n = 0..order(). All arithmetic is truncated at the
/// common order.
///
/// Conventions used throughout the library:
///   - "normalized" series have coefficient 1 at z^0 (quotients f/z,
///     Caratheodory-type functions);
///   - "class A" series have coefficients 0, 1 at z^0, z^1 (normalized
///     analytic functions on the unit disk).
class TruncatedSeries {
public:
    TruncatedSeries() : coeffs_(1, Cplx(0.0)) {}
    explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, Cplx(0.0)) {}
    explicit TruncatedSeries(std::vector<Cplx> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.assign(1, Cplx(0.0));
    }
    TruncatedSeries(std::initializer_list<Cplx> coeffs) : coeffs_(coeffs) {
        if (coeffs_.empty()) coeffs_.assign(1, Cplx(0.0));
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    std::size_t size() const { return coeffs_.size(); }

    Cplx& operator[](std::size_t n) { return coeffs_[n]; }
    const Cplx& operator[](std::size_t n) const { return coeffs_[n]; }

    std::span<const Cplx> coeffs() const { return coeffs_; }
    std::vector<Cplx>& raw() { return coeffs_; }

    bool operator==(const TruncatedSeries&) const = default;

private:
    std::vector<Cplx> coeffs_;
};

/// Same storage as TruncatedSeries; the alias documents the unit-constant-term
/// convention in signatures.
using NormalizedSeries = TruncatedSeries;

inline bool is_normalized(const TruncatedSeries& a, double tol = structural_tol) {
    return std::abs(a[0] - Cplx(1.0)) <= tol;
}

inline bool is_class_a(const TruncatedSeries& a, double tol = structural_tol) {
    return a.order() >= 1 && std::abs(a[0]) <= tol && std::abs(a[1] - Cplx(1.0)) <= tol;
}

inline void require_class_a(const TruncatedSeries& a, const char* who) {
    if (!is_class_a(a))
        throw std::invalid_argument(std::string(who) + ": series is not in class A (need a0 = 0, a1 = 1)");
}

/// Truncate or zero-pad to the requested order.
inline TruncatedSeries resized(const TruncatedSeries& a, std::size_t order) {
    TruncatedSeries r(order);
    const std::size_t n = std::min(order, a.order());
    for (std::size_t i = 0; i <= n; ++i) r[i] = a[i];
    return r;
}

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) throw std::invalid_argument("series addition: order mismatch");
    TruncatedSeries r(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n) r[n] = a[n] + b[n];
    return r;
}

inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) throw std::invalid_argument("series subtraction: order mismatch");
    TruncatedSeries r(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n) r[n] = a[n] - b[n];
    return r;
}

inline TruncatedSeries operator*(Cplx s, const TruncatedSeries& a) {
    TruncatedSeries r(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n) r[n] = s * a[n];
    return r;
}

/// Cauchy product truncated at the common order.
inline TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) throw std::invalid_argument("multiply: order mismatch");
    const std::size_t N = a.order();
    TruncatedSeries r(N);
    for (std::size_t n = 0; n <= N; ++n) {
        Cplx s = 0.0;
        for (std::size_t j = 0; j <= n; ++j) s += a[j] * b[n - j];
        r[n] = s;
    }
    return r;
}

/// Forward-substitution quotient c with c*b = a to the common order.
/// b may have any nonzero constant term (the division rescales).
inline TruncatedSeries divide(const TruncatedSeries& a, const NormalizedSeries& b) {
    if (a.order() != b.order()) throw std::invalid_argument("divide: order mismatch");
    if (std::abs(b[0]) < 1e-150)
        throw std::invalid_argument("divide: zero leading coefficient in divisor");
    const std::size_t N = a.order();
    TruncatedSeries c(N);
    for (std::size_t n = 0; n <= N; ++n) {
        Cplx s = a[n];
        for (std::size_t j = 0; j < n; ++j) s -= c[j] * b[n - j];
        c[n] = s / b[0];
    }
    return c;
}

/// Logarithm of a unit-constant-term series: L with L' = a'/a, L[0] = log a0.
inline TruncatedSeries log_series(const NormalizedSeries& a) {
    if (!is_normalized(a))
        throw std::invalid_argument("log_series: constant term must be 1");
    const std::size_t N = a.order();
    TruncatedSeries L(N);
    L[0] = std::log(a[0]);
    // n a_n = sum_{j=1..n} j L_j a_{n-j}
    for (std::size_t n = 1; n <= N; ++n) {
        Cplx s = static_cast<double>(n) * a[n];
        for (std::size_t j = 1; j < n; ++j) s -= static_cast<double>(j) * L[j] * a[n - j];
        L[n] = s / (static_cast<double>(n) * a[0]);
    }
    return L;
}

/// Exponential of a zero-constant-term series: E with E' = a' E, E[0] = exp a0.
inline NormalizedSeries exp_series(const TruncatedSeries& a) {
    if (std::abs(a[0]) > structural_tol)
        throw std::invalid_argument("exp_series: constant term must be 0");
    const std::size_t N = a.order();
    NormalizedSeries E(N);
    E[0] = std::exp(a[0]);
    for (std::size_t n = 1; n <= N; ++n) {
        Cplx s = 0.0;
        for (std::size_t j = 1; j <= n; ++j) s += static_cast<double>(j) * a[j] * E[n - j];
        E[n] = s / static_cast<double>(n);
    }
    return E;
}

/// Principal-branch real power of a series with nonzero constant term,
/// through the first-order identity (a^t)' a = t a' a^t (one convolution per
/// coefficient; equivalent to exp_series(t * log_series(a)) with a smaller
/// rounding footprint). A non-unit constant term is factored out through the
/// principal value of a0^t.
inline NormalizedSeries power(const NormalizedSeries& a, double t) {
    if (std::abs(a[0]) < 1e-150)
        throw std::invalid_argument("power: zero constant term");
    const std::size_t N = a.order();
    const bool unit = is_normalized(a);
    const Cplx scale = unit ? Cplx(1.0) : std::pow(a[0], Cplx(t));
    NormalizedSeries c(N);
    c[0] = 1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        Cplx s = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            const double w = t * static_cast<double>(j) - static_cast<double>(n - j);
            s += w * a[j] * c[n - j];
        }
        c[n] = s / (static_cast<double>(n) * a[0]);
    }
    if (!unit)
        for (std::size_t n = 0; n <= N; ++n) c[n] *= scale;
    return c;
}

/// z * d/dz: coefficient n maps to n * a_n (order preserved).
inline TruncatedSeries derivative_z(const TruncatedSeries& a) {
    TruncatedSeries r(a.order());
    for (std::size_t n = 1; n <= a.order(); ++n) r[n] = static_cast<double>(n) * a[n];
    return r;
}

/// Horner evaluation of the partial sum at z.
inline Cplx evaluate(const TruncatedSeries& a, Cplx z) {
    Cplx v = 0.0;
    for (std::size_t n = a.size(); n-- > 0;) v = v * z + a[n];
    return v;
}

/// f/z for a series vanishing at 0; the order drops by one.
inline TruncatedSeries quotient_by_z(const TruncatedSeries& f) {
    if (f.order() < 1 || std::abs(f[0]) > structural_tol)
        throw std::invalid_argument("quotient_by_z: series must vanish at 0");
    TruncatedSeries r(f.order() - 1);
    for (std::size_t n = 1; n <= f.order(); ++n) r[n - 1] = f[n];
    return r;
}

/// z * u; the order grows by one.
inline TruncatedSeries multiply_by_z(const TruncatedSeries& u) {
    TruncatedSeries r(u.order() + 1);
    for (std::size_t n = 0; n <= u.order(); ++n) r[n + 1] = u[n];
    return r;
}

/// Sum of coefficient magnitudes; with r^order this bounds the heuristic
/// truncation tail used by disk-membership tests.
inline double coefficient_mass(const TruncatedSeries& a) {
    double c = 0.0;
    for (std::size_t n = 0; n <= a.order(); ++n) c += std::abs(a[n]);
    return c;
}

}  // namespace mlbaz
