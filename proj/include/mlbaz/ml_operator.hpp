#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mlbaz/series.hpp"
#include "mlbaz/special_functions.hpp"

namespace mlbaz {

/// Parameters of the diagonal operator acting on class-A series as
///   a_n -> Gamma(beta) (1 + (n-1) lambda)^m / Gamma(alpha (n-1) + beta) * a_n.
///
/// alpha = 0 is admitted as the degenerate case where the Gamma ratio is
/// identically 1 (the classical iterated-derivative operators); otherwise
/// Re(alpha) > 0 is required so the Gamma arguments stay off the pole set.
struct OperatorParams {
    int m = 0;            // iteration count, >= 0
    double lambda = 1.0;  // >= 0 (real by definition)
    Cplx alpha = 0.0;     // Re > 0, or exactly 0
    Cplx beta = 1.0;      // Re > 0
};

inline void validate(const OperatorParams& p) {
    if (p.m < 0) throw std::invalid_argument("OperatorParams: m must be >= 0");
    if (!(p.lambda >= 0.0)) throw std::invalid_argument("OperatorParams: lambda must be >= 0");
    const bool alpha_zero = p.alpha == Cplx(0.0);
    if (!alpha_zero && !(p.alpha.real() > 0.0))
        throw std::invalid_argument("OperatorParams: alpha must have Re > 0 (or be exactly 0)");
    if (!(p.beta.real() > 0.0))
        throw std::invalid_argument("OperatorParams: beta must have Re > 0");
}

/// Bernardi averaging operator parameter: a_n -> a_n (sigma+1)/(sigma+n).
struct BernardiParams {
    double sigma = 1.0;  // > -1
};

inline void validate(const BernardiParams& b) {
    if (!(b.sigma > -1.0)) throw std::invalid_argument("BernardiParams: sigma must be > -1");
}

namespace detail {

// (1 + (n-1) lambda)^m by repeated multiplication; keeps the recurrence
// identity (1-lambda) + lambda n = 1 + (n-1) lambda exact in floating point
// across consecutive m.
inline double growth_factor_pow(std::size_t n, double lambda, int m) {
    const double base = 1.0 + (static_cast<double>(n) - 1.0) * lambda;
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= base;
    return r;
}

}  // namespace detail

namespace detail {

inline Cplx ml_multiplier_unchecked(std::size_t n, const OperatorParams& p) {
    const double pw = growth_factor_pow(n, p.lambda, p.m);
    if (p.alpha == Cplx(0.0)) return pw;  // Gamma(beta)/Gamma(beta) = 1 exactly
    const Cplx denom_arg = p.alpha * (static_cast<double>(n) - 1.0) + p.beta;
    const Cplx ratio = (denom_arg.real() > 140.0)
                           ? gamma(p.beta) * std::exp(-log_gamma(denom_arg))
                           : gamma(p.beta) / gamma(denom_arg);
    if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag()))
        throw std::domain_error("ml_multiplier: Gamma ratio is not finite for these parameters");
    return pw * ratio;
}

}  // namespace detail

/// Coefficient multiplier of the operator at index n >= 1; equals 1 at n = 1
/// for every parameter choice.
inline Cplx ml_multiplier(std::size_t n, const OperatorParams& p) {
    validate(p);
    if (n < 1) throw std::invalid_argument("ml_multiplier: n must be >= 1");
    return detail::ml_multiplier_unchecked(n, p);
}

/// Multipliers for n = 1..n_max in one pass (index 0 of the result is n = 1).
/// The table is immutable and safe to share across threads.
inline std::vector<Cplx> ml_multiplier_table(const OperatorParams& p, std::size_t n_max) {
    validate(p);
    std::vector<Cplx> t;
    t.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) t.push_back(detail::ml_multiplier_unchecked(n, p));
    return t;
}

/// Apply the operator to a class-A series. The image stays in class A.
inline TruncatedSeries apply_operator(const TruncatedSeries& f, const OperatorParams& p) {
    require_class_a(f, "apply_operator");
    const std::vector<Cplx> mult = ml_multiplier_table(p, f.order());
    TruncatedSeries r(f.order());
    for (std::size_t n = 1; n <= f.order(); ++n) r[n] = mult[n - 1] * f[n];
    return r;
}

/// Max coefficient residual of the step-up recurrence
///   E^{m+1} f = (1-lambda) E^m f + lambda z (E^m f)'.
/// The identity is exact, so the residual is pure floating-point noise.
inline double check_recurrence(const TruncatedSeries& f, const OperatorParams& p) {
    require_class_a(f, "check_recurrence");
    OperatorParams up = p;
    up.m = p.m + 1;
    const TruncatedSeries em = apply_operator(f, p);
    const TruncatedSeries em1 = apply_operator(f, up);
    const TruncatedSeries rhs = (1.0 - p.lambda) * em + p.lambda * derivative_z(em);
    double worst = 0.0;
    for (std::size_t n = 0; n <= f.order(); ++n)
        worst = std::max(worst, std::abs(em1[n] - rhs[n]));
    return worst;
}

/// Bernardi operator in closed coefficient form.
inline TruncatedSeries bernardi(const TruncatedSeries& f, const BernardiParams& b) {
    validate(b);
    require_class_a(f, "bernardi");
    TruncatedSeries r(f.order());
    for (std::size_t n = 1; n <= f.order(); ++n)
        r[n] = f[n] * (b.sigma + 1.0) / (b.sigma + static_cast<double>(n));
    return r;
}

/// Max coefficient residual of
///   z (E^m L_sigma f)' = (sigma+1) E^m f - sigma E^m L_sigma f.
inline double check_bernardi_identity(const TruncatedSeries& f, const OperatorParams& p,
                                      const BernardiParams& b) {
    require_class_a(f, "check_bernardi_identity");
    const TruncatedSeries eml = apply_operator(bernardi(f, b), p);
    const TruncatedSeries em = apply_operator(f, p);
    const TruncatedSeries lhs = derivative_z(eml);
    const TruncatedSeries rhs = (b.sigma + 1.0) * em - Cplx(b.sigma) * eml;
    double worst = 0.0;
    for (std::size_t n = 0; n <= f.order(); ++n)
        worst = std::max(worst, std::abs(lhs[n] - rhs[n]));
    return worst;
}

}  // namespace mlbaz
