#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlbaz/ml_operator.hpp"
#include "mlbaz/series.hpp"

namespace mlbaz {

/// Parameters of the boundary-rotation class functional:
///   k     total-variation budget of the boundary integral (k >= 2),
///   rho   real-part level in [0, 1),
///   vartheta  power applied to the operator quotient (> 0),
///   gamma weight of the derivative term (Re > 0; the theorem verifiers
///         additionally require gamma real).
struct ClassParams {
    double k = 2.0;
    double rho = 0.0;
    double vartheta = 1.0;
    Cplx gamma = 1.0;
};

inline void validate(const ClassParams& cp) {
    if (!(cp.k >= 2.0)) throw std::invalid_argument("ClassParams: k must be >= 2");
    if (!(cp.rho >= 0.0 && cp.rho < 1.0))
        throw std::invalid_argument("ClassParams: rho must lie in [0, 1)");
    if (!(cp.vartheta > 0.0)) throw std::invalid_argument("ClassParams: vartheta must be > 0");
    if (!(cp.gamma.real() > 0.0) && cp.gamma != Cplx(0.0))
        throw std::invalid_argument("ClassParams: gamma must have Re > 0 (or be 0)");
}

inline double real_gamma(const ClassParams& cp, const char* who) {
    if (cp.gamma.imag() != 0.0 || !(cp.gamma.real() > 0.0))
        throw std::domain_error(std::string(who) + ": requires real gamma > 0");
    return cp.gamma.real();
}

/// Discrete signed measure on the circle, atoms (theta_j, w_j).
/// Normalization: sum w_j = 2 (so the generated function has value 1 at 0)
/// and sum |w_j| <= k. Negative weights require k > 2.
struct HerglotzAtom {
    double theta = 0.0;
    double weight = 0.0;
};

struct HerglotzMeasure {
    std::vector<HerglotzAtom> atoms;

    double total() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.weight;
        return s;
    }
    double variation() const {
        double s = 0.0;
        for (const auto& a : atoms) s += std::abs(a.weight);
        return s;
    }
};

inline void validate(const HerglotzMeasure& mu, double k, double tol = 1e-9) {
    if (mu.atoms.empty()) throw std::invalid_argument("HerglotzMeasure: needs at least one atom");
    if (std::abs(mu.total() - 2.0) > tol)
        throw std::invalid_argument("HerglotzMeasure: weights must sum to 2");
    if (mu.variation() > k + tol)
        throw std::invalid_argument("HerglotzMeasure: total variation exceeds k");
    if (k <= 2.0 + tol) {
        for (const auto& a : mu.atoms)
            if (a.weight < -tol)
                throw std::invalid_argument("HerglotzMeasure: negative weights require k > 2");
    }
}

/// Sampling policy for disk-membership tests.
struct DiskProbe {
    std::vector<double> radii{0.5, 0.9, 0.99};
    int angles = 1024;
    double margin_tol = 1e-6;
};

inline void validate(const DiskProbe& probe) {
    if (probe.radii.empty()) throw std::invalid_argument("DiskProbe: needs at least one radius");
    double prev = 0.0;
    for (double r : probe.radii) {
        if (!(r > prev && r < 1.0))
            throw std::invalid_argument("DiskProbe: radii must be strictly increasing in (0, 1)");
        prev = r;
    }
    if (probe.angles < 64) throw std::invalid_argument("DiskProbe: angles must be >= 64");
    if (!(probe.margin_tol > 0.0)) throw std::invalid_argument("DiskProbe: margin_tol must be > 0");
}

enum class Verdict { member, boundary, non_member };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::member: return "member";
        case Verdict::boundary: return "boundary";
        default: return "non-member";
    }
}

struct PointwiseResult {
    Verdict verdict = Verdict::boundary;
    double margin = 0.0;  // min over the grid of Re p - rho (raw, no allowance)
};

struct IntegralResult {
    Verdict verdict = Verdict::boundary;
    double max_integral = 0.0;  // max over radii of the boundary integral
    double margin = 0.0;        // k*pi*margin_tol - worst allowance-adjusted excess
};

/// Series with p(0) = 1 exactly and p_n = (1-rho) sum_j w_j e^{-i n theta_j}
/// (expansion of the Moebius kernel against the measure).
inline NormalizedSeries herglotz_to_series(const HerglotzMeasure& mu, double rho,
                                           std::size_t order, double k_bound = 0.0) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("herglotz_to_series: rho must lie in [0, 1)");
    validate(mu, k_bound > 0.0 ? k_bound : mu.variation());
    NormalizedSeries p(order);
    p[0] = 1.0;
    for (std::size_t n = 1; n <= order; ++n) {
        Cplx s = 0.0;
        for (const auto& a : mu.atoms)
            s += a.weight * std::polar(1.0, -static_cast<double>(n) * a.theta);
        p[n] = (1.0 - rho) * s;
    }
    return p;
}

namespace detail {

/// Heuristic tail bound of the truncated series at radius r: the sum of
/// retained coefficient magnitudes scaled by r^order. Used to widen
/// tolerances where the polynomial cannot be trusted to represent the
/// underlying function.
inline double truncation_tail(double coeff_mass, std::size_t order, double r) {
    return coeff_mass * std::pow(r, static_cast<double>(order));
}

}  // namespace detail

/// Pointwise test: is Re p > rho on the probe grid?
/// margin is the raw grid minimum of Re p - rho; the verdict compares it
/// against margin_tol plus (by default) the truncation tail at the largest
/// probe radius.
inline PointwiseResult in_p_rho(const NormalizedSeries& p, double rho, const DiskProbe& probe,
                                bool truncation_allowance = true) {
    validate(probe);
    if (!is_normalized(p)) throw std::invalid_argument("in_p_rho: p(0) must be 1");
    double margin = std::numeric_limits<double>::infinity();
    for (double r : probe.radii) {
        for (int j = 0; j < probe.angles; ++j) {
            const double th = 2.0 * std::numbers::pi * j / probe.angles;
            const Cplx v = evaluate(p, std::polar(r, th));
            margin = std::min(margin, v.real() - rho);
        }
    }
    double tol = probe.margin_tol;
    if (truncation_allowance)
        tol += detail::truncation_tail(coefficient_mass(p), p.order(), probe.radii.back());
    PointwiseResult res;
    res.margin = margin;
    res.verdict = margin > tol ? Verdict::member
                               : (margin < -tol ? Verdict::non_member : Verdict::boundary);
    return res;
}

namespace detail {

/// Trapezoid value of the arc integral of |Re p - rho| / (1 - rho) at radius r.
/// The grid is widened past the series order so no retained harmonic aliases
/// onto the mean.
inline double boundary_rotation_integral(const NormalizedSeries& p, double rho, double r,
                                         int angles) {
    int m = angles;
    while (static_cast<std::size_t>(m) <= p.order()) m *= 2;
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
        const double th = 2.0 * std::numbers::pi * j / m;
        s += std::abs(evaluate(p, std::polar(r, th)).real() - rho);
    }
    return s * (2.0 * std::numbers::pi / m) / (1.0 - rho);
}

}  // namespace detail

/// Arc-integral test: max over probe radii of the trapezoid approximation of
/// the boundary integral of |Re p - rho| / (1 - rho), compared against k*pi.
/// With the (default) truncation allowance, each radius is charged only the
/// part of its integral that the retained coefficients can certify.
inline IntegralResult in_pk_rho(const NormalizedSeries& p, double k, double rho,
                                const DiskProbe& probe, bool truncation_allowance = true) {
    validate(probe);
    if (!is_normalized(p)) throw std::invalid_argument("in_pk_rho: p(0) must be 1");
    if (!(k >= 2.0)) throw std::invalid_argument("in_pk_rho: k must be >= 2");
    if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("in_pk_rho: rho must lie in [0, 1)");

    const double kpi = k * std::numbers::pi;
    const double mass = coefficient_mass(p);
    double max_integral = 0.0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    for (double r : probe.radii) {
        const double integral = detail::boundary_rotation_integral(p, rho, r, probe.angles);
        max_integral = std::max(max_integral, integral);
        double allowance = 0.0;
        if (truncation_allowance)
            allowance = 2.0 * std::numbers::pi * detail::truncation_tail(mass, p.order(), r) /
                        (1.0 - rho);
        worst_excess = std::max(worst_excess, integral - kpi - allowance);
    }
    IntegralResult res;
    res.max_integral = max_integral;
    res.margin = kpi * probe.margin_tol - worst_excess;
    res.verdict = worst_excess <= kpi * probe.margin_tol ? Verdict::member : Verdict::non_member;
    return res;
}

/// Split p generated by mu into p = (k/4 + 1/2) p1 - (k/4 - 1/2) p2 with
/// p1, p2 level-rho Herglotz transforms of probability-type measures.
/// When the variation of mu is below k, p1 absorbs the slack as a convex
/// combination with the negative part, which keeps the identity exact.
inline std::pair<NormalizedSeries, NormalizedSeries> decompose_pk(const HerglotzMeasure& mu,
                                                                  double k, double rho,
                                                                  std::size_t order) {
    validate(mu, k);
    HerglotzMeasure pos, neg;
    double s_pos = 0.0, s_neg = 0.0;
    for (const auto& a : mu.atoms) {
        if (a.weight >= 0.0) {
            pos.atoms.push_back(a);
            s_pos += a.weight;
        } else {
            neg.atoms.push_back({a.theta, -a.weight});
            s_neg += -a.weight;
        }
    }
    const double c1 = k / 4.0 + 0.5;
    const double c2 = k / 4.0 - 0.5;
    if (s_neg > 1e-12 && c2 <= 1e-12)
        throw std::domain_error("decompose_pk: k = 2 admits no negative measure part");

    // Rescale each part to mass 2 and build the kernels.
    NormalizedSeries q2(order);
    q2[0] = 1.0;  // arbitrary member when there is no negative part
    if (s_neg > 0.0) {
        for (auto& a : neg.atoms) a.weight *= 2.0 / s_neg;
        q2 = herglotz_to_series(neg, rho, order);
    }
    for (auto& a : pos.atoms) a.weight *= 2.0 / s_pos;
    const NormalizedSeries q1 = herglotz_to_series(pos, rho, order);

    // p = (s_pos/2) q1 - (s_neg/2) q2; fold the variation slack into p1 so the
    // printed coefficients are exactly c1 and c2:
    //   p1 = [ (s_pos/2) q1 + (c1 - s_pos/2) q2 ] / c1,   p2 = q2.
    NormalizedSeries p1(order);
    const double w1 = s_pos / 2.0;
    for (std::size_t n = 0; n <= order; ++n) p1[n] = (w1 * q1[n] + (c1 - w1) * q2[n]) / c1;
    p1[0] = 1.0;
    return {p1, q2};
}

/// The defining functional of the operator class:
///   G = (1-gamma) (E^m f / z)^vartheta
///       + gamma (E^{m+1} f / z) (E^m f / z)^(vartheta - 1).
/// f must be in class A; the result is normalized (G(0) = 1) and has order
/// one below f (the quotient by z consumes a coefficient).
inline NormalizedSeries class_functional(const TruncatedSeries& f, const ClassParams& cp,
                                         const OperatorParams& op) {
    validate(cp);
    require_class_a(f, "class_functional");
    OperatorParams up = op;
    up.m = op.m + 1;
    const NormalizedSeries u = quotient_by_z(apply_operator(f, op));
    const NormalizedSeries v = quotient_by_z(apply_operator(f, up));
    const NormalizedSeries h = power(u, cp.vartheta);
    if (cp.gamma == Cplx(0.0)) return h;
    const NormalizedSeries tail = multiply(v, power(u, cp.vartheta - 1.0));
    return (Cplx(1.0) - cp.gamma) * h + cp.gamma * tail;
}

/// Exact inverse of the functional for real gamma > 0: writing
/// h = (E^m f / z)^vartheta, the functional collapses to
/// h + (lambda gamma / vartheta) z h', which inverts coefficientwise as
///   h_n = p_n / (1 + n lambda gamma / vartheta).
/// The returned f is in class A with order target.order() + 1 and satisfies
/// class_functional(f) = target up to roundoff.
inline TruncatedSeries solve_functional_inverse(const NormalizedSeries& target,
                                                const ClassParams& cp, const OperatorParams& op) {
    validate(cp);
    validate(op);
    if (!is_normalized(target))
        throw std::invalid_argument("solve_functional_inverse: target(0) must be 1");
    const double g = real_gamma(cp, "solve_functional_inverse");
    const double scale = op.lambda * g / cp.vartheta;

    const std::size_t N = target.order();
    NormalizedSeries h(N);
    for (std::size_t n = 0; n <= N; ++n) {
        const double denom = 1.0 + static_cast<double>(n) * scale;
        if (std::abs(denom) < 1e-12)
            throw std::domain_error("solve_functional_inverse: vanishing denominator");
        h[n] = target[n] / denom;
    }
    const NormalizedSeries u = power(h, 1.0 / cp.vartheta);
    const TruncatedSeries em_f = multiply_by_z(u);
    TruncatedSeries f(em_f.order());
    for (std::size_t n = 1; n <= em_f.order(); ++n) {
        const Cplx mult = ml_multiplier(n, op);
        if (std::abs(mult) < 1e-300)
            throw std::domain_error("solve_functional_inverse: vanishing operator multiplier");
        f[n] = em_f[n] / mult;
    }
    return f;
}

/// Parameters of the Bazilevic integral construction. Only tau = 0 admits a
/// power-series representation (z^{i tau} is not analytic at 0), so nonzero
/// tau is rejected.
struct BazilevicParams {
    double vartheta = 1.0;       // > 0
    double tau = 0.0;            // must be 0
    TruncatedSeries g;           // starlike reference, class A
    NormalizedSeries p;          // Caratheodory factor, p(0) = 1
};

/// f = [ vartheta * integral_0^z p(t) (g(t)/t)^vartheta t^(vartheta-1) dt ]^(1/vartheta)
/// evaluated termwise: with s = p (g/z)^vartheta (s0 = 1) the integral is
/// (z^vartheta / vartheta) S(z), S_n = vartheta s_n / (vartheta + n), and
/// f = z S^(1/vartheta). The result is in class A with the requested order.
inline TruncatedSeries bazilevic_construct(const BazilevicParams& bp, std::size_t order) {
    if (bp.tau != 0.0)
        throw std::invalid_argument("bazilevic_construct: tau must be 0 for the series model");
    if (!(bp.vartheta > 0.0))
        throw std::invalid_argument("bazilevic_construct: vartheta must be > 0");
    require_class_a(bp.g, "bazilevic_construct (g)");
    if (!is_normalized(bp.p))
        throw std::invalid_argument("bazilevic_construct: p(0) must be 1");
    if (order < 1) throw std::invalid_argument("bazilevic_construct: order must be >= 1");

    const std::size_t M = order - 1;
    const NormalizedSeries gq = resized(quotient_by_z(bp.g), M);
    const NormalizedSeries s = multiply(resized(bp.p, M), power(gq, bp.vartheta));
    NormalizedSeries S(M);
    for (std::size_t n = 0; n <= M; ++n)
        S[n] = bp.vartheta * s[n] / (bp.vartheta + static_cast<double>(n));
    return multiply_by_z(power(S, 1.0 / bp.vartheta));
}

/// Classical one-expression subclasses tested through the pointwise
/// real-part condition.
enum class NamedSubclass {
    b2,              // Re( zf'/f * (f/z)^vartheta ) > rho
    starlike,        // Re( zf'/f ) > rho
    bounded_turning, // Re( f' ) > rho
    quotient,        // Re( f/z ) > rho
};

inline PointwiseResult in_named_subclass(const TruncatedSeries& f, NamedSubclass which,
                                         double vartheta, double rho, const DiskProbe& probe) {
    require_class_a(f, "in_named_subclass");
    const NormalizedSeries u = quotient_by_z(f);
    // z f'(z) / z = sum (n+1) a_{n+1} z^n, the normalized derivative quotient.
    NormalizedSeries d(u.order());
    for (std::size_t n = 0; n <= u.order(); ++n)
        d[n] = static_cast<double>(n + 1) * f[n + 1];

    NormalizedSeries expr(u.order());
    switch (which) {
        case NamedSubclass::b2:
            if (!(vartheta > 0.0))
                throw std::invalid_argument("in_named_subclass: b2 requires vartheta > 0");
            expr = multiply(d, power(u, vartheta - 1.0));
            break;
        case NamedSubclass::starlike: expr = divide(d, u); break;
        case NamedSubclass::bounded_turning: expr = d; break;
        case NamedSubclass::quotient: expr = u; break;
    }
    return in_p_rho(expr, rho, probe);
}

}  // namespace mlbaz
