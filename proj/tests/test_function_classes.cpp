#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "mlbaz/function_classes.hpp"
#include "mlbaz/theorems.hpp"

using namespace mlbaz;

namespace {

double max_coeff_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
    REQUIRE(a.order() == b.order());
    double worst = 0.0;
    for (std::size_t n = 0; n <= a.order(); ++n) worst = std::max(worst, std::abs(a[n] - b[n]));
    return worst;
}

double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * ((eng() >> 11) * 0x1.0p-53);
}

HerglotzMeasure random_measure(std::mt19937_64& eng, double k) {
    const int count = 1 + static_cast<int>(eng() % 6);
    HerglotzMeasure mu;
    mu.atoms.resize(count);
    while (true) {
        const bool signed_draw = k > 2.0;
        for (auto& a : mu.atoms) {
            a.theta = uniform(eng, 0.0, 2.0 * std::numbers::pi);
            a.weight = signed_draw ? uniform(eng, -1.0, 1.0) : uniform(eng, 0.05, 1.0);
        }
        if (signed_draw) {
            const double shift = (2.0 - mu.total()) / count;
            for (auto& a : mu.atoms) a.weight += shift;
        } else {
            const double s = 2.0 / mu.total();
            for (auto& a : mu.atoms) a.weight *= s;
        }
        if (std::abs(mu.total() - 2.0) < 1e-9 && mu.variation() <= k) return mu;
    }
}

NormalizedSeries moebius_kernel(std::size_t order) {
    return herglotz_to_series({{{0.0, 2.0}}}, 0.0, order);
}

TruncatedSeries koebe(std::size_t order) {
    TruncatedSeries f(order);
    for (std::size_t n = 1; n <= order; ++n) f[n] = static_cast<double>(n);
    return f;
}

const OperatorParams identity_op{0, 1.0, 0.0, 1.0};

}  // namespace

TEST_CASE("herglotz_to_series: kernel coefficients") {
    const NormalizedSeries p = moebius_kernel(16);
    CHECK(p[0] == Cplx(1.0));
    for (std::size_t n = 1; n <= 16; ++n) CHECK(std::abs(p[n] - 2.0) < 1e-14);

    const NormalizedSeries half = herglotz_to_series({{{0.0, 2.0}}}, 0.5, 16);
    for (std::size_t n = 1; n <= 16; ++n) CHECK(std::abs(half[n] - 1.0) < 1e-14);

    const HerglotzMeasure two{{{0.0, 3.0}, {std::numbers::pi, -1.0}}};
    const NormalizedSeries q = herglotz_to_series(two, 0.0, 8, 4.0);
    for (std::size_t n = 1; n <= 8; ++n) {
        const double want = 3.0 + (n % 2 == 1 ? 1.0 : -1.0);
        CHECK(std::abs(q[n] - want) < 1e-13);
    }
}

TEST_CASE("herglotz measure invariants") {
    std::mt19937_64 eng(61);
    for (double k : {2.0, 3.0, 4.0}) {
        for (int rep = 0; rep < 20; ++rep) {
            const HerglotzMeasure mu = random_measure(eng, k);
            const double rho = uniform(eng, 0.0, 0.9);
            const NormalizedSeries p = herglotz_to_series(mu, rho, 48, k);
            CHECK(p[0] == Cplx(1.0));
            const double bound = (1.0 - rho) * mu.variation() + 1e-12;
            for (std::size_t n = 1; n <= 48; ++n) CHECK(std::abs(p[n]) <= bound);
        }
    }
    CHECK_THROWS_AS(herglotz_to_series({{{0.0, 1.0}}}, 0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(herglotz_to_series({{{0.0, 3.0}, {1.0, -1.0}}}, 0.0, 8, 2.0),
                    std::invalid_argument);
}

TEST_CASE("probe and class parameter validation") {
    DiskProbe bad;
    bad.angles = 32;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = {};
    bad.radii = {0.9, 0.5};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = {};
    bad.radii = {0.5, 1.0};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = {};
    bad.margin_tol = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    CHECK_THROWS_AS(validate(ClassParams{1.5, 0.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ClassParams{2.0, 1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ClassParams{2.0, 0.0, -1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ClassParams{2.0, 0.0, 1.0, Cplx(-2.0, 0.0)}), std::invalid_argument);
    CHECK_NOTHROW(validate(ClassParams{2.0, 0.0, 1.0, Cplx(0.5, 1.0)}));  // complex gamma ok
    CHECK_NOTHROW(validate(ClassParams{2.0, 0.0, 1.0, Cplx(0.0, 0.0)}));  // gamma = 0 ok
}

TEST_CASE("in_p_rho: constant, kernel, and a dip below zero") {
    DiskProbe probe;
    NormalizedSeries one(64);
    one[0] = 1.0;
    const PointwiseResult r1 = in_p_rho(one, 0.0, probe);
    CHECK(r1.verdict == Verdict::member);
    CHECK(r1.margin == Catch::Approx(1.0));

    // truncated Moebius kernel: minimum of Re on |z| = r is (1-r)/(1+r)
    DiskProbe p95;
    p95.radii = {0.5, 0.9, 0.95};
    const PointwiseResult r2 = in_p_rho(moebius_kernel(256), 0.0, p95);
    CHECK(r2.verdict == Verdict::member);
    CHECK(r2.margin == Catch::Approx((1.0 - 0.95) / (1.0 + 0.95)).margin(1e-4));

    NormalizedSeries dip(64);
    dip[0] = 1.0;
    dip[1] = 3.0;
    DiskProbe half;
    half.radii = {0.5};
    const PointwiseResult r3 = in_p_rho(dip, 0.0, half);
    CHECK(r3.verdict == Verdict::non_member);
    CHECK(r3.margin == Catch::Approx(-0.5).margin(1e-6));
}

TEST_CASE("in_p_rho: nonnegative measures stay members at rho = 0") {
    std::mt19937_64 eng(67);
    DiskProbe probe;
    probe.radii = {0.3, 0.6, 0.9};
    for (int rep = 0; rep < 25; ++rep) {
        const HerglotzMeasure mu = random_measure(eng, 2.0);
        const NormalizedSeries p = herglotz_to_series(mu, 0.0, 256, 2.0);
        CHECK(in_p_rho(p, 0.0, probe).verdict == Verdict::member);
    }
}

TEST_CASE("in_pk_rho: kernel saturates k = 2 exactly") {
    DiskProbe probe;  // {0.5, 0.9, 0.99}
    const IntegralResult res = in_pk_rho(moebius_kernel(2048), 2.0, 0.0, probe);
    CHECK(res.verdict == Verdict::member);
    CHECK(res.max_integral == Catch::Approx(2.0 * std::numbers::pi).epsilon(1e-9));

    // order 64 at the same probe: the 0.99 ring is truncation-dominated, and
    // the allowance keeps the verdict honest
    CHECK(in_pk_rho(moebius_kernel(64), 2.0, 0.0, probe).verdict == Verdict::member);

    NormalizedSeries one(64);
    one[0] = 1.0;
    for (double k : {2.0, 3.0, 4.0}) {
        const IntegralResult rc = in_pk_rho(one, k, 0.0, probe);
        CHECK(rc.verdict == Verdict::member);
        CHECK(rc.max_integral == Catch::Approx(2.0 * std::numbers::pi));
    }
}

TEST_CASE("in_pk_rho: signed two-atom measure needs k = 4") {
    const HerglotzMeasure two{{{0.0, 3.0}, {std::numbers::pi, -1.0}}};
    const NormalizedSeries p = herglotz_to_series(two, 0.0, 64, 4.0);
    DiskProbe probe;
    CHECK(in_pk_rho(p, 4.0, 0.0, probe).verdict == Verdict::member);
    CHECK(in_pk_rho(p, 2.0, 0.0, probe).verdict == Verdict::non_member);

    // Re p crosses zero inside the disk, so the k = 2 budget is exceeded
    DiskProbe tight;
    tight.radii = {0.9};
    CHECK(in_p_rho(p, 0.0, tight).margin < 0.0);
}

TEST_CASE("boundary-rotation integral is convex in the function") {
    std::mt19937_64 eng(71);
    for (double k : {2.0, 4.0}) {
        for (int rep = 0; rep < 10; ++rep) {
            const NormalizedSeries p = herglotz_to_series(random_measure(eng, k), 0.0, 96, k);
            const NormalizedSeries q = herglotz_to_series(random_measure(eng, k), 0.0, 96, k);
            const double t = uniform(eng, 0.0, 1.0);
            DiskProbe probe;
            probe.radii = {0.6};
            const double ip = in_pk_rho(p, k, 0.0, probe).max_integral;
            const double iq = in_pk_rho(q, k, 0.0, probe).max_integral;
            NormalizedSeries mix(96);
            for (std::size_t n = 0; n <= 96; ++n) mix[n] = t * p[n] + (1.0 - t) * q[n];
            const double imix = in_pk_rho(mix, k, 0.0, probe).max_integral;
            CHECK(imix <= t * ip + (1.0 - t) * iq + 1e-9);
            CHECK(imix <= k * std::numbers::pi + 1e-9);
        }
    }
}

TEST_CASE("decompose_pk: exact reconstruction") {
    // k = 2: the negative budget is zero and p1 is the function itself
    const HerglotzMeasure single{{{1.3, 2.0}}};
    const auto [a1, a2] = decompose_pk(single, 2.0, 0.2, 32);
    CHECK(max_coeff_diff(a1, herglotz_to_series(single, 0.2, 32)) < 1e-14);

    const HerglotzMeasure two{{{0.0, 3.0}, {std::numbers::pi, -1.0}}};
    const auto [p1, p2] = decompose_pk(two, 4.0, 0.0, 32);
    const NormalizedSeries expect1 = herglotz_to_series({{{0.0, 2.0}}}, 0.0, 32);
    const NormalizedSeries expect2 = herglotz_to_series({{{std::numbers::pi, 2.0}}}, 0.0, 32);
    CHECK(max_coeff_diff(p1, expect1) < 1e-13);
    CHECK(max_coeff_diff(p2, expect2) < 1e-13);

    std::mt19937_64 eng(73);
    for (double k : {3.0, 4.0}) {
        for (int rep = 0; rep < 20; ++rep) {
            const HerglotzMeasure mu = random_measure(eng, k);
            const double rho = uniform(eng, 0.0, 0.9);
            const auto [q1, q2] = decompose_pk(mu, k, rho, 48);
            const NormalizedSeries p = herglotz_to_series(mu, rho, 48, k);
            const double c1 = k / 4.0 + 0.5, c2 = k / 4.0 - 0.5;
            double residual = 0.0;
            for (std::size_t n = 0; n <= 48; ++n)
                residual = std::max(residual, std::abs(c1 * q1[n] - c2 * q2[n] - p[n]));
            CHECK(residual <= 1e-12);
        }
    }

    // k = 2 leaves no budget for a negative part (rejected as an invalid
    // measure for that k before the decomposition can run)
    CHECK_THROWS(decompose_pk(two, 2.0, 0.0, 16));
}

TEST_CASE("class_functional: identity function and derivative reduction") {
    ClassParams cp;  // k=2, rho=0, vartheta=1, gamma=1
    TruncatedSeries z(16);
    z[1] = 1.0;
    const NormalizedSeries g = class_functional(z, cp, {2, 0.7, Cplx(1.1, 0.2), 1.3});
    CHECK(std::abs(g[0] - 1.0) < 1e-14);
    for (std::size_t n = 1; n <= g.order(); ++n) CHECK(std::abs(g[n]) < 1e-14);

    // gamma = 1, vartheta = 1, identity operator: the functional is f'
    const TruncatedSeries f = koebe(40);
    const NormalizedSeries func = class_functional(f, cp, identity_op);
    for (std::size_t n = 0; n <= func.order(); ++n) {
        const double fprime = static_cast<double>((n + 1) * (n + 1));
        CHECK(std::abs(func[n] - fprime) < 1e-10 * fprime);
    }
}

TEST_CASE("class_functional: gamma = 0 reduces to the plain quotient power") {
    std::mt19937_64 eng(79);
    ClassParams cp;
    cp.gamma = 0.0;
    cp.vartheta = 1.7;
    OperatorParams op{1, 0.4, Cplx(0.9, -0.2), 1.1};
    TruncatedSeries f(24);
    f[1] = 1.0;
    for (std::size_t n = 2; n <= 24; ++n)
        f[n] = Cplx(uniform(eng, -1.0, 1.0), uniform(eng, -1.0, 1.0)) / double(n * n);
    const NormalizedSeries lhs = class_functional(f, cp, op);
    const NormalizedSeries rhs = power(quotient_by_z(apply_operator(f, op)), cp.vartheta);
    CHECK(max_coeff_diff(lhs, rhs) == 0.0);
}

TEST_CASE("power paths for the vartheta-1 exponent agree") {
    std::mt19937_64 eng(83);
    for (int rep = 0; rep < 20; ++rep) {
        NormalizedSeries u(32);
        u[0] = 1.0;
        for (std::size_t n = 1; n <= 32; ++n)
            u[n] = Cplx(uniform(eng, -0.5, 0.5), uniform(eng, -0.5, 0.5)) / double(n);
        const double vt = uniform(eng, 0.25, 4.0);
        CHECK(max_coeff_diff(power(u, vt - 1.0), divide(power(u, vt), u)) < 1e-11);
    }
}

TEST_CASE("solve_functional_inverse: closed forms and round trip") {
    ClassParams cp;  // lambda*gamma/vartheta = 1 with the defaults below
    OperatorParams op{0, 1.0, 0.0, 1.0};

    NormalizedSeries one(12);
    one[0] = 1.0;
    const TruncatedSeries f0 = solve_functional_inverse(one, cp, op);
    CHECK(std::abs(f0[1] - 1.0) < 1e-14);
    for (std::size_t n = 2; n <= f0.order(); ++n) CHECK(std::abs(f0[n]) < 1e-13);

    // target (1+z)/(1-z): the quotient power picks up h_n = 2/(1+n)
    const TruncatedSeries f1 = solve_functional_inverse(moebius_kernel(16), cp, op);
    const NormalizedSeries h = quotient_by_z(apply_operator(f1, op));
    CHECK(std::abs(h[1] - 1.0) < 1e-13);
    CHECK(std::abs(h[2] - 2.0 / 3.0) < 1e-13);
    CHECK(std::abs(h[3] - 0.5) < 1e-13);

    std::mt19937_64 eng(89);
    TrialRng mrng(2718);
    for (int rep = 0; rep < 100; ++rep) {
        const double k = 2.0 + (eng() % 3);
        ClassParams rcp;
        rcp.k = k;
        rcp.rho = uniform(eng, 0.0, 0.9);
        rcp.vartheta = uniform(eng, 0.25, 4.0);
        rcp.gamma = uniform(eng, 0.01, 4.0);
        OperatorParams rop;
        rop.m = static_cast<int>(eng() % 4);
        rop.lambda = uniform(eng, 0.0, 2.0);
        rop.alpha = Cplx(uniform(eng, 0.5, 2.0), uniform(eng, -0.5, 0.5));
        rop.beta = uniform(eng, 0.5, 2.0);
        const NormalizedSeries target = draw_conditioned_target(
            mrng, k, rcp.rho, rcp.vartheta, rop.lambda * rcp.gamma.real() / rcp.vartheta, 64);
        const TruncatedSeries f = solve_functional_inverse(target, rcp, rop);
        const NormalizedSeries back = class_functional(f, rcp, rop);
        CHECK(max_coeff_diff(back, target) <= 1e-11);
    }
}

TEST_CASE("bazilevic_construct: closed-form integrals") {
    // p = 1, g = z: the integrand collapses and f = z
    BazilevicParams bp;
    bp.g = TruncatedSeries(32);
    bp.g[1] = 1.0;
    bp.p = NormalizedSeries(32);
    bp.p[0] = 1.0;
    for (double vt : {0.5, 1.0, 3.0}) {
        bp.vartheta = vt;
        const TruncatedSeries f = bazilevic_construct(bp, 32);
        CHECK(std::abs(f[1] - 1.0) < 1e-13);
        for (std::size_t n = 2; n <= 32; ++n) CHECK(std::abs(f[n]) < 1e-12);
    }

    // vartheta = 1, g = z, p the Moebius kernel: f_n = 2/n for n >= 2
    bp.vartheta = 1.0;
    bp.p = moebius_kernel(32);
    const TruncatedSeries f = bazilevic_construct(bp, 32);
    CHECK(std::abs(f[1] - 1.0) < 1e-13);
    for (std::size_t n = 2; n <= 32; ++n)
        CHECK(std::abs(f[n] - 2.0 / static_cast<double>(n)) < 1e-12);

    // vartheta = 1, g the Koebe function: p = (1+z)/(1-z) integrates back to
    // Koebe, while p = 1 gives z/(1-z) (both verified termwise by hand)
    bp.g = koebe(32);
    const TruncatedSeries fk = bazilevic_construct(bp, 32);
    CHECK(max_coeff_diff(fk, koebe(32)) < 1e-10);

    bp.p = NormalizedSeries(32);
    bp.p[0] = 1.0;
    const TruncatedSeries fg = bazilevic_construct(bp, 32);
    for (std::size_t n = 1; n <= 32; ++n) CHECK(std::abs(fg[n] - 1.0) < 1e-11);

    bp.tau = 0.5;
    CHECK_THROWS_AS(bazilevic_construct(bp, 32), std::invalid_argument);
}

TEST_CASE("named subclasses: identity, Koebe, half-parabola") {
    DiskProbe probe;
    probe.radii = {0.5, 0.9};
    TruncatedSeries z(64);
    z[1] = 1.0;
    for (auto which : {NamedSubclass::b2, NamedSubclass::starlike,
                       NamedSubclass::bounded_turning, NamedSubclass::quotient})
        CHECK(in_named_subclass(z, which, 1.5, 0.0, probe).verdict == Verdict::member);

    // Koebe is starlike: z f'/f = (1+z)/(1-z)
    CHECK(in_named_subclass(koebe(256), NamedSubclass::starlike, 1.0, 0.0, probe).verdict ==
          Verdict::member);

    // f = z + z^2/2 has f' = 1 + z with positive real part
    TruncatedSeries half(64);
    half[1] = 1.0;
    half[2] = 0.5;
    CHECK(in_named_subclass(half, NamedSubclass::bounded_turning, 1.0, 0.0, probe).verdict ==
          Verdict::member);
    // ... but not at level 0.2: Re(1+z) reaches 0.1 < 0.2 at r = 0.9
    CHECK(in_named_subclass(half, NamedSubclass::bounded_turning, 1.0, 0.2, probe).verdict ==
          Verdict::non_member);
}
