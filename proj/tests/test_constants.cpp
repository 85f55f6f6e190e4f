#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "choq/constants.hpp"
#include "choq/special.hpp"
#include "choq/spectral.hpp"

using namespace choq;
namespace nb = std::numbers;

namespace {

// independent gamma route for the closed-form oracles
double lg(double x) { return std::lgamma(x); }

Field gaussian_bump(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(-g.half_length / 3.0, g.half_length / 3.0);
    std::uniform_real_distribution<double> width(g.half_length / 10.0, g.half_length / 5.0);
    std::uniform_real_distribution<double> amp(0.3, 1.0);
    double x0[3], w[3], a[3];
    for (int b = 0; b < 3; ++b) {
        x0[b] = pos(rng);
        w[b] = width(rng);
        a[b] = amp(rng);
    }
    return sample(g, [&](const std::array<double, 3>& x) {
        double v = 0.0;
        for (int b = 0; b < 3; ++b) {
            double r2 = 0.0;
            for (int d = 0; d < g.dim; ++d) r2 += (x[d] - x0[b] * (d == 0 ? 1.0 : 0.3)) *
                                                  (x[d] - x0[b] * (d == 0 ? 1.0 : 0.3));
            v += a[b] * std::exp(-r2 / (2.0 * w[b] * w[b]));
        }
        return cdouble(v, 0.0);
    });
}

} // namespace

TEST_CASE("Lanczos gamma against the C library") {
    for (double x : {0.1, 0.37, 0.5, 1.0, 1.5, 2.0, 3.75, 7.3, 12.0, 41.5}) {
        CHECK(std::abs(log_gamma(x) - lg(x)) <= 1e-12 * std::max(1.0, std::abs(lg(x))));
        CHECK(gamma_fn(x) == doctest::Approx(std::exp(lg(x))).epsilon(1e-12));
    }
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(nb::pi)).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.0), std::domain_error);
}

TEST_CASE("Riesz normalization constant") {
    CHECK(riesz_constant(3, 2.0) == doctest::Approx(1.0 / (4.0 * nb::pi)).epsilon(1e-13));
    CHECK(riesz_constant(2, 1.0) == doctest::Approx(1.0 / (2.0 * nb::pi)).epsilon(1e-13));
    // arbitrary order against an independent gamma evaluation
    const double oracle =
        std::exp(lg((5.0 - 1.7) / 2.0) - lg(1.7 / 2.0)) / (std::pow(nb::pi, 2.5) * std::pow(2.0, 1.7));
    CHECK(riesz_constant(5, 1.7) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK_THROWS_AS(riesz_constant(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(riesz_constant(3, 3.0), std::invalid_argument);
}

TEST_CASE("diagonal HLS constant") {
    // C_2(3) = (4/3)(4/sqrt(pi))^{2/3}
    const double expect = (4.0 / 3.0) * std::pow(4.0 / std::sqrt(nb::pi), 2.0 / 3.0);
    CHECK(hls_constant(3, 2.0) == doctest::Approx(expect).epsilon(1e-13));
    for (double b : {0.5, 1.0, 1.9}) CHECK(hls_constant(2, b * 0.9) > 0.0);
    CHECK_THROWS_AS(hls_constant(3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(hls_constant(2, 2.0), std::invalid_argument);
}

TEST_CASE("HLS inequality on random 3-d bumps") {
    // ∫∫ u(x)u(y)/|x-y| ≤ C_2(3) ‖u‖_{6/5}², i.e. nonlocal/A_2 ≤ C ‖u‖²
    std::mt19937_64 rng(7);
    Grid g(3, 6.0, 32);
    const double A = riesz_constant(3, 2.0);
    const double C = hls_constant(3, 2.0);
    for (int k = 0; k < 10; ++k) {
        Field u = gaussian_bump(g, rng);
        Field conv = riesz_convolve(u, 2.0);
        const double dbl = inner_real(conv, u) / A;
        const double rhs = C * std::pow(lp_norm(u, 6.0 / 5.0), 2.0);
        CHECK(dbl <= rhs * (1.0 + 1e-10));
    }
}

TEST_CASE("shooting reproduces the 1-d closed-form soliton at r = 6") {
    GnResult gn = gn_constant(1, 6.0);
    // Q(x) = 3^{1/4} sech^{1/2}(2x): Q(0) = 3^{1/4}, ‖Q‖₂ = (√3 π/2)^{1/2}
    CHECK(gn.Q0 == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-8));
    const double exact_mass = std::sqrt(std::sqrt(3.0) * nb::pi / 2.0);
    CHECK(gn.Q_mass == doctest::Approx(exact_mass).epsilon(1e-6));
    // profile matches the closed form pointwise
    for (double x : {0.0, 0.5, 1.3, 3.0}) {
        const double exact = std::pow(3.0, 0.25) * std::sqrt(1.0 / std::cosh(2.0 * x));
        CHECK(gn.profile(x) == doctest::Approx(exact).epsilon(1e-5));
    }
}

TEST_CASE("mass-critical identity between the two constant routes") {
    for (int N : {1, 2, 3}) {
        const double qs = 2.0 + 4.0 / N;
        GnResult gn = gn_constant(N, qs);
        const double lhs = std::pow(gn.C_gn, qs);
        const double rhs = qs / (2.0 * std::pow(gn.Q_mass, 4.0 / N));
        CHECK(std::abs(lhs - rhs) / rhs <= 1e-8);
    }
}

TEST_CASE("GN inequality holds on bumps and is sharp at the extremal") {
    std::mt19937_64 rng(11);
    const double r = 4.0;
    GnResult gn = gn_constant(1, r);
    const double gamma_r = 0.5 - 1.0 / r;
    Grid g(1, 16.0, 512);
    for (int k = 0; k < 10; ++k) {
        Field u = gaussian_bump(g, rng);
        const double lhs = lp_norm(u, r);
        const double rhs = gn.C_gn * std::pow(mass(u), 0.5 * (1.0 - gamma_r)) *
                           std::pow(grad_sq(u), 0.5 * gamma_r);
        CHECK(lhs <= rhs * (1.0 + 1e-10));
    }
    Field q = sample(g, [&](const std::array<double, 3>& x) {
        return cdouble(gn.profile(std::abs(x[0])), 0.0);
    });
    const double lhs = lp_norm(q, r);
    const double rhs = gn.C_gn * std::pow(mass(q), 0.5 * (1.0 - gamma_r)) *
                       std::pow(grad_sq(q), 0.5 * gamma_r);
    CHECK(lhs / rhs == doctest::Approx(1.0).epsilon(1e-3)); // ≤0.1% slack
    CHECK_THROWS_AS(gn_constant(3, 6.5), std::invalid_argument); // supercritical r
}

TEST_CASE("Sobolev constant by radial quadrature") {
    SobolevConstants sob = sobolev_constants(3, 2.0);
    CHECK(sob.quadrature_error <= 1e-6);
    // Talenti's closed form S = pi N(N-2) (Γ(N/2)/Γ(N))^{2/N} as an oracle
    for (int N : {3, 4, 5}) {
        SobolevConstants s = sobolev_constants(N, 0.5 * N);
        const double talenti =
            nb::pi * N * (N - 2.0) * std::exp((2.0 / N) * (lg(N / 2.0) - lg(double(N))));
        CHECK(s.S == doctest::Approx(talenti).epsilon(1e-10));
    }
    // S_alpha identity is exact by construction
    const double pbar = 5.0;
    const double AC = riesz_constant(3, 2.0) * hls_constant(3, 2.0);
    CHECK(sob.S_alpha * std::pow(AC, 1.0 / pbar) == doctest::Approx(sob.S).epsilon(1e-14));
    CHECK_THROWS_AS(sobolev_constants(2, 1.0), std::invalid_argument);
}

TEST_CASE("critical-quotient lower bound on random 3-d bumps") {
    std::mt19937_64 rng(23);
    SobolevConstants sob = sobolev_constants(3, 2.0);
    Grid g(3, 6.0, 32);
    for (int k = 0; k < 10; ++k) {
        Field u = gaussian_bump(g, rng);
        Field rho = modulus_pow(u, 5.0);
        const double nl = inner_real(riesz_convolve(rho, 2.0), rho);
        const double quot = grad_sq(u) / std::pow(nl, 1.0 / 5.0);
        CHECK(quot >= sob.S_alpha * (1.0 - 1e-9));
    }
}

TEST_CASE("Choquard GN constant from the grid flow, mass-critical case") {
    ProblemParams pp{1, 0.5, 3.5, 6.0, 1.0, 1.0, 1.0}; // p = 1+(2+α)/N
    Grid g(1, 20.0, 512);
    Field W;
    CgnResult res = choquard_gn_constant(pp, g, {}, &W);
    REQUIRE(res.converged);
    CHECK(res.residual <= 1e-9);
    CHECK(res.W_mass > 0.0);
    // (C_{α,p})^{2p} = p ‖W_p‖₂^{2-2p} against the measured quotient route
    const double lhs = std::pow(res.quotient, 2.0 * pp.p);
    const double rhs = pp.p * std::pow(res.W_mass, 2.0 - 2.0 * pp.p);
    CHECK(std::abs(lhs - rhs) / rhs <= 1e-3);
    // tight at the extremal
    CHECK(std::abs(res.quotient / res.C_cgn - 1.0) <= 5e-3);

    // the inequality with the computed constant on random fields
    std::mt19937_64 rng(31);
    CriticalExponents ce = derive_exponents(pp);
    for (int k = 0; k < 20; ++k) {
        Field u = gaussian_bump(g, rng);
        Field rho = modulus_pow(u, pp.p);
        const double nl = inner_real(riesz_convolve(rho, pp.alpha), rho);
        const double bound = std::pow(res.C_cgn, 2.0 * pp.p) *
                             std::pow(grad_sq(u), pp.p * ce.eta_p) *
                             std::pow(mass(u), pp.p * (1.0 - ce.eta_p));
        CHECK(nl <= bound * (1.0 + 1e-6));
    }
}

TEST_CASE("non-converged flow reports honestly and emits nothing") {
    ProblemParams pp{1, 0.5, 3.5, 6.0, 1.0, 1.0, 1.0};
    Grid g(1, 20.0, 256);
    CgnOptions opt;
    opt.max_iters = 1;
    CgnResult res = choquard_gn_constant(pp, g, opt);
    CHECK_FALSE(res.converged);
    CHECK(res.C_cgn == 0.0);
    CHECK(res.W_mass == 0.0);
}

TEST_CASE("regime classification") {
    SharpConstants sc;
    // existence: N=3, α=2, p=3, q=4, μ=1, a=1
    ProblemParams pe{3, 2.0, 3.0, 4.0, 1.0, 1.0, 1.0};
    RegimeReport r1 = validate_regime(pe, sc); // q > q*, no a_star needed
    CHECK(r1.regime == Regime::existence);

    // nonexistence: N=1, q=6=q*, μ a^4 = 2 (a_1*)^4
    GnResult gn = gn_constant(1, 6.0);
    sc.a_star = ConstantValue{gn.Q_mass, Provenance::shooting, 1e-8};
    ProblemParams pn{1, 0.5, 4.0, 6.0, 2.0 * std::pow(gn.Q_mass, 4.0), 1.0, 1.0};
    RegimeReport r2 = validate_regime(pn, sc);
    CHECK(r2.regime == Regime::nonexistence);
    REQUIRE(r2.threshold_ratio.has_value());
    CHECK(*r2.threshold_ratio == doctest::Approx(2.0).epsilon(1e-9));

    // out of theory: p = 2 < p* = 7/3
    ProblemParams po{3, 2.0, 2.0, 4.0, 1.0, 1.0, 1.0};
    RegimeReport r3 = validate_regime(po, sc);
    CHECK(r3.regime == Regime::out_of_theory);
    CHECK_FALSE(r3.violated.empty());

    // q = q* without a_star: explicit constant-required failure
    SharpConstants empty;
    ProblemParams pq{1, 0.5, 4.0, 6.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(validate_regime(pq, empty), std::invalid_argument);
}

TEST_CASE("compute_constants populates the full set with provenance") {
    ProblemParams pp{3, 2.0, 3.0, 4.0, 1.0, 1.0, 1.0};
    SharpConstants sc = compute_constants(pp);
    REQUIRE(sc.A_alpha.has_value());
    REQUIRE(sc.C_hls.has_value());
    REQUIRE(sc.C_gn.has_value());
    REQUIRE(sc.a_star.has_value());
    REQUIRE(sc.S.has_value());
    REQUIRE(sc.S_alpha.has_value());
    CHECK(sc.A_alpha->provenance == Provenance::closed_form);
    CHECK(sc.a_star->provenance == Provenance::shooting);
    CHECK(sc.A_alpha->value > 0.0);
    CHECK(sc.S_alpha->value > 0.0);
    CHECK(provenance_name(sc.a_star->provenance) == "shooting");
}
