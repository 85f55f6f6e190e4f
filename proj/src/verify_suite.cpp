#include "choq/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "choq/bubble.hpp"
#include "choq/report_io.hpp"
#include "choq/solver.hpp"
#include "choq/special.hpp"

namespace choq {

namespace {

struct Ctx {
    std::vector<CheckResult> out;
    std::mt19937_64 rng;

    void add(const std::string& name, bool pass, double measured, double tol,
             std::string detail = "") {
        out.push_back({name, pass, measured, tol, std::move(detail)});
    }
    /// pass iff measured <= tol
    void bound(const std::string& name, double measured, double tol, std::string detail = "") {
        add(name, measured <= tol, measured, tol, std::move(detail));
    }
};

Field random_bump(const Grid& g, std::mt19937_64& rng, int n_bumps = 3) {
    std::uniform_real_distribution<double> pos(-g.half_length / 3.0, g.half_length / 3.0);
    std::uniform_real_distribution<double> width(g.half_length / 10.0, g.half_length / 5.0);
    std::uniform_real_distribution<double> amp(0.3, 1.0);
    std::vector<std::array<double, 3>> centers(n_bumps);
    std::vector<double> widths(n_bumps), amps(n_bumps);
    for (int b = 0; b < n_bumps; ++b) {
        for (int d = 0; d < g.dim; ++d) centers[b][d] = pos(rng);
        widths[b] = width(rng);
        amps[b] = amp(rng);
    }
    return sample(g, [&](const std::array<double, 3>& x) {
        double v = 0.0;
        for (int b = 0; b < n_bumps; ++b) {
            double r2 = 0.0;
            for (int d = 0; d < g.dim; ++d) {
                const double dx = x[d] - centers[b][d];
                r2 += dx * dx;
            }
            v += amps[b] * std::exp(-r2 / (2.0 * widths[b] * widths[b]));
        }
        return cdouble(v, 0.0);
    });
}

// direct O(M²) quadrature with the same kernel table the transform uses
Field riesz_direct_1d(const Field& density, double alpha) {
    const Grid& g = density.grid();
    const double h = g.spacing();
    const auto table = riesz_kernel_table(g, alpha);
    const int P = int(table.size());
    const int M = g.points_per_axis;
    Field out(g);
    for (int i = 0; i < M; ++i) {
        double acc = 0.0;
        for (int j = 0; j < M; ++j)
            acc += table[std::size_t(((i - j) % P + P) % P)] * density[std::size_t(j)].real();
        out[std::size_t(i)] = cdouble(acc * h, 0.0);
    }
    return out;
}

// max relative error of the computed Newtonian potential of a unit Gaussian
double gaussian_erf_error(int M, double L, double sigma) {
    Grid g(3, L, M);
    const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -1.5);
    Field rho = sample(g, [&](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return cdouble(norm * std::exp(-r2 / (2.0 * sigma * sigma)), 0.0);
    });
    Field pot = riesz_convolve(rho, 2.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto x = g.point(i);
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        const double exact =
            (r < 1e-12)
                ? std::sqrt(2.0 / std::numbers::pi) / (4.0 * std::numbers::pi * sigma)
                : std::erf(r / (std::sqrt(2.0) * sigma)) / (4.0 * std::numbers::pi * r);
        worst = std::max(worst, std::abs(pot[i].real() - exact) / std::abs(exact));
    }
    return worst;
}

// 1-d mass-critical soliton u(x) = 3^{1/4} sech^{1/2}(2x): solves
// -u'' = -u + u^5, so λ = -1, μ = 1, q = 6, κ = 0
struct Soliton1d {
    static double value(double x) {
        return std::pow(3.0, 0.25) * std::sqrt(1.0 / std::cosh(2.0 * x));
    }
    static double kinetic() { return std::sqrt(3.0) * std::numbers::pi / 4.0; }
    static double sixth_power() { return 3.0 * std::sqrt(3.0) * std::numbers::pi / 4.0; }
    static double mass() { return std::sqrt(3.0) * std::numbers::pi / 2.0; }
};

void check_params_constants(Ctx& c, const VerifyOptions& opt) {
    // exponent recomputation, bit for bit
    {
        ProblemParams pp{3, 2.0, 3.0, 4.0, 1.0, 1.0, 1.0};
        CriticalExponents ce = derive_exponents(pp);
        const double eta = pp.N / 2.0 - (pp.N + pp.alpha) / (2.0 * pp.p);
        const double gam = pp.N / 2.0 - pp.N / pp.q;
        c.add("exponents.recompute_bitwise", ce.eta_p == eta && ce.gamma_q == gam,
              std::abs(ce.eta_p - eta) + std::abs(ce.gamma_q - gam), 0.0);
        c.add("exponents.supercritical_products",
              2.0 * pp.p * ce.eta_p > 2.0 && pp.q * ce.gamma_q >= 2.0,
              2.0 * pp.p * ce.eta_p, 2.0);
    }
    // Riesz constant closed forms and the high-precision gamma route
    {
        const double v = riesz_constant(3, 2.0);
        c.bound("riesz.A_2(3)=1/(4pi)", std::abs(v - 1.0 / (4.0 * std::numbers::pi)) / v, 1e-13);
        const double v2 = riesz_constant(2, 1.0);
        c.bound("riesz.A_1(2)=1/(2pi)", std::abs(v2 - 1.0 / (2.0 * std::numbers::pi)) / v2, 1e-13);
        const double mine = riesz_constant(5, 1.7);
        const double lg = std::lgamma(0.5 * (5.0 - 1.7)) - std::lgamma(0.5 * 1.7) -
                          2.5 * std::log(std::numbers::pi) - 1.7 * std::log(2.0);
        c.bound("riesz.A_1.7(5)_vs_lgamma", std::abs(mine - std::exp(lg)) / std::exp(lg), 1e-12);
    }
    // HLS diagonal closed form
    {
        const double v = hls_constant(3, 2.0);
        const double w = (4.0 / 3.0) * std::pow(4.0 / std::sqrt(std::numbers::pi), 2.0 / 3.0);
        c.bound("hls.C_2(3)_closed_form", std::abs(v - w) / w, 1e-13);
        c.add("hls.positive", hls_constant(2, 0.7) > 0.0 && hls_constant(3, 1.3) > 0.0, 1.0, 1.0);
    }
    // GN shooting against the 1-d closed-form soliton at r = 6 = q*(N=1)
    {
        GnResult gn = gn_constant(1, 6.0);
        const double exact = std::sqrt(std::sqrt(3.0) * std::numbers::pi / 2.0);
        c.bound("gn.a_1star_vs_closed_form", std::abs(gn.Q_mass - exact) / exact, 1e-6);
        // Eq-(2.1)-style identity between the two formula routes
        const double lhs = std::pow(gn.C_gn, 6.0);
        const double rhs = 6.0 / (2.0 * std::pow(gn.Q_mass, 4.0));
        c.bound("gn.q_star_identity", std::abs(lhs - rhs) / rhs, 1e-8);
    }
    // GN inequality on random bumps + sharpness at the extremal
    {
        Grid g(1, 16.0, std::max(opt.M_1d, 256));
        const double r = 4.0;
        GnResult gn = gn_constant(1, r);
        CriticalExponents ce = derive_exponents({1, 0.5, 4.0, r, 1.0, 1.0, 1.0});
        const double gamma_r = 0.5 - 1.0 / r;
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            Field u = random_bump(g, c.rng);
            const double lhs = lp_norm(u, r);
            const double rhs = gn.C_gn * std::pow(mass(u), 0.5 * (1.0 - gamma_r)) *
                               std::pow(grad_sq(u), 0.5 * gamma_r);
            worst = std::max(worst, lhs / rhs);
        }
        c.bound("gn.inequality_random_bumps", worst, 1.0 + 1e-10);
        Field q = sample(g, [&](const std::array<double, 3>& x) {
            return cdouble(gn.profile(std::abs(x[0])), 0.0);
        });
        const double lhs = lp_norm(q, r);
        const double rhs = gn.C_gn * std::pow(mass(q), 0.5 * (1.0 - gamma_r)) *
                           std::pow(grad_sq(q), 0.5 * gamma_r);
        c.bound("gn.sharp_at_extremal", std::abs(lhs / rhs - 1.0), 1e-3);
        (void)ce;
    }
    // Remark-2.1-style bound with the composed constant
    {
        Grid g(1, 16.0, std::max(opt.M_1d, 256));
        const double alpha = 0.5, p = 4.0;
        const double t = 2.0 * 1.0 * p / (1.0 + alpha);
        GnResult gnt = gn_constant(1, t);
        const double A = riesz_constant(1, alpha), C = hls_constant(1, alpha);
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            Field u = random_bump(g, c.rng);
            Field rho = modulus_pow(u, p);
            const double nl = inner_real(riesz_convolve(rho, alpha), rho);
            const double h1 = std::pow(grad_sq(u) + mass(u), p);
            const double bound = A * C * std::pow(gnt.C_gn, 2.0 * p) * h1;
            worst = std::max(worst, nl / bound);
        }
        c.bound("hls.h1_bound_random_fields", worst, 1.0 + 1e-10);
    }
    // Sobolev constants: self-consistency, identity, random-bump quotients
    {
        SobolevConstants sob = sobolev_constants(3, 2.0);
        c.bound("sobolev.two_resolution_agreement", sob.quadrature_error, 1e-6);
        const double pbar = 5.0;
        const double AC = riesz_constant(3, 2.0) * hls_constant(3, 2.0);
        c.bound("sobolev.S_alpha_identity",
                std::abs(sob.S_alpha * std::pow(AC, 1.0 / pbar) - sob.S) / sob.S, 1e-14);
        Grid g(3, 6.0, std::min(opt.M_3d, 64));
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 10; ++k) {
            Field u = random_bump(g, c.rng, 2);
            Field rho = modulus_pow(u, pbar);
            const double nl = inner_real(riesz_convolve(rho, 2.0), rho);
            const double quot = grad_sq(u) / std::pow(nl, 1.0 / pbar);
            worst = std::min(worst, quot / sob.S_alpha);
        }
        c.add("sobolev.rayleigh_quotient_above_S_alpha", worst >= 1.0, worst, 1.0);
    }
    // Choquard GN constant at the mass-critical exponent
    {
        ProblemParams pp{1, 0.5, 1.0 + 2.5, 6.0, 1.0, 1.0, 1.0};
        Grid g(1, 20.0, std::max(opt.M_1d, 512));
        Field W;
        CgnResult res = choquard_gn_constant(pp, g, {}, &W);
        c.add("cgn.flow_converged", res.converged, res.residual, 1e-9);
        if (res.converged) {
            const double lhs = std::pow(res.quotient, 2.0 * pp.p);
            const double rhs = pp.p * std::pow(res.W_mass, 2.0 - 2.0 * pp.p);
            c.bound("cgn.mass_critical_identity", std::abs(lhs - rhs) / rhs, 1e-3);
            c.bound("cgn.tight_at_extremal", std::abs(res.quotient / res.C_cgn - 1.0), 5e-3);
            CriticalExponents ce = derive_exponents(pp);
            double worst = 0.0;
            for (int k = 0; k < 20; ++k) {
                Field u = random_bump(g, c.rng);
                Field rho = modulus_pow(u, pp.p);
                const double nl = inner_real(riesz_convolve(rho, pp.alpha), rho);
                const double rhsb = std::pow(res.C_cgn, 2.0 * pp.p) *
                                    std::pow(grad_sq(u), pp.p * ce.eta_p) *
                                    std::pow(mass(u), pp.p * (1.0 - ce.eta_p));
                worst = std::max(worst, nl / rhsb);
            }
            c.bound("cgn.inequality_random_fields", worst, 1.0 + 1e-6);
        }
    }
}

void check_spectral(Ctx& c, const VerifyOptions& opt) {
    // 1-d FFT convolution against the O(M²) oracle
    {
        Grid g(1, 8.0, 64);
        Field u = random_bump(g, c.rng);
        Field rho = modulus_pow(u, 2.0);
        Field a = riesz_convolve(rho, 0.5);
        Field b = riesz_direct_1d(rho, 0.5);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            worst = std::max(worst, std::abs(a[i].real() - b[i].real()));
        c.bound("riesz.fft_vs_direct_quadrature", worst / b.max_abs(), 1e-12);
    }
    // linearity and positivity
    {
        Grid g(1, 8.0, 128);
        Field f = modulus_pow(random_bump(g, c.rng), 1.0);
        Field h = modulus_pow(random_bump(g, c.rng), 1.0);
        Field s = f + h;
        Field cf = riesz_convolve(f, 0.7);
        Field ch = riesz_convolve(h, 0.7);
        Field cs = riesz_convolve(s, 0.7);
        double worst = 0.0, neg = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            worst = std::max(worst, std::abs(cs[i].real() - cf[i].real() - ch[i].real()));
            neg = std::min(neg, cf[i].real());
        }
        c.bound("riesz.linearity", worst / cs.max_abs(), 1e-12);
        c.add("riesz.positivity", neg >= 0.0, neg, 0.0);
    }
    // Newtonian potential of a Gaussian and its convergence order
    {
        const double e64 = gaussian_erf_error(opt.M_3d, 8.0, 1.0);
        c.bound("riesz.gaussian_erf_3d", e64, 1e-4);
        // narrow density so the coarse grid is resolution-limited
        const double n32 = gaussian_erf_error(opt.M_3d / 2, 8.0, 0.35);
        const double n64 = gaussian_erf_error(opt.M_3d, 8.0, 0.35);
        c.add("riesz.m_doubling_error_ratio", n32 / n64 >= 4.0, n32 / n64, 4.0);
    }
    // Parseval / plane-wave kinetic energy
    {
        Grid g(1, 16.0, 512);
        const double k0 = 4.0 * std::numbers::pi; // resolved mode
        Field u = sample(g, [&](const std::array<double, 3>& x) {
            const double env = std::exp(-x[0] * x[0] / (2.0 * 9.0));
            return cdouble(env * std::cos(k0 * x[0]), env * std::sin(k0 * x[0]));
        });
        const double expected = k0 * k0 * mass(u);
        c.bound("spectral.plane_wave_kinetic", std::abs(grad_sq(u) / expected - 1.0), 1e-2);
    }
    // Laplacian of a Gaussian at the origin
    {
        for (int dim : {1, 2}) {
            Grid g(dim, 8.0, 128);
            Field u = sample(g, [&](const std::array<double, 3>& x) {
                double r2 = 0.0;
                for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
                return cdouble(std::exp(-0.5 * r2), 0.0);
            });
            Field lu = laplacian(u);
            std::array<int, 3> mid{};
            for (int d = 0; d < dim; ++d) mid[d] = g.points_per_axis / 2;
            const double got = lu[g.flatten(mid)].real();
            c.bound("laplacian.gaussian_center_dim" + std::to_string(dim),
                    std::abs(got + dim), 1e-6);
        }
    }
    // dilation contracts
    {
        Grid g(1, 16.0, 512);
        Field u = random_bump(g, c.rng);
        Field u0 = dilate(u, 0.0);
        double dmax = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            dmax = std::max(dmax, std::abs(u[i] - u0[i]));
        c.bound("dilate.s0_identity", dmax, 0.0);
        Field us = dilate(u, 0.7);
        c.bound("dilate.mass_preserved", std::abs(mass(us) - mass(u)) / mass(u), 1e-13);
        c.bound("dilate.kinetic_scaling",
                std::abs(grad_sq(us) / (std::exp(2.0 * 0.7) * grad_sq(u)) - 1.0), 5e-3);
    }
}

void check_functionals(Ctx& c, const VerifyOptions& opt) {
    const ProblemParams pp{1, 0.5, 4.0, 6.5, 1.0, 1.0, 1.0};
    const CriticalExponents ce = derive_exponents(pp);
    Grid g(1, 16.0, std::max(opt.M_1d, 256));

    // Ψ' = P(s⋆·) by centered differences, with the O(δ²) order measured
    // (concentrated unit-mass profile: the fiber crossover sits below s = 5)
    {
        Field u = renormalize_mass(sample(g, [](const std::array<double, 3>& x) {
                                       return cdouble(std::exp(-x[0] * x[0] * 8.0), 0.0);
                                   }),
                                   1.0);
        EnergyBreakdown bd = energy(u, pp, ce);
        auto err_at = [&](double delta) {
            double worst = 0.0;
            for (double s : {-0.5, 0.0, 0.4}) {
                const double fd = (fiber_value(bd, pp, ce, s + delta).psi -
                                   fiber_value(bd, pp, ce, s - delta).psi) /
                                  (2.0 * delta);
                worst = std::max(worst, std::abs(fd - fiber_value(bd, pp, ce, s).p_of_s));
            }
            return worst;
        };
        const double e1 = err_at(1e-3), e2 = err_at(5e-4);
        const double order = std::log(e1 / e2) / std::log(2.0);
        c.add("fiber.derivative_order", order >= 1.9, order, 1.9);
        c.add("fiber.decay_at_plus_infinity",
              fiber_value(bd, pp, ce, 5.0).psi < fiber_value(bd, pp, ce, 0.0).psi,
              fiber_value(bd, pp, ce, 5.0).psi, fiber_value(bd, pp, ce, 0.0).psi);
    }
    // gradient versus directional finite differences
    {
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            Field u = random_bump(g, c.rng);
            Field v = random_bump(g, c.rng);
            Field grad = euler_lagrange_gradient(u, pp, ce);
            const double delta = 1e-5;
            const double ep = energy(u + delta * v, pp, ce).energy;
            const double em = energy(u - delta * v, pp, ce).energy;
            const double fd = (ep - em) / (2.0 * delta);
            const double anal = inner_real(grad, v);
            worst = std::max(worst, std::abs(fd - anal) / std::max(std::abs(anal), 1e-30));
        }
        c.bound("gradient.finite_difference", worst, 1e-6);
    }
    // fiber values against physically dilated energies (centered and narrow
    // so dilations with |s| <= 1 stay resolvable inside the box)
    {
        Field u = renormalize_mass(sample(g, [&](const std::array<double, 3>& x) {
                                       const double w = g.half_length / 14.0;
                                       return cdouble(std::exp(-x[0] * x[0] / (2 * w * w)),
                                                      0.4 * std::exp(-x[0] * x[0] / (w * w)));
                                   }),
                                   1.0);
        EnergyBreakdown bd = energy(u, pp, ce);
        double worst = 0.0;
        for (double s : {-1.0, -0.3, 0.5, 1.0}) {
            const double direct = energy(dilate(u, s), pp, ce).energy;
            const double analytic = fiber_value(bd, pp, ce, s).psi;
            worst = std::max(worst, std::abs(direct - analytic) /
                                        std::max(1e-30, std::abs(analytic)));
        }
        c.bound("fiber.matches_dilated_energy", worst, 1e-3);
    }
    // monotone in μ
    {
        Field u = random_bump(g, c.rng);
        ProblemParams p2 = pp;
        p2.mu = 2.0 * pp.mu;
        c.add("energy.monotone_in_mu", energy(u, p2, ce).energy < energy(u, pp, ce).energy,
              energy(u, p2, ce).energy, energy(u, pp, ce).energy);
    }
    // the κ=0 closed-form soliton: integrals, multiplier, residuals
    {
        ProblemParams ps{1, 0.5, 4.0, 6.0, 1.0, 1.0, 0.0};
        ps.a = std::sqrt(Soliton1d::mass());
        CriticalExponents cs = derive_exponents(ps);
        Grid gs(1, 16.0, 256);
        Field u = sample(gs, [](const std::array<double, 3>& x) {
            return cdouble(Soliton1d::value(x[0]), 0.0);
        });
        EnergyBreakdown bd = energy(u, ps, cs);
        c.bound("soliton.kinetic", std::abs(bd.kinetic - Soliton1d::kinetic()) /
                                       Soliton1d::kinetic(), 1e-6);
        c.bound("soliton.sixth_power",
                std::abs(bd.local - Soliton1d::sixth_power()) / Soliton1d::sixth_power(), 1e-6);
        c.bound("soliton.multiplier", std::abs(multiplier(u, ps, cs) + 1.0), 1e-6);
        ResidualPair rp = residuals(u, ps, cs);
        c.bound("soliton.pde_residual", rp.pde, 1e-6);
        c.bound("soliton.pohozaev_identity_residual", rp.pohozaev_identity, 1e-6);
        // a generic field is far from solving the equation
        Field w = random_bump(gs, c.rng);
        c.add("residuals.discriminate_nonsolutions", residuals(w, ps, cs).pde > 1e-2,
              residuals(w, ps, cs).pde, 1e-2);
    }
}

void check_solver(Ctx& c, const VerifyOptions& opt) {
    const ProblemParams pp{1, 0.5, 4.0, 6.5, 1.0, 1.0, 1.0};
    const CriticalExponents ce = derive_exponents(pp);
    Grid g(1, 16.0, std::max(opt.M_1d, 256));

    // fiber projection contracts
    {
        Field u = renormalize_mass(random_bump(g, c.rng), 1.0);
        EnergyBreakdown bd = energy(u, pp, ce);
        const double s = fiber_project(bd, pp, ce);
        FiberPoint at = fiber_value(bd, pp, ce, s);
        const double projected_kinetic = std::exp(2.0 * s) * bd.kinetic;
        c.bound("fiber_project.root_quality", std::abs(at.p_of_s) / projected_kinetic, 1e-11);
        c.add("fiber_project.positive_level", at.psi > 0.0, at.psi, 0.0);
        c.add("fiber_project.maximum",
              at.psi >= fiber_value(bd, pp, ce, s + 0.1).psi &&
                  at.psi >= fiber_value(bd, pp, ce, s - 0.1).psi,
              at.psi, 0.0);
        c.add("fiber_project.sign_contract", (bd.pohozaev <= 0.0) == (s <= 0.0),
              s, 0.0);
        // μ = 0 closed form (drop the local integral, the μ-term vanishes with it)
        EnergyBreakdown b0 = bd;
        b0.local = 0.0;
        const double s0 = fiber_project(b0, pp, ce);
        const double closed = std::log(b0.kinetic / (ce.eta_p * pp.kappa * b0.nonlocal)) /
                              (ce.nonlocal_rate(pp) - 2.0);
        c.bound("fiber_project.mu0_closed_form", std::abs(s0 - closed), 1e-9);
    }
    // a quick manifold solve with its certificates
    {
        SolverConfig cfg;
        cfg.max_iters = 4000;
        Field init = make_named_init(g, "soliton", pp, cfg.seed);
        SolveReport rep = minimize_on_pohozaev(pp, ce, init, cfg);
        c.add("solver.converged", rep.converged, double(rep.iterations), double(cfg.max_iters));
        c.add("solver.lambda_negative", rep.lambda < 0.0, rep.lambda, 0.0);
        c.bound("solver.pde_residual", rep.residuals.pde, 1e-4);
        c.bound("solver.pohozaev_identity_residual", rep.residuals.pohozaev_identity, 1e-4);
        c.bound("solver.pohozaev_rel", rep.pohozaev_rel, 1e-6);
        c.bound("solver.mass_drift", rep.mass_drift, 1e-12);
        bool monotone = true;
        for (std::size_t i = 1; i < rep.history.size(); ++i)
            if (rep.history[i].energy > rep.history[i - 1].energy + 1e-14) monotone = false;
        c.add("solver.energy_monotone", monotone, 0.0, 0.0);
        // Eq.(3.2)-style energy form on the manifold
        const EnergyBreakdown& bd = rep.breakdown;
        const double form = (ce.eta_p / 2.0 - 1.0 / (2.0 * pp.p)) * pp.kappa * bd.nonlocal +
                            (ce.gamma_q / 2.0 - 1.0 / pp.q) * pp.mu * bd.local;
        c.bound("solver.manifold_energy_form", std::abs(form - bd.energy) /
                                                   std::abs(bd.energy), 1e-6);
        c.add("solver.small_gradient_region", rep.small_gradient_k > 0.0,
              rep.small_gradient_k, 0.0);
        // symmetry certificates on the computed ground state
        c.bound("symmetry.ground_state_radial_deviation", rep.symmetry.radial_deviation, 1e-4);
        c.bound("symmetry.ground_state_phase_deviation", rep.symmetry.phase_deviation, 1e-6);
        c.bound("symmetry.ground_state_rearrangement_gap", rep.symmetry.rearrangement_gap, 1e-6);
        Field au = modulus(rep.field);
        double worst = 0.0;
        const double h = rep.field.grid().spacing(); // the rescaled output grid
        for (int k = 0; k < 10; ++k) {
            HalfSpace H;
            H.normal = {k % 2 == 0 ? 1.0 : -1.0, 0.0, 0.0};
            H.offset = (k - 5) * 1.5 * h + 0.5 * h;
            worst = std::max(worst, polarization_dichotomy(au, H));
        }
        c.bound("symmetry.polarization_dichotomy", worst, 1e-3);
    }
}

void check_symmetry(Ctx& c, const VerifyOptions& opt) {
    Grid g(2, 8.0, std::min(opt.M_3d * 2, 128));
    const ProblemParams pp{2, 1.0, 3.0, 4.5, 1.0, 1.0, 1.0};
    const CriticalExponents ce = derive_exponents(pp);

    // equimeasurability, norm preservation, nonlocal monotonicity
    {
        double worst_nl = std::numeric_limits<double>::infinity();
        bool equal_sets = true, norms_ok = true;
        for (int k = 0; k < 10; ++k) {
            Field u = modulus(random_bump(g, c.rng));
            Field star = schwartz_rearrange(u);
            std::vector<double> a(u.size()), b(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) {
                a[i] = u[i].real();
                b[i] = star[i].real();
            }
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) equal_sets = false;
            if (std::abs(lp_norm(star, 2.0) - lp_norm(u, 2.0)) >
                1e-14 * lp_norm(u, 2.0))
                norms_ok = false;
            Field ru = modulus_pow(u, pp.p);
            Field rs = modulus_pow(star, pp.p);
            const double nl_u = inner_real(riesz_convolve(ru, pp.alpha), ru);
            const double nl_s = inner_real(riesz_convolve(rs, pp.alpha), rs);
            worst_nl = std::min(worst_nl, nl_s / nl_u);
        }
        c.add("rearrange.equimeasurable_bitwise", equal_sets, 0.0, 0.0);
        c.add("rearrange.lp_norms_exact", norms_ok, 0.0, 0.0);
        c.add("rearrange.nonlocal_nondecreasing", worst_nl >= 1.0 - 1e-12, worst_nl, 1.0);
    }
    // discrete Pólya–Szegő within the documented tolerance
    {
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            Field u = modulus(random_bump(g, c.rng));
            Field star = schwartz_rearrange(u);
            worst = std::max(worst, grad_sq(star) / grad_sq(u));
        }
        c.bound("rearrange.dirichlet_discrete", worst, 1.0 + 1e-2);
    }
    // polarization: Dirichlet preservation across the switching kink needs
    // resolution (the error decays first order there)
    {
        Grid gp(2, 8.0, 1024);
        const double h = gp.spacing();
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            Field u = modulus(random_bump(gp, c.rng));
            HalfSpace H;
            H.normal = {0.0, 0.0, 0.0};
            H.normal[k % 2] = (k % 3 == 0) ? -1.0 : 1.0;
            H.offset = ((k % 5) - 2) * h + 0.5 * h;
            Field uh = polarize(u, H);
            worst = std::max(worst, std::abs(grad_sq(uh) / grad_sq(u) - 1.0));
        }
        c.bound("polarize.dirichlet_preserved", worst, 1e-3);
    }
    // symmetry report on exact inputs
    {
        Field gauss = sample(g, [&](const std::array<double, 3>& x) {
            return cdouble(std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2.0), 0.0);
        });
        SymmetryReport r = symmetry_report(gauss, pp, ce);
        c.bound("symmetry.centered_gaussian_radial", r.radial_deviation, 1e-10);
        c.bound("symmetry.centered_gaussian_phase", r.phase_deviation, 1e-14);
        // translated copy recovers the same deviation after recentering
        // (narrow profile keeps the box tails below double round-off)
        Field narrow = sample(g, [](const std::array<double, 3>& x) {
            return cdouble(std::exp(-(x[0] * x[0] + x[1] * x[1])), 0.0);
        });
        SymmetryReport rn = symmetry_report(narrow, pp, ce);
        Field shifted = sample(g, [&](const std::array<double, 3>& x) {
            const double dx = x[0] - 8.0 * g.spacing();
            const double dy = x[1] + 3.0 * g.spacing();
            return cdouble(std::exp(-(dx * dx + dy * dy)), 0.0);
        });
        SymmetryReport r2 = symmetry_report(shifted, pp, ce);
        c.bound("symmetry.translation_invariance",
                std::abs(r2.radial_deviation - rn.radial_deviation), 1e-10);
    }
}

void check_bubble(Ctx& c, const VerifyOptions& opt) {
    const ProblemParams pp{3, 2.0, 5.0, 4.0, 1.0, 1.0, 1.0};
    const CriticalExponents ce = derive_exponents(pp);
    Grid g(3, 2.56, std::max(opt.M_3d, 64));
    {
        GapReport rep = critical_gap_check(pp, ce, {0.1, 0.0025}, g, 1.0);
        c.add("bubble.gap_margin_negative_small_eps",
              rep.rows[1].ok && rep.rows[1].margin < 0.0, rep.rows[1].margin, 0.0);
        c.add("bubble.gap_margin_decreasing",
              rep.rows[0].ok && rep.rows[1].margin < rep.rows[0].margin,
              rep.rows[1].margin, rep.rows[0].margin);
        // analytic fiber maximum against a dense scan
        BubbleSpec spec;
        spec.epsilon = 0.1;
        BubbleIntegrals bi = bubble_integrals(spec, pp.alpha, pp.q);
        const double b = std::sqrt(bi.mass);
        const double lv = std::pow(b, 0.5 * pp.q - 3.0) * bi.local;
        EnergyBreakdown bd = assemble_breakdown(bi.kinetic, bi.nonlocal, lv, pp, ce);
        const double s = fiber_project(bd, pp, ce);
        const double psi = fiber_value(bd, pp, ce, s).psi;
        double scan = -std::numeric_limits<double>::infinity();
        for (double ss = s - 0.1; ss <= s + 0.1; ss += 2e-5)
            scan = std::max(scan, fiber_value(bd, pp, ce, ss).psi);
        c.bound("bubble.fiber_max_vs_dense_scan", std::abs(psi - scan) / std::abs(psi), 1e-8);
    }
}

} // namespace

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt) {
    Ctx c;
    c.rng.seed(opt.seed);
    check_params_constants(c, opt);
    check_spectral(c, opt);
    check_functionals(c, opt);
    check_solver(c, opt);
    check_symmetry(c, opt);
    check_bubble(c, opt);
    return std::move(c.out);
}

} // namespace choq
