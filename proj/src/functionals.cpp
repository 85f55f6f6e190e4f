#include "choq/functionals.hpp"

#include <cmath>

namespace choq {

EnergyBreakdown assemble_breakdown(double kinetic, double nonlocal, double local,
                                   const ProblemParams& params,
                                   const CriticalExponents& ce) {
    EnergyBreakdown bd;
    bd.kinetic = kinetic;
    bd.nonlocal = nonlocal;
    bd.local = local;
    bd.energy = 0.5 * kinetic - params.kappa * nonlocal / (2.0 * params.p) -
                params.mu * local / params.q;
    bd.pohozaev = kinetic - params.kappa * ce.eta_p * nonlocal - params.mu * ce.gamma_q * local;
    return bd;
}

EnergyBreakdown energy(const Field& u, const ProblemParams& params,
                       const CriticalExponents& ce, ConvolveDiag* diag) {
    double nl = 0.0;
    if (params.kappa > 0.0) {
        Field rho = modulus_pow(u, params.p);
        Field conv = riesz_convolve(rho, params.alpha, diag);
        nl = inner_real(conv, rho);
    }
    return assemble_breakdown(grad_sq(u), nl, lp_integral(u, params.q), params, ce);
}

FiberPoint fiber_value(const EnergyBreakdown& bd, const ProblemParams& params,
                       const CriticalExponents& ce, double s) {
    const double ek = std::exp(2.0 * s);
    const double en = std::exp(ce.nonlocal_rate(params) * s);
    const double el = std::exp(ce.local_rate(params) * s);
    FiberPoint f;
    f.psi = 0.5 * ek * bd.kinetic - params.kappa * en * bd.nonlocal / (2.0 * params.p) -
            params.mu * el * bd.local / params.q;
    f.p_of_s = ek * bd.kinetic - params.kappa * ce.eta_p * en * bd.nonlocal -
               params.mu * ce.gamma_q * el * bd.local;
    return f;
}

double multiplier(const EnergyBreakdown& bd, double mass_value, const ProblemParams& params) {
    if (!(mass_value > 0.0)) throw std::invalid_argument("multiplier: zero field");
    return (bd.kinetic - params.kappa * bd.nonlocal - params.mu * bd.local) / mass_value;
}

double multiplier(const Field& u, const ProblemParams& params, const CriticalExponents& ce) {
    const double m = mass(u);
    if (!(m > 0.0)) throw std::invalid_argument("multiplier: zero field");
    return multiplier(energy(u, params, ce), m, params);
}

Field euler_lagrange_gradient(const Field& u, const ProblemParams& params,
                              const CriticalExponents& ce) {
    (void)ce;
    Field g = (-1.0) * laplacian(u);
    if (params.kappa > 0.0) {
        Field rho = modulus_pow(u, params.p);
        Field conv = riesz_convolve(rho, params.alpha);
        for (std::size_t i = 0; i < u.size(); ++i) {
            double au = std::abs(u[i]);
            double w = (au > 0.0) ? std::pow(au, params.p - 2.0) : 0.0;
            g[i] -= params.kappa * conv[i].real() * w * u[i];
        }
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        double au = std::abs(u[i]);
        double w = (au > 0.0) ? std::pow(au, params.q - 2.0) : 0.0;
        g[i] -= params.mu * w * u[i];
    }
    return g;
}

Evaluation evaluate(const Field& u, const ProblemParams& params, const CriticalExponents& ce,
                    bool with_gradient) {
    Evaluation ev;
    ev.mass = mass(u);
    Field conv;
    double nl = 0.0;
    if (params.kappa > 0.0) {
        Field rho = modulus_pow(u, params.p);
        conv = riesz_convolve(rho, params.alpha, &ev.diag);
        nl = inner_real(conv, rho);
    }
    ev.bd = assemble_breakdown(grad_sq(u), nl, lp_integral(u, params.q), params, ce);
    ev.lambda = (ev.mass > 0.0)
                    ? (ev.bd.kinetic - params.kappa * ev.bd.nonlocal - params.mu * ev.bd.local) /
                          ev.mass
                    : 0.0;
    if (with_gradient) {
        Field g = (-1.0) * laplacian(u);
        for (std::size_t i = 0; i < u.size(); ++i) {
            double au = std::abs(u[i]);
            double wq = (au > 0.0) ? std::pow(au, params.q - 2.0) : 0.0;
            cdouble acc = -params.mu * wq * u[i];
            if (params.kappa > 0.0) {
                double wp = (au > 0.0) ? std::pow(au, params.p - 2.0) : 0.0;
                acc -= params.kappa * conv[i].real() * wp * u[i];
            }
            g[i] += acc;
        }
        ev.gradient = std::move(g);
    }
    return ev;
}

ResidualPair residuals(const Field& u, const ProblemParams& params,
                       const CriticalExponents& ce) {
    const double m = mass(u);
    if (!(m > 0.0)) throw std::invalid_argument("residuals: zero field");
    Evaluation ev = evaluate(u, params, ce, true);
    Field r = ev.gradient - ev.lambda * u;
    const double rn = std::sqrt(std::max(inner_real(r, r), 0.0));
    const double h1 = std::sqrt(ev.bd.kinetic + m);
    ResidualPair out;
    out.pde = rn / h1;

    // (N-2)/2 K = (Nλ/2) m + ((N+α)/2p) κ NL + (μN/q) LO
    const double N = params.N;
    const double t1 = 0.5 * (N - 2.0) * ev.bd.kinetic;
    const double t2 = 0.5 * N * ev.lambda * m;
    const double t3 = (N + params.alpha) / (2.0 * params.p) * params.kappa * ev.bd.nonlocal;
    const double t4 = params.mu * N / params.q * ev.bd.local;
    const double denom = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), 1e-300});
    out.pohozaev_identity = std::abs(t1 - t2 - t3 - t4) / denom;
    return out;
}

} // namespace choq
