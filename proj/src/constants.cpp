#include "choq/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "choq/special.hpp"
#include "choq/spectral.hpp"

namespace choq {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::closed_form: return "closed-form";
        case Provenance::shooting: return "shooting";
        case Provenance::grid_solve: return "grid-solve";
    }
    return "?";
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::existence: return "existence";
        case Regime::nonexistence: return "nonexistence";
        case Regime::out_of_theory: return "out-of-theory";
    }
    return "?";
}

double riesz_constant(int N, double alpha) {
    if (!(alpha > 0.0 && alpha < double(N)))
        throw std::invalid_argument("riesz_constant: alpha must lie in (0, N)");
    const double lg = log_gamma(0.5 * (N - alpha)) - log_gamma(0.5 * alpha) -
                      0.5 * N * std::log(std::numbers::pi) - alpha * std::log(2.0);
    return std::exp(lg);
}

double hls_constant(int N, double beta) {
    if (!(beta > 0.0 && beta < double(N)))
        throw std::invalid_argument("hls_constant: beta must lie in (0, N)");
    const double lg = 0.5 * (N - beta) * std::log(std::numbers::pi) +
                      log_gamma(0.5 * beta) - log_gamma(0.5 * (N + beta)) -
                      (beta / N) * (log_gamma(0.5 * N) - log_gamma(double(N)));
    return std::exp(lg);
}

// ---------------------------------------------------------------------------
// Shooting for Q_r

namespace {

enum class ShotOutcome { overshoot, undershoot, decayed };

struct ShotResult {
    ShotOutcome outcome;
    double mass_integral; // ∫ Q² ρ^{N-1} dρ along the decaying part
    std::vector<double> radii;
    std::vector<double> values;
};

// Q'' + ((N-1)/ρ) Q' - Q + |Q|^{r-2} Q = 0, Q(0)=b, Q'(0)=0
ShotResult shoot(int N, double r, double b, const ShootingOptions& opt, bool record) {
    const double h = opt.step;
    double rho = 0.0, Q = b, V = 0.0; // V = Q'
    double massint = 0.0;
    ShotResult res;
    res.outcome = ShotOutcome::decayed;
    auto accel = [&](double rr, double q, double v) {
        double nl = std::pow(std::abs(q), r - 2.0) * q;
        if (rr < 1e-12) return (q - nl) / double(N); // regular limit at the origin
        return q - nl - (N - 1.0) * v / rr;
    };
    const std::size_t steps = std::size_t(opt.r_max / h);
    if (record) {
        res.radii.reserve(steps / 4 + 2);
        res.values.reserve(steps / 4 + 2);
    }
    for (std::size_t i = 0; i < steps; ++i) {
        if (record && i % 4 == 0) {
            res.radii.push_back(rho);
            res.values.push_back(Q);
        }
        // RK4 on (Q, V) with the mass integral carried along
        double k1q = V, k1v = accel(rho, Q, V);
        double k2q = V + 0.5 * h * k1v, k2v = accel(rho + 0.5 * h, Q + 0.5 * h * k1q, V + 0.5 * h * k1v);
        double k3q = V + 0.5 * h * k2v, k3v = accel(rho + 0.5 * h, Q + 0.5 * h * k2q, V + 0.5 * h * k2v);
        double k4q = V + h * k3v, k4v = accel(rho + h, Q + h * k3q, V + h * k3v);
        double Qn = Q + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        double Vn = V + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        // Simpson-ish accumulation of Q² ρ^{N-1}
        double mid_rho = rho + 0.5 * h, mid_Q = Q + 0.5 * h * k2q;
        massint += (h / 6.0) * (Q * Q * std::pow(rho, N - 1.0) +
                                4.0 * mid_Q * mid_Q * std::pow(mid_rho, N - 1.0) +
                                Qn * Qn * std::pow(rho + h, N - 1.0));
        rho += h;
        Q = Qn;
        V = Vn;
        if (Q <= 0.0) {
            res.outcome = ShotOutcome::overshoot;
            break;
        }
        if (V > 0.0) {
            res.outcome = ShotOutcome::undershoot;
            break;
        }
        if (Q < 1e-12) break; // effectively decayed; the tail mass is negligible
    }
    res.mass_integral = massint;
    return res;
}

} // namespace

double GnResult::profile(double rho) const {
    if (radii.empty() || rho >= radii.back()) return 0.0;
    if (rho <= 0.0) return values.front();
    auto it = std::upper_bound(radii.begin(), radii.end(), rho);
    std::size_t j = std::size_t(it - radii.begin());
    if (j == 0) return values.front();
    if (j >= radii.size()) return 0.0;
    double t = (rho - radii[j - 1]) / (radii[j] - radii[j - 1]);
    return (1.0 - t) * values[j - 1] + t * values[j];
}

GnResult gn_constant(int N, double r, const ShootingOptions& opt) {
    if (N < 1) throw std::invalid_argument("gn_constant: N must be >= 1");
    if (!(r > 2.0)) throw std::invalid_argument("gn_constant: r must exceed 2");
    if (N >= 3 && !(r < 2.0 * N / (N - 2.0)))
        throw std::invalid_argument("gn_constant: r must be subcritical");

    // bracket: small b undershoots (falls into the well around Q=1),
    // large b overshoots (crosses zero)
    double lo = 1.0 + 1e-3, hi = 2.0;
    {
        ShotResult s = shoot(N, r, lo, opt, false);
        int guard = 0;
        while (s.outcome != ShotOutcome::undershoot && guard++ < opt.max_bracket) {
            lo = 1.0 + 0.5 * (lo - 1.0);
            s = shoot(N, r, lo, opt, false);
        }
        if (s.outcome != ShotOutcome::undershoot)
            throw std::runtime_error("gn_constant: failed to bracket from below");
    }
    {
        ShotResult s = shoot(N, r, hi, opt, false);
        int guard = 0;
        while (s.outcome != ShotOutcome::overshoot && guard++ < opt.max_bracket) {
            hi *= 2.0;
            s = shoot(N, r, hi, opt, false);
        }
        if (s.outcome != ShotOutcome::overshoot)
            throw std::runtime_error("gn_constant: failed to bracket from above");
    }
    while ((hi - lo) > opt.bisect_tol * hi) {
        double mid = 0.5 * (lo + hi);
        ShotResult s = shoot(N, r, mid, opt, false);
        if (s.outcome == ShotOutcome::overshoot)
            hi = mid;
        else
            lo = mid;
    }
    const double b = 0.5 * (lo + hi);
    ShotResult fin = shoot(N, r, b, opt, true);

    GnResult out;
    out.Q0 = b;
    out.radii = std::move(fin.radii);
    out.values = std::move(fin.values);
    const double area = unit_sphere_area(N);
    const double mass2 = area * fin.mass_integral;
    out.Q_mass = std::sqrt(mass2);
    out.error = std::max((hi - lo) / b, 1e-12);

    // C_{N,r}^r = 2r/(2N+(2-N)r) * ((2N+(2-N)r)/(N(r-2)))^{N(r-2)/4} / ‖Q_r‖₂^{r-2}
    const double d1 = 2.0 * N + (2.0 - N) * r;
    const double expo = N * (r - 2.0) / 4.0;
    const double Cr = (2.0 * r / d1) * std::pow(d1 / (N * (r - 2.0)), expo) /
                      std::pow(out.Q_mass, r - 2.0);
    out.C_gn = std::pow(Cr, 1.0 / r);
    return out;
}

// ---------------------------------------------------------------------------
// Sobolev constants by radial quadrature of the explicit extremal

namespace {

// Rayleigh quotient integrals of U_1(ρ) = (N(N-2))^{(N-2)/4} (1+ρ²)^{-(N-2)/2},
// with the substitution ρ = tanθ flattening the algebraic tail.
double sobolev_quotient(int N, int npts) {
    const double nn = double(N);
    const double c = std::pow(nn * (nn - 2.0), 0.25 * (nn - 2.0));
    // ∫ |U'|² ρ^{N-1} dρ : U' = -c (N-2) ρ (1+ρ²)^{-N/2}
    auto grad_integrand = [&](double th) {
        double s = std::sin(th), co = std::cos(th);
        // ρ = s/co, dρ = dθ/co²; (1+ρ²) = 1/co²
        // |U'|² ρ^{N-1} dρ = c²(N-2)² ρ^{N+1} co^{2N} dθ/co²
        return c * c * (nn - 2.0) * (nn - 2.0) * std::pow(s, nn + 1.0) *
               std::pow(co, nn - 3.0);
    };
    auto pow_integrand = [&](double th) {
        // |U|^{2N/(N-2)} ρ^{N-1} dρ = c^{2N/(N-2)} co^{2N} ρ^{N-1} dρ
        double s = std::sin(th), co = std::cos(th);
        return std::pow(c, 2.0 * nn / (nn - 2.0)) * std::pow(s, nn - 1.0) *
               std::pow(co, nn - 1.0);
    };
    const double area = unit_sphere_area(N);
    const double grad = area * integrate_gl(grad_integrand, 0.0, std::numbers::pi / 2.0, npts);
    const double pw = area * integrate_gl(pow_integrand, 0.0, std::numbers::pi / 2.0, npts);
    return grad / std::pow(pw, (nn - 2.0) / nn);
}

} // namespace

SobolevConstants sobolev_constants(int N, double alpha) {
    if (N < 3) throw std::invalid_argument("sobolev_constants: N must be >= 3");
    if (!(alpha > 0.0 && alpha < double(N)))
        throw std::invalid_argument("sobolev_constants: alpha must lie in (0, N)");
    SobolevConstants out;
    const double S1 = sobolev_quotient(N, 96);
    const double S2 = sobolev_quotient(N, 192);
    out.S = S2;
    out.quadrature_error = std::abs(S2 - S1) / S2;
    const double p_bar = (N + alpha) / (N - 2.0);
    const double AC = riesz_constant(N, alpha) * hls_constant(N, alpha);
    out.S_alpha = out.S / std::pow(AC, 1.0 / p_bar);
    return out;
}

// ---------------------------------------------------------------------------
// Grid gradient flow for W_p

CgnResult choquard_gn_constant(const ProblemParams& params, const Grid& grid,
                               const CgnOptions& opt) {
    return choquard_gn_constant(params, grid, opt, nullptr);
}

CgnResult choquard_gn_constant(const ProblemParams& params, const Grid& grid,
                               const CgnOptions& opt, Field* W_out) {
    params.validate();
    grid.validate();
    const CriticalExponents ce = derive_exponents(params);
    const double p = params.p;
    if (!(p > ce.p_lower))
        throw std::invalid_argument("choquard_gn_constant: p must exceed (N+alpha)/N");
    if (ce.p_bar.is_unbounded() ? false : !(p < ce.p_bar.value()))
        throw std::invalid_argument("choquard_gn_constant: p must stay below (N+alpha)/(N-2)");

    // Find u with (-Δ+1)u = γ (I_α∗|u|^p)|u|^{p-2}u; then W = γ^{1/(2p-2)} u
    // solves the unit-coefficient equation. Primary update: the normalized
    // spectrally preconditioned fixed-point step
    //   u ← γ^σ (-Δ+1)^{-1} F(u),  γ = ⟨(-Δ+1)u,u⟩/⟨F(u),u⟩,  σ = (2p-1)/(2p-2),
    // monitored by the scale-free quotient H(u)/D(u)^{1/p}; a backtracked
    // quotient-descent step takes over whenever the fixed-point step fails
    // to reduce the stationarity residual.
    const double w0 = grid.half_length / 8.0;
    Field u = sample(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) r2 += x[d] * x[d];
        return cdouble(std::exp(-r2 / (2.0 * w0 * w0)), 0.0);
    });

    const double sigma = (2.0 * p - 1.0) / (2.0 * p - 2.0);
    auto nonlinear = [&](const Field& v) {
        Field rho = modulus_pow(v, p);
        Field conv = riesz_convolve(rho, params.alpha);
        Field F(grid);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double av = std::abs(v[i]);
            const double w = (av > 0.0) ? std::pow(av, p - 2.0) : 0.0;
            F[i] = conv[i].real() * w * v[i];
        }
        return F;
    };
    auto quotient_of = [&](const Field& v, double Hv, double Dv) {
        (void)v;
        return Hv / std::pow(Dv, 1.0 / p);
    };

    CgnResult res;
    double gamma = 1.0;
    int it = 0;
    for (; it < opt.max_iters; ++it) {
        Field F = nonlinear(u);
        const double D = inner_real(F, u); // = ∫(I_α∗|u|^p)|u|^p
        const double K = grad_sq(u), m = mass(u);
        const double H = 0.5 * (K + m);
        if (!(D > 0.0)) throw std::runtime_error("choquard_gn_constant: degenerate iterate");
        gamma = (K + m) / D;
        Field resid = (-1.0) * laplacian(u) + u - gamma * F;
        res.residual = std::sqrt(std::max(inner_real(resid, resid), 0.0)) / std::sqrt(K + m);
        if (res.residual < opt.residual_tol) {
            res.converged = true;
            break;
        }

        Field cand = std::pow(gamma, sigma) * helmholtz_inverse(F, 1.0);
        Field Fc = nonlinear(cand);
        const double Dc = inner_real(Fc, cand);
        const double Kc = grad_sq(cand), mc = mass(cand);
        const double gc = (Kc + mc) / Dc;
        Field rc = (-1.0) * laplacian(cand) + cand - gc * Fc;
        const double res_c =
            std::sqrt(std::max(inner_real(rc, rc), 0.0)) / std::sqrt(Kc + mc);
        if (Dc > 0.0 && res_c < res.residual) {
            u = std::move(cand);
            continue;
        }

        // fallback: preconditioned descent on the scale-free quotient
        Field d = helmholtz_inverse(resid, 1.0);
        if (inner_real(resid, d) <= 0.0) d = resid;
        const double q0 = quotient_of(u, H, D);
        bool accepted = false;
        double t = opt.step0;
        for (int ls = 0; ls < 40; ++ls) {
            Field trial = u - t * d;
            Field Ft = nonlinear(trial);
            const double Dt = inner_real(Ft, trial);
            if (Dt > 0.0) {
                const double Ht = 0.5 * (grad_sq(trial) + mass(trial));
                if (quotient_of(trial, Ht, Dt) < q0) {
                    u = std::move(trial);
                    accepted = true;
                    break;
                }
            }
            t *= opt.backtrack;
        }
        if (!accepted) break;
    }
    res.iterations = it;
    if (!res.converged) return res; // per contract: no constant emitted

    const double scale = std::pow(gamma, 1.0 / (2.0 * p - 2.0));
    Field W = scale * u;
    res.W_mass = std::sqrt(mass(W));

    // closed formula with the measured ‖W_p‖₂
    const double N = params.N, beta = params.alpha;
    const double d1 = 2.0 * p - N * p + N + beta; // 2p(1-η_p)
    const double d2 = N * p - N - beta;           // 2pη_p
    const double C2p = (2.0 * p / d1) * std::pow(d1 / d2, 0.5 * d2) *
                       std::pow(res.W_mass, 2.0 - 2.0 * p);
    res.C_cgn = std::pow(C2p, 1.0 / (2.0 * p));

    // measured quotient at the extremal
    const double DW = inner_real(nonlinear(W), W);
    res.quotient = std::pow(DW, 1.0 / (2.0 * p)) /
                   (std::pow(grad_sq(W), 0.5 * ce.eta_p) *
                    std::pow(mass(W), 0.5 * (1.0 - ce.eta_p)));
    if (W_out) *W_out = std::move(W);
    return res;
}

// ---------------------------------------------------------------------------
// Regime classification

RegimeReport validate_regime(const ProblemParams& params, const SharpConstants& constants) {
    params.validate();
    const CriticalExponents ce = derive_exponents(params);
    RegimeReport rep;
    rep.kappa_standard = (params.kappa == 1.0);

    auto cond = [&](bool ok, const std::string& text) {
        (ok ? rep.satisfied : rep.violated).push_back(text);
        return ok;
    };

    const bool nonlocal_active = params.kappa > 0.0;
    bool p_ok = true;
    if (nonlocal_active) {
        p_ok &= cond(params.p > ce.p_star, "p > p* = 1+(2+alpha)/N");
        if (params.N >= 3)
            p_ok &= cond(params.p <= ce.p_bar.value(), "p <= p_bar = (N+alpha)/(N-2)");
        else
            rep.satisfied.push_back("p < p_bar (unbounded for N <= 2)");
    } else {
        rep.satisfied.push_back("kappa = 0: nonlocal term absent, p-conditions vacuous");
    }

    bool q_ok = cond(params.q >= ce.q_star - 1e-12 * ce.q_star, "q >= q* = 2+4/N");
    if (ce.two_star.is_unbounded())
        rep.satisfied.push_back("q < 2* (unbounded for N <= 2)");
    else
        q_ok &= cond(params.q < ce.two_star.value(), "q < 2* = 2N/(N-2)");

    const bool mass_critical = is_mass_critical_q(params, ce);
    if (!mass_critical) {
        rep.satisfied.push_back("q > q*: no mass threshold applies");
        if (!nonlocal_active) {
            // pure NLS branch: supercritical-q existence machinery still applies
            rep.regime = q_ok ? Regime::existence : Regime::out_of_theory;
            return rep;
        }
        rep.regime = (p_ok && q_ok) ? Regime::existence : Regime::out_of_theory;
        return rep;
    }

    if (!constants.a_star)
        throw std::invalid_argument(
            "validate_regime: constant required (a_star must be computed when q = q*)");
    const double thr = std::pow(constants.a_star->value, 4.0 / params.N);
    const double lhs = params.mu * std::pow(params.a, 4.0 / params.N);
    rep.threshold_ratio = lhs / thr;
    if (!nonlocal_active) {
        rep.violated.push_back("kappa = 0 with q = q*: mass-critical NLS, outside scope");
        rep.regime = Regime::out_of_theory;
        return rep;
    }
    if (!(p_ok && q_ok)) {
        rep.regime = Regime::out_of_theory;
        return rep;
    }
    if (lhs < thr) {
        rep.satisfied.push_back("mu a^{4/N} < (a_N*)^{4/N}");
        rep.regime = Regime::existence;
    } else {
        rep.satisfied.push_back("mu a^{4/N} >= (a_N*)^{4/N}");
        rep.regime = Regime::nonexistence;
    }
    return rep;
}

SharpConstants compute_constants(const ProblemParams& params) {
    params.validate();
    const CriticalExponents ce = derive_exponents(params);
    SharpConstants sc;
    sc.A_alpha = ConstantValue{riesz_constant(params.N, params.alpha),
                               Provenance::closed_form, 1e-13};
    sc.C_hls = ConstantValue{hls_constant(params.N, params.alpha),
                             Provenance::closed_form, 1e-13};
    const bool q_subcritical = ce.two_star.is_unbounded() || params.q < ce.two_star.value();
    if (q_subcritical) {
        GnResult g = gn_constant(params.N, params.q);
        sc.C_gn = ConstantValue{g.C_gn, Provenance::shooting, g.error * g.C_gn};
    }
    GnResult gs = gn_constant(params.N, ce.q_star);
    sc.a_star = ConstantValue{gs.Q_mass, Provenance::shooting, gs.error * gs.Q_mass};
    if (params.N >= 3) {
        SobolevConstants sob = sobolev_constants(params.N, params.alpha);
        sc.S = ConstantValue{sob.S, Provenance::closed_form, sob.quadrature_error * sob.S};
        sc.S_alpha = ConstantValue{sob.S_alpha, Provenance::closed_form,
                                   sob.quadrature_error * sob.S_alpha};
    }
    return sc;
}

} // namespace choq
