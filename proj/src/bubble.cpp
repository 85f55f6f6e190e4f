#include "choq/bubble.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "choq/solver.hpp"
#include "choq/special.hpp"

namespace choq {

void BubbleSpec::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("BubbleSpec: epsilon must be > 0");
    if (!(cutoff_inner < cutoff_outer))
        throw std::invalid_argument("BubbleSpec: cutoff_inner must be < cutoff_outer");
    if (!(epsilon <= 0.5 * cutoff_inner))
        throw std::invalid_argument("BubbleSpec: epsilon must be <= cutoff_inner/2");
    if (!(mass_target > 0.0)) throw std::invalid_argument("BubbleSpec: mass_target must be > 0");
}

namespace {

struct BubbleShape {
    double eps, r1, r2, amp; // amp = (N(N-2)ε²)^{(N-2)/4}, N = 3

    double cutoff(double r) const {
        if (r <= r1) return 1.0;
        if (r >= r2) return 0.0;
        const double t = (r - r1) / (r2 - r1);
        return 1.0 - t * t * (3.0 - 2.0 * t); // C¹ cubic blend
    }
    double operator()(double r) const {
        if (r >= r2) return 0.0;
        return cutoff(r) * amp / std::sqrt(eps * eps + r * r);
    }
};

BubbleShape make_shape(const BubbleSpec& spec) {
    // N = 3: (3·1·ε²)^{1/4} / (ε²+r²)^{1/2}
    return BubbleShape{spec.epsilon, spec.cutoff_inner, spec.cutoff_outer,
                       std::pow(3.0 * spec.epsilon * spec.epsilon, 0.25)};
}

// samples f(|b·x|-style radius) on the grid with cell averaging near the core
Field sample_radial_3d(const Grid& grid, const BubbleShape& f, double arg_scale,
                       double core_radius) {
    static const Quadrature sub = gauss_legendre(5, -0.5, 0.5);
    Field u(grid);
    const double h = grid.spacing();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto x = grid.point(i);
        double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        double r = std::sqrt(r2) * arg_scale;
        if (r <= core_radius) {
            double acc = 0.0;
            for (std::size_t a = 0; a < sub.nodes.size(); ++a)
                for (std::size_t b = 0; b < sub.nodes.size(); ++b)
                    for (std::size_t c = 0; c < sub.nodes.size(); ++c) {
                        const double xx = x[0] + sub.nodes[a] * h;
                        const double yy = x[1] + sub.nodes[b] * h;
                        const double zz = x[2] + sub.nodes[c] * h;
                        const double rr =
                            std::sqrt(xx * xx + yy * yy + zz * zz) * arg_scale;
                        acc += sub.weights[a] * sub.weights[b] * sub.weights[c] * f(rr);
                    }
            u[i] = cdouble(acc, 0.0); // weights integrate to 1 over the unit cell
        } else {
            u[i] = cdouble(f(r), 0.0);
        }
    }
    return u;
}

} // namespace

Field bubble(const BubbleSpec& spec, const Grid& grid) {
    spec.validate();
    grid.validate();
    if (grid.dim != 3) throw std::invalid_argument("bubble: grid must be 3-dimensional");
    const double h = grid.spacing();
    if (spec.epsilon < h)
        throw std::invalid_argument("bubble: epsilon below grid resolution (core narrower than 4h)");
    if (spec.cutoff_outer >= grid.half_length)
        throw std::invalid_argument("bubble: cutoff_outer must fit inside the box");
    BubbleShape f = make_shape(spec);
    return sample_radial_3d(grid, f, 1.0, 8.0 * spec.epsilon);
}

namespace {

// radial panels refined geometrically around the core scale ε
std::vector<double> bubble_panels(const BubbleSpec& spec) {
    std::vector<double> edges{0.0};
    double r = 0.25 * spec.epsilon;
    while (r < spec.cutoff_inner) {
        edges.push_back(r);
        r *= 2.0;
    }
    edges.push_back(spec.cutoff_inner);
    edges.push_back(0.5 * (spec.cutoff_inner + spec.cutoff_outer));
    edges.push_back(spec.cutoff_outer);
    return edges;
}

double radial_integral(const BubbleSpec& spec, const std::function<double(double)>& f) {
    const auto edges = bubble_panels(spec);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        acc += integrate_gl(f, edges[i], edges[i + 1], 32);
    return acc;
}

} // namespace

BubbleIntegrals bubble_integrals(const BubbleSpec& spec, double alpha, double q) {
    spec.validate();
    if (!(alpha > 0.0 && alpha < 3.0))
        throw std::invalid_argument("bubble_integrals: alpha must lie in (0, 3)");
    BubbleShape f = make_shape(spec);
    const double pbar = (3.0 + alpha); // p̄ = (N+α)/(N-2) at N = 3
    const double fourpi = 4.0 * std::numbers::pi;

    auto deriv = [&](double r) {
        // d/dr [φ(r) amp (ε²+r²)^{-1/2}]
        const double g = f.eps * f.eps + r * r;
        const double u = f.amp / std::sqrt(g);
        const double du = -f.amp * r / (g * std::sqrt(g));
        double phi = f.cutoff(r), dphi = 0.0;
        if (r > f.r1 && r < f.r2) {
            const double t = (r - f.r1) / (f.r2 - f.r1);
            dphi = -6.0 * t * (1.0 - t) / (f.r2 - f.r1);
        }
        return dphi * u + phi * du;
    };

    BubbleIntegrals out;
    out.mass = fourpi * radial_integral(spec, [&](double r) { return f(r) * f(r) * r * r; });
    out.kinetic = fourpi * radial_integral(spec, [&](double r) {
        const double d = deriv(r);
        return d * d * r * r;
    });
    out.local = fourpi * radial_integral(spec, [&](double r) {
        return std::pow(f(r), q) * r * r;
    });

    // NL = A · 8π²/(α-1) ∫∫ r s ρ(r)ρ(s) [(r+s)^{α-1} - |r-s|^{α-1}] dr ds,
    // the spherical average of the kernel in closed form (log limit at α = 1)
    const double A = riesz_constant(3, alpha);
    auto rho = [&](double r) { return std::pow(f(r), pbar); };
    auto kernel_avg = [&](double r, double s) {
        const double sum = r + s, diff = std::abs(r - s);
        if (std::abs(alpha - 1.0) < 1e-9)
            return (diff < 1e-300) ? 0.0 : std::log(sum / diff);
        return (std::pow(sum, alpha - 1.0) - std::pow(diff, alpha - 1.0)) / (alpha - 1.0);
    };
    const auto edges = bubble_panels(spec);
    double I = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Quadrature qo = gauss_legendre(32, edges[i], edges[i + 1]);
        for (std::size_t a = 0; a < qo.nodes.size(); ++a) {
            const double r = qo.nodes[a];
            const double wr = qo.weights[a] * r * rho(r);
            double inner = 0.0;
            for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
                double lo = edges[j], hi = edges[j + 1];
                // split at the kernel kink s = r
                for (int piece = 0; piece < 2; ++piece) {
                    double a2 = lo, b2 = hi;
                    if (r > lo && r < hi) {
                        a2 = piece == 0 ? lo : r;
                        b2 = piece == 0 ? r : hi;
                    } else if (piece == 1) {
                        continue;
                    }
                    inner += integrate_gl(
                        [&](double s) { return s * rho(s) * kernel_avg(r, s); }, a2, b2, 24);
                }
            }
            I += wr * inner;
        }
    }
    out.nonlocal = A * 8.0 * std::numbers::pi * std::numbers::pi * I;
    return out;
}

Field normalized_bubble(const BubbleSpec& spec, const Grid& grid) {
    Field u_eps = bubble(spec, grid);
    const double norm2 = std::sqrt(mass(u_eps));
    const double b = norm2 / spec.mass_target; // a^{-1}‖u_ε‖₂
    const double support = spec.cutoff_outer / b;
    if (support >= 0.98 * grid.half_length)
        throw std::invalid_argument("normalized_bubble: rescaled support exceeds the box");
    BubbleShape f = make_shape(spec);
    Field v = sample_radial_3d(grid, f, b, 8.0 * spec.epsilon / b);
    const double amp = std::pow(b, 0.5); // b^{(N-2)/2}, N = 3
    for (auto& z : v.values()) z *= amp;
    return renormalize_mass(v, spec.mass_target * spec.mass_target);
}

GapReport critical_gap_check(const ProblemParams& params, const CriticalExponents& ce,
                             const std::vector<double>& eps_list, const Grid& grid,
                             double mass_target, double tolerance) {
    params.validate();
    if (params.N != 3 || grid.dim != 3)
        throw std::invalid_argument("critical_gap_check: N = 3 grids only");
    if (ce.p_bar.is_unbounded() ||
        std::abs(params.p - ce.p_bar.value()) > 1e-12 * ce.p_bar.value())
        throw std::invalid_argument("critical_gap_check: requires p = p_bar");

    SobolevConstants sob = sobolev_constants(params.N, params.alpha);
    GapReport rep;
    rep.S_alpha = sob.S_alpha;
    rep.tolerance = tolerance;
    const double expo = (params.N + params.alpha) / (2.0 + params.alpha);
    rep.level = (2.0 + params.alpha) / (2.0 * (params.N + params.alpha)) *
                std::pow(sob.S_alpha, expo);

    for (double eps : eps_list) {
        GapRow row;
        row.epsilon = eps;
        BubbleSpec spec;
        spec.epsilon = eps;
        spec.mass_target = mass_target;
        try {
            // integrals of u_ε by radial quadrature; those of the
            // mass-normalized v_ε follow from the exact scalings
            // (kinetic and nonlocal invariant, local picks up b^{q/2-3})
            BubbleIntegrals bi = bubble_integrals(spec, params.alpha, params.q);
            const double b = std::sqrt(bi.mass) / mass_target;
            const double local_v = std::pow(b, 0.5 * params.q - 3.0) * bi.local;
            EnergyBreakdown bd =
                assemble_breakdown(bi.kinetic, bi.nonlocal, local_v, params, ce);
            const double s = fiber_project(bd, params, ce);
            row.s_star = s;
            row.max_psi = fiber_value(bd, params, ce, s).psi;
            row.margin = row.max_psi - rep.level;
            row.ok = true;
            // grid cross-check where the sampled field resolves the core
            if (eps >= grid.spacing() && spec.cutoff_outer < grid.half_length) {
                Field u = bubble(spec, grid);
                Field rhog = modulus_pow(u, params.p);
                const double nl_grid = inner_real(riesz_convolve(rhog, params.alpha), rhog);
                char buf[64];
                std::snprintf(buf, sizeof(buf), "grid nonlocal ratio %.4f",
                              nl_grid / bi.nonlocal);
                row.note = buf;
            }
        } catch (const std::exception& e) {
            row.ok = false;
            row.note = e.what();
        }
        rep.rows.push_back(row);
    }
    for (const auto& r : rep.rows)
        if (r.ok && r.margin < -tolerance * rep.level) rep.pass = true;
    return rep;
}

} // namespace choq
