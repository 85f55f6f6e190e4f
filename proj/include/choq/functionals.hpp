#ifndef CHOQ_FUNCTIONALS_HPP
#define CHOQ_FUNCTIONALS_HPP

#include "choq/exponents.hpp"
#include "choq/spectral.hpp"

namespace choq {

/// The three integrals E and P are built from, plus both functionals.
/// E = kinetic/2 - κ·nonlocal/(2p) - μ·local/q,
/// P = kinetic - κ·η_p·nonlocal - μ·γ_q·local.
struct EnergyBreakdown {
    double kinetic = 0.0;  ///< ∫|∇u|²
    double nonlocal = 0.0; ///< ∫(I_α∗|u|^p)|u|^p
    double local = 0.0;    ///< ∫|u|^q
    double energy = 0.0;   ///< E(u)
    double pohozaev = 0.0; ///< P(u)
};

EnergyBreakdown energy(const Field& u, const ProblemParams& params,
                       const CriticalExponents& ce, ConvolveDiag* diag = nullptr);

/// Assembles E and P from already-computed integrals.
EnergyBreakdown assemble_breakdown(double kinetic, double nonlocal, double local,
                                   const ProblemParams& params, const CriticalExponents& ce);

/// Ψ_u(s) = E(s⋆u) and P(s⋆u), evaluated analytically from the cached
/// integrals of u (exact in s, no resampling).
struct FiberPoint {
    double psi = 0.0;
    double p_of_s = 0.0;
};
FiberPoint fiber_value(const EnergyBreakdown& bd, const ProblemParams& params,
                       const CriticalExponents& ce, double s);

/// Lagrange multiplier λ = (kinetic - κ·nonlocal - μ·local)/mass.
double multiplier(const EnergyBreakdown& bd, double mass_value, const ProblemParams& params);
double multiplier(const Field& u, const ProblemParams& params, const CriticalExponents& ce);

/// E'(u) = -Δu - κ(I_α∗|u|^p)|u|^{p-2}u - μ|u|^{q-2}u (modulus powers on ℂ).
Field euler_lagrange_gradient(const Field& u, const ProblemParams& params,
                              const CriticalExponents& ce);

/// One full evaluation sharing the single Riesz convolution between the
/// breakdown and the gradient.
struct Evaluation {
    EnergyBreakdown bd;
    Field gradient;     ///< E'(u)
    double mass = 0.0;
    double lambda = 0.0;
    ConvolveDiag diag;
};
Evaluation evaluate(const Field& u, const ProblemParams& params, const CriticalExponents& ce,
                    bool with_gradient = true);

struct ResidualPair {
    double pde = 0.0;               ///< ‖E'(u) - λu‖₂ / ‖u‖_{H¹}
    double pohozaev_identity = 0.0; ///< relative mismatch of the Pohožaev identity
};
ResidualPair residuals(const Field& u, const ProblemParams& params,
                       const CriticalExponents& ce);

} // namespace choq

#endif
