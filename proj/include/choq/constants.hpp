#ifndef CHOQ_CONSTANTS_HPP
#define CHOQ_CONSTANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "choq/exponents.hpp"

namespace choq {

class Field;
struct Grid;

enum class Provenance { closed_form, shooting, grid_solve };
std::string provenance_name(Provenance p);

struct ConstantValue {
    double value = 0.0;
    Provenance provenance = Provenance::closed_form;
    double error = 0.0; ///< estimated absolute error
};

/// Sharp constants of the inequalities the energy estimates rest on.
struct SharpConstants {
    std::optional<ConstantValue> A_alpha; ///< Riesz normalization A_α(N)
    std::optional<ConstantValue> C_hls;   ///< diagonal HLS constant C_α(N)
    std::optional<ConstantValue> C_gn;    ///< Gagliardo-Nirenberg C_{N,q}
    std::optional<ConstantValue> a_star;  ///< critical mass ‖Q_{q*}‖₂
    std::optional<ConstantValue> C_cgn;   ///< convolution GN constant C_{α,p}
    std::optional<ConstantValue> S;       ///< Sobolev constant (N >= 3)
    std::optional<ConstantValue> S_alpha; ///< nonlocal Sobolev constant (N >= 3)
};

/// A_α(N) = Γ((N-α)/2) / (Γ(α/2) π^{N/2} 2^α), 0 < α < N.
double riesz_constant(int N, double alpha);

/// Diagonal-case sharp Hardy-Littlewood-Sobolev constant
/// C_β(N) = π^{(N-β)/2} Γ(β/2)/Γ((N+β)/2) (Γ(N/2)/Γ(N))^{-β/N}, 0 < β < N.
double hls_constant(int N, double beta);

// ---------------------------------------------------------------------------
// Radial shooting for the NLS ground state Q_r of -ΔQ + Q = |Q|^{r-2}Q.

struct ShootingOptions {
    double r_max = 30.0;      ///< radial domain [0, r_max]
    double step = 1e-3;       ///< RK4 step
    double bisect_tol = 1e-13;///< relative tolerance on the shooting parameter
    int max_bracket = 200;    ///< bracket-expansion budget
};

struct GnResult {
    double C_gn = 0.0;     ///< sharp constant C_{N,r}
    double Q_mass = 0.0;   ///< ‖Q_r‖₂ (equals a_N* at r = q*)
    double Q0 = 0.0;       ///< Q_r(0)
    double error = 0.0;    ///< estimated relative error of Q_mass
    std::vector<double> radii;   ///< sampled radial profile (for grid seeding)
    std::vector<double> values;
    /// linear interpolation of the profile (0 beyond the stored range)
    double profile(double rho) const;
};

/// Computes Q_r by bisection shooting on Q(0) and returns C_{N,r} with ‖Q_r‖₂.
/// Requires 2 < r (< 2N/(N-2) when N >= 3). Throws on bracket failure.
GnResult gn_constant(int N, double r, const ShootingOptions& opt = {});

// ---------------------------------------------------------------------------
// Grid gradient-flow solve for the Choquard ground state W_p of
// -ΔW + W = (I_α∗|W|^p)|W|^{p-2}W, and the constant C_{α,p}.

struct CgnOptions {
    int max_iters = 4000;
    double residual_tol = 1e-9; ///< relative stationarity residual
    double step0 = 1.0;
    double backtrack = 0.5;
};

struct CgnResult {
    bool converged = false;
    double C_cgn = 0.0;     ///< from the closed formula with the measured ‖W_p‖₂
    double W_mass = 0.0;    ///< R_p = ‖W_p‖₂
    double quotient = 0.0;  ///< measured GN quotient at the computed W_p
    double residual = 0.0;
    int iterations = 0;
};

CgnResult choquard_gn_constant(const ProblemParams& params, const Grid& grid,
                               const CgnOptions& opt = {});
/// The computed extremal itself (for inequality tests against random fields).
CgnResult choquard_gn_constant(const ProblemParams& params, const Grid& grid,
                               const CgnOptions& opt, Field* W_out);

// ---------------------------------------------------------------------------

struct SobolevConstants {
    double S = 0.0;
    double S_alpha = 0.0;
    double quadrature_error = 0.0; ///< two-resolution self-consistency gap
};

/// S from the Rayleigh quotient of the explicit extremal (radial quadrature),
/// S_α = S / (A_α(N) C_α(N))^{1/p̄}. Requires N >= 3.
SobolevConstants sobolev_constants(int N, double alpha);

// ---------------------------------------------------------------------------

enum class Regime { existence, nonexistence, out_of_theory };
std::string regime_name(Regime r);

struct RegimeReport {
    Regime regime = Regime::out_of_theory;
    std::vector<std::string> satisfied;
    std::vector<std::string> violated;
    /// μ a^{4/N} / (a_N*)^{4/N}; only present when q = q*.
    std::optional<double> threshold_ratio;
    bool kappa_standard = true; ///< κ = 1, the equation the theorems cover
};

/// Classifies params against the existence/nonexistence hypotheses.
/// Needs constants.a_star when q = q*.
RegimeReport validate_regime(const ProblemParams& params, const SharpConstants& constants);

/// Convenience: everything computable for these params except C_cgn
/// (the grid solve is requested separately, it needs a grid).
SharpConstants compute_constants(const ProblemParams& params);

} // namespace choq

#endif
