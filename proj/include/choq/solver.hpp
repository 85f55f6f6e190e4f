#ifndef CHOQ_SOLVER_HPP
#define CHOQ_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "choq/constants.hpp"
#include "choq/functionals.hpp"
#include "choq/symmetry.hpp"

namespace choq {

struct SolverConfig {
    double step0 = 1.0;          ///< initial line-search step
    double backtrack = 0.5;      ///< step shrink factor in (0,1)
    double grad_tol = 5e-5;      ///< tangent-gradient tolerance (relative)
    double pohozaev_tol = 1e-8;  ///< |P|/kinetic tolerance
    int max_iters = 2000;
    std::uint64_t seed = 1234;
    double s_bracket = 1.0;      ///< initial fiber root bracket half-width
    bool precondition = true;    ///< H¹ (screened-Poisson) preconditioner
    double s_max = 3.0;          ///< dilation range guard
    bool small_gradient_probe = true; ///< sample the small-kinetic region after solving

    void validate() const;
};

/// Thrown when the fiber map has no projection root (signals parameters
/// outside the existence regime, e.g. q = q* at or above the mass threshold).
struct FiberProjectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unique root s_u of s ↦ P(s⋆u) from the analytic fiber form.
/// Sign contract: P(u) <= 0 ⟺ s_u <= 0.
double fiber_project(const EnergyBreakdown& bd, const ProblemParams& params,
                     const CriticalExponents& ce, double s_bracket = 1.0);

struct HistoryRow {
    int iteration = 0;
    double energy = 0.0;
    double abs_p = 0.0;
    double grad_norm = 0.0;
};

struct SolveReport {
    Field field;
    double c_po = 0.0;  ///< final E(u); an upper-bound estimate of c^po
    double lambda = 0.0;
    int iterations = 0;
    bool converged = false;
    ResidualPair residuals;
    double pohozaev_rel = 0.0; ///< |P|/kinetic at the final iterate
    double mass_drift = 0.0;   ///< | ∫|u|² - a² | / a²
    std::vector<HistoryRow> history;
    SymmetryReport symmetry;
    EnergyBreakdown breakdown;
    bool boundary_warning = false;
    /// largest probed k with sampled w ∈ S_a, ∫|∇w|² < k keeping
    /// 0 < E(w) < c_po and P(w) > 0 (small-gradient region diagnostic)
    double small_gradient_k = 0.0;
    /// fraction of the shape's kinetic energy above half-Nyquist (resolution
    /// diagnostic; values near one mean lattice-scale collapse)
    double spectral_tail_fraction = 0.0;
    std::string termination; ///< "converged" | "max_iters" | "line_search_stalled"
};

/// Named initial data: "gaussian", "two_bump", "two_bump_offset", "random".
Field make_named_init(const Grid& grid, const std::string& name, const ProblemParams& params,
                      std::uint64_t seed);

/// Minimizes E over the Pohožaev manifold {u ∈ S_a : P(u) = 0}:
/// renormalize mass, project onto the manifold along the dilation fiber,
/// descend the tangent gradient with a backtracking line search.
SolveReport minimize_on_pohozaev(const ProblemParams& params, const CriticalExponents& ce,
                                 const Field& init, const SolverConfig& config);

/// Rigorous coercivity lower bound for inf E over the Pohožaev manifold at
/// p = p_bar, assembled from the nonlocal Sobolev constant and the
/// Gagliardo-Nirenberg constant of the local term. Positive precisely under
/// the existence hypotheses.
double pohozaev_level_lower_bound(const ProblemParams& params, const CriticalExponents& ce,
                                  double S_alpha, double C_gn_q);

// ---------------------------------------------------------------------------

struct ThresholdRow {
    double mu = 0.0;
    double ratio = 0.0;  ///< μ a^{4/N} / (a_N*)^{4/N}
    double c_po = 0.0;   ///< solve value below threshold, witness infimum at/above
    bool attained = false;
    bool converged = false;
    std::string mode;    ///< "solve" | "witness"
    int witness_points = 0;
};

struct ThresholdReport {
    double a_star = 0.0;
    double threshold_mu = 0.0; ///< (a_N*)^{4/N} / a^{4/N}
    std::vector<ThresholdRow> rows;
};

/// Theorem-1.3 sweep at q = q*: solve below the mass threshold; at or above
/// it, drive a projectable witness family toward the Gagliardo-Nirenberg
/// extremal and record the infimum of the achieved manifold energies.
ThresholdReport sweep_threshold(const ProblemParams& params_template,
                                const CriticalExponents& ce, double a_star,
                                const std::vector<double>& mu_values, const Grid& grid,
                                const SolverConfig& config);

} // namespace choq

#endif
