#ifndef CHOQ_BUBBLE_HPP
#define CHOQ_BUBBLE_HPP

#include <string>
#include <vector>

#include "choq/constants.hpp"
#include "choq/functionals.hpp"

namespace choq {

/// Cut-off Aubin-Talenti family u_ε = φ·U_ε with
/// U_ε(x) = (N(N-2)ε²)^{(N-2)/4} (ε²+|x|²)^{-(N-2)/2}, φ ≡ 1 on B₁ and
/// φ ≡ 0 outside B₂ with a C¹ cubic blend between.
struct BubbleSpec {
    double epsilon = 0.1;
    double cutoff_inner = 1.0;
    double cutoff_outer = 2.0;
    double mass_target = 1.0; ///< a

    void validate() const;
};

/// Samples φ·U_ε on a 3-d grid. Cells whose center sits within 8ε of the
/// origin are cell-averaged so the core quadrature stays honest near the
/// resolution limit. Throws when dim != 3 or ε < h (core narrower than 4h).
Field bubble(const BubbleSpec& spec, const Grid& grid);

/// The four integrals of u_ε = φ·U_ε by adaptive radial quadrature — exact
/// to round-off for any ε, independent of a grid. nonlocal uses the
/// spherical reduction of the Riesz double integral.
struct BubbleIntegrals {
    double mass = 0.0;     ///< ∫|u_ε|²
    double kinetic = 0.0;  ///< ∫|∇u_ε|²
    double nonlocal = 0.0; ///< ∫(I_α∗|u_ε|^p̄)|u_ε|^p̄
    double local = 0.0;    ///< ∫|u_ε|^q
};
BubbleIntegrals bubble_integrals(const BubbleSpec& spec, double alpha, double q);

/// Mass-normalized v_ε(x) = (a^{-1}‖u_ε‖₂)^{(N-2)/2} u_ε(a^{-1}‖u_ε‖₂ x),
/// sampled analytically and renormalized so ∫|v_ε|² = a² exactly.
/// Throws when the rescaled support does not fit the box.
Field normalized_bubble(const BubbleSpec& spec, const Grid& grid);

struct GapRow {
    double epsilon = 0.0;
    bool ok = false;
    std::string note;      ///< failure reason when !ok
    double max_psi = 0.0;  ///< max_s Ψ_{v_ε}(s)
    double s_star = 0.0;
    double margin = 0.0;   ///< max_psi - level
};

struct GapReport {
    double level = 0.0;   ///< (2+α)/(2(N+α)) S_α^{(N+α)/(2+α)}
    double S_alpha = 0.0;
    std::vector<GapRow> rows;
    bool pass = false;    ///< some ε beats the level beyond tolerance
    double tolerance = 1e-3;
};

/// Lemma-4.3 check at p = p̄: fiber-maximizes E(s⋆v_ε) for each ε and
/// reports the margin to the critical level. Passes iff some ε achieves
/// margin < -tolerance·level.
GapReport critical_gap_check(const ProblemParams& params, const CriticalExponents& ce,
                             const std::vector<double>& eps_list, const Grid& grid,
                             double mass_target, double tolerance = 1e-3);

} // namespace choq

#endif
