#ifndef CHOQ_SYMMETRY_HPP
#define CHOQ_SYMMETRY_HPP

#include <array>

#include "choq/functionals.hpp"

namespace choq {

/// Closed half-space H = {x : x·normal <= offset}. polarize() requires the
/// boundary plane to be grid-aligned: normal along a coordinate axis and
/// offset on a multiple of h/2, so the reflection maps cells to cells exactly.
struct HalfSpace {
    std::array<double, 3> normal{1.0, 0.0, 0.0};
    double offset = 0.0;
};

/// Schwartz symmetrization: cell values sorted descending, reassigned to
/// cells by distance from the box center. Equimeasurable by construction.
/// Input must be real and nonnegative.
Field schwartz_rearrange(const Field& u);

/// Polarization u^H: max of u and its reflection on H, min outside.
Field polarize(const Field& u, const HalfSpace& H);

/// u ∘ σ_H (the reflected field), same alignment contract as polarize.
Field reflect_halfspace(const Field& u, const HalfSpace& H);

struct SymmetryReport {
    std::array<double, 3> center{0.0, 0.0, 0.0}; ///< mass centroid of |u|²
    double radial_deviation = 0.0;  ///< rel. L² distance to the best radial
                                    ///< non-increasing fit about the center
    double rearrangement_gap = 0.0; ///< E(|u|*) - E(|u|), relative to |E(|u|)|
    double phase_deviation = 0.0;   ///< mass-weighted circular variance of arg u
    double theta = 0.0;             ///< best constant phase
};

SymmetryReport symmetry_report(const Field& u, const ProblemParams& params,
                               const CriticalExponents& ce);

/// Lemma-4.4-style dichotomy certificate:
/// min(‖u^H-u‖₂, ‖u^H-u∘σ_H‖₂)/‖u‖₂ for one aligned half-space.
double polarization_dichotomy(const Field& u_abs, const HalfSpace& H);

/// integer-cell circular shift placing the node nearest to `center` at the origin
Field recenter_to_node(const Field& u, const std::array<double, 3>& center);

/// weighted monotone non-increasing projection (pool-adjacent-violators)
std::vector<double> isotonic_nonincreasing(const std::vector<double>& y,
                                           const std::vector<double>& w);

/// radial profile about the box center: exact-radius groups (radius, mean |u|)
std::vector<std::pair<double, double>> radial_profile(const Field& u);

} // namespace choq

#endif
