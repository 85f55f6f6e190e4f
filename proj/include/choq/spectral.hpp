#ifndef CHOQ_SPECTRAL_HPP
#define CHOQ_SPECTRAL_HPP

#include <optional>
#include <string>

#include "choq/field.hpp"

namespace choq {

/// ∫|u|² by the midpoint rule.
double mass(const Field& u);

/// ‖u‖_t = (∫|u|^t)^{1/t}, t >= 1.
double lp_norm(const Field& u, double t);

/// ∫|u|^t (the raw integral, not the norm).
double lp_integral(const Field& u, double t);

/// ∫|∇u|² evaluated spectrally (Parseval-consistent with mass()).
double grad_sq(const Field& u);

/// Spectral Laplacian Δu.
Field laplacian(const Field& u);

/// (c - Δ)^{-1} u, c > 0 (screened-Poisson inverse, used as the H¹
/// preconditioner of the descent flows).
Field helmholtz_inverse(const Field& u, double c);

/// Diagnostics attached by riesz_convolve.
struct ConvolveDiag {
    bool boundary_warning = false; ///< density tail above 1e-8 of its max
    double boundary_ratio = 0.0;   ///< max boundary-shell value / max value
};

/// Free-space Riesz potential I_α ∗ density for a real nonnegative density.
/// Zero-pads to (3M)^dim and convolves with the radius-(6-2√3)L truncated
/// kernel A_α/|x|^{N-α} realized through its analytic Fourier transform, so
/// the scheme is free of kernel aliasing (spectral accuracy on smooth
/// decaying densities). Linear and positivity-preserving on such data.
/// Throws on complex/negative input or α outside (0, dim).
Field riesz_convolve(const Field& density, double alpha, ConvolveDiag* diag = nullptr);

/// The realized real-space kernel table on the padded (3M)^dim lattice
/// (row-major, index offsets modulo 3M). riesz_convolve(ρ) equals the direct
/// sum Σ_j table[(i-j) mod 3M] ρ_j h^dim exactly, up to transform round-off.
std::vector<double> riesz_kernel_table(const Grid& g, double alpha);

/// Analytic cell average of A_α |x|^{α-dim} over the h-cell at the origin
/// (the nonsingular stand-in for the kernel's central sample; the realized
/// table's origin value approximates it).
double riesz_singular_cell_average(int dim, double alpha, double h);

/// Mass-preserving dilation (s⋆u)(x) = e^{dim·s/2} u(e^s x) by trigonometric
/// resampling; the result is renormalized to the input mass so ‖s⋆u‖₂ = ‖u‖₂
/// holds exactly. |s| must not exceed s_max.
Field dilate(const Field& u, double s, double s_max = 3.0);

/// u scaled so that ∫|u|² = target_mass (throws on the zero field).
Field renormalize_mass(const Field& u, double target_mass);

/// real inner product Re ∫ u v̄
double inner_real(const Field& u, const Field& v);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);

/// |u| as a real field
Field modulus(const Field& u);
/// |u|^t as a real field
Field modulus_pow(const Field& u, double t);

} // namespace choq

#endif
