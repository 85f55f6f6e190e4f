#ifndef CHOQ_SPECIAL_HPP
#define CHOQ_SPECIAL_HPP

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace choq {

/// Gamma function via a 15-term Lanczos approximation (g = 4.7421875),
/// relative accuracy better than 1e-13 on the positive real axis.
double gamma_fn(double x);
double log_gamma(double x);

/// Surface area of the unit sphere S^{N-1} in R^N.
double unit_sphere_area(int N);

/// Nodes and weights of n-point Gauss-Legendre quadrature on [a, b].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_legendre(int n, double a, double b);

/// ∫_a^b f with n-point Gauss-Legendre.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

/// FNV-1a 64-bit content hash (reproducibility stamps in reports).
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace choq

#endif
