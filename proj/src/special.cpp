#include "choq/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace choq {

namespace {

// Lanczos coefficients for g = 4.7421875, n = 15 (Godfrey's tabulation).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

double lanczos_sum(double x) {
    double s = kLanczos[0];
    for (int i = 1; i < 15; ++i) s += kLanczos[i] / (x + i);
    return s;
}

} // namespace

double log_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("log_gamma: nonpositive integer argument");
    if (x < 0.5) {
        // reflection: Γ(x)Γ(1-x) = π/sin(πx)
        return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) -
               log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(lanczos_sum(z));
}

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_fn: nonpositive integer argument");
    if (x < 0.5)
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    return std::exp(log_gamma(x));
}

double unit_sphere_area(int N) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / gamma_fn(0.5 * N);
}

Quadrature gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    // Newton iteration on Legendre polynomials, nodes from the Chebyshev guess.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = 0.5 * (b - a) * (-x) + 0.5 * (a + b);
        q.weights[i] = (b - a) / ((1.0 - x * x) * pp * pp);
    }
    return q;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    Quadrature q = gauss_legendre(n, a, b);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += q.weights[i] * f(q.nodes[i]);
    return s;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace choq
