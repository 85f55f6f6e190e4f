#include "choq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "choq/constants.hpp"
#include "choq/fft.hpp"
#include "choq/special.hpp"

namespace choq {

// ---------------------------------------------------------------------------
// Field basics

bool Field::all_finite() const {
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double Field::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double Field::boundary_max_abs() const {
    const int M = grid_.points_per_axis;
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        auto ix = grid_.unflatten(i);
        bool boundary = false;
        for (int d = 0; d < grid_.dim; ++d)
            if (ix[d] == 0 || ix[d] == M - 1) boundary = true;
        if (boundary) m = std::max(m, std::abs(values_[i]));
    }
    return m;
}

bool Field::is_real_nonnegative(double tol) const {
    const double scale = max_abs();
    const double eps = tol * std::max(scale, 1e-300);
    for (const auto& v : values_)
        if (std::abs(v.imag()) > eps || v.real() < -eps) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Quadratures and norms

double mass(const Field& u) {
    double s = 0.0;
    for (const auto& v : u.values()) s += std::norm(v);
    return s * u.grid().cell_volume();
}

double lp_integral(const Field& u, double t) {
    if (t < 1.0) throw std::invalid_argument("lp_norm: t must be >= 1");
    double s = 0.0;
    for (const auto& v : u.values()) s += std::pow(std::abs(v), t);
    return s * u.grid().cell_volume();
}

double lp_norm(const Field& u, double t) { return std::pow(lp_integral(u, t), 1.0 / t); }

namespace {

std::array<int, 3> grid_dims(const Grid& g) {
    std::array<int, 3> n{1, 1, 1};
    for (int d = 0; d < g.dim; ++d) n[d] = g.points_per_axis;
    return n;
}

// applies a spectral multiplier f(|k|²) in place
template <typename F>
void apply_multiplier(std::vector<cdouble>& hat, const Grid& g, F&& f) {
    const int M = g.points_per_axis;
    const double box = 2.0 * g.half_length;
    std::vector<double> k2axis(M);
    for (int k = 0; k < M; ++k) {
        double kk = fft::wavenumber(k, M, box);
        k2axis[k] = kk * kk;
    }
    const std::size_t tot = hat.size();
    for (std::size_t i = 0; i < tot; ++i) {
        std::size_t rest = i;
        double k2 = 0.0;
        for (int d = g.dim - 1; d >= 0; --d) {
            k2 += k2axis[rest % M];
            rest /= M;
        }
        hat[i] *= f(k2);
    }
}

} // namespace

double grad_sq(const Field& u) {
    std::vector<cdouble> hat = u.values();
    fft::forward(hat.data(), grid_dims(u.grid()), u.grid().dim);
    const Grid& g = u.grid();
    const int M = g.points_per_axis;
    const double box = 2.0 * g.half_length;
    std::vector<double> k2axis(M);
    for (int k = 0; k < M; ++k) {
        double kk = fft::wavenumber(k, M, box);
        k2axis[k] = kk * kk;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < hat.size(); ++i) {
        std::size_t rest = i;
        double k2 = 0.0;
        for (int d = g.dim - 1; d >= 0; --d) {
            k2 += k2axis[rest % M];
            rest /= M;
        }
        s += k2 * std::norm(hat[i]);
    }
    return s * g.cell_volume() / double(g.size());
}

Field laplacian(const Field& u) {
    std::vector<cdouble> hat = u.values();
    fft::forward(hat.data(), grid_dims(u.grid()), u.grid().dim);
    apply_multiplier(hat, u.grid(), [](double k2) { return -k2; });
    fft::inverse(hat.data(), grid_dims(u.grid()), u.grid().dim);
    return Field(u.grid(), std::move(hat));
}

Field helmholtz_inverse(const Field& u, double c) {
    if (c <= 0.0) throw std::invalid_argument("helmholtz_inverse: c must be > 0");
    std::vector<cdouble> hat = u.values();
    fft::forward(hat.data(), grid_dims(u.grid()), u.grid().dim);
    apply_multiplier(hat, u.grid(), [c](double k2) { return 1.0 / (c + k2); });
    fft::inverse(hat.data(), grid_dims(u.grid()), u.grid().dim);
    return Field(u.grid(), std::move(hat));
}

// ---------------------------------------------------------------------------
// Riesz potential

double riesz_singular_cell_average(int dim, double alpha, double h) {
    const double A = riesz_constant(dim, alpha);
    const double half = 0.5 * h;
    switch (dim) {
        case 1:
            return (A / alpha) * std::pow(half, alpha - 1.0);
        case 2: {
            // cell average of |x|^{α-2} over the square, reduced to the
            // octant angular integral of sec^α
            double I = integrate_gl([alpha](double th) { return std::pow(std::cos(th), -alpha); },
                                    0.0, std::numbers::pi / 4.0, 64);
            return (8.0 * A / (alpha * h * h)) * std::pow(half, alpha) * I;
        }
        case 3: {
            // solid-angle reduction: ∫_cube |x|^{α-3} = (1/α)(h/2)^α ∫_{S²} max|ω|^{-α},
            // the sphere integral written over the six cube faces
            Quadrature q = gauss_legendre(48, -1.0, 1.0);
            double I = 0.0;
            for (std::size_t i = 0; i < q.nodes.size(); ++i)
                for (std::size_t j = 0; j < q.nodes.size(); ++j) {
                    double r2 = 1.0 + q.nodes[i] * q.nodes[i] + q.nodes[j] * q.nodes[j];
                    I += q.weights[i] * q.weights[j] * std::pow(r2, 0.5 * (alpha - 3.0));
                }
            return (6.0 * A / (alpha * h * h * h)) * std::pow(half, alpha) * I;
        }
        default:
            throw std::invalid_argument("riesz_singular_cell_average: dim must be 1-3");
    }
}

namespace {

// The free-space convolution zero-pads to (3M)^dim and applies the analytic
// Fourier transform of the radius-R truncated kernel,
//   K̂_R(k) = A_α S_{N-1} k^{-α} ∫_0^{kR} t^{α-N} ... (dim-specific forms below),
// with R = (6 - 2√3) L. The padded period is 6L, so the periodized kernel
// neither wraps onto itself (R + 2√3 L ≤ 6L) nor misses any displacement two
// box points can realize beyond the density's decay range. Sampling the
// analytic symbol instead of transforming point samples removes the kernel
// aliasing that otherwise caps the convolution at second order.

int padded_size(int M) { return 3 * M; }

// running integral ∫_0^T t^β f(t) dt for f = sin, cos, or J0, tabulated at
// multiples of π with the partial panel finished by短 Gauss panels
class OscillatoryIntegral {
  public:
    enum class Kind { sine, cosine, bessel0 };

    OscillatoryIntegral(Kind kind, double beta, double t_max)
        : kind_(kind), beta_(beta) {
        const double pi = std::numbers::pi;
        n_panels_ = int(t_max / pi) + 2;
        table_.resize(std::size_t(n_panels_) + 1, 0.0);
        Quadrature gl = gauss_legendre(24, 0.0, 1.0);
        // first panel [0, π] with the substitution t = π u^p taming t^β
        // (integrand ~ t^{β+shift} at 0; p makes it ~u there)
        {
            const double p = sub_exponent();
            double acc = 0.0;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const double u = gl.nodes[i];
                const double t = pi * std::pow(u, p);
                const double jac = pi * p * std::pow(u, p - 1.0);
                acc += gl.weights[i] * std::pow(t, beta_) * osc(t) * jac;
            }
            table_[1] = acc;
        }
        for (int m = 1; m < n_panels_; ++m) {
            double acc = 0.0;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const double t = pi * (m + gl.nodes[i]);
                acc += gl.weights[i] * pi * std::pow(t, beta_) * osc(t);
            }
            table_[std::size_t(m) + 1] = table_[std::size_t(m)] + acc;
        }
        partial_gl_ = gauss_legendre(16, 0.0, 1.0);
    }

    double operator()(double T) const {
        if (T <= 0.0) return 0.0;
        const double pi = std::numbers::pi;
        int m = std::min(int(T / pi), n_panels_);
        double acc = table_[std::size_t(m)];
        const double a = m * pi;
        if (T > a) {
            if (m == 0) {
                const double p = sub_exponent();
                for (std::size_t i = 0; i < partial_gl_.nodes.size(); ++i) {
                    const double u = partial_gl_.nodes[i];
                    const double t = T * std::pow(u, p);
                    const double jac = T * p * std::pow(u, p - 1.0);
                    acc += partial_gl_.weights[i] * std::pow(t, beta_) * osc(t) * jac;
                }
            } else {
                for (std::size_t i = 0; i < partial_gl_.nodes.size(); ++i) {
                    const double t = a + (T - a) * partial_gl_.nodes[i];
                    acc += partial_gl_.weights[i] * (T - a) * std::pow(t, beta_) * osc(t);
                }
            }
        }
        return acc;
    }

  private:
    double osc(double t) const {
        switch (kind_) {
            case Kind::sine: return std::sin(t);
            case Kind::cosine: return std::cos(t);
            case Kind::bessel0: return j0(t);
        }
        return 0.0;
    }
    double sub_exponent() const {
        const double shift = (kind_ == Kind::sine) ? 1.0 : 0.0;
        return 2.0 / (beta_ + shift + 1.0); // requires β + shift + 1 > 0
    }
    Kind kind_;
    double beta_;
    int n_panels_ = 0;
    std::vector<double> table_;
    Quadrature partial_gl_;
};

struct KernelKey {
    int dim;
    int M;
    double L;
    double alpha;
    bool operator<(const KernelKey& o) const {
        if (dim != o.dim) return dim < o.dim;
        if (M != o.M) return M < o.M;
        if (L != o.L) return L < o.L;
        return alpha < o.alpha;
    }
};

std::mutex g_kernel_mutex;

double kernel_truncation_radius(const Grid& g) {
    return (6.0 - 2.0 * std::sqrt(3.0)) * g.half_length;
}

// r2c samples of K̂_R on the padded grid
std::shared_ptr<const std::vector<cdouble>> kernel_spectrum(const Grid& g, double alpha) {
    static std::map<KernelKey, std::shared_ptr<const std::vector<cdouble>>> cache;
    KernelKey key{g.dim, g.points_per_axis, g.half_length, alpha};
    {
        std::lock_guard<std::mutex> lock(g_kernel_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const int P = padded_size(g.points_per_axis);
    const double h = g.spacing();
    const double A = riesz_constant(g.dim, alpha);
    const double R = kernel_truncation_radius(g);
    const double area = unit_sphere_area(g.dim);
    const double dc = A * area * std::pow(R, alpha) / alpha;

    const double dk = 2.0 * std::numbers::pi / (P * h);
    const int half = P / 2;
    const double kmax = std::sqrt(double(g.dim)) * dk * (half + 1);

    OscillatoryIntegral::Kind kind;
    double beta;
    switch (g.dim) {
        case 1: kind = OscillatoryIntegral::Kind::cosine; beta = alpha - 1.0; break;
        case 2: kind = OscillatoryIntegral::Kind::bessel0; beta = alpha - 1.0; break;
        default: kind = OscillatoryIntegral::Kind::sine; beta = alpha - 2.0; break;
    }
    OscillatoryIntegral S(kind, beta, kmax * R);

    // |k|² = dk² (m₀²+m₁²+m₂²): evaluate the symbol once per integer lattice sum
    const std::size_t max_isum = std::size_t(g.dim) * std::size_t(half) * half + 1;
    std::vector<double> by_isum(max_isum + 1);
    by_isum[0] = dc;
    for (std::size_t s = 1; s <= max_isum; ++s) {
        const double k = dk * std::sqrt(double(s));
        by_isum[s] = A * area * std::pow(k, -alpha) * S(k * R);
    }

    std::vector<long> m1(P);
    for (int m = 0; m < P; ++m) m1[m] = (m <= half) ? m : m - P;

    std::size_t ctot = 1;
    for (int d = 0; d < g.dim - 1; ++d) ctot *= std::size_t(P);
    ctot *= std::size_t(half + 1);
    auto spec = std::make_shared<std::vector<cdouble>>(ctot);
    const int last = half + 1;
    for (std::size_t i = 0; i < ctot; ++i) {
        std::size_t rest = i;
        const long kz = long(rest % last);
        rest /= last;
        long isum = kz * kz;
        for (int d = g.dim - 2; d >= 0; --d) {
            const long mm = m1[rest % P];
            rest /= P;
            isum += mm * mm;
        }
        (*spec)[i] = cdouble(by_isum[std::size_t(isum)], 0.0);
    }

    std::lock_guard<std::mutex> lock(g_kernel_mutex);
    // adaptive re-gauging creates many box sizes; keep the cache bounded
    if (cache.size() >= 6) cache.erase(cache.begin());
    cache.emplace(key, spec);
    return spec;
}

} // namespace

std::vector<double> riesz_kernel_table(const Grid& g, double alpha) {
    const int P = padded_size(g.points_per_axis);
    std::array<int, 3> n{1, 1, 1};
    std::size_t tot = 1;
    for (int d = 0; d < g.dim; ++d) {
        n[d] = P;
        tot *= std::size_t(P);
    }
    auto spec = kernel_spectrum(g, alpha);
    std::vector<cdouble> hat = *spec;
    std::vector<double> table(tot);
    fft::inverse_c2r(hat.data(), table.data(), n, g.dim);
    // the symbol is a continuous transform; the table is its Riemann-sum
    // counterpart on the h-lattice
    const double h = g.spacing();
    double cell = 1.0;
    for (int d = 0; d < g.dim; ++d) cell *= h;
    for (auto& v : table) v /= cell;
    return table;
}

Field riesz_convolve(const Field& density, double alpha, ConvolveDiag* diag) {
    const Grid& g = density.grid();
    if (!(alpha > 0.0 && alpha < double(g.dim)))
        throw std::invalid_argument("riesz_convolve: alpha must lie in (0, dim)");
    if (!density.is_real_nonnegative())
        throw std::invalid_argument("riesz_convolve: density must be real and nonnegative");

    if (diag) {
        const double m = density.max_abs();
        const double b = density.boundary_max_abs();
        diag->boundary_ratio = (m > 0.0) ? b / m : 0.0;
        diag->boundary_warning = (m > 0.0) && (b > 1e-8 * m);
    }

    const int M = g.points_per_axis;
    const int P = padded_size(M);
    std::array<int, 3> n{1, 1, 1};
    std::size_t tot = 1;
    for (int d = 0; d < g.dim; ++d) {
        n[d] = P;
        tot *= std::size_t(P);
    }

    // density into the origin block of the padded box
    std::vector<double> pad(tot, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto ix = g.unflatten(i);
        std::size_t j = 0;
        for (int d = 0; d < g.dim; ++d) j = j * P + std::size_t(ix[d]);
        pad[j] = density[i].real();
    }

    std::size_t ctot = 1;
    for (int d = 0; d < g.dim - 1; ++d) ctot *= std::size_t(P);
    ctot *= std::size_t(P / 2 + 1);
    std::vector<cdouble> hat(ctot);
    fft::forward_r2c(pad.data(), hat.data(), n, g.dim);

    auto kspec = kernel_spectrum(g, alpha);
    for (std::size_t i = 0; i < ctot; ++i) hat[i] *= (*kspec)[i];

    fft::inverse_c2r(hat.data(), pad.data(), n, g.dim);

    // the symbol carries the continuum normalization, so the inverse
    // transform already approximates ∫ K(x-y) ρ(y) dy
    Field out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto ix = g.unflatten(i);
        std::size_t j = 0;
        for (int d = 0; d < g.dim; ++d) j = j * P + std::size_t(ix[d]);
        out[i] = cdouble(pad[j], 0.0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dilation

namespace {

// trig-interpolation matrix for one axis: out_i = Σ_k T[i*M+k] û_k.
// The interpolant is anchored at the box corner: phases use y + L, matching
// the DFT index convention x_j = -L + j h. Evaluation points that fall
// outside the box are clipped to zero; letting them wrap around the torus
// would plant ghost copies of the field in the wings.
std::vector<cdouble> dilation_matrix(const Grid& g, double s) {
    const int M = g.points_per_axis;
    const double box = 2.0 * g.half_length;
    const double scale = std::exp(s);
    std::vector<cdouble> T(std::size_t(M) * M);
    for (int i = 0; i < M; ++i) {
        const double y_phys = scale * g.coord(i);
        if (y_phys < -g.half_length || y_phys >= g.half_length) continue; // row stays zero
        const double y = y_phys + g.half_length;
        for (int k = 0; k < M; ++k) {
            const double kk = fft::wavenumber(k, M, box);
            if (k == M / 2) {
                // split Nyquist between ±k so real fields stay real
                T[std::size_t(i) * M + k] = cdouble(std::cos(kk * y) / M, 0.0);
            } else {
                T[std::size_t(i) * M + k] =
                    cdouble(std::cos(kk * y), std::sin(kk * y)) * (1.0 / M);
            }
        }
    }
    return T;
}

// contract axis `d` of the row-major array with matrix T (M x M)
void contract_axis(std::vector<cdouble>& data, const Grid& g, int d,
                   const std::vector<cdouble>& T) {
    const int M = g.points_per_axis;
    std::size_t outer = 1, inner = 1;
    for (int dd = 0; dd < d; ++dd) outer *= std::size_t(M);
    for (int dd = d + 1; dd < g.dim; ++dd) inner *= std::size_t(M);
    std::vector<cdouble> slab(std::size_t(M) * inner);
    for (std::size_t o = 0; o < outer; ++o) {
        cdouble* block = data.data() + o * std::size_t(M) * inner;
        std::fill(slab.begin(), slab.end(), cdouble(0.0, 0.0));
        for (int i = 0; i < M; ++i) {
            cdouble* dst = slab.data() + std::size_t(i) * inner;
            for (int k = 0; k < M; ++k) {
                const cdouble t = T[std::size_t(i) * M + k];
                if (t == cdouble(0.0, 0.0)) continue;
                const cdouble* src = block + std::size_t(k) * inner;
                for (std::size_t in = 0; in < inner; ++in) dst[in] += t * src[in];
            }
        }
        std::copy(slab.begin(), slab.end(), block);
    }
}

} // namespace

Field dilate(const Field& u, double s, double s_max) {
    if (std::abs(s) > s_max)
        throw std::invalid_argument("dilate: |s| exceeds s_max");
    if (s == 0.0) return u;
    const Grid& g = u.grid();
    const double m_in = mass(u);

    std::vector<cdouble> hat = u.values();
    fft::forward(hat.data(), grid_dims(g), g.dim);
    auto T = dilation_matrix(g, s);
    for (int d = 0; d < g.dim; ++d) contract_axis(hat, g, d, T);

    const double amp = std::exp(0.5 * g.dim * s);
    for (auto& v : hat) v *= amp;
    Field out(g, std::move(hat));
    const double m_out = mass(out);
    if (m_out <= 0.0) throw std::runtime_error("dilate: output mass vanished");
    const double fix = std::sqrt(m_in / m_out);
    for (auto& v : out.values()) v *= fix;
    return out;
}

// ---------------------------------------------------------------------------
// Small field algebra

Field renormalize_mass(const Field& u, double target_mass) {
    const double m = mass(u);
    if (m <= 0.0) throw std::invalid_argument("renormalize_mass: zero field");
    Field out = u;
    const double c = std::sqrt(target_mass / m);
    for (auto& v : out.values()) v *= c;
    return out;
}

double inner_real(const Field& u, const Field& v) {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("inner_real: grid mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        s += u[i].real() * v[i].real() + u[i].imag() * v[i].imag();
    return s * u.grid().cell_volume();
}

Field operator+(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("Field +: grid mismatch");
    Field out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("Field -: grid mismatch");
    Field out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

Field operator*(double s, const Field& a) {
    Field out = a;
    for (auto& v : out.values()) v *= s;
    return out;
}

Field modulus(const Field& u) {
    Field out(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = cdouble(std::abs(u[i]), 0.0);
    return out;
}

Field modulus_pow(const Field& u, double t) {
    Field out(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = cdouble(std::pow(std::abs(u[i]), t), 0.0);
    return out;
}

} // namespace choq
