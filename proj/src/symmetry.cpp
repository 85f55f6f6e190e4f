#include "choq/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace choq {

namespace {

// cell indices ordered by distance from the box center (node 0), ties by index
struct CenterOrder {
    std::vector<std::size_t> order;
    std::vector<double> radius; // radius of cell order[j]
};

std::shared_ptr<const CenterOrder> center_order(const Grid& g) {
    struct Key {
        int dim, M;
        double L;
        bool operator<(const Key& o) const {
            if (dim != o.dim) return dim < o.dim;
            if (M != o.M) return M < o.M;
            return L < o.L;
        }
    };
    static std::map<Key, std::shared_ptr<const CenterOrder>> cache;
    static std::mutex mutex;
    Key key{g.dim, g.points_per_axis, g.half_length};
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    auto co = std::make_shared<CenterOrder>();
    const std::size_t n = g.size();
    std::vector<double> r2(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = g.point(i);
        double s = 0.0;
        for (int d = 0; d < g.dim; ++d) s += x[d] * x[d];
        r2[i] = s;
    }
    co->order.resize(n);
    std::iota(co->order.begin(), co->order.end(), std::size_t(0));
    std::stable_sort(co->order.begin(), co->order.end(),
                     [&](std::size_t a, std::size_t b) {
                         if (r2[a] != r2[b]) return r2[a] < r2[b];
                         return a < b;
                     });
    co->radius.resize(n);
    for (std::size_t j = 0; j < n; ++j) co->radius[j] = std::sqrt(r2[co->order[j]]);
    cache.emplace(key, co);
    return co;
}

void require_real_nonneg(const Field& u, const char* who) {
    if (!u.is_real_nonnegative())
        throw std::invalid_argument(std::string(who) + ": input must be real and nonnegative");
}

// resolves the aligned reflection: axis plus the per-axis index map i -> j(i)
struct AlignedReflection {
    int axis = 0;
    std::vector<int> image; // image[i] along the axis
};

AlignedReflection resolve_reflection(const Grid& g, const HalfSpace& H) {
    int axis = -1;
    double sign = 1.0;
    for (int d = 0; d < g.dim; ++d) {
        if (std::abs(std::abs(H.normal[d]) - 1.0) < 1e-12) {
            axis = d;
            sign = H.normal[d] > 0 ? 1.0 : -1.0;
        } else if (std::abs(H.normal[d]) > 1e-12) {
            throw std::invalid_argument("polarize: half-space normal must be axis-aligned");
        }
    }
    if (axis < 0) throw std::invalid_argument("polarize: half-space normal must be a unit axis vector");
    double norm2 = 0.0;
    for (int d = 0; d < g.dim; ++d) norm2 += H.normal[d] * H.normal[d];
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("polarize: half-space normal must be a unit vector");

    // plane coordinate c = offset/sign along the axis; needs 2(c+L)/h integral
    const double c = H.offset / sign;
    const double h = g.spacing();
    const double m2 = 2.0 * (c + g.half_length) / h;
    const double m2r = std::round(m2);
    if (std::abs(m2 - m2r) > 1e-9 * std::max(1.0, std::abs(m2)))
        throw std::invalid_argument(
            "polarize: half-space plane must sit on a node or half-cell boundary");
    const int M = g.points_per_axis;
    AlignedReflection ref;
    ref.axis = axis;
    ref.image.resize(M);
    const long mint = long(m2r);
    for (int i = 0; i < M; ++i) {
        long j = ((mint - i) % M + M) % M; // x_j = 2c - x_i modulo the periodic box
        ref.image[i] = int(j);
    }
    return ref;
}

} // namespace

Field schwartz_rearrange(const Field& u) {
    require_real_nonneg(u, "schwartz_rearrange");
    auto co = center_order(u.grid());
    std::vector<double> vals(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) vals[i] = u[i].real();
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    Field out(u.grid());
    for (std::size_t j = 0; j < vals.size(); ++j)
        out[co->order[j]] = cdouble(vals[j], 0.0);
    return out;
}

Field polarize(const Field& u, const HalfSpace& H) {
    require_real_nonneg(u, "polarize");
    const Grid& g = u.grid();
    AlignedReflection ref = resolve_reflection(g, H);
    Field out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto ix = g.unflatten(i);
        auto jx = ix;
        jx[ref.axis] = ref.image[ix[ref.axis]];
        const double a = u[i].real();
        const double b = u[g.flatten(jx)].real();
        // x ∈ H iff x·n <= offset
        double xdotn = 0.0;
        auto x = g.point(i);
        for (int d = 0; d < g.dim; ++d) xdotn += x[d] * H.normal[d];
        out[i] = cdouble(xdotn <= H.offset ? std::max(a, b) : std::min(a, b), 0.0);
    }
    return out;
}

Field reflect_halfspace(const Field& u, const HalfSpace& H) {
    const Grid& g = u.grid();
    AlignedReflection ref = resolve_reflection(g, H);
    Field out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto ix = g.unflatten(i);
        auto jx = ix;
        jx[ref.axis] = ref.image[ix[ref.axis]];
        out[i] = u[g.flatten(jx)];
    }
    return out;
}

double polarization_dichotomy(const Field& u_abs, const HalfSpace& H) {
    Field uh = polarize(u_abs, H);
    Field us = reflect_halfspace(u_abs, H);
    Field d1 = uh - u_abs;
    Field d2 = uh - us;
    const double nu = std::sqrt(mass(u_abs));
    if (!(nu > 0.0)) throw std::invalid_argument("polarization_dichotomy: zero field");
    return std::min(std::sqrt(mass(d1)), std::sqrt(mass(d2))) / nu;
}

std::vector<double> isotonic_nonincreasing(const std::vector<double>& y,
                                           const std::vector<double>& w) {
    // PAVA on -y gives the non-increasing projection
    const std::size_t n = y.size();
    std::vector<double> level(n), weight(n);
    std::vector<std::size_t> count(n);
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        level[m] = y[i];
        weight[m] = w[i];
        count[m] = 1;
        ++m;
        while (m > 1 && level[m - 2] < level[m - 1]) {
            const double tw = weight[m - 2] + weight[m - 1];
            level[m - 2] = (level[m - 2] * weight[m - 2] + level[m - 1] * weight[m - 1]) / tw;
            weight[m - 2] = tw;
            count[m - 2] += count[m - 1];
            --m;
        }
    }
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t b = 0; b < m; ++b)
        out.insert(out.end(), count[b], level[b]);
    return out;
}

Field recenter_to_node(const Field& u, const std::array<double, 3>& center) {
    const Grid& g = u.grid();
    const double h = g.spacing();
    std::array<int, 3> shift{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) {
        long k = lround((center[d] + g.half_length) / h);
        const int M = g.points_per_axis;
        shift[d] = int(((k % M) + M) % M); // node index nearest the centroid
    }
    Field out(g);
    const int M = g.points_per_axis;
    const int mid = M / 2; // index of coordinate 0
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto ix = g.unflatten(i);
        auto jx = ix;
        for (int d = 0; d < g.dim; ++d)
            jx[d] = int((ix[d] + shift[d] - mid + M) % M);
        out[i] = u[g.flatten(jx)];
    }
    return out;
}

std::vector<std::pair<double, double>> radial_profile(const Field& u) {
    auto co = center_order(u.grid());
    std::vector<std::pair<double, double>> prof;
    const double rtol = 1e-9 * u.grid().half_length;
    std::size_t j = 0;
    const std::size_t n = u.size();
    while (j < n) {
        std::size_t k = j;
        double acc = 0.0;
        while (k < n && co->radius[k] - co->radius[j] <= rtol) {
            acc += std::abs(u[co->order[k]]);
            ++k;
        }
        prof.emplace_back(co->radius[j], acc / double(k - j));
        j = k;
    }
    return prof;
}

SymmetryReport symmetry_report(const Field& u, const ProblemParams& params,
                               const CriticalExponents& ce) {
    const double m = mass(u);
    if (!(m > 0.0)) throw std::invalid_argument("symmetry_report: zero field");
    const Grid& g = u.grid();
    SymmetryReport rep;

    // mass centroid of |u|²
    const double vol = g.cell_volume();
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto x = g.point(i);
        const double w = std::norm(u[i]) * vol;
        for (int d = 0; d < g.dim; ++d) rep.center[d] += w * x[d];
    }
    for (int d = 0; d < g.dim; ++d) rep.center[d] /= m;

    // best constant phase and circular spread on the bulk {|u| > 1e-6 max}
    const double floor_abs = 1e-6 * u.max_abs();
    cdouble z(0.0, 0.0);
    double wsum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double au = std::abs(u[i]);
        if (au <= floor_abs) continue;
        const double w = au * au;
        z += w * (u[i] / au);
        wsum += w;
    }
    if (wsum > 0.0) {
        z /= wsum;
        rep.theta = std::arg(z);
        rep.phase_deviation = 1.0 - std::min(std::abs(z), 1.0);
    }

    // radial non-increasing fit of |u| about the recentered origin
    Field au = recenter_to_node(modulus(u), rep.center);
    auto prof = radial_profile(au);
    auto co = center_order(g);
    std::vector<double> means(prof.size()), weights(prof.size());
    {
        std::size_t j = 0;
        for (std::size_t b = 0; b < prof.size(); ++b) {
            means[b] = prof[b].second;
            std::size_t k = j;
            const double rtol = 1e-9 * g.half_length;
            while (k < co->radius.size() && co->radius[k] - co->radius[j] <= rtol) ++k;
            weights[b] = double(k - j);
            j = k;
        }
    }
    std::vector<double> fit = isotonic_nonincreasing(means, weights);
    double dev2 = 0.0;
    {
        std::size_t j = 0;
        const double rtol = 1e-9 * g.half_length;
        for (std::size_t b = 0; b < fit.size(); ++b) {
            std::size_t k = j;
            while (k < co->radius.size() && co->radius[k] - co->radius[j] <= rtol) {
                const double d = std::abs(au[co->order[k]]) - fit[b];
                dev2 += d * d;
                ++k;
            }
            j = k;
        }
    }
    rep.radial_deviation = std::sqrt(dev2 * vol / m);

    // rearrangement gap, relative to |E(|u|)|
    EnergyBreakdown bd_abs = energy(au, params, ce);
    Field star = schwartz_rearrange(au);
    EnergyBreakdown bd_star = energy(star, params, ce);
    const double scale = std::max(std::abs(bd_abs.energy), 1e-300);
    rep.rearrangement_gap = (bd_star.energy - bd_abs.energy) / scale;
    return rep;
}

} // namespace choq
