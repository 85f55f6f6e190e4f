#ifndef CHOQ_GRID_HPP
#define CHOQ_GRID_HPP

#include <array>
#include <cstddef>
#include <stdexcept>

namespace choq {

/// Uniform periodic sampling of the box [-L, L)^dim with M points per axis,
/// nodes x_i = -L + i h, h = 2L/M. M is a power of two so the transforms and
/// the zero-padded convolutions stay cheap.
struct Grid {
    int dim = 1;
    double half_length = 1.0; ///< L
    int points_per_axis = 16; ///< M

    Grid() = default;
    Grid(int dim_, double L, int M) : dim(dim_), half_length(L), points_per_axis(M) {
        validate();
    }

    void validate() const {
        if (dim < 1 || dim > 3) throw std::invalid_argument("Grid: dim must be 1-3");
        if (half_length <= 0.0) throw std::invalid_argument("Grid: half_length must be > 0");
        if (points_per_axis < 16 || (points_per_axis & (points_per_axis - 1)) != 0)
            throw std::invalid_argument("Grid: points_per_axis must be a power of two >= 16");
    }

    double spacing() const { return 2.0 * half_length / points_per_axis; }
    double cell_volume() const {
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= spacing();
        return v;
    }
    std::size_t size() const {
        std::size_t n = 1;
        for (int d = 0; d < dim; ++d) n *= std::size_t(points_per_axis);
        return n;
    }
    /// node coordinate along one axis
    double coord(int i) const { return -half_length + i * spacing(); }
    /// flat index -> per-axis indices (row-major, axis 0 slowest)
    std::array<int, 3> unflatten(std::size_t idx) const {
        std::array<int, 3> ix{0, 0, 0};
        const int M = points_per_axis;
        for (int d = dim - 1; d >= 0; --d) {
            ix[d] = int(idx % M);
            idx /= M;
        }
        return ix;
    }
    std::size_t flatten(const std::array<int, 3>& ix) const {
        std::size_t idx = 0;
        for (int d = 0; d < dim; ++d) idx = idx * points_per_axis + std::size_t(ix[d]);
        return idx;
    }
    std::array<double, 3> point(std::size_t idx) const {
        auto ix = unflatten(idx);
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int d = 0; d < dim; ++d) x[d] = coord(ix[d]);
        return x;
    }

    bool operator==(const Grid& o) const {
        return dim == o.dim && half_length == o.half_length &&
               points_per_axis == o.points_per_axis;
    }
};

} // namespace choq

#endif
