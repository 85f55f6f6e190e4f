#ifndef CHOQ_FIELD_HPP
#define CHOQ_FIELD_HPP

#include <complex>
#include <vector>

#include "choq/grid.hpp"

namespace choq {

using cdouble = std::complex<double>;

/// A complex-valued function sampled on a Grid. Fields are plain values:
/// operations return new fields and never mutate their inputs.
class Field {
  public:
    Field() = default;
    explicit Field(const Grid& g) : grid_(g), values_(g.size(), cdouble(0.0, 0.0)) {}
    Field(const Grid& g, std::vector<cdouble> v) : grid_(g), values_(std::move(v)) {
        if (values_.size() != grid_.size())
            throw std::invalid_argument("Field: value count does not match grid");
    }

    const Grid& grid() const { return grid_; }
    const std::vector<cdouble>& values() const { return values_; }
    std::vector<cdouble>& values() { return values_; }
    std::size_t size() const { return values_.size(); }
    cdouble operator[](std::size_t i) const { return values_[i]; }
    cdouble& operator[](std::size_t i) { return values_[i]; }

    bool all_finite() const;
    double max_abs() const;
    /// largest |value| on the outermost index shell (boundary-decay check)
    double boundary_max_abs() const;

    /// true when every value has |imag| <= tol * max_abs and real part >= -tol * max_abs
    bool is_real_nonnegative(double tol = 1e-12) const;

  private:
    Grid grid_;
    std::vector<cdouble> values_;
};

/// samples f(x) on the grid
template <typename F>
Field sample(const Grid& g, F&& f) {
    Field u(g);
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = f(g.point(i));
    return u;
}

} // namespace choq

#endif
