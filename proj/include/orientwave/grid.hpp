#ifndef ORIENTWAVE_GRID_HPP
#define ORIENTWAVE_GRID_HPP

#include <span>
#include <vector>

namespace orientwave {

/** Uniform 1-D grid with n nodes, endpoints included. */
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 2;

    double h() const { return (x_max - x_min) / (n - 1); }
    double x(int i) const { return x_min + i * h(); }
    std::vector<double> nodes() const;
};

double trapezoid(std::span<const double> f, double h);

/// Running trapezoid integral from the left endpoint; result[0] = 0.
std::vector<double> cumtrapz(std::span<const double> f, double h);

/// Centered first derivative; second-order one-sided stencils at the ends.
std::vector<double> diff1(std::span<const double> f, double h);

/// Centered second derivative; copies the adjacent interior value at the ends.
std::vector<double> diff2(std::span<const double> f, double h);

/// Linear interpolation of grid data at x (clamped to the grid range).
double lerp(const Grid1D& g, std::span<const double> f, double x);

double max_abs(std::span<const double> f);

/// Least-squares slope of log(err) against log(scale): the convergence order.
double fit_order(std::span<const double> scales, std::span<const double> errors);

} // namespace orientwave

#endif
