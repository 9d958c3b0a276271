#include "orientwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace orientwave {

std::vector<double> Grid1D::nodes() const {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = x(i);
    return xs;
}

double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

std::vector<double> cumtrapz(std::span<const double> f, double h) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
}

std::vector<double> diff1(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 3) return out;
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2 * h);
    out[0] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
    out[n - 1] = (3 * f[n - 1] - 4 * f[n - 2] + f[n - 3]) / (2 * h);
    return out;
}

std::vector<double> diff2(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 3) return out;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = (f[i + 1] - 2 * f[i] + f[i - 1]) / (h * h);
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    return out;
}

double lerp(const Grid1D& g, std::span<const double> f, double x) {
    const double h = g.h();
    double s = (x - g.x_min) / h;
    s = std::clamp(s, 0.0, static_cast<double>(g.n - 1));
    const int i = std::min(static_cast<int>(s), g.n - 2);
    const double w = s - i;
    return (1.0 - w) * f[i] + w * f[i + 1];
}

double max_abs(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

double fit_order(std::span<const double> scales, std::span<const double> errors) {
    // slope of log(err) vs log(scale), least squares
    const std::size_t n = std::min(scales.size(), errors.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(scales[i]);
        const double ly = std::log(std::max(errors[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

} // namespace orientwave
