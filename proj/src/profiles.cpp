#include "orientwave/profiles.hpp"

#include <cmath>

namespace orientwave {

Profile::Profile(Family f, double p0, double p1, double p2, double p3)
    : family_(f), p_{p0, p1, p2, p3}, lo_(0), hi_(0) {
    switch (family_) {
        case Family::Constant:
            lo_ = 0.0;
            hi_ = 0.0;
            break;
        case Family::GaussianBump:
            lo_ = p_[1] - 9.0 * p_[2];
            hi_ = p_[1] + 9.0 * p_[2];
            break;
        case Family::SmoothedBox:
            lo_ = p_[1] - 22.0 * p_[3];
            hi_ = p_[2] + 22.0 * p_[3];
            break;
        case Family::Sine:
            lo_ = -1e300;
            hi_ = 1e300;
            break;
    }
}

Profile Profile::constant(double value) { return Profile(Family::Constant, value, 0, 0, 0); }

Profile Profile::gaussian_bump(double amplitude, double center, double width) {
    return Profile(Family::GaussianBump, amplitude, center, width, 0);
}

Profile Profile::smoothed_box(double amplitude, double left, double right, double ramp) {
    return Profile(Family::SmoothedBox, amplitude, left, right, ramp);
}

Profile Profile::sine(double amplitude, double wavenumber, double phase) {
    return Profile(Family::Sine, amplitude, wavenumber, phase, 0);
}

double Profile::value(double x) const {
    switch (family_) {
        case Family::Constant: return p_[0];
        case Family::GaussianBump: {
            const double z = (x - p_[1]) / p_[2];
            return p_[0] * std::exp(-z * z);
        }
        case Family::SmoothedBox: {
            const double zl = (x - p_[1]) / p_[3], zr = (x - p_[2]) / p_[3];
            return 0.5 * p_[0] * (std::tanh(zl) - std::tanh(zr));
        }
        case Family::Sine: return p_[0] * std::sin(p_[1] * x + p_[2]);
    }
    return 0.0;
}

double Profile::d1(double x) const {
    switch (family_) {
        case Family::Constant: return 0.0;
        case Family::GaussianBump: {
            const double z = (x - p_[1]) / p_[2];
            return p_[0] * (-2.0 * z / p_[2]) * std::exp(-z * z);
        }
        case Family::SmoothedBox: {
            const double zl = (x - p_[1]) / p_[3], zr = (x - p_[2]) / p_[3];
            const double sl = 1.0 / std::cosh(zl), sr = 1.0 / std::cosh(zr);
            return 0.5 * p_[0] * (sl * sl - sr * sr) / p_[3];
        }
        case Family::Sine: return p_[0] * p_[1] * std::cos(p_[1] * x + p_[2]);
    }
    return 0.0;
}

double Profile::d2(double x) const {
    switch (family_) {
        case Family::Constant: return 0.0;
        case Family::GaussianBump: {
            const double z = (x - p_[1]) / p_[2];
            return p_[0] * (4.0 * z * z - 2.0) / (p_[2] * p_[2]) * std::exp(-z * z);
        }
        case Family::SmoothedBox: {
            const double zl = (x - p_[1]) / p_[3], zr = (x - p_[2]) / p_[3];
            const double sl = 1.0 / std::cosh(zl), sr = 1.0 / std::cosh(zr);
            const double tl = std::tanh(zl), tr = std::tanh(zr);
            return 0.5 * p_[0] * (-2 * sl * sl * tl + 2 * sr * sr * tr) / (p_[3] * p_[3]);
        }
        case Family::Sine: return -p_[0] * p_[1] * p_[1] * std::sin(p_[1] * x + p_[2]);
    }
    return 0.0;
}

double Profile::d3(double x) const {
    switch (family_) {
        case Family::Constant: return 0.0;
        case Family::GaussianBump: {
            const double z = (x - p_[1]) / p_[2];
            const double w3 = p_[2] * p_[2] * p_[2];
            return p_[0] * (-8.0 * z * z * z + 12.0 * z) / w3 * std::exp(-z * z);
        }
        case Family::SmoothedBox: {
            const double zl = (x - p_[1]) / p_[3], zr = (x - p_[2]) / p_[3];
            const double sl = 1.0 / std::cosh(zl), sr = 1.0 / std::cosh(zr);
            const double tl = std::tanh(zl), tr = std::tanh(zr);
            const double gl = sl * sl * (4 * tl * tl - 2 * sl * sl);
            const double gr = sr * sr * (4 * tr * tr - 2 * sr * sr);
            return 0.5 * p_[0] * (gl - gr) / (p_[3] * p_[3] * p_[3]);
        }
        case Family::Sine: {
            const double k = p_[1];
            return -p_[0] * k * k * k * std::cos(k * x + p_[2]);
        }
    }
    return 0.0;
}

CurveFn to_curve(const Profile& p) {
    return CurveFn{[p](double x) { return p.value(x); },
                   [p](double x) { return p.d1(x); }, p.lo(), p.hi()};
}

CurveFn to_curve_scaled(const Profile& p, double sy, double sx, double shift) {
    return CurveFn{[p, sy, sx, shift](double x) { return sy * p.value((x - shift) / sx); },
                   [p, sy, sx, shift](double x) { return (sy / sx) * p.d1((x - shift) / sx); },
                   p.lo() * sx + shift, p.hi() * sx + shift};
}

} // namespace orientwave
