#ifndef ORIENTWAVE_PROFILES_HPP
#define ORIENTWAVE_PROFILES_HPP

#include <functional>
#include <string>

namespace orientwave {

/// Initial-data profile from a closed set of analytic families, so that
/// derivatives up to third order are available without numerical
/// differentiation.
class Profile {
  public:
    enum class Family { Constant, GaussianBump, SmoothedBox, Sine };

    static Profile constant(double value);
    static Profile gaussian_bump(double amplitude, double center, double width);
    /// amplitude/2 * (tanh((x-left)/ramp) - tanh((x-right)/ramp))
    static Profile smoothed_box(double amplitude, double left, double right, double ramp);
    static Profile sine(double amplitude, double wavenumber, double phase = 0.0);

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    double d3(double x) const;

    /// Nominal support: derivatives are below round-off outside [lo, hi].
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    Family family() const { return family_; }

  private:
    Profile(Family f, double p0, double p1, double p2, double p3);
    Family family_;
    double p_[4];
    double lo_, hi_;
};

/// A scalar function with derivative, the form consumed by the
/// characteristic-coordinate builder.
struct CurveFn {
    std::function<double(double)> f;
    std::function<double(double)> df;
    double lo = 0.0;
    double hi = 0.0;
};

CurveFn to_curve(const Profile& p);
/// x -> scale_y * p((x - shift) / scale_x)
CurveFn to_curve_scaled(const Profile& p, double scale_y, double scale_x, double shift = 0.0);

} // namespace orientwave

#endif
