#ifndef ORIENTWAVE_ONED_PDE_HPP
#define ORIENTWAVE_ONED_PDE_HPP

#include <vector>

#include "orientwave/elastic.hpp"
#include "orientwave/grid.hpp"
#include "orientwave/profiles.hpp"

namespace orientwave {

/// phi must stay inside this band: the 2 q'/q = 2 cot(phi) coupling is
/// singular at phi = 0, pi.
struct AngleBand {
    double lo = 0.05;
    double hi = 3.14159265358979323846 - 0.05;
};

/// Spherical-angle fields phi (splay) and psi (twist) with their velocities.
/// Boundary nodes are clamped to far-field values; domains are sized so that
/// waves never reach them.
struct AngleFieldState {
    Grid1D grid;
    std::vector<double> phi, psi, phi_t, psi_t;
    double time = 0.0;
};

/// Discrete energy (trapezoid rule):
/// (1/2) int { phi_t^2 + a^2 phi_x^2 + q^2 (psi_t^2 + b^2 psi_x^2) } dx.
double energy(const AngleFieldState& s, const ElasticConstants& c);

/// One step of the coupled system with the time-symmetric leapfrog
/// (position update phi^{n+1} = 2 phi^n - phi^{n-1} + dt^2 RHS in velocity
/// form; the velocity-dependent force terms are closed with a pointwise
/// fixed-point iteration).
AngleFieldState step(const AngleFieldState& s, double dt, const ElasticConstants& c,
                     const AngleBand& band = {});

/// Same scheme for the scalar splay equation; psi fields are carried
/// through untouched.
AngleFieldState scalar_step(const AngleFieldState& s, double dt, const ElasticConstants& c,
                            const AngleBand& band = {});

/// Right/left-moving split of linear twist-wave data:
/// F_R = f/2 + (1/2 b0) int_theta^inf g, F_L = f/2 - (1/2 b0) int_theta^inf g.
struct InitialLayerProfiles {
    std::vector<double> theta;
    std::vector<double> F_R, F_L;   // values
    std::vector<double> F_Rd, F_Ld; // analytic derivatives
    double b0 = 0.0;

    double eval_R(double th) const;
    double eval_L(double th) const;
    CurveFn curve_R() const;
    CurveFn curve_L() const;
};

InitialLayerProfiles initial_layer(const Profile& f, const Profile& g, double b0,
                                   const Grid1D& theta_grid);

/// Weakly nonlinear twist-wave initial data: phi = phi0, phi_t = 0,
/// psi = sqrt(eps) f(x/eps), psi_t = g(x/eps)/sqrt(eps).
AngleFieldState twist_ic(double epsilon, double phi0, const Profile& f, const Profile& g,
                         const Grid1D& grid, const ElasticConstants& c,
                         const AngleBand& band = {});

} // namespace orientwave

#endif
