#ifndef ORIENTWAVE_POLARIZED_HPP
#define ORIENTWAVE_POLARIZED_HPP

#include <array>
#include <span>
#include <vector>

#include "orientwave/errors.hpp"
#include "orientwave/grid.hpp"
#include "orientwave/profiles.hpp"

namespace orientwave {

/// Cartesian form of the polarized system for u in R^2,
///   u_xt + (mu-nu)(u.u_x)_x u + nu[(u.u)u_x]_x - nu(u_x.u_x)u = 0.
/// The advected fields are the slopes w = u_x; u is reconstructed from the
/// frozen far-field value at the left edge.
struct PolarizedState {
    Grid1D grid;
    std::vector<double> u1, u2;
    std::vector<double> w1, w2;
    double mu = 0.0, nu = 0.0;
    double time = 0.0;
};

PolarizedState make_polarized_state(const Grid1D& g, const CurveFn& f1, const CurveFn& f2,
                                    double mu, double nu);
PolarizedState polarized_step_vector(const PolarizedState& s, double dt);

/// Conserved variational energy int [(mu-nu)(u.u_x)^2 + nu (u.u)(u_x.u_x)] dx.
double polarized_energy(const PolarizedState& s);

/// Polar form (u, v) with u = |u| >= u_floor; singular at u = 0, used for
/// cross-validation of the Cartesian integrator.
struct PolarState {
    Grid1D grid;
    std::vector<double> u, v;
    double mu = 0.0, nu = 0.0;
    double time = 0.0;
    double u_floor = 1e-6;
};

PolarState polarized_step_polar(const PolarState& s, double dt);

/// Scalar cubic flow (u_t + mu u^2 u_x)_x = mu u u_x^2, the plane-polarized
/// reduction.
struct CubicState {
    Grid1D grid;
    std::vector<double> u, w;
    double mu = 1.0;
    double time = 0.0;
};

CubicState make_cubic_state(const Grid1D& g, const CurveFn& f, double mu);
CubicState cubic_hs_step(const CubicState& s, double dt);

/// Pointwise residual of the component identity used to reduce the polarized
/// equation: for u orthogonal to the unit vector n0,
///   [u.(n0 x u'')](n0 x u) + 2[u.(n0 x u')](n0 x u')
///     = (u.u')' u - [(u.u)u']' + (u'.u') u.
/// Returns the max norm of LHS - RHS over the supplied samples.
double a4_identity_check(std::span<const std::array<double, 3>> u,
                         std::span<const std::array<double, 3>> u_th,
                         std::span<const std::array<double, 3>> u_thth,
                         const std::array<double, 3>& n0);

} // namespace orientwave

#endif
