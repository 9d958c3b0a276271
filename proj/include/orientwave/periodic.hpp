#ifndef ORIENTWAVE_PERIODIC_HPP
#define ORIENTWAVE_PERIODIC_HPP

#include <span>
#include <vector>

#include "orientwave/elastic.hpp"
#include "orientwave/errors.hpp"

namespace orientwave {

/// One period of the mean-field oscillation phi0_TT + b'(phi0) = 0,
/// tabulated on a uniform grid in the scaled time T.
struct MeanFieldOrbit {
    std::vector<double> T, phi, phi_T;
    double period = 0.0;
    double E = 0.0; // (1/2) phi_T^2 + b(phi0), conserved
    bool fixed_point = false;
};

MeanFieldOrbit meanfield_orbit(double phi_init, double phi_T_init, const ElasticConstants& c);

/// Period-average constants of the periodic twist system. M is computed from
/// both displayed forms (they agree for a true orbit); mu() = M/Lambda.
struct PeriodConstants {
    double Lambda = 0.0;
    double M = 0.0;     // -1/2 avg (q/sqrt(b)) (1/(q sqrt(b)))_TT
    double M_alt = 0.0; // avg ((E-b)/b) [ b'^2/(4b^2) - q'^2/q^2 ]
    double mu() const;  // throws ZeroLambda when Lambda vanishes
};

PeriodConstants period_constants(const MeanFieldOrbit& orbit, const ElasticConstants& c);

/// Zero-mean periodic state on [0, 2pi) for
/// (v_t + u v_x)_x + mu <v_x^2> v = 0, u_xx = v_x^2 - <v_x^2>.
struct PeriodicUVState {
    int n = 0;
    std::vector<double> v, u;
    double Q = 0.0; // <v_x^2> at construction (conserved by the flow)
    double mu = 0.0;
    double time = 0.0;
};

PeriodicUVState make_periodic_state(std::span<const double> v, double mu);

/// Mean of v_x^2 (spectral derivative).
double mean_vx2(std::span<const double> v);

/// Strang step: exact Klein-Gordon rotation, RK4 advection, rotation.
PeriodicUVState periodic_step(const PeriodicUVState& s, double dt);

/// Max-norm of d/dx of the combination
/// (u_t + u u_x)_x - u_x^2/2 - <v_x^2>(2u + mu v^2), which vanishes for
/// exact solutions; u_t by the centered difference of the two slices.
double periodic_combo_residual(const PeriodicUVState& s1, const PeriodicUVState& s2);

struct ProbeReport {
    double combo_residual = 0.0;
    double q_drift = 0.0; // relative drift of <v_x^2>
    double mean_v = 0.0, mean_u = 0.0;
};

/// Runs the solver over the horizon and reports the displayed-combination
/// residual alongside conserved-quantity drifts.
ProbeReport nonintegrability_probe(const PeriodicUVState& s0, double dt, double horizon);

} // namespace orientwave

#endif
