#ifndef ORIENTWAVE_CHARACTERISTICS_HPP
#define ORIENTWAVE_CHARACTERISTICS_HPP

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "orientwave/errors.hpp"
#include "orientwave/profiles.hpp"

namespace orientwave {

/// Exact solution of the boundary-slope Riccati equation
/// d(sigma)/dt + (1/2) bprime sigma^2 = 0. Throws BlowUp (with the breakdown
/// time t* = -2/(sigma0 bprime)) once the denominator degenerates.
double riccati_sigma(double sigma0, double bprime, double t);

/// Scalar function of time with optional analytic derivative and a known
/// breakdown time (beyond which value() is meaningless).
struct TimeFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv; // may be empty: central differences are used
    double blow_up_time = std::numeric_limits<double>::infinity();

    bool valid_at(double t) const;
    double eval_deriv(double t) const;
};

TimeFunction zero_time_fn();
TimeFunction constant_time_fn(double v);
TimeFunction riccati_time_fn(double sigma0, double bprime);

struct SamplePoint {
    double u, v, u_x;
};

struct CharBuildOptions {
    int time_steps = 4096;   // RK4 nodes across the horizon
    double quad_tol = 1e-10; // table refinement stops when probes agree this well
    int initial_table = 513;
    int max_table = 1 << 21;
};

/// Closed-form solution of (v_t + u v_x)_x = 0, u_xx = v_x^2 on the line,
/// built from an initial profile v(x,0) = F and boundary slopes
/// u_x(-inf) = sigma_-, u_x(+inf) = sigma_+. The Jacobian of the
/// characteristic map is an explicit solution of a Liouville equation, so
/// sampling only requires inverting the monotone map x = X(xi, t).
/// The horizon may be negative (time running backward).
struct CharSolution {
    CurveFn F;
    bool constant_profile = false;
    double F0 = 0.0;

    // characteristic tables (uniform xi grid containing 0)
    std::vector<double> xi;
    std::vector<double> eta;
    std::vector<double> Fv, Fd;
    double eta_minus = 0.0;
    double eta_plus = -1.0;
    double q_total = 0.0; // integral of F_x^2 = eta_plus - eta_minus

    // boundary-slope histories on a uniform time grid from 0 to horizon
    double horizon = 0.0;
    double t_star = std::numeric_limits<double>::infinity(); // signed; inf if smooth throughout
    std::vector<double> tn, sp, spd; // sigma_plus and its derivative
    std::vector<double> iw, iwd;     // I(t) = int_0^t (sigma_+ - sigma_-), and I'
    TimeFunction sm;

    double sigma_plus(double t) const;
    double sigma_minus(double t) const;

    struct Slice {
        double t, s_plus, s_minus, Ep, Em;
    };
    Slice slice(double t) const; // throws OutOfWindow / AfterBlowUp

    SamplePoint sample(double x, double t) const;
    std::vector<SamplePoint> sample_grid(std::span<const double> xs, double t) const;

    /// X(xi, t) over the xi table (cumulative quadrature of the Jacobian).
    std::vector<double> x_table(const Slice& s) const;
    std::vector<double> jacobian_table(const Slice& s) const;
};

CharSolution build_char_solution(const CurveFn& F, const TimeFunction& sigma_minus,
                                 double sigma_plus0, double horizon,
                                 const CharBuildOptions& opt = {});

/// Formal characteristic-coordinate solution from arbitrary generating
/// functions: X = -int_0^xi F_xi^2 (A+B)^2 / (2 A_xi B_tau) + H, U = X_tau,
/// V = F + G, with A a function of eta where eta_xi = F_xi^2.
struct GeneralCharData {
    std::function<double(double)> A, A_eta;          // of eta
    std::function<double(double)> B, B_tau, B_tautau; // of tau
    CurveFn F;
    std::function<double(double)> G;
    std::function<double(double)> H, H_tau;
    double eta_at_xi0 = -1.0;
};

struct CharTables {
    std::vector<double> xi, tau;
    std::vector<std::vector<double>> X, U, V; // indexed [tau][xi]
};

CharTables general_char_solution(const GeneralCharData& data, double xi_lo, double xi_hi,
                                 int nxi, double tau_lo, double tau_hi, int ntau);

/// Max over the common grid of |(s+' + s+^2/2) - (s-' + s-^2/2)| with
/// centered time differences (endpoints excluded).
double jump_ode_residual(std::span<const double> t, std::span<const double> sigma_plus,
                         std::span<const double> sigma_minus);

/// Residual of d/dt{ c1 [phi_x] } + c2 [phi_x^2] along a trajectory, with
/// centered time differences. jump1 is the series of [phi_x], jump2 of
/// [phi_x^2]; c1 = (a^2-b^2)/b', c2 = (a^2-b^2)/2 for the director-field
/// coefficients, (1, 1/2) for the normalized system.
double jump_condition_residual(std::span<const double> t, std::span<const double> jump1,
                               std::span<const double> jump2, double c1 = 1.0,
                               double c2 = 0.5);

/// Fourth-order composite cumulative quadrature (value-only stencils);
/// result[0] = 0.
std::vector<double> cumquad4(std::span<const double> f, double h);

/// Cubic Hermite evaluation on one uniform cell.
double hermite_cell(double t0, double h, double y0, double y1, double d0, double d1, double t);

} // namespace orientwave

#endif
