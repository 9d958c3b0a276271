#ifndef ORIENTWAVE_HS_OPS_HPP
#define ORIENTWAVE_HS_OPS_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "orientwave/errors.hpp"
#include "orientwave/grid.hpp"
#include "orientwave/profiles.hpp"

namespace orientwave {

/// Self-adjoint operator in M u = v_x^2: HS uses d_xx, CH uses d_xx - 1.
enum class MKind { HS, CH };

/// Whole-line anchoring at the left end: u(x_L) = value, u_x(x_L) = slope.
/// The CH inverse clamps u to `value` at both endpoints instead.
struct LeftAnchor {
    double value = 0.0;
    double slope = 0.0;
};

std::vector<double> apply_dx(std::span<const double> f, double h);
std::vector<double> apply_dxinv(std::span<const double> f, double h);
std::vector<double> apply_m(std::span<const double> u, MKind kind, double h);
std::vector<double> apply_minv(std::span<const double> f, MKind kind, const Grid1D& g,
                               const LeftAnchor& anchor);

/// Discrete linear operator on a 1-D grid with declared boundary anchoring.
struct GridOperator {
    enum class Kind { Dx, DxInv, M, MInv };
    Kind kind;
    MKind mkind = MKind::HS;
    Grid1D grid;
    LeftAnchor boundary{};

    std::vector<double> apply(std::span<const double> f) const;
};

/// u = M^{-1}(v_x^2) with the given left anchoring.
std::vector<double> v_to_u(std::span<const double> v, MKind kind, const Grid1D& g,
                           const LeftAnchor& anchor);

/// v(x) = int_{x_L}^x sqrt(max(m,0)); negatives below -1e-8 are rejected.
std::vector<double> u_to_v(std::span<const double> m, const Grid1D& g);

/// Residual of m_t + m u_x + (m u)_x = 0, m = M u, from two consecutive
/// slices (midpoint in time, centered in space; interior max-norm).
double genhs_residual(std::span<const double> u1, std::span<const double> u2, MKind kind,
                      double dt, const Grid1D& g);

double hamiltonian_H(std::span<const double> v, MKind kind, const Grid1D& g);
double momentum_P(std::span<const double> v, const Grid1D& g);

/// Both Hamiltonian vector fields for the v-flow: first structure
/// dx^{-1}(dH/dv), second structure K(dP/dv) with K = v_x dx^{-1} M^{-1} v_x.
/// They agree with each other and with -u v_x to discretization order.
std::pair<std::vector<double>, std::vector<double>>
hamiltonian_vector_fields(std::span<const double> v, MKind kind, const Grid1D& g);

/// |integral of the cyclic quantity (g h_x - h g_x) M f_x + cyc.| evaluated
/// with analytic derivatives; an exact x-derivative integrates to zero.
double jacobi_cyclic_check(const Profile& f, const Profile& g, const Profile& h, MKind kind,
                           const Grid1D& grid);

/// ||(L_t - (LA - AL)) w||_inf with L = dx^{-1} v_x^2 dx^{-1},
/// A = (u dx + dx u)/2, L_t by the centered difference of the two slices.
double lax_residual(std::span<const double> v1, std::span<const double> u1,
                    std::span<const double> v2, std::span<const double> u2,
                    std::span<const double> w, double dt, const Grid1D& g);

enum class AnchorSide { Left, Right };

/// Finite-difference state for (v_t + u v_x)_x = 0, u_xx = v_x^2. The
/// advected field is w = v_x; v and u are reconstructed from it. The state
/// carries its boundary condition: u_x is pinned on anchor_side to
/// anchor_value, or to anchor_of_time(t) when set (time-dependent boundary
/// data, e.g. a blowing-up sigma_-). The gauge fixes u(0) = 0.
struct UVState {
    Grid1D grid;
    std::vector<double> v, u, w;
    double sigma_minus = 0.0, sigma_plus = 0.0;
    double time = 0.0;
    AnchorSide anchor_side = AnchorSide::Left;
    double anchor_value = 0.0;
    std::function<double(double)> anchor_of_time;

    double anchor_at(double t) const { return anchor_of_time ? anchor_of_time(t) : anchor_value; }
};

UVState make_uv_state(const CurveFn& F, const Grid1D& g, AnchorSide side, double anchor_value);
UVState make_uv_state(const CurveFn& F, const Grid1D& g, AnchorSide side,
                      std::function<double(double)> anchor_of_time);

/// One RK4 step of w_t + (u w)_x = 0. Requires dt <= 0.4 h / max|u|.
UVState uveq_fd_step(const UVState& s, double dt, double ux_ceiling = 1e9);

} // namespace orientwave

#endif
