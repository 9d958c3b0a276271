#include "orientwave/polarized.hpp"

#include <cmath>
#include <cstddef>

#include "orientwave/dispersion.hpp"

namespace orientwave {

namespace {

void reconstruct(const Grid1D& g, std::span<const double> w, double left,
                 std::vector<double>& u) {
    u = cumtrapz(w, g.h());
    for (auto& x : u) x += left;
}

double polarized_speed_scale(double mu, double nu) {
    return std::max({std::abs(mu), std::abs(nu), std::abs(mu - nu), 1e-12});
}

} // namespace

PolarizedState make_polarized_state(const Grid1D& g, const CurveFn& f1, const CurveFn& f2,
                                    double mu, double nu) {
    PolarizedState s;
    s.grid = g;
    s.mu = mu;
    s.nu = nu;
    s.u1.resize(g.n);
    s.u2.resize(g.n);
    s.w1.resize(g.n);
    s.w2.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        s.u1[i] = f1.f(x);
        s.u2[i] = f2.f(x);
        s.w1[i] = f1.df(x);
        s.w2[i] = f2.df(x);
    }
    return s;
}

PolarizedState polarized_step_vector(const PolarizedState& s, double dt) {
    const Grid1D& g = s.grid;
    const double h = g.h();
    const std::size_t n = s.u1.size();

    double uu_max = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        uu_max = std::max(uu_max, s.u1[i] * s.u1[i] + s.u2[i] * s.u2[i]);
    if (dt > 0.4 * h / (polarized_speed_scale(s.mu, s.nu) * std::max(uu_max, 1e-12)))
        throw CflViolation("dt exceeds 0.4 h / max speed against max|u|^2");

    // product-rule-expanded fluxes, so the plane-polarized reduction agrees
    // with the scalar cubic stencil identically
    std::vector<double> u1, u2;
    auto rhs = [&](const std::vector<double>& w1, const std::vector<double>& w2,
                   std::vector<double>& r1, std::vector<double>& r2) {
        reconstruct(g, w1, s.u1.front(), u1);
        reconstruct(g, w2, s.u2.front(), u2);
        auto dw1 = diff1(w1, h);
        auto dw2 = diff1(w2, h);
        r1.resize(n);
        r2.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double ww = w1[i] * w1[i] + w2[i] * w2[i];
            const double uw = u1[i] * w1[i] + u2[i] * w2[i];
            const double uu = u1[i] * u1[i] + u2[i] * u2[i];
            const double udw = u1[i] * dw1[i] + u2[i] * dw2[i];
            r1[i] = -((s.mu - s.nu) * (ww + udw) * u1[i] +
                      s.nu * (2.0 * uw * w1[i] + uu * dw1[i] - ww * u1[i]));
            r2[i] = -((s.mu - s.nu) * (ww + udw) * u2[i] +
                      s.nu * (2.0 * uw * w2[i] + uu * dw2[i] - ww * u2[i]));
        }
    };

    std::vector<double> k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b, ta(n), tb(n);
    rhs(s.w1, s.w2, k1a, k1b);
    for (std::size_t i = 0; i < n; ++i) {
        ta[i] = s.w1[i] + 0.5 * dt * k1a[i];
        tb[i] = s.w2[i] + 0.5 * dt * k1b[i];
    }
    rhs(ta, tb, k2a, k2b);
    for (std::size_t i = 0; i < n; ++i) {
        ta[i] = s.w1[i] + 0.5 * dt * k2a[i];
        tb[i] = s.w2[i] + 0.5 * dt * k2b[i];
    }
    rhs(ta, tb, k3a, k3b);
    for (std::size_t i = 0; i < n; ++i) {
        ta[i] = s.w1[i] + dt * k3a[i];
        tb[i] = s.w2[i] + dt * k3b[i];
    }
    rhs(ta, tb, k4a, k4b);

    PolarizedState out = s;
    out.time = s.time + dt;
    for (std::size_t i = 0; i < n; ++i) {
        out.w1[i] = s.w1[i] + dt / 6.0 * (k1a[i] + 2 * k2a[i] + 2 * k3a[i] + k4a[i]);
        out.w2[i] = s.w2[i] + dt / 6.0 * (k1b[i] + 2 * k2b[i] + 2 * k3b[i] + k4b[i]);
    }
    reconstruct(g, out.w1, s.u1.front(), out.u1);
    reconstruct(g, out.w2, s.u2.front(), out.u2);
    return out;
}

double polarized_energy(const PolarizedState& s) {
    const std::size_t n = s.u1.size();
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double udw = s.u1[i] * s.w1[i] + s.u2[i] * s.w2[i];
        const double uu = s.u1[i] * s.u1[i] + s.u2[i] * s.u2[i];
        const double ww = s.w1[i] * s.w1[i] + s.w2[i] * s.w2[i];
        e[i] = (s.mu - s.nu) * udw * udw + s.nu * uu * ww;
    }
    return trapezoid(e, s.grid.h());
}

PolarState polarized_step_polar(const PolarState& s, double dt) {
    const Grid1D& g = s.grid;
    const double h = g.h();
    const std::size_t n = s.u.size();

    double umax2 = 0.0, umin = s.u.empty() ? 0.0 : s.u[0];
    for (double x : s.u) {
        umax2 = std::max(umax2, x * x);
        umin = std::min(umin, x);
    }
    if (umin < s.u_floor)
        throw RadialDegeneracy("radial amplitude reached u_floor; polar form is singular");
    if (dt > 0.4 * h / (polarized_speed_scale(s.mu, s.nu) * std::max(umax2, 1e-12)))
        throw CflViolation("dt exceeds 0.4 h / max speed against max|u|^2");

    // time derivatives (p, s) = (u_t, v_t) solve a linear ODE system in x:
    //   p_x = -(mu u^2 u_x)_x + mu u u_x^2 + u v_x s + 2 nu u^3 v_x^2
    //   s_x = -(nu u^2 v_x)_x - 2 nu u u_x v_x - (u_x/u) s - (v_x/u) p
    // integrated from the frozen left edge (p = s = 0) by the trapezoid rule.
    auto rates = [&](const std::vector<double>& u, const std::vector<double>& v,
                     std::vector<double>& p, std::vector<double>& q) {
        auto ux = diff1(u, h);
        auto vx = diff1(v, h);
        std::vector<double> fu(n), fv(n);
        for (std::size_t i = 0; i < n; ++i) {
            fu[i] = s.mu * u[i] * u[i] * ux[i];
            fv[i] = s.nu * u[i] * u[i] * vx[i];
        }
        auto dfu = diff1(fu, h);
        auto dfv = diff1(fv, h);
        std::vector<double> c0(n), c1(n), d0(n), d1(n), d2(n);
        for (std::size_t i = 0; i < n; ++i) {
            c0[i] = -dfu[i] + s.mu * u[i] * ux[i] * ux[i] +
                    2.0 * s.nu * u[i] * u[i] * u[i] * vx[i] * vx[i];
            c1[i] = u[i] * vx[i];
            d0[i] = -dfv[i] - 2.0 * s.nu * u[i] * ux[i] * vx[i];
            d1[i] = -ux[i] / u[i];
            d2[i] = -vx[i] / u[i];
        }
        p.assign(n, 0.0);
        q.assign(n, 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double Pi = c0[i] + c1[i] * q[i];
            const double Si = d0[i] + d1[i] * q[i] + d2[i] * p[i];
            // implicit trapezoid: 2x2 solve at node i+1
            const double a11 = 1.0, a12 = -0.5 * h * c1[i + 1];
            const double a21 = -0.5 * h * d2[i + 1], a22 = 1.0 - 0.5 * h * d1[i + 1];
            const double b1 = p[i] + 0.5 * h * (Pi + c0[i + 1]);
            const double b2 = q[i] + 0.5 * h * (Si + d0[i + 1]);
            const double det = a11 * a22 - a12 * a21;
            p[i + 1] = (b1 * a22 - a12 * b2) / det;
            q[i + 1] = (a11 * b2 - b1 * a21) / det;
        }
    };

    auto check_floor = [&](const std::vector<double>& u) {
        for (double x : u)
            if (x < s.u_floor)
                throw RadialDegeneracy("radial amplitude reached u_floor during a stage");
    };

    std::vector<double> p1, q1, p2, q2, p3, q3, p4, q4, tu(n), tv(n);
    rates(s.u, s.v, p1, q1);
    for (std::size_t i = 0; i < n; ++i) {
        tu[i] = s.u[i] + 0.5 * dt * p1[i];
        tv[i] = s.v[i] + 0.5 * dt * q1[i];
    }
    check_floor(tu);
    rates(tu, tv, p2, q2);
    for (std::size_t i = 0; i < n; ++i) {
        tu[i] = s.u[i] + 0.5 * dt * p2[i];
        tv[i] = s.v[i] + 0.5 * dt * q2[i];
    }
    check_floor(tu);
    rates(tu, tv, p3, q3);
    for (std::size_t i = 0; i < n; ++i) {
        tu[i] = s.u[i] + dt * p3[i];
        tv[i] = s.v[i] + dt * q3[i];
    }
    check_floor(tu);
    rates(tu, tv, p4, q4);

    PolarState out = s;
    out.time = s.time + dt;
    for (std::size_t i = 0; i < n; ++i) {
        out.u[i] = s.u[i] + dt / 6.0 * (p1[i] + 2 * p2[i] + 2 * p3[i] + p4[i]);
        out.v[i] = s.v[i] + dt / 6.0 * (q1[i] + 2 * q2[i] + 2 * q3[i] + q4[i]);
    }
    check_floor(out.u);
    return out;
}

CubicState make_cubic_state(const Grid1D& g, const CurveFn& f, double mu) {
    CubicState s;
    s.grid = g;
    s.mu = mu;
    s.u.resize(g.n);
    s.w.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        s.u[i] = f.f(g.x(i));
        s.w[i] = f.df(g.x(i));
    }
    return s;
}

CubicState cubic_hs_step(const CubicState& s, double dt) {
    const Grid1D& g = s.grid;
    const double h = g.h();
    const std::size_t n = s.u.size();
    double uu_max = 0.0;
    for (double x : s.u) uu_max = std::max(uu_max, x * x);
    if (dt > 0.4 * h / (std::max(std::abs(s.mu), 1e-12) * std::max(uu_max, 1e-12)))
        throw CflViolation("dt exceeds 0.4 h / (|mu| max u^2)");

    // expanded form matching the vector solver's plane-polarized reduction:
    // -(mu u^2 u_x)_x + mu u u_x^2 = -mu (u u_x^2 + u^2 u_xx)
    std::vector<double> u;
    auto rhs = [&](const std::vector<double>& w) {
        reconstruct(g, w, s.u.front(), u);
        auto dw = diff1(w, h);
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i)
            r[i] = -s.mu * (u[i] * w[i] * w[i] + u[i] * u[i] * dw[i]);
        return r;
    };
    auto k1 = rhs(s.w);
    std::vector<double> tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = s.w[i] + 0.5 * dt * k1[i];
    auto k2 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = s.w[i] + 0.5 * dt * k2[i];
    auto k3 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = s.w[i] + dt * k3[i];
    auto k4 = rhs(tmp);

    CubicState out = s;
    out.time = s.time + dt;
    for (std::size_t i = 0; i < n; ++i)
        out.w[i] = s.w[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    reconstruct(g, out.w, s.u.front(), out.u);
    return out;
}

double a4_identity_check(std::span<const std::array<double, 3>> u,
                         std::span<const std::array<double, 3>> u_th,
                         std::span<const std::array<double, 3>> u_thth,
                         const std::array<double, 3>& n0) {
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Vec3 U = u[i], U1 = u_th[i], U2 = u_thth[i];
        if (std::abs(dot(U, n0)) > 1e-12 * (1.0 + norm(U)) ||
            std::abs(dot(U1, n0)) > 1e-12 * (1.0 + norm(U1)))
            throw NotOrthogonal("field samples must be orthogonal to n0");
        const Vec3 nxu = cross(n0, U), nxu1 = cross(n0, U1), nxu2 = cross(n0, U2);
        const double c2 = dot(U, nxu2), c1 = dot(U, nxu1);
        const double uu = dot(U, U), u_u1 = dot(U, U1), u1u1 = dot(U1, U1),
                     u_u2 = dot(U, U2);
        for (int d = 0; d < 3; ++d) {
            const double lhs = c2 * nxu[d] + 2.0 * c1 * nxu1[d];
            const double rhs = (2.0 * u1u1 + u_u2) * U[d] - 2.0 * u_u1 * U1[d] - uu * U2[d];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

} // namespace orientwave
