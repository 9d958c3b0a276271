#include "orientwave/hs_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace orientwave {

std::vector<double> apply_dx(std::span<const double> f, double h) { return diff1(f, h); }

std::vector<double> apply_dxinv(std::span<const double> f, double h) { return cumtrapz(f, h); }

std::vector<double> apply_m(std::span<const double> u, MKind kind, double h) {
    auto out = diff2(u, h);
    if (kind == MKind::CH)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= u[i];
    return out;
}

std::vector<double> apply_minv(std::span<const double> f, MKind kind, const Grid1D& g,
                               const LeftAnchor& anchor) {
    const std::size_t n = f.size();
    const double h = g.h();
    if (n < 4 || !(h > 0.0)) throw SingularOperator("grid too small to invert M");
    std::vector<double> u(n);
    if (kind == MKind::HS) {
        // exact discrete inverse of the interior second-difference rows
        u[0] = anchor.value;
        u[1] = anchor.value + h * anchor.slope + 0.5 * h * h * f[0];
        for (std::size_t i = 1; i + 1 < n; ++i)
            u[i + 1] = 2.0 * u[i] - u[i - 1] + h * h * f[i];
        return u;
    }
    // CH: (u_{i+1} - 2u_i + u_{i-1})/h^2 - u_i = f_i, endpoints clamped
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    b[0] = 1.0;
    r[0] = anchor.value;
    b[n - 1] = 1.0;
    r[n - 1] = anchor.value;
    const double ih2 = 1.0 / (h * h);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        a[i] = ih2;
        b[i] = -2.0 * ih2 - 1.0;
        c[i] = ih2;
        r[i] = f[i];
    }
    // Thomas algorithm
    for (std::size_t i = 1; i < n; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        r[i] -= m * r[i - 1];
    }
    u[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) u[i] = (r[i] - c[i] * u[i + 1]) / b[i];
    return u;
}

std::vector<double> GridOperator::apply(std::span<const double> f) const {
    switch (kind) {
        case Kind::Dx: return apply_dx(f, grid.h());
        case Kind::DxInv: {
            auto out = apply_dxinv(f, grid.h());
            for (auto& v : out) v += boundary.value;
            return out;
        }
        case Kind::M: return apply_m(f, mkind, grid.h());
        case Kind::MInv: return apply_minv(f, mkind, grid, boundary);
    }
    return {};
}

std::vector<double> v_to_u(std::span<const double> v, MKind kind, const Grid1D& g,
                           const LeftAnchor& anchor) {
    auto w = diff1(v, g.h());
    for (auto& x : w) x *= x;
    return apply_minv(w, kind, g, anchor);
}

std::vector<double> u_to_v(std::span<const double> m, const Grid1D& g) {
    double lowest = 0.0;
    for (double x : m) lowest = std::min(lowest, x);
    if (lowest < -1e-8)
        throw NegativeDensity("m has a genuinely negative value; no real v with v_x^2 = m");
    std::vector<double> root(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) root[i] = std::sqrt(std::max(m[i], 0.0));
    return cumtrapz(root, g.h());
}

double genhs_residual(std::span<const double> u1, std::span<const double> u2, MKind kind,
                      double dt, const Grid1D& g) {
    const double h = g.h();
    const std::size_t n = u1.size();
    auto m1 = apply_m(u1, kind, h);
    auto m2 = apply_m(u2, kind, h);
    std::vector<double> um(n), mm(n), mu(n);
    for (std::size_t i = 0; i < n; ++i) {
        um[i] = 0.5 * (u1[i] + u2[i]);
        mm[i] = 0.5 * (m1[i] + m2[i]);
        mu[i] = mm[i] * um[i];
    }
    auto ux = diff1(um, h);
    auto mux = diff1(mu, h);
    double worst = 0.0;
    for (std::size_t i = 3; i + 3 < n; ++i) {
        const double r = (m2[i] - m1[i]) / dt + mm[i] * ux[i] + mux[i];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double hamiltonian_H(std::span<const double> v, MKind kind, const Grid1D& g) {
    const double h = g.h();
    auto w = diff1(v, h);
    std::vector<double> w2(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) w2[i] = w[i] * w[i];
    auto u = apply_minv(w2, kind, g, LeftAnchor{0.0, 0.0});
    std::vector<double> integrand(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) integrand[i] = w2[i] * u[i];
    return 0.25 * trapezoid(integrand, h);
}

double momentum_P(std::span<const double> v, const Grid1D& g) {
    const double h = g.h();
    auto w = diff1(v, h);
    for (auto& x : w) x *= x;
    return trapezoid(w, h);
}

std::pair<std::vector<double>, std::vector<double>>
hamiltonian_vector_fields(std::span<const double> v, MKind kind, const Grid1D& g) {
    const double h = g.h();
    const std::size_t n = v.size();
    auto w = diff1(v, h);
    std::vector<double> w2(n);
    for (std::size_t i = 0; i < n; ++i) w2[i] = w[i] * w[i];
    auto u = apply_minv(w2, kind, g, LeftAnchor{0.0, 0.0});

    // first structure: dx^{-1}( dH/dv ), dH/dv = -(u v_x)_x
    std::vector<double> uw(n);
    for (std::size_t i = 0; i < n; ++i) uw[i] = u[i] * w[i];
    auto duw = diff1(uw, h);
    auto first = cumtrapz(duw, h);
    for (auto& x : first) x = -x;

    // second structure: K(dP/dv), K = v_x dx^{-1} M^{-1} v_x, dP/dv = -2 v_xx
    auto wxx = diff2(v, h);
    std::vector<double> inner(n);
    for (std::size_t i = 0; i < n; ++i) inner[i] = w[i] * (-2.0 * wxx[i]);
    auto minner = apply_minv(inner, kind, g, LeftAnchor{0.0, 0.0});
    auto integ = cumtrapz(minner, h);
    std::vector<double> second(n);
    for (std::size_t i = 0; i < n; ++i) second[i] = w[i] * integ[i];
    return {std::move(first), std::move(second)};
}

double jacobi_cyclic_check(const Profile& f, const Profile& g, const Profile& h, MKind kind,
                           const Grid1D& grid) {
    const std::size_t n = grid.n;
    std::vector<double> integrand(n);
    auto mdx = [&](const Profile& p, double x) {
        return kind == MKind::HS ? p.d3(x) : p.d3(x) - p.d1(x);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.x(static_cast<int>(i));
        const double fv = f.value(x), gv = g.value(x), hv = h.value(x);
        const double fx = f.d1(x), gx = g.d1(x), hx = h.d1(x);
        integrand[i] = (gv * hx - hv * gx) * mdx(f, x) + (hv * fx - fv * hx) * mdx(g, x) +
                       (fv * gx - gv * fx) * mdx(h, x);
    }
    return std::abs(trapezoid(integrand, grid.h()));
}

namespace {

std::vector<double> lax_L(std::span<const double> vx2, std::span<const double> y, double h) {
    auto inner = cumtrapz(y, h);
    for (std::size_t i = 0; i < inner.size(); ++i) inner[i] *= vx2[i];
    return cumtrapz(inner, h);
}

std::vector<double> lax_A(std::span<const double> u, std::span<const double> y, double h) {
    const std::size_t n = y.size();
    auto dy = diff1(y, h);
    std::vector<double> uy(n);
    for (std::size_t i = 0; i < n; ++i) uy[i] = u[i] * y[i];
    auto duy = diff1(uy, h);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (u[i] * dy[i] + duy[i]);
    return out;
}

} // namespace

double lax_residual(std::span<const double> v1, std::span<const double> u1,
                    std::span<const double> v2, std::span<const double> u2,
                    std::span<const double> w, double dt, const Grid1D& g) {
    const double h = g.h();
    const std::size_t n = v1.size();
    auto w1 = diff1(v1, h);
    auto w2 = diff1(v2, h);
    std::vector<double> vx2a(n), vx2b(n), vx2m(n), um(n);
    for (std::size_t i = 0; i < n; ++i) {
        vx2a[i] = w1[i] * w1[i];
        vx2b[i] = w2[i] * w2[i];
        vx2m[i] = 0.5 * (vx2a[i] + vx2b[i]);
        um[i] = 0.5 * (u1[i] + u2[i]);
    }
    auto La = lax_L(vx2a, w, h);
    auto Lb = lax_L(vx2b, w, h);
    auto LAw = lax_L(vx2m, lax_A(um, std::vector<double>(w.begin(), w.end()), h), h);
    auto ALw = lax_A(um, lax_L(vx2m, w, h), h);
    double worst = 0.0;
    for (std::size_t i = 3; i + 3 < n; ++i) {
        const double r = (Lb[i] - La[i]) / dt - (LAw[i] - ALw[i]);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

namespace {

// u_x and u from the slope field w, honoring the anchored side; the gauge
// pins u(0) = 0.
void reconstruct_u(const Grid1D& g, std::span<const double> w, AnchorSide side,
                   double anchor_value, std::vector<double>& ux, std::vector<double>& u) {
    const double h = g.h();
    std::vector<double> w2(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) w2[i] = w[i] * w[i];
    ux = cumtrapz(w2, h);
    if (side == AnchorSide::Left) {
        for (auto& x : ux) x += anchor_value;
    } else {
        const double total = ux.back();
        for (auto& x : ux) x += anchor_value - total;
    }
    u = cumtrapz(ux, h);
    const double u0 = lerp(g, u, 0.0);
    for (auto& x : u) x -= u0;
}

} // namespace

UVState make_uv_state(const CurveFn& F, const Grid1D& g, AnchorSide side, double anchor_value) {
    if (!(g.x_min < 0.0 && 0.0 < g.x_max))
        throw ValidationError("uveq grid must contain x = 0 (the gauge point)");
    UVState s;
    s.grid = g;
    s.anchor_side = side;
    s.anchor_value = anchor_value;
    s.v.resize(g.n);
    s.w.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        s.v[i] = F.f(g.x(i));
        s.w[i] = F.df(g.x(i));
    }
    std::vector<double> ux;
    reconstruct_u(g, s.w, side, anchor_value, ux, s.u);
    s.sigma_minus = ux.front();
    s.sigma_plus = ux.back();
    return s;
}

UVState make_uv_state(const CurveFn& F, const Grid1D& g, AnchorSide side,
                      std::function<double(double)> anchor_of_time) {
    UVState s = make_uv_state(F, g, side, anchor_of_time(0.0));
    s.anchor_of_time = std::move(anchor_of_time);
    return s;
}

UVState uveq_fd_step(const UVState& s, double dt, double ux_ceiling) {
    const Grid1D& g = s.grid;
    const double h = g.h();
    const double umax = max_abs(s.u);
    if (dt > 0.4 * h / std::max(umax, 1e-300))
        throw CflViolation("dt exceeds 0.4 h / max|u|");

    std::vector<double> ux, u;
    auto rhs = [&](const std::vector<double>& w, double t_stage) {
        reconstruct_u(g, w, s.anchor_side, s.anchor_at(t_stage), ux, u);
        std::vector<double> f(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) f[i] = u[i] * w[i];
        auto df = diff1(f, h);
        for (auto& x : df) x = -x;
        // clamped far field: w = v_x vanishes outside the domain, and the
        // edges can be inflow (the gauge makes u point inward when the
        // support compresses)
        df[0] = df[1] = 0.0;
        df[w.size() - 1] = df[w.size() - 2] = 0.0;
        return df;
    };
    const std::size_t n = s.w.size();
    const double t0 = s.time;
    auto k1 = rhs(s.w, t0);
    std::vector<double> tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = s.w[i] + 0.5 * dt * k1[i];
    auto k2 = rhs(tmp, t0 + 0.5 * dt);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = s.w[i] + 0.5 * dt * k2[i];
    auto k3 = rhs(tmp, t0 + 0.5 * dt);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = s.w[i] + dt * k3[i];
    auto k4 = rhs(tmp, t0 + dt);

    UVState out = s;
    out.time = s.time + dt;
    for (std::size_t i = 0; i < n; ++i)
        out.w[i] = s.w[i] + dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    reconstruct_u(g, out.w, s.anchor_side, s.anchor_at(out.time), ux, out.u);
    out.sigma_minus = ux.front();
    out.sigma_plus = ux.back();
    auto vint = cumtrapz(out.w, h);
    for (std::size_t i = 0; i < n; ++i) out.v[i] = s.v.front() + vint[i];

    const double uxmax = max_abs(ux);
    if (!std::isfinite(uxmax) || uxmax > ux_ceiling)
        throw BlowUpDetected("max|u_x| exceeded the configured ceiling", out.time);
    return out;
}

} // namespace orientwave
