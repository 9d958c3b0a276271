#include <cmath>
#include <vector>

#include "doctest.h"
#include "orientwave/characteristics.hpp"
#include "orientwave/grid.hpp"
#include "orientwave/hs_ops.hpp"
#include "orientwave/profiles.hpp"

using namespace orientwave;

namespace {

std::vector<double> sample_profile(const Profile& p, const Grid1D& g) {
    std::vector<double> out(g.n);
    for (int i = 0; i < g.n; ++i) out[i] = p.value(g.x(i));
    return out;
}

CurveFn bump_curve(double amp = 0.5) { return to_curve(Profile::gaussian_bump(amp, 0.0, 1.0)); }

double q_of(const CurveFn& F) {
    const int n = 1 << 16;
    const double lo = F.lo - 1.0, hi = F.hi + 1.0;
    const double h = (hi - lo) / (n - 1);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        const double d = F.df(lo + i * h);
        g[i] = d * d;
    }
    return cumquad4(g, h).back();
}

UVState run_uveq(UVState s, double t_end, double cfl = 0.35, double ceiling = 1e9) {
    while (s.time < t_end - 1e-14) {
        const double umax = std::max(max_abs(s.u), 1e-6);
        const double dt = std::min(cfl * s.grid.h() / umax, t_end - s.time);
        s = uveq_fd_step(s, dt, ceiling);
    }
    return s;
}

} // namespace

TEST_CASE("grid operators: skew symmetry and inverses") {
    const Grid1D g{-8.0, 8.0, 512};
    const double h = g.h();
    auto f = sample_profile(Profile::gaussian_bump(0.7, -1.0, 0.9), g);
    auto w = sample_profile(Profile::gaussian_bump(-0.4, 1.2, 0.7), g);

    SUBCASE("Dx is skew-symmetric on compactly supported data") {
        auto df = apply_dx(f, h);
        auto dw = apply_dx(w, h);
        double s = 0.0;
        for (int i = 0; i < g.n; ++i) s += df[i] * w[i] + f[i] * dw[i];
        CHECK(std::abs(s * h) < 1e-13);
    }
    SUBCASE("DxInv undoes Dx away from the boundary rows") {
        std::vector<double> errs, hs;
        for (int n : {256, 512, 1024}) {
            const Grid1D gg{-8.0, 8.0, n};
            auto ff = sample_profile(Profile::gaussian_bump(0.7, -1.0, 0.9), gg);
            auto rec = apply_dxinv(apply_dx(ff, gg.h()), gg.h());
            double worst = 0.0;
            for (int i = 2; i < n - 2; ++i)
                worst = std::max(worst, std::abs(rec[i] - (ff[i] - ff[0])));
            errs.push_back(worst);
            hs.push_back(gg.h());
        }
        CHECK(fit_order(hs, errs) == doctest::Approx(2.0).epsilon(0.15));
    }
    SUBCASE("M MInv compose to the identity within 1e-10") {
        for (MKind kind : {MKind::HS, MKind::CH}) {
            auto u = apply_minv(f, kind, g, LeftAnchor{0.3, -0.1});
            auto back = apply_m(u, kind, h);
            double worst = 0.0;
            for (int i = 1; i < g.n - 1; ++i)
                worst = std::max(worst, std::abs(back[i] - f[i]));
            CHECK(worst < 1e-10);
        }
    }
    SUBCASE("MInv M recovers anchored functions") {
        auto m = apply_m(f, MKind::HS, h);
        const double slope = (f[1] - f[0]) / h - 0.5 * h * m[0];
        auto rec = apply_minv(m, MKind::HS, g, LeftAnchor{f[0], slope});
        double worst = 0.0;
        for (int i = 0; i < g.n; ++i) worst = std::max(worst, std::abs(rec[i] - f[i]));
        CHECK(worst < 1e-10);

        auto mch = apply_m(f, MKind::CH, h);
        auto rec2 = apply_minv(mch, MKind::CH, g, LeftAnchor{0.0, 0.0});
        worst = 0.0;
        for (int i = 1; i < g.n - 1; ++i) worst = std::max(worst, std::abs(rec2[i] - f[i]));
        CHECK(worst < 1e-10);
    }
    SUBCASE("M commutes with Dx on interior nodes") {
        for (MKind kind : {MKind::HS, MKind::CH}) {
            auto a = apply_dx(apply_m(f, kind, h), h);
            auto b = apply_m(apply_dx(f, h), kind, h);
            double worst = 0.0;
            for (int i = 3; i < g.n - 3; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
            CHECK(worst < 1e-11 * (1.0 + max_abs(a)));
        }
    }
    SUBCASE("GridOperator wrapper dispatches") {
        GridOperator op{GridOperator::Kind::M, MKind::HS, g, {}};
        auto a = op.apply(f);
        auto b = apply_m(f, MKind::HS, h);
        for (int i = 0; i < g.n; ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("v_to_u") {
    const Grid1D g{-2.0, 3.0, 401};
    SUBCASE("constant v gives the anchored affine function") {
        std::vector<double> v(g.n, 0.8);
        auto u = v_to_u(v, MKind::HS, g, LeftAnchor{0.2, 0.5});
        for (int i = 0; i < g.n; ++i)
            CHECK(u[i] == doctest::Approx(0.2 + 0.5 * (g.x(i) - g.x_min)).epsilon(1e-12));
    }
    SUBCASE("piecewise-linear v: u_xx is the indicator of the ramp") {
        std::vector<double> v(g.n);
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i);
            v[i] = x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
        }
        auto u = v_to_u(v, MKind::HS, g, LeftAnchor{0.0, 0.0});
        auto uxx = diff2(u, g.h());
        for (int i = 2; i < g.n - 2; ++i) {
            const double x = g.x(i);
            if (x > 0.1 && x < 0.9) CHECK(uxx[i] == doctest::Approx(1.0).epsilon(1e-9));
            if (x < -0.3 || x > 1.3) CHECK(std::abs(uxx[i]) < 1e-10);
        }
    }
    SUBCASE("M(v_to_u(v)) - v_x^2 shrinks at second order against the analytic slope") {
        Profile p = Profile::gaussian_bump(0.6, 0.4, 0.8);
        std::vector<double> errs, hs;
        for (int n : {201, 401, 801}) {
            const Grid1D gg{-6.0, 6.0, n};
            auto v = sample_profile(p, gg);
            auto u = v_to_u(v, MKind::HS, gg, LeftAnchor{0.0, 0.0});
            auto m = apply_m(u, MKind::HS, gg.h());
            double worst = 0.0;
            for (int i = 1; i < gg.n - 1; ++i) {
                const double d = p.d1(gg.x(i));
                worst = std::max(worst, std::abs(m[i] - d * d));
            }
            errs.push_back(worst);
            hs.push_back(gg.h());
        }
        CHECK(fit_order(hs, errs) == doctest::Approx(2.0).epsilon(0.15));
    }
}

TEST_CASE("u_to_v") {
    const Grid1D g{-5.0, 5.0, 801};
    SUBCASE("zero density maps to zero") {
        std::vector<double> m(g.n, 0.0);
        auto v = u_to_v(m, g);
        CHECK(max_abs(v) == 0.0);
    }
    SUBCASE("negative dip rejected, round-off clamped") {
        std::vector<double> m(g.n, 0.0);
        m[g.n / 2] = -1e-3;
        CHECK_THROWS_AS(u_to_v(m, g), NegativeDensity);
        m[g.n / 2] = -1e-9;
        CHECK_NOTHROW(u_to_v(m, g));
    }
    SUBCASE("round trip from a monotone characteristic solution") {
        CurveFn F{[](double x) { return 0.3 * std::tanh(x); },
                  [](double x) {
                      const double c = std::cosh(x);
                      return 0.3 / (c * c);
                  },
                  -14.0, 14.0};
        const double Q = q_of(F);
        auto sol = build_char_solution(F, zero_time_fn(), Q, 2.0);
        auto xs = g.nodes();
        auto pts = sol.sample_grid(xs, 1.0);
        std::vector<double> u(g.n), v(g.n);
        for (int i = 0; i < g.n; ++i) {
            u[i] = pts[i].u;
            v[i] = pts[i].v;
        }
        auto m = apply_m(u, MKind::HS, g.h());
        m[0] = m[1] = m[g.n - 1] = m[g.n - 2] = 0.0; // boundary rows of the stencil
        for (auto& x : m)
            if (x < 0.0 && x > -1e-8) x = 0.0;
        auto vrec = u_to_v(m, g);
        double worst = 0.0;
        for (int i = 0; i < g.n; ++i)
            worst = std::max(worst, std::abs(vrec[i] - (v[i] - v[0])));
        CHECK(worst < 5e-4);
    }
    SUBCASE("sign insensitivity: v and -v produce the same u") {
        auto v = sample_profile(Profile::gaussian_bump(0.5, 0.0, 1.0), g);
        auto neg = v;
        for (auto& x : neg) x = -x;
        auto u1 = v_to_u(v, MKind::HS, g, LeftAnchor{0.0, 0.0});
        auto u2 = v_to_u(neg, MKind::HS, g, LeftAnchor{0.0, 0.0});
        for (int i = 0; i < g.n; ++i) CHECK(u1[i] == u2[i]);
    }
}

TEST_CASE("generalized flow residual") {
    SUBCASE("linear-in-x exact solution has zero density and zero residual") {
        const Grid1D g{-3.0, 3.0, 301};
        const double dt = 1e-3;
        std::vector<double> u1(g.n), u2(g.n);
        const double s1 = riccati_sigma(0.8, 1.0, 1.0), s2 = riccati_sigma(0.8, 1.0, 1.0 + dt);
        for (int i = 0; i < g.n; ++i) {
            u1[i] = s1 * g.x(i);
            u2[i] = s2 * g.x(i);
        }
        CHECK(genhs_residual(u1, u2, MKind::HS, dt, g) < 1e-8);
    }
    SUBCASE("char-solution slices converge at joint order >= 1.8") {
        CurveFn F = bump_curve();
        const double Q = q_of(F);
        CharBuildOptions fine;
        fine.quad_tol = 1e-12;
        auto sol = build_char_solution(F, zero_time_fn(), Q, 2.0, fine);
        std::vector<double> errs, hs;
        for (int n : {256, 512, 1024, 2048}) {
            const Grid1D g{-5.0, 5.0, n};
            auto xs = g.nodes();
            const double dt = g.h();
            auto a = sol.sample_grid(xs, 1.0);
            auto b = sol.sample_grid(xs, 1.0 + dt);
            std::vector<double> u1(n), u2(n);
            for (int i = 0; i < n; ++i) {
                u1[i] = a[i].u;
                u2[i] = b[i].u;
            }
            errs.push_back(genhs_residual(u1, u2, MKind::HS, dt, g));
            hs.push_back(g.h());
        }
        CHECK(fit_order(hs, errs) >= 1.8);
    }
    SUBCASE("CH form agrees with the direct Camassa-Holm expression") {
        auto uf = [](double x, double t) { return 0.3 * std::exp(-x * x) * (1.0 + 0.1 * t); };
        std::vector<double> diffs, r1s;
        for (int n : {201, 401, 801}) {
            const Grid1D g{-6.0, 6.0, n};
            const double dt = 0.5 * g.h();
            std::vector<double> u1(g.n), u2(g.n), um(g.n);
            for (int i = 0; i < g.n; ++i) {
                u1[i] = uf(g.x(i), 1.0);
                u2[i] = uf(g.x(i), 1.0 + dt);
                um[i] = 0.5 * (u1[i] + u2[i]);
            }
            const double r1 = genhs_residual(u1, u2, MKind::CH, dt, g);
            const double h = g.h();
            auto ux = diff1(um, h);
            std::vector<double> ut(g.n), adv(g.n);
            for (int i = 0; i < g.n; ++i) {
                ut[i] = (u2[i] - u1[i]) / dt;
                adv[i] = ut[i] + um[i] * ux[i];
            }
            auto advx = diff1(adv, h);
            std::vector<double> brack(g.n);
            for (int i = 0; i < g.n; ++i) brack[i] = advx[i] - 0.5 * ux[i] * ux[i];
            auto brackx = diff1(brack, h);
            double r2 = 0.0;
            for (int i = 3; i < g.n - 3; ++i)
                r2 = std::max(r2, std::abs(brackx[i] - (ut[i] + 3.0 * um[i] * ux[i])));
            diffs.push_back(std::abs(r1 - r2));
            r1s.push_back(r1);
        }
        CHECK(diffs.back() < 0.05 * r1s.back());
        CHECK(diffs[2] < diffs[0]);
    }
}

TEST_CASE("uveq finite-difference solver") {
    SUBCASE("constant profile is frozen") {
        CurveFn F = to_curve(Profile::constant(0.4));
        const Grid1D g{-3.0, 3.0, 257};
        auto s = make_uv_state(F, g, AnchorSide::Left, 0.25);
        auto s2 = uveq_fd_step(s, 1e-3);
        for (int i = 0; i < g.n; ++i) {
            CHECK(s2.v[i] == doctest::Approx(0.4));
            CHECK(s2.w[i] == 0.0);
        }
        CHECK(s2.sigma_minus == doctest::Approx(0.25));
        CHECK(s2.sigma_plus == doctest::Approx(0.25));
    }
    SUBCASE("CFL violation refused") {
        CurveFn F = bump_curve();
        const Grid1D g{-4.0, 6.0, 513};
        auto s = make_uv_state(F, g, AnchorSide::Left, 0.0);
        CHECK_THROWS_AS(uveq_fd_step(s, 1.0), CflViolation);
    }
    SUBCASE("matches the exact solution at t = 1") {
        CurveFn F = bump_curve();
        const double Q = q_of(F);
        auto sol = build_char_solution(F, zero_time_fn(), Q, 1.5);
        const Grid1D g{-5.0, 8.0, 4096};
        auto s = run_uveq(make_uv_state(F, g, AnchorSide::Left, 0.0), 1.0);
        auto xs = g.nodes();
        auto ex = sol.sample_grid(xs, 1.0);
        double worst_v = 0.0, worst_u = 0.0;
        for (int i = 0; i < g.n; ++i) {
            worst_v = std::max(worst_v, std::abs(s.v[i] - ex[i].v));
            worst_u = std::max(worst_u, std::abs(s.u[i] - ex[i].u));
        }
        CHECK(worst_v < 1e-3);
        CHECK(worst_u < 1e-3);
    }
    SUBCASE("blow-up detected for the sigma_+ = 0 configuration") {
        // the boundary datum sigma_-(t) = -1/(1 - t/2) carries the blow-up;
        // it is fed as the left anchor and max|u_x| tracks it
        CurveFn base = bump_curve();
        const double Q = q_of(base);
        const double scale = 1.0 / std::sqrt(Q);
        CurveFn F{[=](double x) { return scale * base.f(x); },
                  [=](double x) { return scale * base.df(x); }, base.lo, base.hi};
        const Grid1D g{-6.0, 6.0, 1024};
        auto sm = riccati_time_fn(-1.0, 1.0);
        auto s = make_uv_state(F, g, AnchorSide::Left, sm.value);
        CHECK(s.sigma_minus == doctest::Approx(-1.0).epsilon(1e-6));
        CHECK(std::abs(s.sigma_plus) < 1e-6);
        bool blew = false;
        double t_blow = 0.0;
        try {
            while (s.time < 2.1) {
                const double umax = std::max(max_abs(s.u), 1e-6);
                s = uveq_fd_step(s, 0.35 * g.h() / umax, 50.0);
            }
        } catch (const BlowUpDetected& e) {
            blew = true;
            t_blow = e.time;
        }
        CHECK(blew);
        // |sigma_-| = 50 on the exact datum at t = 2(1 - 1/50) = 1.92
        CHECK(t_blow > 1.5);
        CHECK(t_blow < 2.1);
    }
    SUBCASE("emergent left slope saturates under gradient collapse") {
        // with the quiescent side anchored instead, the FD integral of w^2
        // tracks the exact |sigma_-| while the edge stays resolved
        CurveFn base = bump_curve();
        const double Q = q_of(base);
        const double scale = 1.0 / std::sqrt(Q);
        CurveFn F{[=](double x) { return scale * base.f(x); },
                  [=](double x) { return scale * base.df(x); }, base.lo, base.hi};
        const Grid1D g{-6.0, 6.0, 2048};
        auto s = make_uv_state(F, g, AnchorSide::Right, 0.0);
        while (s.time < 1.5) {
            const double umax = std::max(max_abs(s.u), 1e-6);
            s = uveq_fd_step(s, 0.35 * g.h() / umax, 1e6);
        }
        CHECK(s.sigma_minus == doctest::Approx(-1.0 / (1.0 - 0.75)).epsilon(0.01));
    }
    SUBCASE("flux law on consecutive FD slices") {
        CurveFn F = bump_curve();
        const Grid1D g{-5.0, 8.0, 2048};
        auto s = run_uveq(make_uv_state(F, g, AnchorSide::Left, 0.0), 0.5);
        const double dt = 0.3 * g.h() / std::max(max_abs(s.u), 1.0);
        auto s2 = uveq_fd_step(s, dt);
        const double h = g.h();
        std::vector<double> w2s(g.n);
        for (int i = 0; i < g.n; ++i) {
            const double wm = 0.5 * (s.w[i] + s2.w[i]);
            w2s[i] = wm * wm;
        }
        auto uxm = cumtrapz(w2s, h); // sigma_- = 0 anchoring
        std::vector<double> flux(g.n);
        for (int i = 0; i < g.n; ++i) {
            const double um = 0.5 * (s.u[i] + s2.u[i]);
            flux[i] = um * w2s[i] + 0.5 * uxm[i] * uxm[i];
        }
        auto dflux = diff1(flux, h);
        double worst = 0.0;
        for (int i = 3; i < g.n - 3; ++i) {
            const double wt =
                (s2.w[i] * s2.w[i] - s.w[i] * s.w[i]) / dt;
            worst = std::max(worst, std::abs(wt + dflux[i]));
        }
        CHECK(worst < 5e-3);
    }
}

TEST_CASE("hamiltonian functionals") {
    const Grid1D g{-7.0, 7.0, 801};
    SUBCASE("constants carry zero momentum and energy") {
        std::vector<double> v(g.n, 1.3);
        CHECK(hamiltonian_H(v, MKind::HS, g) == doctest::Approx(0.0));
        CHECK(momentum_P(v, g) == doctest::Approx(0.0));
    }
    SUBCASE("homogeneity: P scales as lambda^2, H as lambda^4") {
        auto v = sample_profile(Profile::gaussian_bump(0.5, 0.3, 1.1), g);
        auto v2 = v;
        for (auto& x : v2) x *= 3.0;
        CHECK(momentum_P(v2, g) == doctest::Approx(9.0 * momentum_P(v, g)).epsilon(1e-12));
        CHECK(hamiltonian_H(v2, MKind::HS, g) ==
              doctest::Approx(81.0 * hamiltonian_H(v, MKind::HS, g)).epsilon(1e-12));
    }
    SUBCASE("dP/dt along the decaying solution equals -sigma_+^2/2") {
        CurveFn F = bump_curve();
        const double Q = q_of(F);
        auto sol = build_char_solution(F, zero_time_fn(), Q, 3.0);
        const Grid1D gg{-6.0, 9.0, 4096};
        auto xs = gg.nodes();
        auto P_of = [&](double t) {
            auto pts = sol.sample_grid(xs, t);
            std::vector<double> v(gg.n);
            for (int i = 0; i < gg.n; ++i) v[i] = pts[i].v;
            return momentum_P(v, gg);
        };
        for (double t : {0.5, 1.5}) {
            const double k = 1e-3;
            const double lhs = (P_of(t + k) - P_of(t - k)) / (2 * k);
            const double sp = sol.sigma_plus(t);
            CHECK(lhs == doctest::Approx(-0.5 * sp * sp).epsilon(1e-3));
        }
    }
}

TEST_CASE("bi-Hamiltonian vector fields coincide") {
    SUBCASE("constant v gives zero fields") {
        const Grid1D g{-5.0, 5.0, 301};
        std::vector<double> v(g.n, 0.9);
        auto [f1, f2] = hamiltonian_vector_fields(v, MKind::HS, g);
        CHECK(max_abs(f1) < 1e-12);
        CHECK(max_abs(f2) < 1e-12);
    }
    SUBCASE("fields agree with each other and with -u v_x at second order") {
        Profile p = Profile::gaussian_bump(0.5, 0.0, 1.0);
        for (MKind kind : {MKind::HS, MKind::CH}) {
            const double half = kind == MKind::HS ? 8.0 : 20.0;
            std::vector<double> errs12, errsu, hs;
            for (int n : {513, 1025, 2049}) {
                const Grid1D g{-half, half, n};
                auto v = sample_profile(p, g);
                auto [f1, f2] = hamiltonian_vector_fields(v, kind, g);
                auto u = v_to_u(v, kind, g, LeftAnchor{0.0, 0.0});
                double e12 = 0.0, eu = 0.0;
                for (int i = 3; i < g.n - 3; ++i) {
                    e12 = std::max(e12, std::abs(f1[i] - f2[i]));
                    const double vx = (v[i + 1] - v[i - 1]) / (2 * g.h());
                    eu = std::max(eu, std::abs(f1[i] + u[i] * vx));
                }
                errs12.push_back(e12);
                errsu.push_back(eu);
                hs.push_back(g.h());
            }
            CHECK(fit_order(hs, errs12) >= 1.8);
            CHECK(fit_order(hs, errsu) >= 1.8);
        }
    }
}

TEST_CASE("jacobi cyclic integral vanishes for both operator kinds") {
    const Grid1D g{-12.0, 12.0, 2001};
    Profile f = Profile::gaussian_bump(0.8, -1.5, 0.9);
    Profile p = Profile::gaussian_bump(-0.6, 0.4, 1.2);
    Profile q = Profile::gaussian_bump(0.5, 1.8, 0.7);

    SUBCASE("f = g cancels exactly") {
        CHECK(jacobi_cyclic_check(f, f, q, MKind::HS, g) < 1e-14);
    }
    SUBCASE("distinct bumps, both kinds") {
        for (MKind kind : {MKind::HS, MKind::CH}) {
            const double val = jacobi_cyclic_check(f, p, q, kind, g);
            double scale = 0.0;
            for (int i = 0; i < g.n; ++i) {
                const double x = g.x(i);
                auto mdx = [&](const Profile& pr) {
                    return kind == MKind::HS ? pr.d3(x) : pr.d3(x) - pr.d1(x);
                };
                scale += std::abs((p.value(x) * q.d1(x) - q.value(x) * p.d1(x)) * mdx(f) +
                                  (q.value(x) * f.d1(x) - f.value(x) * q.d1(x)) * mdx(p) +
                                  (f.value(x) * p.d1(x) - p.value(x) * f.d1(x)) * mdx(q)) *
                         g.h();
            }
            CHECK(val < 1e-8 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("lax residual") {
    CurveFn F = bump_curve();
    const double Q = q_of(F);
    auto sol = build_char_solution(F, zero_time_fn(), Q, 2.0);

    SUBCASE("frozen linear state gives zero") {
        const Grid1D g{-4.0, 4.0, 257};
        std::vector<double> v(g.n, 0.7), u(g.n);
        for (int i = 0; i < g.n; ++i) u[i] = 0.3 * g.x(i);
        auto w = sample_profile(Profile::gaussian_bump(1.0, 0.0, 0.8), g);
        CHECK(lax_residual(v, u, v, u, w, 1e-3, g) < 1e-12);
    }
    SUBCASE("decays at order >= 1.8 on exact slices and is corruption-sensitive") {
        std::vector<double> errs, hs;
        for (int n : {128, 256, 512, 1024}) {
            const Grid1D g{-5.0, 7.0, n};
            auto xs = g.nodes();
            const double dt = g.h();
            auto a = sol.sample_grid(xs, 0.8);
            auto b = sol.sample_grid(xs, 0.8 + dt);
            std::vector<double> v1(n), u1(n), v2(n), u2(n);
            for (int i = 0; i < n; ++i) {
                v1[i] = a[i].v;
                u1[i] = a[i].u;
                v2[i] = b[i].v;
                u2[i] = b[i].u;
            }
            auto w = sample_profile(Profile::gaussian_bump(1.0, 0.5, 0.9), g);
            const double r = lax_residual(v1, u1, v2, u2, w, dt, g);
            errs.push_back(r);
            hs.push_back(g.h());
            if (n == 1024) {
                for (int i = 0; i < n; ++i) {
                    const double x = g.x(i);
                    u1[i] += 0.1 * x * x;
                    u2[i] += 0.1 * x * x;
                }
                const double corrupted = lax_residual(v1, u1, v2, u2, w, dt, g);
                CHECK(corrupted > 10.0 * r);
            }
        }
        CHECK(fit_order(hs, errs) >= 1.8);
    }
}
