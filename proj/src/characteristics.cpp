#include "orientwave/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "orientwave/grid.hpp"

namespace orientwave {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double riccati_sigma(double sigma0, double bprime, double t) {
    const double denom = 1.0 + 0.5 * sigma0 * bprime * t;
    if (denom <= 0.0)
        throw BlowUp("Riccati denominator degenerated", -2.0 / (sigma0 * bprime));
    return sigma0 / denom;
}

bool TimeFunction::valid_at(double t) const {
    if (!std::isfinite(blow_up_time)) return true;
    return blow_up_time > 0.0 ? t < blow_up_time : t > blow_up_time;
}

double TimeFunction::eval_deriv(double t) const {
    if (deriv) return deriv(t);
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    return (value(t + h) - value(t - h)) / (2.0 * h);
}

TimeFunction zero_time_fn() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }, kInf};
}

TimeFunction constant_time_fn(double v) {
    return {[v](double) { return v; }, [](double) { return 0.0; }, kInf};
}

TimeFunction riccati_time_fn(double sigma0, double bprime) {
    TimeFunction f;
    f.value = [sigma0, bprime](double t) { return sigma0 / (1.0 + 0.5 * sigma0 * bprime * t); };
    f.deriv = [sigma0, bprime](double t) {
        const double s = sigma0 / (1.0 + 0.5 * sigma0 * bprime * t);
        return -0.5 * bprime * s * s;
    };
    const double p = sigma0 * bprime;
    f.blow_up_time = p == 0.0 ? kInf : -2.0 / p;
    return f;
}

std::vector<double> cumquad4(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 4) {
        for (std::size_t i = 1; i < n; ++i)
            out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
        return out;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double panel;
        if (i == 0)
            panel = h / 24.0 * (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]);
        else if (i == n - 2)
            panel = h / 24.0 * (f[n - 4] - 5 * f[n - 3] + 19 * f[n - 2] + 9 * f[n - 1]);
        else
            panel = h / 24.0 * (-f[i - 1] + 13 * f[i] + 13 * f[i + 1] - f[i + 2]);
        out[i + 1] = out[i] + panel;
    }
    return out;
}

double hermite_cell(double t0, double h, double y0, double y1, double d0, double d1, double t) {
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return y0 * (2 * s3 - 3 * s2 + 1) + y1 * (-2 * s3 + 3 * s2) + h * d0 * (s3 - 2 * s2 + s) +
           h * d1 * (s3 - s2);
}

namespace {

double hermite_series(std::span<const double> tn, std::span<const double> y,
                      std::span<const double> yd, double t) {
    const double h = tn[1] - tn[0];
    double u = (t - tn[0]) / h;
    u = std::clamp(u, 0.0, static_cast<double>(tn.size() - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(u), tn.size() - 2);
    return hermite_cell(tn[i], h, y[i], y[i + 1], yd[i], yd[i + 1], t);
}

// Refineable cumulative table of F_x^2 used for eta.
struct EtaTable {
    std::vector<double> xi, eta_rel, fv, fd;
    double total = 0.0;
};

EtaTable make_eta_table(const CurveFn& F, double lo, double hi, int n) {
    EtaTable t;
    const double h = (hi - lo) / (n - 1);
    t.xi.resize(n);
    t.fv.resize(n);
    t.fd.resize(n);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        t.xi[i] = lo + i * h;
        t.fv[i] = F.f(t.xi[i]);
        t.fd[i] = F.df(t.xi[i]);
        g[i] = t.fd[i] * t.fd[i];
    }
    t.eta_rel = cumquad4(g, h);
    t.total = t.eta_rel.back();
    return t;
}

} // namespace

CharSolution build_char_solution(const CurveFn& F, const TimeFunction& sigma_minus,
                                 double sigma_plus0, double horizon,
                                 const CharBuildOptions& opt) {
    if (horizon == 0.0) throw ValidationError("horizon must be nonzero");
    CharSolution sol;
    sol.F = F;
    sol.sm = sigma_minus;
    sol.horizon = horizon;

    // xi table over the support, padded, with a node at xi = 0
    const double pad = 0.02 * std::max(1.0, F.hi - F.lo) + 0.5;
    double lo = std::min(F.lo, 0.0) - pad;
    double hi = std::max(F.hi, 0.0) + pad;

    int n = opt.initial_table;
    EtaTable tab = make_eta_table(F, lo, hi, n);
    while (2 * (n - 1) + 1 <= opt.max_table) {
        EtaTable fine = make_eta_table(F, lo, hi, 2 * (n - 1) + 1);
        double diff = std::abs(fine.total - tab.total);
        for (std::size_t i = 0; i < tab.xi.size(); ++i)
            diff = std::max(diff, std::abs(fine.eta_rel[2 * i] - tab.eta_rel[i]));
        tab = std::move(fine);
        n = 2 * (n - 1) + 1;
        if (diff < opt.quad_tol) break;
    }
    // snap the grid so that xi = 0 is a node
    {
        const double h = (hi - lo) / (n - 1);
        const double shift = std::round(-lo / h) * h + lo; // distance of node nearest 0
        lo -= shift;
        hi -= shift;
        tab = make_eta_table(F, lo, hi, n);
    }

    sol.q_total = tab.total;
    sol.xi = tab.xi;
    sol.Fv = tab.fv;
    sol.Fd = tab.fd;
    sol.eta_plus = -1.0;
    sol.eta_minus = -1.0 - sol.q_total;
    sol.eta.resize(n);
    for (int i = 0; i < n; ++i) sol.eta[i] = sol.eta_minus + tab.eta_rel[i];

    const double sm0 = sigma_minus.value(0.0);
    const double compat = sigma_plus0 - (sm0 + sol.q_total);
    if (std::abs(compat) >
        1e-8 * (1.0 + std::abs(sigma_plus0) + std::abs(sm0) + sol.q_total))
        throw IncompatibleData("sigma_+(0) must equal sigma_-(0) + int F_x^2");

    const double fscale = max_abs(sol.Fd);
    sol.constant_profile = sol.q_total <= 1e-14 * (1.0 + fscale);
    if (sol.constant_profile) sol.F0 = F.f(0.0);

    // integrate the forced Riccati for sigma_+ on the (signed) horizon
    const int steps = opt.time_steps;
    const double dt = horizon / steps;
    auto forcing = [&](double t) {
        const double s = sigma_minus.value(t);
        return sigma_minus.eval_deriv(t) + 0.5 * s * s;
    };
    auto rhs = [&](double t, double s) { return forcing(t) - 0.5 * s * s; };

    sol.tn = {0.0};
    sol.sp = {sigma_plus0};
    sol.spd = {rhs(0.0, sigma_plus0)};
    sol.t_star = kInf;
    if (std::isfinite(sigma_minus.blow_up_time)) {
        const double bu = sigma_minus.blow_up_time;
        if ((horizon > 0 && bu > 0) || (horizon < 0 && bu < 0)) sol.t_star = bu;
    }
    double s = sigma_plus0;
    for (int i = 0; i < steps; ++i) {
        const double t0 = i * dt, t1 = (i + 1) * dt;
        if (!sigma_minus.valid_at(t1) || !sigma_minus.valid_at(t0 + 0.5 * dt)) break;
        const double k1 = rhs(t0, s);
        const double k2 = rhs(t0 + 0.5 * dt, s + 0.5 * dt * k1);
        const double k3 = rhs(t0 + 0.5 * dt, s + 0.5 * dt * k2);
        const double k4 = rhs(t1, s + dt * k3);
        s += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        const double smv = sigma_minus.value(t1);
        if (!std::isfinite(s) || std::abs(s) > 1e12 ||
            (!sol.constant_profile && s - smv <= 0.0)) {
            if (!std::isfinite(sol.t_star) || std::abs(t1) < std::abs(sol.t_star))
                sol.t_star = t1;
            break;
        }
        sol.tn.push_back(t1);
        sol.sp.push_back(s);
        sol.spd.push_back(rhs(t1, s));
    }
    if (sol.tn.size() < 2)
        throw ValidationError("boundary data degenerate immediately; no evolution window");

    // I(t) = int_0^t (sigma_+ - sigma_-), corrected-trapezoid accumulation
    const std::size_t m = sol.tn.size();
    sol.iw.assign(m, 0.0);
    sol.iwd.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        sol.iwd[i] = sol.sp[i] - sigma_minus.value(sol.tn[i]);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double d0 = sol.spd[i] - sigma_minus.eval_deriv(sol.tn[i]);
        const double d1 = sol.spd[i + 1] - sigma_minus.eval_deriv(sol.tn[i + 1]);
        sol.iw[i + 1] = sol.iw[i] + 0.5 * dt * (sol.iwd[i] + sol.iwd[i + 1]) -
                        dt * dt / 12.0 * (d1 - d0);
    }
    return sol;
}

double CharSolution::sigma_plus(double t) const { return hermite_series(tn, sp, spd, t); }

double CharSolution::sigma_minus(double t) const { return sm.value(t); }

CharSolution::Slice CharSolution::slice(double t) const {
    const double lo = std::min(0.0, horizon), hi = std::max(0.0, horizon);
    const double slack = 1e-12 * (hi - lo);
    if (t < lo - slack || t > hi + slack) throw OutOfWindow("t outside the constructed horizon");
    const double last = tn.back();
    if (std::abs(t) > std::abs(last) * (1.0 + 1e-12)) {
        if (std::isfinite(t_star)) throw AfterBlowUp("t at or beyond the breakdown time");
        throw OutOfWindow("t beyond the integrated window");
    }
    Slice s;
    s.t = t;
    s.s_plus = sigma_plus(t);
    s.s_minus = sm.value(t);
    const double I = hermite_series(tn, iw, iwd, t);
    s.Ep = std::exp(-0.25 * I);
    s.Em = std::exp(+0.25 * I);
    return s;
}

std::vector<double> CharSolution::jacobian_table(const Slice& s) const {
    const double c = eta_plus - eta_minus;
    const double denom = c * (s.s_plus - s.s_minus);
    std::vector<double> J(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double D = (eta_plus - eta[i]) * s.Ep + (eta[i] - eta_minus) * s.Em;
        J[i] = D * D / denom;
    }
    return J;
}

std::vector<double> CharSolution::x_table(const Slice& s) const {
    const auto J = jacobian_table(s);
    const double h = xi[1] - xi[0];
    auto X = cumquad4(J, h);
    const std::size_t i0 = static_cast<std::size_t>(std::llround(-xi[0] / h));
    const double X0 = X[i0];
    for (auto& v : X) v -= X0;
    return X;
}

namespace {

struct SliceTables {
    CharSolution::Slice s;
    std::vector<double> J, Ju, X, UU;
};

double ux_at(const CharSolution& sol, const CharSolution::Slice& s, double etav) {
    const double D = (sol.eta_plus - etav) * s.Ep + (etav - sol.eta_minus) * s.Em;
    return ((sol.eta_plus - etav) * s.s_minus * s.Ep + (etav - sol.eta_minus) * s.s_plus * s.Em) /
           D;
}

SliceTables make_tables(const CharSolution& sol, const CharSolution::Slice& s) {
    SliceTables t;
    t.s = s;
    t.J = sol.jacobian_table(s);
    const double h = sol.xi[1] - sol.xi[0];
    t.Ju.resize(t.J.size());
    for (std::size_t i = 0; i < t.J.size(); ++i)
        t.Ju[i] = t.J[i] * ux_at(sol, s, sol.eta[i]);
    t.X = cumquad4(t.J, h);
    t.UU = cumquad4(t.Ju, h);
    const std::size_t i0 = static_cast<std::size_t>(std::llround(-sol.xi[0] / h));
    const double X0 = t.X[i0], U0 = t.UU[i0];
    for (auto& v : t.X) v -= X0;
    for (auto& v : t.UU) v -= U0;
    return t;
}

SamplePoint sample_from_tables(const CharSolution& sol, const SliceTables& tb, double x) {
    const auto& xi = sol.xi;
    const double h = xi[1] - xi[0];
    SamplePoint p;
    if (x <= tb.X.front()) {
        p.u_x = tb.s.s_minus;
        p.u = tb.UU.front() + p.u_x * (x - tb.X.front());
        p.v = sol.Fv.front();
        return p;
    }
    if (x >= tb.X.back()) {
        p.u_x = tb.s.s_plus;
        p.u = tb.UU.back() + p.u_x * (x - tb.X.back());
        p.v = sol.Fv.back();
        return p;
    }
    // bracket on the monotone table, bisect the Hermite model in-cell, then
    // polish with Newton (the slope is the tabulated Jacobian, J > 0)
    std::size_t a = 0, b = xi.size() - 1;
    while (b - a > 1) {
        const std::size_t mid = (a + b) / 2;
        (tb.X[mid] <= x ? a : b) = mid;
    }
    const double tol = 1e-6 * (xi.back() - xi.front());
    double lo = xi[a], hi = xi[a + 1];
    auto Xval = [&](double z) {
        return hermite_cell(xi[a], h, tb.X[a], tb.X[a + 1], tb.J[a], tb.J[a + 1], z);
    };
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (Xval(mid) <= x ? lo : hi) = mid;
    }
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double s = (z - xi[a]) / h, s2 = s * s;
        const double dX = tb.X[a] * (6 * s2 - 6 * s) / h + tb.X[a + 1] * (6 * s - 6 * s2) / h +
                          tb.J[a] * (3 * s2 - 4 * s + 1) + tb.J[a + 1] * (3 * s2 - 2 * s);
        if (dX <= 0.0) break;
        const double step = (Xval(z) - x) / dX;
        z -= step;
        z = std::clamp(z, xi[a], xi[a + 1]);
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    const double fd2a = sol.Fd[a] * sol.Fd[a], fd2b = sol.Fd[a + 1] * sol.Fd[a + 1];
    const double etav = hermite_cell(xi[a], h, sol.eta[a], sol.eta[a + 1], fd2a, fd2b, z);
    p.v = sol.F.f(z);
    p.u_x = ux_at(sol, tb.s, etav);
    p.u = hermite_cell(xi[a], h, tb.UU[a], tb.UU[a + 1], tb.Ju[a], tb.Ju[a + 1], z);
    return p;
}

} // namespace

SamplePoint CharSolution::sample(double x, double t) const {
    const Slice s = slice(t);
    if (constant_profile) return {x * s.s_plus, F0, s.s_plus};
    const SliceTables tb = make_tables(*this, s);
    return sample_from_tables(*this, tb, x);
}

std::vector<SamplePoint> CharSolution::sample_grid(std::span<const double> xs, double t) const {
    const Slice s = slice(t);
    std::vector<SamplePoint> out;
    out.reserve(xs.size());
    if (constant_profile) {
        for (double x : xs) out.push_back({x * s.s_plus, F0, s.s_plus});
        return out;
    }
    const SliceTables tb = make_tables(*this, s);
    for (double x : xs) out.push_back(sample_from_tables(*this, tb, x));
    return out;
}

CharTables general_char_solution(const GeneralCharData& data, double xi_lo, double xi_hi,
                                 int nxi, double tau_lo, double tau_hi, int ntau) {
    if (!(xi_lo < 0.0 && 0.0 < xi_hi))
        throw ValidationError("xi window must contain 0 (the integration anchor)");
    const double h = (xi_hi - xi_lo) / (nxi - 1);
    const std::size_t i0 = static_cast<std::size_t>(std::llround(-xi_lo / h));
    xi_lo = -static_cast<double>(i0) * h; // snap so xi = 0 is a node

    CharTables out;
    out.xi.resize(nxi);
    std::vector<double> fd2(nxi), fv(nxi);
    for (int i = 0; i < nxi; ++i) {
        out.xi[i] = xi_lo + i * h;
        const double d = data.F.df(out.xi[i]);
        fd2[i] = d * d;
        fv[i] = data.F.f(out.xi[i]);
    }
    auto etarel = cumquad4(fd2, h);
    std::vector<double> eta(nxi);
    for (int i = 0; i < nxi; ++i) eta[i] = data.eta_at_xi0 + etarel[i] - etarel[i0];

    out.tau.resize(ntau);
    const double ht = ntau > 1 ? (tau_hi - tau_lo) / (ntau - 1) : 0.0;
    out.X.resize(ntau);
    out.U.resize(ntau);
    out.V.resize(ntau);

    double sign_ref = 0.0;
    for (int j = 0; j < ntau; ++j) {
        const double tau = tau_lo + j * ht;
        out.tau[j] = tau;
        const double B = data.B(tau), Bt = data.B_tau(tau), Btt = data.B_tautau(tau);
        std::vector<double> J(nxi), Jt(nxi);
        for (int i = 0; i < nxi; ++i) {
            const double Av = data.A(eta[i]), Ae = data.A_eta(eta[i]);
            const double AB = Av + B;
            J[i] = -AB * AB / (2.0 * Ae * Bt);
            // d/dtau of J (for U = X_tau)
            Jt[i] = -AB / Ae + AB * AB * Btt / (2.0 * Ae * Bt * Bt);
            if (!std::isfinite(J[i]) || J[i] == 0.0)
                throw DegenerateJacobian("Jacobian vanished or diverged in the window");
            if (sign_ref == 0.0) sign_ref = J[i] > 0 ? 1.0 : -1.0;
            if (J[i] * sign_ref < 0.0)
                throw DegenerateJacobian("Jacobian changes sign in the window");
        }
        auto X = cumquad4(J, h);
        auto U = cumquad4(Jt, h);
        const double X0 = X[i0], U0 = U[i0];
        const double Hv = data.H ? data.H(tau) : 0.0;
        const double Ht = data.H_tau ? data.H_tau(tau) : 0.0;
        const double Gv = data.G ? data.G(tau) : 0.0;
        out.X[j].resize(nxi);
        out.U[j].resize(nxi);
        out.V[j].resize(nxi);
        for (int i = 0; i < nxi; ++i) {
            out.X[j][i] = X[i] - X0 + Hv;
            out.U[j][i] = U[i] - U0 + Ht;
            out.V[j][i] = fv[i] + Gv;
        }
    }
    return out;
}

double jump_ode_residual(std::span<const double> t, std::span<const double> sigma_plus,
                         std::span<const double> sigma_minus) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const double dt2 = t[i + 1] - t[i - 1];
        const double lp = (sigma_plus[i + 1] - sigma_plus[i - 1]) / dt2 +
                          0.5 * sigma_plus[i] * sigma_plus[i];
        const double lm = (sigma_minus[i + 1] - sigma_minus[i - 1]) / dt2 +
                          0.5 * sigma_minus[i] * sigma_minus[i];
        worst = std::max(worst, std::abs(lp - lm));
    }
    return worst;
}

double jump_condition_residual(std::span<const double> t, std::span<const double> jump1,
                               std::span<const double> jump2, double c1, double c2) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const double dj = (jump1[i + 1] - jump1[i - 1]) / (t[i + 1] - t[i - 1]);
        worst = std::max(worst, std::abs(c1 * dj + c2 * jump2[i]));
    }
    return worst;
}

} // namespace orientwave
