#include "orientwave/periodic.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>

namespace orientwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cached FFTW plans per grid size; plan creation is not cheap and states are
// stepped many thousands of times.
struct Fft {
    int n = 0;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan fwd{}, bwd{};

    explicit Fft(int n_) : n(n_) {
        real = fftw_alloc_real(n);
        spec = fftw_alloc_complex(n / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    }
    ~Fft() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(spec);
    }
    Fft(const Fft&) = delete;

    std::vector<std::complex<double>> forward(std::span<const double> f) {
        for (int i = 0; i < n; ++i) real[i] = f[i];
        fftw_execute(fwd);
        std::vector<std::complex<double>> out(n / 2 + 1);
        for (int k = 0; k <= n / 2; ++k)
            out[k] = std::complex<double>(spec[k][0], spec[k][1]) / static_cast<double>(n);
        return out;
    }
    std::vector<double> inverse(std::span<const std::complex<double>> c) {
        for (int k = 0; k <= n / 2; ++k) {
            spec[k][0] = c[k].real();
            spec[k][1] = c[k].imag();
        }
        fftw_execute(bwd);
        return std::vector<double>(real, real + n);
    }
};

Fft& fft_for(int n) {
    thread_local std::map<int, std::unique_ptr<Fft>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Fft>(n);
    return *slot;
}

std::vector<double> spectral_dx(std::span<const double> f) {
    const int n = static_cast<int>(f.size());
    auto c = fft_for(n).forward(f);
    for (int k = 0; k <= n / 2; ++k) c[k] *= std::complex<double>(0.0, k);
    if (n % 2 == 0) c[n / 2] = 0.0; // Nyquist derivative is not representable
    return fft_for(n).inverse(c);
}

// u = dx^{-2}(f - <f>) on the zero-mean sector
std::vector<double> spectral_invlap(std::span<const double> f) {
    const int n = static_cast<int>(f.size());
    auto c = fft_for(n).forward(f);
    c[0] = 0.0;
    for (int k = 1; k <= n / 2; ++k) c[k] /= -static_cast<double>(k) * k;
    return fft_for(n).inverse(c);
}

std::vector<double> spectral_dxinv(std::span<const double> f) {
    const int n = static_cast<int>(f.size());
    auto c = fft_for(n).forward(f);
    c[0] = 0.0;
    for (int k = 1; k <= n / 2; ++k) c[k] /= std::complex<double>(0.0, k);
    if (n % 2 == 0) c[n / 2] = 0.0;
    return fft_for(n).inverse(c);
}

double mean_of(std::span<const double> f) {
    double s = 0.0;
    for (double v : f) s += v;
    return s / static_cast<double>(f.size());
}

void subtract_mean(std::vector<double>& f) {
    const double m = mean_of(f);
    for (auto& v : f) v -= m;
}

double bpp_of(double phi, const ElasticConstants& c) {
    const OneDSpeeds sp = one_d_speeds(phi, c);
    const double bg = c.beta - c.gamma;
    const double s = std::sin(phi), co = std::cos(phi);
    return bg * (co * co - s * s) / sp.b - bg * s * co * sp.b_prime / (sp.b * sp.b);
}

struct OrbitPoint {
    double phi, phi_T;
};

void check_hyperbolicity(double phi) {
    if (!(phi > 0.02 && phi < kPi - 0.02))
        throw HyperbolicityLoss("orbit reached the a = b degeneracy at phi = 0 or pi");
}

// 4th-order symplectic (Yoshida) step for phi_TT = -b'(phi)
OrbitPoint yoshida_step(OrbitPoint p, double dt, const ElasticConstants& c) {
    static const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
    static const double w0 = 1.0 - 2.0 * w1;
    const double ws[3] = {w1, w0, w1};
    for (double w : ws) {
        const double h = w * dt;
        p.phi += 0.5 * h * p.phi_T;
        p.phi_T += -one_d_speeds(p.phi, c).b_prime * h;
        p.phi += 0.5 * h * p.phi_T;
    }
    return p;
}

} // namespace

MeanFieldOrbit meanfield_orbit(double phi_init, double phi_T_init, const ElasticConstants& c) {
    check_hyperbolicity(phi_init);
    MeanFieldOrbit orbit;
    orbit.E = 0.5 * phi_T_init * phi_T_init + one_d_speeds(phi_init, c).b;

    const double bp0 = one_d_speeds(phi_init, c).b_prime;
    if (std::abs(bp0) < 1e-13 && phi_T_init == 0.0) {
        orbit.fixed_point = true;
        orbit.T = {0.0};
        orbit.phi = {phi_init};
        orbit.phi_T = {0.0};
        return orbit;
    }

    // locate the first two zeros of phi_T (turning points); one full period
    // spans two of them
    const double dt = 2e-4 * 2.0 * kPi;
    const double t_max = 500.0;
    OrbitPoint p{phi_init, phi_T_init};
    double t = 0.0;
    std::vector<double> zeros;
    bool armed = std::abs(phi_T_init) > 0.0;
    while (t < t_max && zeros.size() < 2) {
        OrbitPoint q = yoshida_step(p, dt, c);
        check_hyperbolicity(q.phi);
        if (armed && p.phi_T * q.phi_T <= 0.0 && (p.phi_T != 0.0 || q.phi_T != 0.0)) {
            double tz = t + dt * p.phi_T / (p.phi_T - q.phi_T);
            // Newton refinement: the zero of phi_T satisfies tz += phi_T / b'
            for (int it = 0; it < 3; ++it) {
                OrbitPoint r{phi_init, phi_T_init};
                const int steps = std::max(1, static_cast<int>(std::ceil(tz / dt)));
                const double hh = tz / steps;
                for (int k = 0; k < steps; ++k) r = yoshida_step(r, hh, c);
                const double bp = one_d_speeds(r.phi, c).b_prime;
                if (std::abs(bp) < 1e-14) break;
                tz += r.phi_T / bp;
            }
            zeros.push_back(tz);
        }
        if (!armed && std::abs(q.phi_T) > 1e-10) armed = true;
        p = q;
        t += dt;
    }
    if (zeros.size() < 2) {
        if (std::abs(phi_T_init) == 0.0 && !zeros.empty()) {
            // started at a turning point: one further zero is a half period
            orbit.period = 2.0 * zeros[0];
        } else {
            throw NonPeriodicOrbit("no closed orbit detected within the search window");
        }
    } else {
        orbit.period = 2.0 * (zeros[1] - zeros[0]);
    }

    // tabulate exactly one period from the initial condition
    const int nt = 4096;
    const double hh = orbit.period / nt;
    orbit.T.resize(nt + 1);
    orbit.phi.resize(nt + 1);
    orbit.phi_T.resize(nt + 1);
    OrbitPoint q{phi_init, phi_T_init};
    for (int i = 0; i <= nt; ++i) {
        orbit.T[i] = i * hh;
        orbit.phi[i] = q.phi;
        orbit.phi_T[i] = q.phi_T;
        if (i < nt) {
            q = yoshida_step(q, hh, c);
            check_hyperbolicity(q.phi);
        }
    }
    return orbit;
}

double PeriodConstants::mu() const {
    if (std::abs(Lambda) < 1e-12)
        throw ZeroLambda("Lambda vanishes on this orbit; mu = M/Lambda undefined");
    return M / Lambda;
}

PeriodConstants period_constants(const MeanFieldOrbit& orbit, const ElasticConstants& c) {
    PeriodConstants out;
    if (orbit.fixed_point) return out; // b' = 0 along the orbit: all averages vanish

    const std::size_t n = orbit.T.size();
    double sum_l = 0.0, sum_m1 = 0.0, sum_m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0; // trapezoid, periodic ends
        const double phi = orbit.phi[i], pT = orbit.phi_T[i];
        const OneDSpeeds sp = one_d_speeds(phi, c);
        const double a2b2 = sp.a * sp.a - sp.b * sp.b;
        sum_l += w * sp.b_prime * sp.b_prime / a2b2;

        // W = 1/(q sqrt b); W_TT = W'' phi_T^2 - W' b'
        const double r = sp.q_prime / sp.q + sp.b_prime / (2.0 * sp.b);
        const double W = 1.0 / (sp.q * std::sqrt(sp.b));
        const double Wp = -W * r;
        const double bpp = bpp_of(phi, c);
        const double rp = -1.0 / (sp.q * sp.q) +
                          (bpp * sp.b - sp.b_prime * sp.b_prime) / (2.0 * sp.b * sp.b);
        const double Wpp = -Wp * r - W * rp;
        const double W_TT = Wpp * pT * pT - Wp * sp.b_prime;
        sum_m1 += w * (-0.5) * (sp.q / std::sqrt(sp.b)) * W_TT;

        const double br = sp.b_prime / (2.0 * sp.b);
        const double qr = sp.q_prime / sp.q;
        sum_m2 += w * ((orbit.E - sp.b) / sp.b) * (br * br - qr * qr);
    }
    const double denom = static_cast<double>(n - 1);
    out.Lambda = sum_l / denom;
    out.M = sum_m1 / denom;
    out.M_alt = sum_m2 / denom;
    return out;
}

double mean_vx2(std::span<const double> v) {
    auto w = spectral_dx(v);
    double s = 0.0;
    for (double x : w) s += x * x;
    return s / static_cast<double>(w.size());
}

PeriodicUVState make_periodic_state(std::span<const double> v, double mu) {
    PeriodicUVState s;
    s.n = static_cast<int>(v.size());
    s.v.assign(v.begin(), v.end());
    subtract_mean(s.v);
    s.mu = mu;
    s.Q = mean_vx2(s.v);
    auto w = spectral_dx(s.v);
    std::vector<double> src(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) src[i] = w[i] * w[i];
    s.u = spectral_invlap(src);
    return s;
}

namespace {

void kg_rotation(std::vector<double>& v, double mu, double dt) {
    const int n = static_cast<int>(v.size());
    const double q = mean_vx2(v);
    auto c = fft_for(n).forward(v);
    c[0] = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
        const double ph = mu * q * dt / k;
        c[k] *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
    v = fft_for(n).inverse(c);
}

std::vector<double> advection_rhs(const std::vector<double>& v) {
    auto w = spectral_dx(v);
    std::vector<double> src(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) src[i] = w[i] * w[i];
    auto u = spectral_invlap(src);
    std::vector<double> rhs(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) rhs[i] = -u[i] * w[i];
    const double m = mean_of(rhs);
    for (auto& x : rhs) x -= m;
    return rhs;
}

} // namespace

PeriodicUVState periodic_step(const PeriodicUVState& s, double dt) {
    const int n = s.n;
    const double h = 2.0 * kPi / n;
    const double umax = std::max(1e-12, [&] {
        double m = 0.0;
        for (double x : s.u) m = std::max(m, std::abs(x));
        return m;
    }());
    if (dt > 0.4 * h / umax) throw CflViolation("dt exceeds 0.4 h / max|u|");

    PeriodicUVState out = s;
    out.time = s.time + dt;
    kg_rotation(out.v, s.mu, 0.5 * dt);
    {
        auto& v = out.v;
        auto k1 = advection_rhs(v);
        std::vector<double> tmp(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) tmp[i] = v[i] + 0.5 * dt * k1[i];
        auto k2 = advection_rhs(tmp);
        for (std::size_t i = 0; i < v.size(); ++i) tmp[i] = v[i] + 0.5 * dt * k2[i];
        auto k3 = advection_rhs(tmp);
        for (std::size_t i = 0; i < v.size(); ++i) tmp[i] = v[i] + dt * k3[i];
        auto k4 = advection_rhs(tmp);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    kg_rotation(out.v, s.mu, 0.5 * dt);
    subtract_mean(out.v);

    auto w = spectral_dx(out.v);
    std::vector<double> src(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) src[i] = w[i] * w[i];
    out.u = spectral_invlap(src);
    return out;
}

double periodic_combo_residual(const PeriodicUVState& s1, const PeriodicUVState& s2) {
    const std::size_t n = s1.v.size();
    const double dt = s2.time - s1.time;
    std::vector<double> um(n), vm(n), ut(n);
    for (std::size_t i = 0; i < n; ++i) {
        um[i] = 0.5 * (s1.u[i] + s2.u[i]);
        vm[i] = 0.5 * (s1.v[i] + s2.v[i]);
        ut[i] = (s2.u[i] - s1.u[i]) / dt;
    }
    const double q = 0.5 * (mean_vx2(s1.v) + mean_vx2(s2.v));
    const double mu = s1.mu;
    auto ux = spectral_dx(um);
    std::vector<double> adv(n);
    for (std::size_t i = 0; i < n; ++i) adv[i] = ut[i] + um[i] * ux[i];
    auto advx = spectral_dx(adv);
    // (u_t + u u_x)_x - u_x^2/2 + <v_x^2>(2u + mu v^2) is a function of time
    // alone on solutions (eliminating v by cross-differentiation leaves the
    // mean terms behind)
    std::vector<double> combo(n);
    for (std::size_t i = 0; i < n; ++i)
        combo[i] = advx[i] - 0.5 * ux[i] * ux[i] + q * (2.0 * um[i] + mu * vm[i] * vm[i]);
    auto cx = spectral_dx(combo);
    double worst = 0.0;
    for (double x : cx) worst = std::max(worst, std::abs(x));
    return worst;
}

ProbeReport nonintegrability_probe(const PeriodicUVState& s0, double dt, double horizon) {
    ProbeReport rep;
    PeriodicUVState s = s0;
    PeriodicUVState prev = s0;
    const double q0 = mean_vx2(s0.v);
    double qmaxdev = 0.0;
    int steps = 0;
    while (s.time < horizon - 0.5 * dt) {
        prev = s;
        s = periodic_step(s, dt);
        ++steps;
        qmaxdev = std::max(qmaxdev, std::abs(mean_vx2(s.v) - q0));
        if (steps == 1 || s.time >= horizon - 0.5 * dt)
            rep.combo_residual = std::max(rep.combo_residual, periodic_combo_residual(prev, s));
    }
    rep.q_drift = qmaxdev / std::max(q0, 1e-300);
    double mv = 0.0, mu_ = 0.0;
    for (std::size_t i = 0; i < s.v.size(); ++i) {
        mv += s.v[i];
        mu_ += s.u[i];
    }
    rep.mean_v = mv / static_cast<double>(s.v.size());
    rep.mean_u = mu_ / static_cast<double>(s.v.size());
    return rep;
}

} // namespace orientwave
