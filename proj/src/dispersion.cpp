#include "orientwave/dispersion.hpp"

#include <cmath>

namespace orientwave {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

namespace {

Vec3 scaled(const Vec3& a, double s) { return {s * a[0], s * a[1], s * a[2]}; }

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

void check_inputs(const Vec3& k, const Vec3& n0) {
    if (norm(k) == 0.0) throw ZeroWavenumber("wavenumber vector must be nonzero");
    if (std::abs(norm(n0) - 1.0) > 1e-12)
        throw ValidationError("n0 must be a unit vector within 1e-12");
}

bool is_parallel(const Vec3& k, const Vec3& n0) {
    return norm(cross(k, n0)) <= 1e-12 * norm(k);
}

} // namespace

double splay_speed(const Vec3& k, const Vec3& n, const ElasticConstants& c) {
    const double k2 = dot(k, k), kn = dot(k, n);
    return std::sqrt(c.alpha * (k2 - kn * kn) + c.gamma * kn * kn);
}

double twist_speed(const Vec3& k, const Vec3& n, const ElasticConstants& c) {
    const double k2 = dot(k, k), kn = dot(k, n);
    return std::sqrt(c.beta * (k2 - kn * kn) + c.gamma * kn * kn);
}

WaveFrame dispersion(const Vec3& k, const Vec3& n0, const ElasticConstants& c) {
    check_inputs(k, n0);
    WaveFrame f;
    f.k = k;
    f.n0 = n0;
    f.omega_splay = splay_speed(k, n0, c);
    f.omega_twist = twist_speed(k, n0, c);
    f.degenerate = is_parallel(k, n0);
    if (f.degenerate) {
        f.R = {0, 0, 0};
        f.S = {0, 0, 0};
    } else {
        const double kn = dot(k, n0);
        f.R = add(k, scaled(n0, -kn));
        f.S = cross(k, n0);
    }
    return f;
}

double genuine_nonlinearity_gamma(const WaveFrame& f, const ElasticConstants& c) {
    if (f.degenerate)
        throw DegenerateDirection("splay branch degenerate: k parallel to n0");
    const double k2 = dot(f.k, f.k), kn = dot(f.k, f.n0);
    return -((c.alpha - c.gamma) / f.omega_splay) * kn * (k2 - kn * kn);
}

double twist_degeneracy_check(const WaveFrame& f, const ElasticConstants& c, double h) {
    if (f.degenerate)
        throw DegenerateDirection("twist branch degenerate: k parallel to n0");
    const Vec3 np = add(f.n0, scaled(f.S, h));
    const Vec3 nm = add(f.n0, scaled(f.S, -h));
    return (twist_speed(f.k, np, c) - twist_speed(f.k, nm, c)) / (2.0 * h);
}

double lambda_coefficient(const WaveFrame& f, const ElasticConstants& c) {
    if (!c.strict) throw NonStrict("lambda coefficient requires alpha != beta");
    if (f.degenerate)
        throw DegenerateDirection("twist branch degenerate: k parallel to n0");
    const double k2 = dot(f.k, f.k), kn = dot(f.k, f.n0);
    const double bg = c.beta - c.gamma;
    return (bg * bg / (f.omega_twist * (c.alpha - c.beta))) * kn * kn * (k2 - kn * kn);
}

Vec3 apply_mode_map(const Vec3& k, const Vec3& n0, double omega2, const ElasticConstants& c,
                    const Vec3& m) {
    const Vec3 kxm = cross(k, m);
    const double Ahat = dot(n0, kxm);
    const Vec3 Bhat = cross(n0, kxm);
    Vec3 out = scaled(m, omega2);
    out = add(out, scaled(k, -c.alpha * dot(k, m)));
    out = add(out, scaled(cross(k, n0), c.beta * Ahat));
    out = add(out, scaled(cross(k, cross(Bhat, n0)), c.gamma));
    return out;
}

ConstrainedSolveResult constrained_solve(const Vec3& k, const Vec3& n0, double omega,
                                         const ElasticConstants& c, const Vec3& F, double G) {
    check_inputs(k, n0);
    const double k2 = dot(k, k), kn = dot(k, n0);
    const double perp2 = k2 - kn * kn;
    const double a2 = c.alpha * perp2 + c.gamma * kn * kn;
    const double b2 = c.beta * perp2 + c.gamma * kn * kn;
    const double w2 = omega * omega;
    const bool res_a = std::abs(w2 - a2) <= 1e-9 * a2;
    const bool res_b = std::abs(w2 - b2) <= 1e-9 * b2;

    ConstrainedSolveResult r;

    if (is_parallel(k, n0)) {
        // L m = (w2 - gamma k^2) m - (alpha-gamma) k^2 (n0.m) n0
        const double g2 = c.gamma * k2;
        const Vec3 Fperp = add(F, scaled(n0, -dot(F, n0)));
        if (std::abs(w2 - g2) > 1e-9 * g2) {
            r.status = SolveStatus::Unique;
            r.m = add(scaled(n0, G), scaled(Fperp, 1.0 / (w2 - g2)));
            r.lambda = (w2 - c.alpha * k2) * G - dot(F, n0);
            return r;
        }
        if (norm(Fperp) > 1e-9 * (norm(F) + std::abs(G) + 1.0)) {
            r.status = SolveStatus::ResonantUnsolvable;
            return r;
        }
        r.status = SolveStatus::ResonantSolvable;
        r.m = scaled(n0, G);
        r.lambda = -(c.alpha - c.gamma) * k2 * G - dot(F, n0);
        // any vector orthogonal to n0 is in the nullspace
        Vec3 seed = std::abs(n0[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        Vec3 e1 = add(seed, scaled(n0, -dot(seed, n0)));
        e1 = scaled(e1, 1.0 / norm(e1));
        r.nullspace = {e1, cross(n0, e1)};
        return r;
    }

    const Vec3 R = add(k, scaled(n0, -kn));
    const Vec3 S = cross(k, n0);
    const Vec3 Rh = scaled(R, 1.0 / norm(R));
    const Vec3 Sh = scaled(S, 1.0 / norm(S));
    // In the orthonormal frame {n0, Rh, Sh} the map is diagonal on the
    // transverse block with entries (w2 - a2), (w2 - b2).
    const Vec3 Ln0 = apply_mode_map(k, n0, w2, c, n0);
    const double rhs_r = dot(F, Rh) - G * dot(Ln0, Rh);
    const double rhs_s = dot(F, Sh) - G * dot(Ln0, Sh);
    const double tol = 1e-9 * (norm(F) + std::abs(G) * norm(Ln0) + 1.0);

    double m_r = 0.0, m_s = 0.0;
    if (!res_a && !res_b) {
        r.status = SolveStatus::Unique;
        m_r = rhs_r / (w2 - a2);
        m_s = rhs_s / (w2 - b2);
    } else {
        if (res_a && std::abs(rhs_r) > tol) {
            r.status = SolveStatus::ResonantUnsolvable;
            return r;
        }
        if (res_b && std::abs(rhs_s) > tol) {
            r.status = SolveStatus::ResonantUnsolvable;
            return r;
        }
        r.status = SolveStatus::ResonantSolvable;
        if (!res_a) m_r = rhs_r / (w2 - a2);
        if (!res_b) m_s = rhs_s / (w2 - b2);
        if (res_a) r.nullspace.push_back(R);
        if (res_b) r.nullspace.push_back(S);
    }
    r.m = add(scaled(n0, G), add(scaled(Rh, m_r), scaled(Sh, m_s)));
    r.lambda = dot(add(apply_mode_map(k, n0, w2, c, r.m), scaled(F, -1.0)), n0);
    return r;
}

} // namespace orientwave
