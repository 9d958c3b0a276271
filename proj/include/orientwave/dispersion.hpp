#ifndef ORIENTWAVE_DISPERSION_HPP
#define ORIENTWAVE_DISPERSION_HPP

#include <array>
#include <vector>

#include "orientwave/elastic.hpp"

namespace orientwave {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// Propagation geometry of the two linear branches for wavenumber k through
/// an unperturbed director n0. Eigenvectors are kept unnormalized:
/// R = k - (k.n0) n0 carries splay, S = k x n0 carries twist.
struct WaveFrame {
    Vec3 k;
    Vec3 n0;
    double omega_splay; // sqrt(alpha [k^2-(k.n0)^2] + gamma (k.n0)^2)
    double omega_twist; // sqrt(beta  [k^2-(k.n0)^2] + gamma (k.n0)^2)
    Vec3 R;
    Vec3 S;
    bool degenerate; // k parallel to n0: branches coincide, R = S = 0
};

/// Splay/twist branch speeds with the dispersion formulas extended off the
/// unit sphere in n (used by the finite-difference degeneracy checks).
double splay_speed(const Vec3& k, const Vec3& n, const ElasticConstants& c);
double twist_speed(const Vec3& k, const Vec3& n, const ElasticConstants& c);

WaveFrame dispersion(const Vec3& k, const Vec3& n0, const ElasticConstants& c);

/// Genuine-nonlinearity coefficient of the splay branch,
/// Gamma = -((alpha-gamma)/omega) (k.n0) [k^2 - (k.n0)^2].
double genuine_nonlinearity_gamma(const WaveFrame& f, const ElasticConstants& c);

/// Finite-difference derivative of the twist speed along S; identically zero
/// in exact arithmetic (linear degeneracy of twist waves).
double twist_degeneracy_check(const WaveFrame& f, const ElasticConstants& c, double h = 1e-5);

/// Coefficient of the cubically nonlinear term in the twist asymptotic
/// equation, Lambda = ((beta-gamma)^2/(omega (alpha-beta))) (k.n0)^2 [k^2-(k.n0)^2].
double lambda_coefficient(const WaveFrame& f, const ElasticConstants& c);

enum class SolveStatus { Unique, ResonantSolvable, ResonantUnsolvable };

struct ConstrainedSolveResult {
    SolveStatus status;
    Vec3 m{0, 0, 0};
    double lambda = 0.0;
    std::vector<Vec3> nullspace;
};

/// The linearized-mode map L applied to m (frequency enters as omega^2).
Vec3 apply_mode_map(const Vec3& k, const Vec3& n0, double omega2, const ElasticConstants& c,
                    const Vec3& m);

/// Solve L m - lambda n0 = F, n0.m = G. Away from the branch frequencies the
/// solution is unique; at resonance the solvability trichotomy of the
/// constrained eigenproblem applies. Resonance is detected with relative
/// tolerance 1e-9 on omega^2.
ConstrainedSolveResult constrained_solve(const Vec3& k, const Vec3& n0, double omega,
                                         const ElasticConstants& c, const Vec3& F, double G);

} // namespace orientwave

#endif
