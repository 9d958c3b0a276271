#ifndef ORIENTWAVE_ELASTIC_HPP
#define ORIENTWAVE_ELASTIC_HPP

#include <utility>

#include "orientwave/errors.hpp"

namespace orientwave {

/// Oseen-Frank elastic constants (splay, twist, bend). The moment of
/// inertia per unit volume is normalized to one, so wave speeds are
/// square roots of these.
struct ElasticConstants {
    double alpha;
    double beta;
    double gamma;
    bool strict; // alpha != beta: strict hyperbolicity away from k parallel n0

    ElasticConstants(double a, double b, double g) : alpha(a), beta(b), gamma(g), strict(a != b) {
        if (!(a > 0.0) || !(b > 0.0) || !(g > 0.0))
            throw ValidationError("elastic constants must be strictly positive");
    }
};

/// Angle-dependent 1-D wave speeds and their phi-derivatives, phi in [0, pi]:
///   a^2 = alpha sin^2 + gamma cos^2, b^2 = beta sin^2 + gamma cos^2, q = sin.
struct OneDSpeeds {
    double a, b, q;
    double a_prime, b_prime, q_prime;
};

OneDSpeeds one_d_speeds(double phi, const ElasticConstants& c);

/// Normalized coefficients of the polarized-wave equation:
/// mu = (alpha-gamma)/gamma, nu = (beta-gamma)/gamma.
std::pair<double, double> polarized_constants(const ElasticConstants& c);

} // namespace orientwave

#endif
