#include "orientwave/elastic.hpp"

#include <cmath>

namespace orientwave {

OneDSpeeds one_d_speeds(double phi, const ElasticConstants& c) {
    const double s = std::sin(phi), co = std::cos(phi);
    const double a = std::sqrt(c.alpha * s * s + c.gamma * co * co);
    const double b = std::sqrt(c.beta * s * s + c.gamma * co * co);
    OneDSpeeds out;
    out.a = a;
    out.b = b;
    out.q = s;
    out.a_prime = (c.alpha - c.gamma) * s * co / a;
    out.b_prime = (c.beta - c.gamma) * s * co / b;
    out.q_prime = co;
    return out;
}

std::pair<double, double> polarized_constants(const ElasticConstants& c) {
    return {(c.alpha - c.gamma) / c.gamma, (c.beta - c.gamma) / c.gamma};
}

} // namespace orientwave
