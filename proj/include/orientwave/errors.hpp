#ifndef ORIENTWAVE_ERRORS_HPP
#define ORIENTWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orientwave {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroWavenumber : Error { using Error::Error; };
struct DegenerateDirection : Error { using Error::Error; };
struct NonStrict : Error { using Error::Error; };

struct CflViolation : Error { using Error::Error; };
struct AngleOutOfBand : Error { using Error::Error; };
struct BadBaseAngle : Error { using Error::Error; };

// Riccati denominator reached zero; carries the breakdown time.
struct BlowUp : Error {
    double t_star;
    BlowUp(const std::string& what, double ts) : Error(what), t_star(ts) {}
};
struct AfterBlowUp : Error { using Error::Error; };
struct OutOfWindow : Error { using Error::Error; };
struct IncompatibleData : Error { using Error::Error; };
struct DegenerateJacobian : Error { using Error::Error; };

struct SingularOperator : Error { using Error::Error; };
struct NegativeDensity : Error { using Error::Error; };
struct BlowUpDetected : Error {
    double time;
    BlowUpDetected(const std::string& what, double t) : Error(what), time(t) {}
};

struct NonPeriodicOrbit : Error { using Error::Error; };
struct HyperbolicityLoss : Error { using Error::Error; };
struct ZeroLambda : Error { using Error::Error; };
struct RadialDegeneracy : Error { using Error::Error; };
struct NotOrthogonal : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace orientwave

#endif
