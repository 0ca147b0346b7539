#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace implab {

using Complex = std::complex<double>;

// A point (x, y) of C^2.
struct ComplexPoint {
    Complex x{};
    Complex y{};

    friend ComplexPoint operator+(const ComplexPoint& a, const ComplexPoint& b) { return {a.x + b.x, a.y + b.y}; }
    friend ComplexPoint operator-(const ComplexPoint& a, const ComplexPoint& b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(const ComplexPoint& a, const ComplexPoint& b) { return a.x == b.x && a.y == b.y; }
};

// Euclidean norm on C^2.
inline double norm(const ComplexPoint& p) { return std::hypot(std::abs(p.x), std::abs(p.y)); }

inline double distance(const ComplexPoint& a, const ComplexPoint& b) { return norm(a - b); }

inline bool is_finite(const ComplexPoint& p) {
    return std::isfinite(p.x.real()) && std::isfinite(p.x.imag()) && std::isfinite(p.y.real()) &&
           std::isfinite(p.y.imag());
}

// sigma(x, y) = (-x, y), the involution conjugating F^{-1} to H.
inline ComplexPoint sigma(const ComplexPoint& p) { return {-p.x, p.y}; }

enum class ErrorCode {
    InvalidMap,
    InvalidRegion,
    InvalidGrid,
    InvalidSequence,
    DegenerateInput,
    DegenerateDirection,
    NoConvergence,
    OutsideInvertibleRegion,
    PoleAtGate,
    OutsideStrip,
    EpsOutsideSector,
    SectorViolation,
    DomainViolation,
    NotInRegion,
    NotInBasin,
    NotInRepellingBasin,
    ImageNotInRepellingBasin,
    OrbitLeftDomain,
    OrbitEscaped,
    BudgetExceeded,
    RegimeViolation,
    NotRegular,
    GridMismatch,
    InconclusiveScene,
    Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, long index = -1)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

    ErrorCode code() const { return code_; }
    // Step or sequence index attached to the failure, -1 if not applicable.
    long index() const { return index_; }

private:
    ErrorCode code_;
    long index_;
};

}  // namespace implab
