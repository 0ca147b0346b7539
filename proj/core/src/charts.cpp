#include "implab/charts.hpp"

#include <numbers>

namespace implab {

namespace {
constexpr Complex I{0.0, 1.0};
}

Complex u_eps(Complex eps, Complex x) {
    if (eps == Complex{}) throw Error(ErrorCode::DomainViolation, "u_eps needs eps != 0");
    const Complex ie = I * eps;
    const double pole_tol = 1e-15 * std::abs(eps);
    if (std::abs(x - ie) <= pole_tol || std::abs(x + ie) <= pole_tol)
        throw Error(ErrorCode::PoleAtGate, "x is one of the split fixed points");
    return std::log((ie - x) / (ie + x)) / (2.0 * ie);
}

Complex u_eps_inverse(Complex eps, Complex w) {
    const Complex ew = eps * w;
    if (!(std::abs(ew.real()) < std::numbers::pi / 2))
        throw Error(ErrorCode::OutsideStrip, "w is not inside the strip of u_eps");
    return eps * std::tan(ew);
}

Complex w_eps(Complex eps, Complex q, Complex x, Mode mode) {
    Complex w = u_eps(eps, x);
    if (q != Complex{}) w -= 0.5 * q * std::log(eps * eps + x * x);
    const Complex shift = std::numbers::pi / (2.0 * eps);
    return mode == Mode::Incoming ? w + shift : w - shift;
}

Complex w0(Complex q, Complex x, Mode mode) {
    Complex w = -1.0 / x;
    if (q != Complex{}) w -= q * std::log(mode == Mode::Incoming ? -x : x);
    return w;
}

double gate_position(Complex eps, Complex x) {
    const double a = std::abs(eps);
    return ((eps / a) * u_eps(eps, x)).real() + std::numbers::pi / (2.0 * a);
}

}  // namespace implab
