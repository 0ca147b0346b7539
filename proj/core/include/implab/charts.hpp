#pragma once

#include "implab/types.hpp"

namespace implab {

enum class Mode { Incoming, Outgoing };

// u_eps(x) = (1 / (2 i eps)) log((i eps - x) / (i eps + x)), principal branch,
// which is (1/eps) arctan(x/eps) away from the cuts. Throws PoleAtGate at
// x = +-i eps and DomainViolation for eps = 0.
Complex u_eps(Complex eps, Complex x);

// eps tan(eps w); throws OutsideStrip unless |Re(eps w)| < pi/2.
Complex u_eps_inverse(Complex eps, Complex w);

// u_eps(x) - (q/2) log(eps^2 + x^2) + pi/(2 eps) (incoming) or - pi/(2 eps)
// (outgoing).
Complex w_eps(Complex eps, Complex q, Complex x, Mode mode);

// eps = 0 charts: -1/x - q log(-x) (incoming), -1/x - q log(x) (outgoing).
Complex w0(Complex q, Complex x, Mode mode);

// Re((eps/|eps|) u_eps(x)) + pi/(2|eps|): the position of x along the gate,
// measured from its left edge.
double gate_position(Complex eps, Complex x);

}  // namespace implab
