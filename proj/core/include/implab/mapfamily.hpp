#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "implab/polynomial.hpp"
#include "implab/types.hpp"

namespace implab {

struct Monomial {
    int i = 0;  // power of x
    int j = 0;  // power of y
    Complex c{};
};

// Coefficients of the perturbed family
//   F_eps(x, y) = (x + (x^2 + eps^2) alpha_eps(x, y), y (1 + beta_eps(x, y)))
// with alpha_eps = 1 + (q+1) x + r y + alpha_extra + eps2_alpha eps^2 and
//      beta_eps  = rho x + beta_extra + eps2_beta eps^2.
struct PolyMap2 {
    Complex q{0.0};
    Complex r{1.0};
    double rho = 2.0;
    std::vector<Monomial> alpha_extra;
    std::vector<Monomial> beta_extra;
    Complex eps2_alpha{0.0};
    Complex eps2_beta{0.0};
    // Radius of the ball on which the local inverse is trusted.
    double inverse_radius = 0.5;

    // Throws Error(InvalidMap) unless rho > 1, every extra monomial has total
    // degree >= 2 and inverse_radius > 0.
    void validate() const;

    // The regular degree-4 family used throughout: q = 0, r = 1, rho = 2,
    // alpha_extra = x^2 + y^2, beta_extra = y^3.
    static PolyMap2 default_family();
    // Same map with q -> -q; the conjugate family H has this expansion to
    // second order.
    PolyMap2 with_q(Complex q_new) const;
};

// alpha_eps - 1 and beta_eps together with their partial derivatives.
struct MapTerms {
    Complex am1, ax, ay;  // alpha - 1, d alpha/dx, d alpha/dy
    Complex b, bx, by;    // beta, d beta/dx, d beta/dy
};

MapTerms map_terms(const PolyMap2& map, Complex eps, const ComplexPoint& p);

// alpha_eps(x, y) - 1 alone, the piece needed by the orbit-error terms.
Complex alpha_minus_one(const PolyMap2& map, Complex eps, const ComplexPoint& p);

// Non-finite coordinates in the result mean the orbit blew up; callers treat
// that as escape.
ComplexPoint eval_F(const PolyMap2& map, Complex eps, const ComplexPoint& p);

// Local inverse by damped Newton seeded with the second-order inverse
// expansion. Throws OutsideInvertibleRegion when norm(p) > map.inverse_radius
// and NoConvergence when Newton stalls.
ComplexPoint eval_F_inverse(const PolyMap2& map, Complex eps, const ComplexPoint& p, double tol = 1e-14);

// H_eps = sigma o F_eps^{-1} o sigma.
ComplexPoint eval_H(const PolyMap2& map, Complex eps, const ComplexPoint& p, double tol = 1e-14);

struct OrbitResult {
    ComplexPoint point;                  // last computed point
    std::optional<std::size_t> escaped;  // first k with norm > radius
    std::vector<ComplexPoint> trace;     // p, F(p), ... when requested

    bool escaped_at_all() const { return escaped.has_value(); }
};

OrbitResult iterate(const PolyMap2& map, Complex eps, const ComplexPoint& p, std::size_t n, double escape_radius,
                    bool keep_trace = false);

// Degree-2 homogeneous pair, coefficients ordered (x^2, xy, y^2).
struct HomogeneousPair {
    std::array<Complex, 3> P{};
    std::array<Complex, 3> Q{};
};

// Quadratic part of F_0 at the origin: P = x^2, Q = rho x y.
HomogeneousPair quadratic_part(const PolyMap2& map);

struct CharacteristicDirection {
    // Direction [1:u], or [0:1] when at_infinity is set.
    Complex u{};
    bool at_infinity = false;
    bool degenerate = false;
};

std::vector<CharacteristicDirection> characteristic_directions(const HomogeneousPair& pq);

// r'(u0) / P(1, u0) for the direction [1:u0].
Complex director(const HomogeneousPair& pq, Complex u0);

struct TopForms {
    int degree_x = -1;  // total degree of the first component
    int degree_y = -1;  // total degree of the second component
    std::vector<Complex> hx, hy;  // top homogeneous parts, indexed by power of x
};

std::array<BivariatePoly, 2> expand(const PolyMap2& map, Complex eps);
TopForms top_forms(const PolyMap2& map, Complex eps);

struct Regularity {
    bool regular = false;
    int degree = -1;  // common degree when both components agree, else -1
    Complex resultant_y_chart{};
    Complex resultant_x_chart{};
};

Regularity check_regularity(const PolyMap2& map, Complex eps);

}  // namespace implab
