#pragma once

#include <map>
#include <utility>
#include <vector>

#include "implab/types.hpp"

namespace implab {

// Sparse polynomial in two complex variables, keyed by exponent pair (i, j)
// for the monomial x^i y^j. Zero coefficients are never stored.
class BivariatePoly {
public:
    BivariatePoly() = default;

    static BivariatePoly constant(Complex c);
    static BivariatePoly monomial(int i, int j, Complex c);

    void add(int i, int j, Complex c);
    BivariatePoly operator+(const BivariatePoly& o) const;
    BivariatePoly operator*(const BivariatePoly& o) const;

    // Total degree; -1 for the zero polynomial.
    int degree() const;
    // Coefficients of the degree-d homogeneous part, indexed by the power of x
    // (entry k multiplies x^k y^(d-k)).
    std::vector<Complex> homogeneous_part(int d) const;
    Complex eval(Complex x, Complex y) const;

    const std::map<std::pair<int, int>, Complex>& terms() const { return terms_; }

private:
    std::map<std::pair<int, int>, Complex> terms_;
};

// Sylvester resultant of two univariate polynomials given with a formal
// degree: coefficients are listed from the constant term upwards, and the
// length of each vector fixes its formal degree (leading zeros allowed, which
// is what makes the resultant vanish on a common root at infinity).
Complex sylvester_resultant(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace implab
