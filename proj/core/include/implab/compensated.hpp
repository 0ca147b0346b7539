#pragma once

#include <cmath>

#include "implab/types.hpp"

namespace implab {

// Neumaier's variant of Kahan summation, applied to real and imaginary parts
// separately. Used for the long orbit-error series behind the Fatou
// coordinates, where tens of thousands of small terms get added to an O(1)
// running total.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(Complex init) : re_(init.real()), im_(init.imag()) {}

    void add(Complex v) {
        step(re_, cre_, v.real());
        step(im_, cim_, v.imag());
    }

    CompensatedSum& operator+=(Complex v) {
        add(v);
        return *this;
    }

    Complex value() const { return {re_ + cre_, im_ + cim_}; }

private:
    static void step(double& sum, double& comp, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double re_ = 0.0, cre_ = 0.0;
    double im_ = 0.0, cim_ = 0.0;
};

}  // namespace implab
