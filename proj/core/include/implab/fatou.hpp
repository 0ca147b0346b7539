#pragma once

#include <cstddef>
#include <vector>

#include "implab/charts.hpp"
#include "implab/mapfamily.hpp"
#include "implab/regions.hpp"

namespace implab {

struct FatouValue {
    Complex value{};
    double truncation_error = 0.0;  // bound on the discarded tail
    std::size_t terms = 0;          // orbit-error terms summed
    std::size_t entry = 0;          // steps until the orbit entered the petal
};

struct FatouOptions {
    double tol = 1e-9;
    // Sum at least this many terms after entering the petal (used to probe the
    // tail bound).
    std::size_t min_terms = 0;
    // Steps allowed for a basin point to reach the petal C_0 (or -C_0).
    std::size_t entry_budget = 100000;
    RegionParams region{};
};

// Orbit-error term A_eps(p) = w_eps(F_eps(p)) - w_eps(p) - 1, evaluated
// without cancellation. Mode-independent.
Complex orbit_error(const PolyMap2& map, Complex eps, const ComplexPoint& p);

// Incoming Fatou coordinate of F_0: w0(p) + sum_{n>=0} A_0(F_0^n p). Points of
// the basin outside C_0 are accepted when their orbit reaches C_0 within the
// entry budget; otherwise NotInBasin.
FatouValue phi_iota(const PolyMap2& map, const ComplexPoint& p, double tol = 1e-9);
FatouValue phi_iota(const PolyMap2& map, const ComplexPoint& p, const FatouOptions& opt);

// Outgoing Fatou coordinate, lim w0_out(F_0^{-n} p) + n, summed along the
// backward orbit. NotInRepellingBasin when the backward orbit does not reach
// -C_0 within the entry budget; inverse failures propagate.
FatouValue phi_o(const PolyMap2& map, const ComplexPoint& p, double tol = 1e-9);
FatouValue phi_o(const PolyMap2& map, const ComplexPoint& p, const FatouOptions& opt);

struct AlmostFatouParams {
    Complex eps{};
    std::size_t n = 0;
    Mode mode = Mode::Incoming;
};

// Incoming: w_eps(F_eps^n p) - n; outgoing: w_eps(F_eps^{-n} p) + n. Both are
// accumulated from the orbit-error terms so that the chart is followed
// continuously along the orbit. Throws OrbitLeftDomain(j) if the incoming orbit
// leaves C_eps u D_eps at step j or the backward orbit cannot be continued.
Complex phi_almost(const PolyMap2& map, const AlmostFatouParams& params, const ComplexPoint& p,
                   const RegionParams& region = {});

// Same quantity for several n at one eps, from a single orbit.
std::vector<Complex> phi_almost_sweep(const PolyMap2& map, Complex eps, Mode mode, const ComplexPoint& p,
                                      const std::vector<std::size_t>& n_list, const RegionParams& region = {});

// Point x on y = 0 with phi_o(x, 0) = z: solve phi_o = z - n0 near the origin
// with n0 = max(0, ceil(Re z) + 50), then push forward n0 times.
Complex psi_o_line(const PolyMap2& map, Complex z, double tol = 1e-9);

// prod_{l=l0}^{j} (1 - a/l); DomainViolation unless a > 1 and every factor
// lies in (0, 1).
double telescoping_product(double a, std::size_t l0, std::size_t j);

}  // namespace implab
