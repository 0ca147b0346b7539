#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "implab/mapfamily.hpp"
#include "implab/regions.hpp"

namespace implab {

struct AlphaEntry {
    Complex eps{};
    std::size_t n = 0;
};

// Pairs (eps_nu, n_nu) with n_nu - pi/eps_nu = alpha.
struct AlphaSequence {
    Complex alpha{};
    std::vector<AlphaEntry> entries;
};

// eps_nu = pi/(n_nu - alpha). Throws InvalidSequence unless the n are strictly
// increasing with n > |alpha| + 1, and SectorViolation (listing the offending
// indices) when some eps_nu has Re eps <= 0 or |Im eps| > c_eps |eps|^2.
AlphaSequence make_alpha_sequence(Complex alpha, const std::vector<std::size_t>& n_list, double c_eps = 1.0);

// L_alpha(x) = psi_o(alpha + phi_iota(x, 0)) on the invariant line.
Complex lavaurs_1d(const PolyMap2& map, Complex alpha, Complex x, double tol = 1e-9);

struct LavaursEstimate {
    Complex alpha{};
    AlphaSequence source;
    ComplexPoint p;
    std::vector<ComplexPoint> values;  // F_{eps_nu}^{n_nu}(p), in nu order
    std::vector<double> gaps;          // distance between consecutive values
    double cauchy_gap = 0.0;           // last entry of gaps

    const ComplexPoint& image() const { return values.back(); }
};

struct LavaursOptions {
    double orbit_ball = 1e8;  // an orbit leaving this ball counts as escaped
    unsigned threads = 0;
};

// Tail images of p along the sequence. Throws OrbitEscaped(nu) if some orbit
// leaves the ball and InvalidSequence for fewer than two entries.
LavaursEstimate lavaurs_2d_estimate(const PolyMap2& map, const AlphaSequence& seq, const ComplexPoint& p,
                                    const LavaursOptions& opt = {});
LavaursEstimate lavaurs_2d_estimate(const PolyMap2& map, const RegionConfig& cfg, Complex alpha, const ComplexPoint& p,
                                    const std::vector<std::size_t>& n_list, const LavaursOptions& opt = {});

// |phi_o(T) - alpha - phi_iota(p)| for each tail image T. Throws
// ImageNotInRepellingBasin when an image is outside -C_0.
std::vector<double> semiconjugacy_residuals(const PolyMap2& map, const RegionConfig& cfg, const LavaursEstimate& est,
                                            double tol = 1e-9);

// Residual at the last tail image.
double semiconjugacy_residual(const PolyMap2& map, const RegionConfig& cfg, Complex alpha, const ComplexPoint& p,
                              const std::vector<std::size_t>& n_list, double tol = 1e-9);

// One row per tail index: alpha, nu, eps, n, p, image, cauchy gap, residual.
// `residuals` may be empty.
void write_lavaurs_csv(std::ostream& os, const std::vector<LavaursEstimate>& estimates,
                       const std::vector<std::vector<double>>& residuals, bool header = true);

}  // namespace implab
