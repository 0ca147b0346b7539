#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "implab/mapfamily.hpp"
#include "implab/types.hpp"

namespace implab {

struct RegionParams {
    double gamma = 0.02;
    double gamma_prime = 0.05;
    double R = 0.25;
    double s = 0.01;
    double rho_prime = 1.5;
    double rho_dblprime = 1.07;
    // Sector condition on eps: Re eps > 0, |Im eps| <= c_eps |eps|^2.
    double c_eps = 1.0;
};

// Validated region constants for a map with the given rho.
class RegionConfig {
public:
    RegionConfig(const RegionParams& params, double rho);

    const RegionParams& params() const { return p_; }
    double gamma() const { return p_.gamma; }
    double gamma_prime() const { return p_.gamma_prime; }
    double R() const { return p_.R; }
    double s() const { return p_.s; }
    double rho() const { return rho_; }
    double rho_prime() const { return p_.rho_prime; }
    double rho_dblprime() const { return p_.rho_dblprime; }
    double c_eps() const { return p_.c_eps; }
    double K() const { return K_; }
    double tau() const { return tau_; }
    // e^{4 pi rho tau}, the vertical growth allowance inside the gate.
    double gate_growth() const { return gate_growth_; }

    bool eps_admissible(Complex eps) const;
    // Throws EpsOutsideSector.
    void require_admissible(Complex eps) const;

private:
    RegionParams p_;
    double rho_;
    double K_;
    double tau_;
    double gate_growth_;
};

bool in_C0(const RegionConfig& cfg, const ComplexPoint& p, bool use_gamma_prime = false);
// Mirror image -C_0: sigma(p) in C_0.
bool in_minus_C0(const RegionConfig& cfg, const ComplexPoint& p, bool use_gamma_prime = false);
bool in_D_eps(const RegionConfig& cfg, Complex eps, const ComplexPoint& p);
// (eps/|eps|, 1) C_0 minus D_eps; reduces to C_0 for eps = 0.
bool in_C_eps(const RegionConfig& cfg, Complex eps, const ComplexPoint& p);

struct EntryExit {
    std::size_t entry = 0;  // n_p
    std::size_t exit = 0;   // n'_p
};

// Throws NotInRegion if p is not in C_eps, DomainViolation if the budget is
// shorter than 2 pi/|eps|, BudgetExceeded if neither time occurs, and
// RegimeViolation if the orbit leaves C_eps without passing through D_eps.
EntryExit entry_exit_times(const PolyMap2& map, const RegionConfig& cfg, Complex eps, const ComplexPoint& p,
                           std::size_t budget);

struct CompactWindow {
    std::vector<ComplexPoint> points;
    long M_minus = 0;
    long M_plus = 0;
};

// Deterministic sample of `count` points of C_0, with |x| in [r_min, r_max],
// kept away from the sector edges (half the opening and half the slope).
std::vector<ComplexPoint> sample_C0(const RegionConfig& cfg, std::size_t count, double r_min, double r_max,
                                    std::uint64_t seed);

// Computes M-/M+ from gate positions at the smallest |eps| with a 10% margin
// and checks the sandwich at every eps. Throws NotInRegion when a point is
// outside C_eps for some eps, RegimeViolation when the sandwich fails.
CompactWindow make_window(const RegionConfig& cfg, std::vector<ComplexPoint> points,
                          const std::vector<Complex>& eps_list);

struct EstimateRow {
    std::string estimate;  // "a" .. "e"
    std::size_t point = 0;
    Complex eps{};
    std::size_t worst_j = 0;
    double margin = 0.0;  // >= 0 means the bound holds
};

struct EstimateSummary {
    std::string estimate;
    std::size_t violations = 0;
    double worst_margin = 0.0;
    bool passed() const { return violations == 0; }
};

struct EstimateReport {
    std::vector<EstimateRow> rows;
    std::vector<EstimateSummary> summary;  // one per estimate, in order a..e
    double C = 0.0;
    std::vector<double> C_eps;      // per tested eps
    double c1 = 0.0;
    double rho_tilde_bound = 0.0;   // exponent used in the product bound
    double rho_tilde_measured = 0.0;  // log-log slope of |y_J| on the F_0 orbit
    double hakim_alpha = 0.0;
    bool passed() const;
    void write_csv(std::ostream& os) const;
};

EstimateReport verify_orbit_estimates(const PolyMap2& map, const RegionConfig& cfg, const CompactWindow& window,
                                      const std::vector<Complex>& eps_list, unsigned threads = 0);

struct InvarianceResult {
    std::size_t tested = 0;
    std::size_t failures = 0;
    bool holds() const { return failures == 0; }
};

// Samples random points of C_eps (D_eps excluded) and checks that their
// images stay in C_eps union D_eps. For eps = 0 the source set is
// C_0(source_gamma) and the target C_0(gamma); source_gamma <= 0 means gamma.
InvarianceResult check_invariance(const PolyMap2& map, const RegionConfig& cfg, Complex eps, std::size_t sample,
                                  std::uint64_t seed = 0, double source_gamma = 0.0);

}  // namespace implab
