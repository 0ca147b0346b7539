#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "implab/charts.hpp"
#include "implab/mapfamily.hpp"
#include "implab/regions.hpp"

using namespace implab;

namespace {

constexpr double kPi = std::numbers::pi;

const PolyMap2& fam() {
    static const PolyMap2 m = PolyMap2::default_family();
    return m;
}

const RegionConfig& cfg() {
    static const RegionConfig c(RegionParams{}, 2.0);
    return c;
}

std::size_t budget(Complex eps) { return static_cast<std::size_t>(std::ceil(4.0 * kPi / std::abs(eps))); }

// The constraints on the region constants, written out from their definitions.
bool admissible_params(const RegionParams& p, double rho) {
    if (!(p.gamma > 0 && p.gamma < p.gamma_prime && p.gamma_prime < 1)) return false;
    if (!(p.R > 0 && p.s > 0 && p.c_eps > 0)) return false;
    if (!(p.rho_prime > 1 && p.rho_prime < rho)) return false;
    if (!(p.rho_dblprime > 1 && p.rho_dblprime < 1.25)) return false;
    const double t = 4 * kPi * (p.rho_dblprime - 1);
    if (!(std::abs(t / std::tan(t)) > 1 / p.rho_prime)) return false;
    const double K = 2 * kPi * (p.rho_dblprime - 1);
    if (K > kPi / 4) return false;
    if (!(p.rho_prime < rho * (1 - p.gamma_prime) / std::sqrt(1 + p.gamma_prime * p.gamma_prime))) return false;
    const double tau = std::abs(std::tan(-kPi / 2 + K / 2));
    return 4 * tau * p.s < 1;
}

}  // namespace

TEST(RegionConfig, DefaultConstants) {
    EXPECT_NEAR(cfg().K(), 2 * kPi * 0.07, 1e-15);
    EXPECT_NEAR(cfg().K(), 0.4398, 1e-4);
    EXPECT_NEAR(cfg().tau(), 4.4737, 1e-4);
    EXPECT_LT(4 * cfg().tau() * cfg().s(), 1.0);
}

TEST(RegionConfig, OversizedSlopeIsRejected) {
    RegionParams p;
    p.s = 0.1;  // 4 tau s ~ 1.8
    EXPECT_THROW(RegionConfig(p, 2.0), Error);
}

TEST(RegionConfig, EpsSector) {
    EXPECT_TRUE(cfg().eps_admissible(0.01));
    EXPECT_TRUE(cfg().eps_admissible({0.01, 5e-5}));
    EXPECT_FALSE(cfg().eps_admissible({0.01, 2e-4}));
    EXPECT_FALSE(cfg().eps_admissible(-0.01));
    EXPECT_FALSE(cfg().eps_admissible(0.0));
    EXPECT_THROW(cfg().require_admissible(-0.01), Error);
}

TEST(RegionProperty, ConstructorMatchesTheConstraints) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t rejected = 0, accepted = 0;
    for (int k = 0; k < 4000; ++k) {
        RegionParams p;
        p.gamma = 0.1 * u(rng) - 0.01;
        p.gamma_prime = 0.12 * u(rng);
        p.R = 0.5 * u(rng) - 0.05;
        p.s = 0.1 * u(rng);
        p.rho_prime = 0.9 + 1.3 * u(rng);
        p.rho_dblprime = 0.95 + 0.35 * u(rng);
        const double rho = 0.9 + 2.0 * u(rng);
        const bool ok = admissible_params(p, rho);
        bool threw = false;
        try {
            RegionConfig c(p, rho);
        } catch (const Error& e) {
            threw = true;
            EXPECT_EQ(e.code(), ErrorCode::InvalidRegion);
        }
        EXPECT_EQ(threw, !ok) << "gamma=" << p.gamma << " gamma'=" << p.gamma_prime << " s=" << p.s
                              << " rho'=" << p.rho_prime << " rho''=" << p.rho_dblprime << " rho=" << rho;
        (ok ? accepted : rejected)++;
    }
    // Both branches must actually be exercised.
    EXPECT_GT(accepted, 20u);
    EXPECT_GT(rejected, 1000u);
}

TEST(InC0, Examples) {
    EXPECT_TRUE(in_C0(cfg(), {-0.05, 0.0}));
    EXPECT_FALSE(in_C0(cfg(), {0.05, 0.0}));
    EXPECT_FALSE(in_C0(cfg(), {-0.05, 0.006}));
    EXPECT_TRUE(in_C0(cfg(), {-0.05, 0.0004}));
    EXPECT_FALSE(in_C0(cfg(), {-0.3, 0.0}));  // beyond R
    // Opening: |Im x| <= gamma |Re x|.
    EXPECT_TRUE(in_C0(cfg(), {{-0.1, 0.0019}, 0.0}));
    EXPECT_FALSE(in_C0(cfg(), {{-0.1, 0.0021}, 0.0}));
    EXPECT_TRUE(in_C0(cfg(), {{-0.1, 0.0049}, 0.0}, true));
}

TEST(InC0, MirrorImage) {
    EXPECT_TRUE(in_minus_C0(cfg(), {0.05, 0.0}));
    EXPECT_FALSE(in_minus_C0(cfg(), {-0.05, 0.0}));
}

TEST(InDeps, CenterOfTheGate) {
    for (Complex eps : {Complex{0.01}, Complex{0.03, 1e-4}, Complex{kPi / 400}})
        EXPECT_TRUE(in_D_eps(cfg(), eps, {0.0, 0.0}));
}

TEST(InDeps, LeftOfTheStrip) {
    const double eps = 0.01;
    const Complex x = u_eps_inverse(eps, -kPi / (2 * eps) + cfg().K() / (2 * eps));
    EXPECT_FALSE(in_D_eps(cfg(), eps, {x, 0.0}));
    EXPECT_TRUE(in_C_eps(cfg(), eps, {x, 0.0}));
}

TEST(InDeps, RequiresAdmissibleEps) { EXPECT_THROW(in_D_eps(cfg(), -0.01, {}), Error); }

TEST(InCeps, ReducesToC0AtZero) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int k = 0; k < 500; ++k) {
        const ComplexPoint p{{u(rng), 0.05 * u(rng)}, {0.02 * u(rng), 0.02 * u(rng)}};
        EXPECT_EQ(in_C_eps(cfg(), 0.0, p), in_C0(cfg(), p));
    }
}

TEST(EntryExit, FrozenRegressionValue) {
    // Recorded from a direct simulation of the orbit.
    const auto t = entry_exit_times(fam(), cfg(), 0.01, {-0.1, 0.0}, budget(0.01));
    EXPECT_EQ(t.entry, 35u);
    EXPECT_EQ(t.exit, 283u);
}

TEST(EntryExit, Errors) {
    try {
        entry_exit_times(fam(), cfg(), 0.01, {0.1, 0.0}, budget(0.01));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotInRegion);
    }
    try {
        entry_exit_times(fam(), cfg(), 0.01, {-0.1, 0.0}, 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
    }
}

TEST(EntryExit, BracketsAndNoReturn) {
    const std::vector<Complex> eps_list{kPi / 100, kPi / 200, kPi / 400};
    const auto w = make_window(cfg(), sample_C0(cfg(), 8, 0.1, 0.2, 4), eps_list);
    const double K = cfg().K(), r2 = cfg().rho_dblprime();
    for (auto eps : eps_list) {
        const double a = std::abs(eps);
        for (const auto& p : w.points) {
            const auto t = entry_exit_times(fam(), cfg(), eps, p, budget(eps));
            EXPECT_LT(t.entry, t.exit);
            const double n = static_cast<double>(t.entry), n2 = static_cast<double>(t.exit);
            EXPECT_GE(n, K / (r2 * a) - w.M_plus / r2);
            EXPECT_LE(n, K / ((2 - r2) * a) - w.M_minus / (2 - r2));
            const double arc = kPi - K / 2;
            EXPECT_GE(n2, arc / (r2 * a) - w.M_plus / r2);
            EXPECT_LE(n2, arc / ((2 - r2) * a) - w.M_minus / (2 - r2));
            // Scaled entry time.
            EXPECT_GE(a * n, K / r2 - w.M_plus * a / r2);
            EXPECT_LE(a * n, K / (2 - r2));

            // The orbit never comes back after the exit.
            ComplexPoint z = p;
            for (std::size_t j = 0; j <= budget(eps); ++j) {
                if (!is_finite(z) || norm(z) > 1e6) break;
                if (j >= t.exit) ASSERT_FALSE(in_C_eps(cfg(), eps, z)) << "re-entry at j=" << j;
                z = eval_F(fam(), eps, z);
            }
        }
    }
}

TEST(Window, ConstantsAreOrderedPositiveIntegers) {
    const std::vector<Complex> eps_list{kPi / 100, kPi / 200, kPi / 400, kPi / 800};
    for (std::uint64_t seed : {0u, 1u, 2u}) {
        const auto w = make_window(cfg(), sample_C0(cfg(), 20, 0.1, 0.2, seed), eps_list);
        EXPECT_GE(w.M_minus, 1);
        EXPECT_LE(w.M_minus, w.M_plus);
        for (const auto& p : w.points)
            for (auto e : eps_list) {
                const double v = gate_position(e, p.x);
                EXPECT_GE(v, w.M_minus);
                EXPECT_LE(v, w.M_plus);
            }
    }
}

TEST(Window, SamplesLieInC0) {
    for (const auto& p : sample_C0(cfg(), 200, 0.05, 0.2, 9)) {
        EXPECT_TRUE(in_C0(cfg(), p));
        EXPECT_GE(std::abs(p.x), 0.05);
        EXPECT_LE(std::abs(p.x), 0.2);
    }
}

TEST(Window, PointInsideTheGateIsRejected) {
    // |x| = 0.01 sits inside D_eps at eps = pi/100.
    try {
        make_window(cfg(), {{-0.01, 0.0}}, {kPi / 100});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotInRegion);
    }
}

TEST(OrbitEstimates, SmallWindowPasses) {
    const std::vector<Complex> eps_list{kPi / 100, kPi / 200};
    const auto w = make_window(cfg(), sample_C0(cfg(), 5, 0.1, 0.2, 1), eps_list);
    const auto rep = verify_orbit_estimates(fam(), cfg(), w, eps_list, 1);
    ASSERT_EQ(rep.summary.size(), 5u);
    for (const auto& s : rep.summary) EXPECT_TRUE(s.passed()) << s.estimate << " worst " << s.worst_margin;
    EXPECT_GT(rep.rho_tilde_measured, 1.0);
    EXPECT_LE(rep.rho_tilde_measured, 2.05);
    EXPECT_TRUE(rep.passed());

    std::ostringstream csv;
    rep.write_csv(csv);
    EXPECT_EQ(csv.str().rfind("estimate,", 0), 0u);
}

TEST(OrbitEstimates, InvariantLineIsTrivialForE) {
    const std::vector<Complex> eps_list{kPi / 100};
    const auto w = make_window(cfg(), {{-0.15, 0.0}, {-0.12, 0.0}}, eps_list);
    const auto rep = verify_orbit_estimates(fam(), cfg(), w, eps_list, 1);
    for (const auto& row : rep.rows)
        if (row.estimate == "e") EXPECT_GE(row.margin, 0.0);
    for (const auto& row : rep.rows)
        if (row.estimate == "a") EXPECT_GE(row.margin, 0.0);
}

TEST(OrbitEstimates, ThreadCountDoesNotChangeTheReport) {
    const std::vector<Complex> eps_list{kPi / 100, kPi / 200};
    const auto w = make_window(cfg(), sample_C0(cfg(), 6, 0.1, 0.2, 3), eps_list);
    std::ostringstream a, b;
    verify_orbit_estimates(fam(), cfg(), w, eps_list, 1).write_csv(a);
    verify_orbit_estimates(fam(), cfg(), w, eps_list, 4).write_csv(b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Invariance, UnperturbedPetal) {
    const auto r = check_invariance(fam(), cfg(), 0.0, 2000, 1);
    EXPECT_EQ(r.tested, 2000u);
    EXPECT_TRUE(r.holds()) << r.failures << " failures";
}

TEST(Invariance, PerturbedPetal) {
    for (Complex eps : {Complex{kPi / 200}, Complex{kPi / 400, 1e-5}}) {
        const auto r = check_invariance(fam(), cfg(), eps, 2000, 2);
        EXPECT_GT(r.tested, 0u);
        EXPECT_TRUE(r.holds()) << r.failures << " failures at eps " << eps;
    }
}
