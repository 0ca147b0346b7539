#include "implab/cli/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "implab/fatou.hpp"
#include "implab/parallel.hpp"

namespace implab::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::ofstream open_csv(const SuiteContext& ctx, const std::string& name) {
    std::ofstream os;
    if (ctx.out_dir.empty()) return os;
    std::filesystem::create_directories(ctx.out_dir);
    os.open(std::filesystem::path(ctx.out_dir) / name, std::ios::binary);
    if (!os) throw Error(ErrorCode::Io, "cannot write " + name);
    os.precision(17);
    return os;
}

void put_point(std::ostream& os, const ComplexPoint& p) {
    os << p.x.real() << ',' << p.x.imag() << ',' << p.y.real() << ',' << p.y.imag();
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// Runs body, converts a thrown library error into a failed result and applies
// the runtime limit.
template <class Body>
CriterionResult timed(int id, const char* name, const SuiteThresholds& thr, Body&& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto t0 = Clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (thr.enforce_runtime && r.seconds >= thr.runtime_limit[id]) {
        r.passed = false;
        r.detail += "; runtime " + sci(r.seconds) + " s over limit";
    }
    return r;
}

std::vector<Complex> eps_from_denominators(const std::vector<std::size_t>& d) {
    std::vector<Complex> out;
    for (auto v : d) out.emplace_back(std::numbers::pi / static_cast<double>(v));
    return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (!(v[k] < v[k - 1])) return false;
    return true;
}

}  // namespace

CriterionResult check_functional_equation(const SuiteContext& ctx, const SuiteThresholds& thr) {
    return timed(1, "Fatou functional equation", thr, [&](CriterionResult& r) {
        const RunConfig& c = *ctx.config;
        const RegionConfig cfg = c.region_config();
        const auto pts = sample_C0(cfg, c.verify.fatou_points, c.verify.fatou_rmin, c.verify.fatou_rmax, c.seed);
        FatouOptions opt;
        opt.tol = 1e-10;
        opt.region = c.region;
        std::vector<double> res_in(pts.size()), res_out(pts.size());
        parallel_for(pts.size(), ctx.threads, [&](std::size_t k) {
            const ComplexPoint& p = pts[k];
            res_in[k] = std::abs(phi_iota(c.map, eval_F(c.map, 0.0, p), opt).value - phi_iota(c.map, p, opt).value - 1.0);
            const ComplexPoint m = sigma(p);
            res_out[k] = std::abs(phi_o(c.map, eval_F(c.map, 0.0, m), opt).value - phi_o(c.map, m, opt).value - 1.0);
        });
        auto os = open_csv(ctx, "functional_equation.csv");
        if (os.is_open()) {
            os << "point,x_re,x_im,y_re,y_im,residual_incoming,residual_outgoing\n";
            for (std::size_t k = 0; k < pts.size(); ++k) {
                os << k << ',';
                put_point(os, pts[k]);
                os << ',' << res_in[k] << ',' << res_out[k] << '\n';
            }
        }
        const double wi = *std::max_element(res_in.begin(), res_in.end());
        const double wo = *std::max_element(res_out.begin(), res_out.end());
        r.passed = wi < thr.functional_equation && wo < thr.functional_equation;
        r.detail = "max residual incoming " + sci(wi) + ", outgoing " + sci(wo) + " over " +
                   std::to_string(pts.size()) + " points";
    });
}

CriterionResult check_almost_fatou(const SuiteContext& ctx, const SuiteThresholds& thr) {
    return timed(2, "Almost-Fatou convergence", thr, [&](CriterionResult& r) {
        const RunConfig& c = *ctx.config;
        const auto& pts = c.verify.almost_points;
        if (pts.empty()) throw Error(ErrorCode::DomainViolation, "no almost-Fatou points configured");
        FatouOptions opt;
        opt.tol = 1e-11;
        opt.region = c.region;
        const std::size_t np = pts.size(), nm = c.verify.ladder.size();
        std::vector<Complex> ref_in(np), ref_out(np);
        parallel_for(np, ctx.threads, [&](std::size_t k) {
            ref_in[k] = phi_iota(c.map, pts[k], opt).value;
            ref_out[k] = phi_o(c.map, sigma(pts[k]), opt).value;
        });
        std::vector<double> err_in(np * nm), err_out(np * nm);
        parallel_for(np * nm, ctx.threads, [&](std::size_t t) {
            const std::size_t k = t / nm, l = t % nm;
            const std::size_t m = c.verify.ladder[l];
            const Complex eps = std::numbers::pi / (2.0 * static_cast<double>(m + c.verify.ladder_offset));
            err_in[t] = std::abs(phi_almost(c.map, {eps, m, Mode::Incoming}, pts[k], c.region) - ref_in[k]);
            err_out[t] = std::abs(phi_almost(c.map, {eps, m, Mode::Outgoing}, sigma(pts[k]), c.region) - ref_out[k]);
        });
        std::vector<double> sup_in(nm, 0.0), sup_out(nm, 0.0);
        for (std::size_t t = 0; t < np * nm; ++t) {
            sup_in[t % nm] = std::max(sup_in[t % nm], err_in[t]);
            sup_out[t % nm] = std::max(sup_out[t % nm], err_out[t]);
        }
        auto os = open_csv(ctx, "almost_fatou.csv");
        if (os.is_open()) {
            os << "m,eps,sup_error_incoming,sup_error_outgoing\n";
            for (std::size_t l = 0; l < nm; ++l) {
                const std::size_t m = c.verify.ladder[l];
                os << m << ',' << std::numbers::pi / (2.0 * static_cast<double>(m + c.verify.ladder_offset)) << ','
                   << sup_in[l] << ',' << sup_out[l] << '\n';
            }
        }
        r.passed = strictly_decreasing(sup_in) && strictly_decreasing(sup_out) &&
                   sup_in.back() < thr.almost_fatou_final && sup_out.back() < thr.almost_fatou_final;
        r.detail = "sup error incoming " + sci(sup_in.front()) + " -> " + sci(sup_in.back()) + ", outgoing " +
                   sci(sup_out.front()) + " -> " + sci(sup_out.back()) +
                   (strictly_decreasing(sup_in) && strictly_decreasing(sup_out) ? "" : " (not monotone)");
    });
}

CriterionResult check_lavaurs_1d(const SuiteContext& ctx, const SuiteThresholds& thr) {
    return timed(3, "1-D Lavaurs baseline", thr, [&](CriterionResult& r) {
        const RunConfig& c = *ctx.config;
        const auto& pts = c.verify.line_points;
        if (pts.empty()) throw Error(ErrorCode::DomainViolation, "no line points configured");
        const AlphaSequence seq = c.sequence();
        const std::size_t nn = seq.entries.size();
        std::vector<Complex> L(pts.size());
        std::vector<double> gap(pts.size() * nn);
        parallel_for(pts.size(), ctx.threads, [&](std::size_t k) {
            L[k] = lavaurs_1d(c.map, seq.alpha, pts[k], c.lavaurs.tol);
            for (std::size_t v = 0; v < nn; ++v) {
                const auto& e = seq.entries[v];
                const OrbitResult o = iterate(c.map, e.eps, {pts[k], 0.0}, e.n, c.lavaurs.orbit_ball);
                gap[k * nn + v] = o.escaped_at_all() ? HUGE_VAL : std::abs(o.point.x - L[k]);
            }
        });
        auto os = open_csv(ctx, "lavaurs_1d.csv");
        if (os.is_open()) {
            os << "point,x_re,x_im,L_re,L_im,n,eps,gap\n";
            for (std::size_t k = 0; k < pts.size(); ++k)
                for (std::size_t v = 0; v < nn; ++v)
                    os << k << ',' << pts[k].real() << ',' << pts[k].imag() << ',' << L[k].real() << ','
                       << L[k].imag() << ',' << seq.entries[v].n << ',' << seq.entries[v].eps.real() << ','
                       << gap[k * nn + v] << '\n';
        }
        bool ok = true;
        double worst = 0.0;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            std::vector<double> g(gap.begin() + static_cast<long>(k * nn), gap.begin() + static_cast<long>((k + 1) * nn));
            ok = ok && strictly_decreasing(g) && g.back() < thr.lavaurs_1d_final;
            worst = std::max(worst, g.back());
        }
        r.passed = ok;
        r.detail = "worst final gap " + sci(worst) + " at n = " + std::to_string(seq.entries.back().n);
    });
}

CriterionResult check_lavaurs_2d(const SuiteContext& ctx, const SuiteThresholds& thr) {
    return timed(4, "2-D Lavaurs map", thr, [&](CriterionResult& r) {
        const RunConfig& c = *ctx.config;
        const RegionConfig cfg = c.region_config();
        const auto& pts = c.verify.lavaurs_points;
        if (pts.empty()) throw Error(ErrorCode::DomainViolation, "no Lavaurs points configured");
        const AlphaSequence seq = c.sequence();
        LavaursOptions lo;
        lo.orbit_ball = c.lavaurs.orbit_ball;
        lo.threads = 1;
        std::vector<LavaursEstimate> est(pts.size());
        std::vector<std::vector<double>> res(pts.size());
        parallel_for(pts.size(), ctx.threads, [&](std::size_t k) {
            est[k] = lavaurs_2d_estimate(c.map, seq, pts[k], lo);
            res[k] = semiconjugacy_residuals(c.map, cfg, est[k], c.lavaurs.tol);
        });
        auto os = open_csv(ctx, "lavaurs_2d.csv");
        if (os.is_open()) write_lavaurs_csv(os, est, res);
        bool ok = true;
        double worst_res = 0.0, worst_gap = 0.0;
        std::size_t worst_bumps = 0;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            std::size_t bumps = 0;
            for (std::size_t i = 1; i < est[k].gaps.size(); ++i)
                if (!(est[k].gaps[i] < est[k].gaps[i - 1])) ++bumps;
            worst_bumps = std::max(worst_bumps, bumps);
            worst_res = std::max(worst_res, res[k].back());
            worst_gap = std::max(worst_gap, est[k].cauchy_gap);
            ok = ok && bumps <= thr.cauchy_nonmonotone && res[k].back() < thr.semiconjugacy_final;
        }
        r.passed = ok;
        r.detail = "worst final residual " + sci(worst_res) + ", worst cauchy gap " + sci(worst_gap) +
                   ", non-monotone steps " + std::to_string(worst_bumps);
    });
}

CriterionResult check_orbit_estimates(const SuiteContext& ctx, const SuiteThresholds& thr) {
    return timed(5, "Orbit estimates (a)-(e)", thr, [&](CriterionResult& r) {
        const RunConfig& c = *ctx.config;
        const RegionConfig cfg = c.region_config();
        const auto eps = eps_from_denominators(c.verify.eps_denominators);
        const CompactWindow w = make_window(
            cfg, sample_C0(cfg, c.verify.window_points, c.verify.window_rmin, c.verify.window_rmax, c.seed), eps);
        const EstimateReport rep = verify_orbit_estimates(c.map, cfg, w, eps, ctx.threads);
        auto os = open_csv(ctx, "orbit_estimates.csv");
        if (os.is_open()) rep.write_csv(os);
        r.passed = rep.passed();
        std::ostringstream d;
        d.precision(4);
        for (const auto& s : rep.summary) d << s.estimate << ":" << s.violations << " ";
        d << "violations; rho~ measured " << rep.rho_tilde_measured << ", used " << rep.rho_tilde_bound
          << "; M- " << w.M_minus << ", M+ " << w.M_plus;
        r.detail = d.str();
    });
}

double telescoping_exponent(double a, std::size_t l0, std::size_t j) {
    return std::log(telescoping_product(a, l0, 2 * j) / telescoping_product(a, l0, j)) / std::log(2.0);
}

CriterionResult check_telescoping(const SuiteContext& ctx, const SuiteThresholds& thr) {
    return timed(6, "Telescoping products", thr, [&](CriterionResult& r) {
        constexpr std::size_t J = 10000;
        // sum_{j>=3} prod_{l=3}^{j} (1 - 2/l) = sum 2/(j(j-1)) -> 1
        double sum = 0.0;
        for (std::size_t j = 3; j <= J; ++j) sum += telescoping_product(2.0, 3, j);
        const bool sum_ok = std::abs(sum - 1.0) < thr.telescoping_sum;

        struct Case {
            double a;
            std::size_t l0;
        };
        const Case cases[] = {{1.5, 4}, {2.0, 3}, {3.0, 4}};
        bool exp_ok = true;
        std::ostringstream d;
        d.precision(6);
        d << "partial sum at J=" << J << ": " << sum << "; exponents";
        auto os = open_csv(ctx, "telescoping.csv");
        if (os.is_open()) os << "a,l0,j,exponent\n";
        for (const auto& cs : cases) {
            const double e = telescoping_exponent(cs.a, cs.l0, 50000);
            exp_ok = exp_ok && std::abs(e + cs.a) < thr.exponent;
            d << ' ' << e;
            if (os.is_open()) os << cs.a << ',' << cs.l0 << ",50000," << e << '\n';
        }
        if (os.is_open()) os << "sum,3," << J << ',' << sum << '\n';
        r.passed = sum_ok && exp_ok;
        r.detail = d.str();
    });
}

CriterionResult check_entry_exit(const SuiteContext& ctx, const SuiteThresholds& thr) {
    return timed(7, "Entry and exit times", thr, [&](CriterionResult& r) {
        const RunConfig& c = *ctx.config;
        const RegionConfig cfg = c.region_config();
        const auto eps = eps_from_denominators(c.verify.eps_denominators);
        const CompactWindow w = make_window(
            cfg, sample_C0(cfg, c.verify.window_points, c.verify.window_rmin, c.verify.window_rmax, c.seed), eps);
        const double K = cfg.K(), rd = cfg.rho_dblprime();
        const double Mm = static_cast<double>(w.M_minus), Mp = static_cast<double>(w.M_plus);
        const std::size_t np = w.points.size(), ne = eps.size();
        std::vector<EntryExit> ee(np * ne);
        parallel_for(np * ne, ctx.threads, [&](std::size_t t) {
            const Complex e = eps[t % ne];
            const auto budget = static_cast<std::size_t>(std::ceil(4.0 * std::numbers::pi / std::abs(e)));
            ee[t] = entry_exit_times(c.map, cfg, e, w.points[t / ne], budget);
        });
        auto os = open_csv(ctx, "entry_exit.csv");
        if (os.is_open()) os << "point,eps,n_p,n_p_lo,n_p_hi,n_prime_p,n_prime_lo,n_prime_hi,inside\n";
        std::size_t outside = 0;
        for (std::size_t t = 0; t < np * ne; ++t) {
            const double ae = std::abs(eps[t % ne]);
            const double lo1 = K / (rd * ae) - Mp / rd, hi1 = K / ((2.0 - rd) * ae) - Mm / (2.0 - rd);
            const double arc = std::numbers::pi - K / 2.0;
            const double lo2 = arc / (rd * ae) - Mp / rd, hi2 = arc / ((2.0 - rd) * ae) - Mm / (2.0 - rd);
            const auto n1 = static_cast<double>(ee[t].entry), n2 = static_cast<double>(ee[t].exit);
            const bool in = lo1 <= n1 && n1 <= hi1 && lo2 <= n2 && n2 <= hi2 && ee[t].entry < ee[t].exit;
            if (!in) ++outside;
            if (os.is_open())
                os << t / ne << ',' << ae << ',' << ee[t].entry << ',' << lo1 << ',' << hi1 << ',' << ee[t].exit << ','
                   << lo2 << ',' << hi2 << ',' << (in ? 1 : 0) << '\n';
        }
        r.passed = outside == 0;
        r.detail = std::to_string(np * ne - outside) + "/" + std::to_string(np * ne) + " (p, eps) pairs inside brackets";
    });
}

std::vector<CriterionResult> run_verify_suite(const SuiteContext& ctx, const SuiteThresholds& thr) {
    return {check_functional_equation(ctx, thr), check_almost_fatou(ctx, thr), check_lavaurs_1d(ctx, thr),
            check_lavaurs_2d(ctx, thr),          check_orbit_estimates(ctx, thr), check_telescoping(ctx, thr),
            check_entry_exit(ctx, thr)};
}

}  // namespace implab::cli
