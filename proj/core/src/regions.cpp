#include "implab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "implab/charts.hpp"
#include "implab/parallel.hpp"

namespace implab {

namespace {

constexpr double kPi = std::numbers::pi;

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidRegion, what);
}

}  // namespace

RegionConfig::RegionConfig(const RegionParams& params, double rho) : p_(params), rho_(rho) {
    const double vals[] = {p_.gamma, p_.gamma_prime, p_.R, p_.s, p_.rho_prime, p_.rho_dblprime, p_.c_eps, rho};
    for (double v : vals) require(std::isfinite(v), "non-finite region constant");
    require(p_.gamma > 0.0 && p_.gamma < p_.gamma_prime && p_.gamma_prime < 1.0, "need 0 < gamma < gamma' < 1");
    require(p_.R > 0.0 && p_.s > 0.0 && p_.c_eps > 0.0, "R, s and c must be positive");
    require(rho > 1.0, "rho must exceed 1");
    require(p_.rho_prime > 1.0 && p_.rho_prime < rho, "need 1 < rho' < rho");
    require(p_.rho_dblprime > 1.0 && p_.rho_dblprime < 1.25, "need 1 < rho'' < 5/4");

    K_ = 2.0 * kPi * (p_.rho_dblprime - 1.0);
    tau_ = std::abs(std::tan(-kPi / 2 + K_ / 2));
    gate_growth_ = std::exp(4.0 * kPi * rho * tau_);

    require(std::abs(2.0 * K_ / std::tan(2.0 * K_)) > 1.0 / p_.rho_prime, "rho'' too large for rho': |2K/tan 2K| <= 1/rho'");
    require(K_ <= kPi / 4, "K = 2 pi (rho'' - 1) exceeds pi/4");
    const double gp = p_.gamma_prime;
    require(p_.rho_prime < rho * (1.0 - gp) / std::sqrt(1.0 + gp * gp), "rho' >= rho (1 - gamma') / sqrt(1 + gamma'^2)");
    require(4.0 * tau_ * p_.s < 1.0, "4 tau s >= 1");
}

bool RegionConfig::eps_admissible(Complex eps) const {
    return eps.real() > 0.0 && std::abs(eps.imag()) <= p_.c_eps * std::norm(eps);
}

void RegionConfig::require_admissible(Complex eps) const {
    if (!eps_admissible(eps)) throw Error(ErrorCode::EpsOutsideSector, "eps violates the sector condition");
}

bool in_C0(const RegionConfig& cfg, const ComplexPoint& p, bool use_gamma_prime) {
    const double g = use_gamma_prime ? cfg.gamma_prime() : cfg.gamma();
    const double ax = std::abs(p.x);
    return std::abs(p.x.imag()) <= -g * p.x.real() && ax <= cfg.R() && std::abs(p.y) <= cfg.s() * ax;
}

bool in_minus_C0(const RegionConfig& cfg, const ComplexPoint& p, bool use_gamma_prime) {
    return in_C0(cfg, sigma(p), use_gamma_prime);
}

bool in_D_eps(const RegionConfig& cfg, Complex eps, const ComplexPoint& p) {
    cfg.require_admissible(eps);
    const double a = std::abs(eps);
    if (!(std::abs(p.y) < 2.0 * cfg.gate_growth() * a)) return false;
    double pos;
    try {
        pos = gate_position(eps, p.x);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::PoleAtGate) return true;  // the split fixed points sit inside the gate
        throw;
    }
    return cfg.K() / a < pos && pos < (kPi - cfg.K() / 2) / a;
}

bool in_C_eps(const RegionConfig& cfg, Complex eps, const ComplexPoint& p) {
    if (eps == Complex{}) return in_C0(cfg, p);
    const Complex rot = std::conj(eps) / std::abs(eps);
    return in_C0(cfg, {p.x * rot, p.y}) && !in_D_eps(cfg, eps, p);
}

EntryExit entry_exit_times(const PolyMap2& map, const RegionConfig& cfg, Complex eps, const ComplexPoint& p,
                           std::size_t budget) {
    cfg.require_admissible(eps);
    if (!in_C_eps(cfg, eps, p)) throw Error(ErrorCode::NotInRegion, "entry/exit times need p in C_eps");
    if (static_cast<double>(budget) < 2.0 * kPi / std::abs(eps))
        throw Error(ErrorCode::DomainViolation, "budget shorter than 2 pi/|eps|");
    bool entered = false;
    EntryExit out;
    ComplexPoint z = p;
    for (std::size_t j = 0; j <= budget; ++j) {
        const bool finite = is_finite(z);
        const bool inD = finite && in_D_eps(cfg, eps, z);
        if (!entered && inD) {
            entered = true;
            out.entry = j;
        }
        if (!finite || !(inD || in_C_eps(cfg, eps, z))) {
            if (!entered)
                throw Error(ErrorCode::RegimeViolation, "orbit left C_eps before reaching D_eps", static_cast<long>(j));
            out.exit = j;
            return out;
        }
        z = eval_F(map, eps, z);
    }
    throw Error(ErrorCode::BudgetExceeded, "no exit from C_eps u D_eps within budget");
}

std::vector<ComplexPoint> sample_C0(const RegionConfig& cfg, std::size_t count, double r_min, double r_max,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double theta_max = 0.5 * std::atan(cfg.gamma());
    std::vector<ComplexPoint> pts;
    pts.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double r = r_min + (r_max - r_min) * unit(rng);
        const double theta = theta_max * (2.0 * unit(rng) - 1.0);
        const double ry = 0.5 * cfg.s() * r * unit(rng);
        const double phi = 2.0 * kPi * unit(rng);
        pts.push_back({-r * std::polar(1.0, theta), std::polar(ry, phi)});
    }
    return pts;
}

CompactWindow make_window(const RegionConfig& cfg, std::vector<ComplexPoint> points,
                          const std::vector<Complex>& eps_list) {
    if (points.empty() || eps_list.empty()) throw Error(ErrorCode::DomainViolation, "empty window or eps list");
    Complex eps_min = eps_list.front();
    for (auto e : eps_list)
        if (std::abs(e) < std::abs(eps_min)) eps_min = e;
    for (const auto& p : points)
        for (auto e : eps_list)
            if (!in_C_eps(cfg, e, p)) throw Error(ErrorCode::NotInRegion, "window point outside C_eps");

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : points) {
        const double v = gate_position(eps_min, p.x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CompactWindow w;
    w.points = std::move(points);
    w.M_minus = std::max(1L, static_cast<long>(std::floor(0.9 * lo)));
    w.M_plus = std::max(w.M_minus, static_cast<long>(std::ceil(1.1 * hi)));
    for (const auto& p : w.points)
        for (auto e : eps_list) {
            const double v = gate_position(e, p.x);
            if (v < static_cast<double>(w.M_minus) || v > static_cast<double>(w.M_plus))
                throw Error(ErrorCode::RegimeViolation, "gate-position sandwich fails for a window point");
        }
    return w;
}

bool EstimateReport::passed() const {
    if (summary.empty()) return false;
    for (const auto& s : summary)
        if (!s.passed()) return false;
    return rho_tilde_measured > 1.0;
}

void EstimateReport::write_csv(std::ostream& os) const {
    const auto old_prec = os.precision(17);
    os << "estimate,point,eps_re,eps_im,worst_j,margin\n";
    for (const auto& r : rows)
        os << r.estimate << ',' << r.point << ',' << r.eps.real() << ',' << r.eps.imag() << ',' << r.worst_j << ','
           << r.margin << '\n';
    os.precision(old_prec);
}

namespace {

struct EpsOrbit {
    EntryExit times;
    std::vector<ComplexPoint> orbit;  // j = 0 .. exit
    Complex u{};                      // u_eps(x(p))
};

struct PointData {
    std::vector<EpsOrbit> per_eps;
    std::vector<ComplexPoint> orbit0;  // F_0 orbit
};

double g_log(long M, std::size_t j) {
    const double m = static_cast<double>(M) + static_cast<double>(j);
    return (1.0 + std::log(m)) / (m * m);
}

}  // namespace

EstimateReport verify_orbit_estimates(const PolyMap2& map, const RegionConfig& cfg, const CompactWindow& window,
                                      const std::vector<Complex>& eps_list, unsigned threads) {
    constexpr std::size_t kUnperturbedSteps = 10000;
    const std::size_t np = window.points.size();
    const std::size_t ne = eps_list.size();
    if (np == 0 || ne == 0) throw Error(ErrorCode::DomainViolation, "empty window or eps list");
    const double Mm = static_cast<double>(window.M_minus);
    const double Mp = static_cast<double>(window.M_plus);

    std::vector<PointData> data(np);
    parallel_for(np, threads, [&](std::size_t i) {
        const ComplexPoint p = window.points[i];
        auto& d = data[i];
        d.per_eps.resize(ne);
        for (std::size_t k = 0; k < ne; ++k) {
            const Complex e = eps_list[k];
            auto& eo = d.per_eps[k];
            const auto budget = static_cast<std::size_t>(std::ceil(4.0 * kPi / std::abs(e)));
            eo.times = entry_exit_times(map, cfg, e, p, budget);
            eo.u = u_eps(e, p.x);
            eo.orbit = iterate(map, e, p, eo.times.exit, std::numeric_limits<double>::infinity(), true).trace;
        }
        d.orbit0 = iterate(map, 0.0, p, kUnperturbedSteps, std::numeric_limits<double>::infinity(), true).trace;
    });

    EstimateReport rep;

    // Calibration on the largest |eps|.
    std::size_t kcal = 0;
    for (std::size_t k = 1; k < ne; ++k)
        if (std::abs(eps_list[k]) > std::abs(eps_list[kcal])) kcal = k;

    auto model = [](Complex e, Complex u, Complex shift) { return e * std::tan(e * (u + shift)); };

    double C = 0.0;
    {
        const Complex e = eps_list[kcal];
        for (std::size_t i = 0; i < np; ++i) {
            const auto& eo = data[i].per_eps[kcal];
            for (std::size_t j = 0; j <= eo.times.entry; ++j) {
                const Complex q = model(e, eo.u, static_cast<double>(j));
                C = std::max(C, std::abs(eo.orbit[j].x - q) / g_log(window.M_minus, j));
            }
        }
        C *= 2.0;
    }
    rep.C = C;
    rep.C_eps.assign(ne, 0.0);
    for (std::size_t k = 0; k < ne; ++k) {
        const Complex e = eps_list[k];
        if (e.imag() == 0.0) continue;  // q~_j = q_j for real eps
        const Complex turn = std::abs(e) / e;
        double ce = 0.0;
        for (std::size_t i = 0; i < np; ++i) {
            const auto& eo = data[i].per_eps[k];
            for (std::size_t j = 0; j <= eo.times.entry; ++j) {
                const Complex qt = model(e, eo.u, static_cast<double>(j) * turn);
                const double excess = std::abs(eo.orbit[j].x - qt) - C * g_log(window.M_minus, j);
                ce = std::max(ce, excess * (Mp + static_cast<double>(j)));
            }
        }
        rep.C_eps[k] = 2.0 * ce;
    }
    const double ce_max = *std::max_element(rep.C_eps.begin(), rep.C_eps.end());
    const double gp = cfg.gamma_prime();
    rep.rho_tilde_bound = cfg.rho() * (1.0 - gp) / std::sqrt(1.0 + gp * gp) * (1.0 / cfg.rho_prime() - ce_max);

    double c1 = 1.0;
    {
        for (std::size_t i = 0; i < np; ++i) {
            const auto& eo = data[i].per_eps[kcal];
            const double y0 = std::abs(eo.orbit[0].y);
            if (y0 == 0.0) continue;
            double logp = 0.0;
            for (std::size_t J = 0; J <= eo.times.entry; ++J) {
                c1 = std::max(c1, std::abs(eo.orbit[J].y) / (y0 * std::exp(logp)));
                logp += std::log1p(-rep.rho_tilde_bound / (Mp + static_cast<double>(J)));
            }
        }
        c1 *= 2.0;
    }
    rep.c1 = c1;

    // Measured vertical decay exponent on the unperturbed orbits.
    double rho_meas = std::numeric_limits<double>::infinity();
    bool any_y = false;
    for (std::size_t i = 0; i < np; ++i) {
        const auto& o = data[i].orbit0;
        if (std::abs(o[0].y) == 0.0) continue;
        double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
        for (std::size_t J = 100; J <= kUnperturbedSteps; ++J) {
            const double lx = std::log(static_cast<double>(J));
            const double ly = std::log(std::abs(o[J].y) / std::abs(o[0].y));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            n += 1;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        rho_meas = std::min(rho_meas, -slope);
        any_y = true;
    }
    rep.rho_tilde_measured = any_y ? rho_meas : 0.0;

    rep.hakim_alpha = director(quadratic_part(map), 0.0).real() / 2.0;

    const char* ids[] = {"a", "b", "c", "d", "e"};
    rep.summary.resize(5);
    for (int s = 0; s < 5; ++s) {
        rep.summary[s].estimate = ids[s];
        rep.summary[s].worst_margin = std::numeric_limits<double>::infinity();
    }
    auto record = [&](int s, std::size_t i, Complex e, std::size_t worst_j, double margin) {
        rep.rows.push_back({ids[s], i, e, worst_j, margin});
        auto& sum = rep.summary[s];
        sum.worst_margin = std::min(sum.worst_margin, margin);
        if (margin < 0.0) ++sum.violations;
    };

    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t k = 0; k < ne; ++k) {
            const Complex e = eps_list[k];
            const auto& eo = data[i].per_eps[k];
            const double y0 = std::abs(eo.orbit[0].y);
            double wa = std::numeric_limits<double>::infinity(), wb = wa, wc = wa, wd = wa;
            std::size_t ja = 0, jb = 0, jc = 0, jd = 0;
            double logp = 0.0;
            for (std::size_t j = 0; j <= eo.times.entry; ++j) {
                const double jd_ = static_cast<double>(j);
                const double ax = std::abs(eo.orbit[j].x);
                const double ma = 2.0 / (jd_ + Mm) - ax;
                if (ma < wa) wa = ma, ja = j;
                const double lb = (1.0 / cfg.rho_prime() - rep.C_eps[k]) / (Mp + jd_) - C * g_log(window.M_minus, j);
                const double mb = ax - lb;
                if (mb < wb) wb = mb, jb = j;
                const double mc = c1 * y0 * std::exp(logp) - std::abs(eo.orbit[j].y);
                if (mc < wc) wc = mc, jc = j;
                logp += std::log1p(-rep.rho_tilde_bound / (Mp + jd_));
            }
            const double ybound = cfg.gate_growth() * std::abs(e);
            for (std::size_t j = eo.times.entry + 1; j <= eo.times.exit; ++j) {
                const double md = ybound - std::abs(eo.orbit[j].y);
                if (md < wd) wd = md, jd = j;
            }
            if (eo.times.exit <= eo.times.entry) wd = 0.0;
            record(0, i, e, ja, wa);
            record(1, i, e, jb, wb);
            record(2, i, e, jc, wc);
            record(3, i, e, jd, wd);
        }
        // (e) Hakim's monotone quantity along the unperturbed orbit.
        const auto& o = data[i].orbit0;
        const double ex = -rep.hakim_alpha - 1.0;
        const double ref = std::abs(o[0].y) * std::pow(std::abs(o[0].x), ex);
        double we = std::numeric_limits<double>::infinity();
        std::size_t je = 0;
        if (ref == 0.0) {
            we = 0.0;
        } else {
            for (std::size_t n = 0; n < o.size(); ++n) {
                const double val = std::abs(o[n].y) * std::pow(std::abs(o[n].x), ex);
                const double m = 1.0 - val / ref + 1e-12;
                if (m < we) we = m, je = n;
            }
        }
        record(4, i, 0.0, je, we);
    }
    return rep;
}

InvarianceResult check_invariance(const PolyMap2& map, const RegionConfig& cfg, Complex eps, std::size_t sample,
                                  std::uint64_t seed, double source_gamma) {
    const bool unperturbed = eps == Complex{};
    if (!unperturbed) cfg.require_admissible(eps);
    const double g_src = source_gamma > 0.0 ? source_gamma : cfg.gamma();
    const Complex turn = unperturbed ? Complex{1.0} : eps / std::abs(eps);
    std::mt19937_64 rng(seed);
    InvarianceResult res;
    std::size_t attempts = 0;
    while (res.tested < sample && attempts < 50 * sample + 100) {
        ++attempts;
        // Uniform-ish point of C_0(g_src, R, s), then rotated.
        const double r = cfg.R() * std::sqrt(unit(rng));
        const double theta = std::atan(g_src) * (2.0 * unit(rng) - 1.0);
        const double ry = cfg.s() * r * std::sqrt(unit(rng));
        const double phi = 2.0 * kPi * unit(rng);
        if (r == 0.0) continue;
        const ComplexPoint p{-r * std::polar(1.0, theta) * turn, std::polar(ry, phi)};
        if (!unperturbed && in_D_eps(cfg, eps, p)) continue;
        // Points on the sector edge can fall outside by rounding.
        if (g_src <= cfg.gamma() && !in_C_eps(cfg, eps, p)) continue;
        ++res.tested;
        const ComplexPoint img = eval_F(map, eps, p);
        const bool ok = unperturbed ? in_C0(cfg, img) : (in_C_eps(cfg, eps, img) || in_D_eps(cfg, eps, img));
        if (!ok) ++res.failures;
    }
    return res;
}

}  // namespace implab
