#include "implab/lavaurs.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "implab/fatou.hpp"
#include "implab/parallel.hpp"

namespace implab {

AlphaSequence make_alpha_sequence(Complex alpha, const std::vector<std::size_t>& n_list, double c_eps) {
    AlphaSequence seq;
    seq.alpha = alpha;
    std::string bad;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        const std::size_t n = n_list[k];
        if (!(static_cast<double>(n) > std::abs(alpha) + 1.0))
            throw Error(ErrorCode::InvalidSequence, "n must exceed |alpha| + 1", static_cast<long>(k));
        if (k > 0 && n <= n_list[k - 1])
            throw Error(ErrorCode::InvalidSequence, "n must be strictly increasing", static_cast<long>(k));
        const Complex eps = std::numbers::pi / (static_cast<double>(n) - alpha);
        if (!(eps.real() > 0.0) || std::abs(eps.imag()) > c_eps * std::norm(eps)) bad += " " + std::to_string(k);
        seq.entries.push_back({eps, n});
    }
    if (!bad.empty()) throw Error(ErrorCode::SectorViolation, "eps outside the sector at nu =" + bad);
    return seq;
}

Complex lavaurs_1d(const PolyMap2& map, Complex alpha, Complex x, double tol) {
    const FatouValue phi = phi_iota(map, {x, 0.0}, tol);
    return psi_o_line(map, alpha + phi.value, tol);
}

LavaursEstimate lavaurs_2d_estimate(const PolyMap2& map, const AlphaSequence& seq, const ComplexPoint& p,
                                    const LavaursOptions& opt) {
    const std::size_t m = seq.entries.size();
    if (m < 2) throw Error(ErrorCode::InvalidSequence, "need at least two tail indices");
    LavaursEstimate est;
    est.alpha = seq.alpha;
    est.source = seq;
    est.p = p;
    est.values.resize(m);
    std::vector<long> escaped(m, -1);
    parallel_for(m, opt.threads, [&](std::size_t k) {
        const auto& e = seq.entries[k];
        const OrbitResult r = iterate(map, e.eps, p, e.n, opt.orbit_ball);
        if (r.escaped_at_all()) escaped[k] = static_cast<long>(*r.escaped);
        est.values[k] = r.point;
    });
    for (std::size_t k = 0; k < m; ++k)
        if (escaped[k] >= 0)
            throw Error(ErrorCode::OrbitEscaped, "orbit left the ball at step " + std::to_string(escaped[k]),
                        static_cast<long>(k));
    for (std::size_t k = 1; k < m; ++k) est.gaps.push_back(distance(est.values[k], est.values[k - 1]));
    est.cauchy_gap = est.gaps.back();
    return est;
}

LavaursEstimate lavaurs_2d_estimate(const PolyMap2& map, const RegionConfig& cfg, Complex alpha, const ComplexPoint& p,
                                    const std::vector<std::size_t>& n_list, const LavaursOptions& opt) {
    return lavaurs_2d_estimate(map, make_alpha_sequence(alpha, n_list, cfg.c_eps()), p, opt);
}

std::vector<double> semiconjugacy_residuals(const PolyMap2& map, const RegionConfig& cfg, const LavaursEstimate& est,
                                            double tol) {
    for (std::size_t k = 0; k < est.values.size(); ++k)
        if (!in_minus_C0(cfg, est.values[k]))
            throw Error(ErrorCode::ImageNotInRepellingBasin, "tail image outside -C_0", static_cast<long>(k));
    FatouOptions opt;
    opt.tol = tol;
    opt.region = cfg.params();
    const Complex target = est.alpha + phi_iota(map, est.p, opt).value;
    std::vector<double> out;
    out.reserve(est.values.size());
    for (const auto& v : est.values) out.push_back(std::abs(phi_o(map, v, opt).value - target));
    return out;
}

double semiconjugacy_residual(const PolyMap2& map, const RegionConfig& cfg, Complex alpha, const ComplexPoint& p,
                              const std::vector<std::size_t>& n_list, double tol) {
    LavaursEstimate est = lavaurs_2d_estimate(map, cfg, alpha, p, n_list);
    // Only the last image matters here.
    est.values = {est.values.back()};
    return semiconjugacy_residuals(map, cfg, est, tol).back();
}

void write_lavaurs_csv(std::ostream& os, const std::vector<LavaursEstimate>& estimates,
                       const std::vector<std::vector<double>>& residuals, bool header) {
    const auto old_prec = os.precision(17);
    if (header)
        os << "alpha_re,alpha_im,point,nu,eps_re,eps_im,n,px_re,px_im,py_re,py_im,"
              "tx_re,tx_im,ty_re,ty_im,cauchy_gap,residual\n";
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const auto& est = estimates[i];
        for (std::size_t k = 0; k < est.values.size(); ++k) {
            const auto& e = est.source.entries[k];
            const auto& v = est.values[k];
            const double gap = k == 0 ? 0.0 : est.gaps[k - 1];
            os << est.alpha.real() << ',' << est.alpha.imag() << ',' << i << ',' << k << ',' << e.eps.real() << ','
               << e.eps.imag() << ',' << e.n << ',' << est.p.x.real() << ',' << est.p.x.imag() << ','
               << est.p.y.real() << ',' << est.p.y.imag() << ',' << v.x.real() << ',' << v.x.imag() << ','
               << v.y.real() << ',' << v.y.imag() << ',' << gap << ',';
            if (i < residuals.size() && k < residuals[i].size())
                os << residuals[i][k];
            else
                os << "nan";
            os << '\n';
        }
    }
    os.precision(old_prec);
}

}  // namespace implab
