#include "implab/julia.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "implab/parallel.hpp"

namespace implab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexPoint scale(const ComplexPoint& p, double s) { return {p.x * s, p.y * s}; }

double real_dot(const ComplexPoint& a, const ComplexPoint& b) {
    return (a.x * std::conj(b.x) + a.y * std::conj(b.y)).real();
}

void append_num(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}

void append_point(std::string& s, const ComplexPoint& p) {
    append_num(s, p.x.real());
    s += ' ';
    append_num(s, p.x.imag());
    s += ' ';
    append_num(s, p.y.real());
    s += ' ';
    append_num(s, p.y.imag());
}

}  // namespace

ComplexPoint GridSpec::pixel(std::size_t i, std::size_t j) const {
    const double a = static_cast<double>(i) / static_cast<double>(nx - 1);
    const double b = static_cast<double>(j) / static_cast<double>(ny - 1);
    return origin + scale(axis_u, a) + scale(axis_v, b);
}

double GridSpec::pitch_u() const { return norm(axis_u) / static_cast<double>(nx - 1); }
double GridSpec::pitch_v() const { return norm(axis_v) / static_cast<double>(ny - 1); }

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidGrid, "need nx, ny >= 2");
    if (!is_finite(origin) || !is_finite(axis_u) || !is_finite(axis_v))
        throw Error(ErrorCode::InvalidGrid, "non-finite slice geometry");
    const double nu = norm(axis_u), nv = norm(axis_v);
    if (nu == 0.0 || nv == 0.0) throw Error(ErrorCode::InvalidGrid, "degenerate slice axis");
    if (std::abs(real_dot(axis_u, axis_v)) > 1e-12 * nu * nv)
        throw Error(ErrorCode::InvalidGrid, "slice axes must be orthogonal");
    if (!std::isfinite(escape_radius) || escape_radius < 0.0)
        throw Error(ErrorCode::InvalidGrid, "escape radius must be finite and >= 0");
    if (max_iter < 1 || max_iter > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max() - 1))
        throw Error(ErrorCode::InvalidGrid, "max_iter out of range");
}

bool GridSpec::same_geometry(const GridSpec& o) const {
    return origin == o.origin && axis_u == o.axis_u && axis_v == o.axis_v && nx == o.nx && ny == o.ny;
}

std::string GridSpec::canonical() const {
    std::string s = "origin ";
    append_point(s, origin);
    s += "; u ";
    append_point(s, axis_u);
    s += "; v ";
    append_point(s, axis_v);
    s += "; n " + std::to_string(nx) + ' ' + std::to_string(ny) + "; radius ";
    append_num(s, escape_radius);
    s += "; iter " + std::to_string(max_iter);
    return s;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t GridSpec::hash() const { return fnv1a(canonical()); }

std::uint64_t map_hash(const PolyMap2& map) {
    std::string s;
    auto c = [&](Complex z) {
        append_num(s, z.real());
        s += ' ';
        append_num(s, z.imag());
        s += ';';
    };
    c(map.q);
    c(map.r);
    append_num(s, map.rho);
    s += ';';
    for (const auto& m : map.alpha_extra) {
        s += "a" + std::to_string(m.i) + "," + std::to_string(m.j) + ":";
        c(m.c);
    }
    for (const auto& m : map.beta_extra) {
        s += "b" + std::to_string(m.i) + "," + std::to_string(m.j) + ":";
        c(m.c);
    }
    c(map.eps2_alpha);
    c(map.eps2_beta);
    append_num(s, map.inverse_radius);
    return fnv1a(s);
}

double escape_bound(const PolyMap2& map, Complex eps) {
    const Regularity reg = check_regularity(map, eps);
    if (!reg.regular) throw Error(ErrorCode::NotRegular, "map is not regular; escape radius would be unsound");
    const int d = reg.degree;
    const auto comps = expand(map, eps);
    const auto h1 = comps[0].homogeneous_part(d);
    const auto h2 = comps[1].homogeneous_part(d);

    // Coarse minimum of |(h1, h2)| over the unit sphere. By homogeneity only
    // the ratio y/x matters up to a phase: u = (cos t, sin t e^{i phi}).
    auto form = [&](const std::vector<Complex>& h, Complex x, Complex y) {
        Complex s{};
        for (int k = 0; k <= d; ++k) s += h[static_cast<std::size_t>(k)] * std::pow(x, k) * std::pow(y, d - k);
        return s;
    };
    double m = kInf;
    constexpr int kTheta = 96, kPhi = 192;
    for (int a = 0; a <= kTheta; ++a) {
        const double t = 0.5 * std::numbers::pi * a / kTheta;
        for (int b = 0; b < kPhi; ++b) {
            const Complex x = std::cos(t);
            const Complex y = std::polar(std::sin(t), 2.0 * std::numbers::pi * b / kPhi);
            m = std::min(m, std::hypot(std::abs(form(h1, x, y)), std::abs(form(h2, x, y))));
        }
    }
    const double m_safe = 0.5 * m;
    if (!(m_safe > 0.0)) throw Error(ErrorCode::NotRegular, "top forms vanish on the sphere");

    // Lower-order coefficients: |sum_{deg<d} c x^i y^j| <= sum |c| t^deg.
    std::vector<double> b(static_cast<std::size_t>(d), 0.0);
    for (const auto& comp : comps)
        for (const auto& [k, c] : comp.terms())
            if (k.first + k.second < d) b[static_cast<std::size_t>(k.first + k.second)] += std::abs(c);
    b[1] += 2.0;  // the target growth 2t
    // g(t) = m_safe - sum b_k t^{k-d} is increasing, so bisect its root.
    auto g = [&](double t) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += b[static_cast<std::size_t>(k)] * std::pow(t, k - d);
        return m_safe - s;
    };
    double hi = 1.0;
    while (g(hi) <= 0.0) hi *= 2.0;
    double lo = hi / 2.0;
    if (g(lo) > 0.0) lo = 0.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return 2.0 * std::max(hi, 1.0);
}

std::int32_t escape_time(const PolyMap2& map, Complex eps, const ComplexPoint& p, double radius,
                         std::size_t max_iter) {
    const double r2 = radius * radius;
    ComplexPoint z = p;
    for (std::size_t k = 0;; ++k) {
        const double n2 = std::norm(z.x) + std::norm(z.y);
        if (!(n2 <= r2)) return static_cast<std::int32_t>(k);
        if (k == max_iter) return kBounded;
        z = eval_F(map, eps, z);
    }
}

EscapeResult escape_classify(const PolyMap2& map, Complex eps, const ComplexPoint& p, const EscapeSettings& settings) {
    if (!check_regularity(map, eps).regular)
        throw Error(ErrorCode::NotRegular, "map is not regular; escape criterion unsound");
    const std::int32_t k = escape_time(map, eps, p, settings.escape_radius, settings.max_iter);
    if (k == kBounded) return {true, 0};
    return {false, static_cast<std::size_t>(k)};
}

std::size_t BinaryRaster::count() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](std::uint8_t c) { return c != 0; }));
}

Raster render_K_slice(const PolyMap2& map, Complex eps, const GridSpec& grid_in, unsigned threads) {
    grid_in.validate();
    const double bound = escape_bound(map, eps);
    GridSpec grid = grid_in;
    if (grid.escape_radius == 0.0)
        grid.escape_radius = bound;
    else if (grid.escape_radius < bound)
        throw Error(ErrorCode::InvalidGrid, "escape radius below the computed escape bound");

    Raster r;
    r.grid = grid;
    r.meta.map_hash = map_hash(map);
    r.meta.eps = eps;
    r.cells.assign(grid.nx * grid.ny, kBounded);
    parallel_for(grid.ny, threads, [&](std::size_t j) {
        for (std::size_t i = 0; i < grid.nx; ++i)
            r.cells[j * grid.nx + i] = escape_time(map, eps, grid.pixel(i, j), grid.escape_radius, grid.max_iter);
    });
    return r;
}

BinaryRaster bounded_mask(const Raster& r) {
    BinaryRaster b;
    b.grid = r.grid;
    b.cells.resize(r.cells.size());
    for (std::size_t k = 0; k < r.cells.size(); ++k) b.cells[k] = r.cells[k] == kBounded ? 1 : 0;
    return b;
}

BinaryRaster boundary_slice(const Raster& r) {
    BinaryRaster b;
    b.grid = r.grid;
    const std::size_t nx = r.grid.nx, ny = r.grid.ny;
    b.cells.assign(nx * ny, 0);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            if (!r.bounded(i, j)) continue;
            const bool edge = (i > 0 && !r.bounded(i - 1, j)) || (i + 1 < nx && !r.bounded(i + 1, j)) ||
                              (j > 0 && !r.bounded(i, j - 1)) || (j + 1 < ny && !r.bounded(i, j + 1));
            if (edge) b.cells[j * nx + i] = 1;
        }
    return b;
}

BinaryRaster dilate(const BinaryRaster& r, std::size_t radius) {
    const std::size_t nx = r.grid.nx, ny = r.grid.ny;
    // Separable square dilation: rows then columns.
    std::vector<std::uint8_t> tmp(nx * ny, 0);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            if (!r.cells[j * nx + i]) continue;
            const std::size_t lo = i >= radius ? i - radius : 0, hi = std::min(nx - 1, i + radius);
            for (std::size_t a = lo; a <= hi; ++a) tmp[j * nx + a] = 1;
        }
    BinaryRaster out;
    out.grid = r.grid;
    out.cells.assign(nx * ny, 0);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            if (!tmp[j * nx + i]) continue;
            const std::size_t lo = j >= radius ? j - radius : 0, hi = std::min(ny - 1, j + radius);
            for (std::size_t b = lo; b <= hi; ++b) out.cells[b * nx + i] = 1;
        }
    return out;
}

namespace {

// One-dimensional squared distance transform (Felzenszwalb-Huttenlocher) of
// samples f spaced `h` apart; infinite entries are treated as absent.
void dt1d(const std::vector<double>& f, double h, std::vector<double>& out, std::vector<std::size_t>& v,
          std::vector<double>& z) {
    const std::size_t n = f.size();
    out.assign(n, kInf);
    v.resize(n);
    z.resize(n + 1);
    std::size_t k = 0;
    bool any = false;
    for (std::size_t q = 0; q < n; ++q) {
        if (f[q] == kInf) continue;
        const double cq = h * static_cast<double>(q);
        if (!any) {
            any = true;
            k = 0;
            v[0] = q;
            z[0] = -kInf;
            z[1] = kInf;
            continue;
        }
        double s;
        for (;;) {
            const double cv = h * static_cast<double>(v[k]);
            s = ((f[q] + cq * cq) - (f[v[k]] + cv * cv)) / (2.0 * (cq - cv));
            if (s <= z[k] && k > 0)
                --k;
            else
                break;
        }
        if (s <= z[k]) {  // k == 0 and the new parabola dominates everywhere
            v[0] = q;
            z[0] = -kInf;
            z[1] = kInf;
            continue;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    if (!any) return;
    k = 0;
    for (std::size_t q = 0; q < n; ++q) {
        const double cq = h * static_cast<double>(q);
        while (z[k + 1] < cq) ++k;
        const double d = cq - h * static_cast<double>(v[k]);
        out[q] = d * d + f[v[k]];
    }
}

}  // namespace

std::vector<double> distance_to_set(const BinaryRaster& r) {
    const std::size_t nx = r.grid.nx, ny = r.grid.ny;
    const double hu = r.grid.pitch_u(), hv = r.grid.pitch_v();
    std::vector<double> d(nx * ny);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = r.cells[k] ? 0.0 : kInf;
    std::vector<double> f, out, z;
    std::vector<std::size_t> v;
    f.resize(ny);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) f[j] = d[j * nx + i];
        dt1d(f, hv, out, v, z);
        for (std::size_t j = 0; j < ny; ++j) d[j * nx + i] = out[j];
    }
    f.resize(nx);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) f[i] = d[j * nx + i];
        dt1d(f, hu, out, v, z);
        for (std::size_t i = 0; i < nx; ++i) d[j * nx + i] = std::sqrt(out[i]);
    }
    return d;
}

HausdorffResult hausdorff_grid(const BinaryRaster& a, const BinaryRaster& b) {
    if (!a.grid.same_geometry(b.grid) || a.cells.size() != b.cells.size())
        throw Error(ErrorCode::GridMismatch, "rasters have different geometry");
    auto directed = [](const BinaryRaster& from, const std::vector<double>& dist_to) {
        double m = 0.0;
        for (std::size_t k = 0; k < from.cells.size(); ++k)
            if (from.cells[k]) m = std::max(m, dist_to[k]);
        return m;
    };
    HausdorffResult h;
    h.d_ab = directed(a, distance_to_set(b));
    h.d_ba = directed(b, distance_to_set(a));
    return h;
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::InK: return "InK";
        case Membership::NotInK: return "NotInK";
        case Membership::InJ1Certificate: return "InJ1Certificate";
        case Membership::Undetermined: return "Undetermined";
    }
    return "?";
}

namespace {

enum class RingClass { AllBounded, AllEscaped, Mixed };

bool escapes_under_F0(const PolyMap2& map, const ComplexPoint& p, const EscapeSettings& es, const RegionConfig* trap) {
    if (!trap) return escape_time(map, 0.0, p, es.escape_radius, es.max_iter) != kBounded;
    const double r2 = es.escape_radius * es.escape_radius;
    ComplexPoint z = p;
    for (std::size_t k = 0;; ++k) {
        if (!(std::norm(z.x) + std::norm(z.y) <= r2)) return true;
        if (k == es.max_iter || in_C0(*trap, z)) return false;
        z = eval_F(map, 0.0, z);
    }
}

RingClass classify_ring(const PolyMap2& map, const ComplexPoint& c, double bar, const EscapeSettings& es,
                        const RegionConfig* trap) {
    const Complex I{0.0, 1.0};
    std::vector<ComplexPoint> pts{c};
    if (bar > 0.0) {
        for (Complex d : {Complex{1.0}, Complex{-1.0}, I, -I}) {
            pts.push_back({c.x + bar * d, c.y});
            pts.push_back({c.x, c.y + bar * d});
        }
    }
    std::size_t escaped = 0;
    for (const auto& q : pts)
        if (!is_finite(q) || escapes_under_F0(map, q, es, trap)) ++escaped;
    if (escaped == 0) return RingClass::AllBounded;
    if (escaped == pts.size()) return RingClass::AllEscaped;
    return RingClass::Mixed;
}

bool near_boundary(const BinaryRaster& boundary, const ComplexPoint& t, double bar) {
    const GridSpec& g = boundary.grid;
    const ComplexPoint rel = t - g.origin;
    const double uu = real_dot(g.axis_u, g.axis_u), vv = real_dot(g.axis_v, g.axis_v);
    const double a = real_dot(rel, g.axis_u) / uu;
    const double b = real_dot(rel, g.axis_v) / vv;
    const ComplexPoint foot = g.origin + scale(g.axis_u, a) + scale(g.axis_v, b);
    if (distance(t, foot) > bar) return false;
    const double fi = a * static_cast<double>(g.nx - 1), fj = b * static_cast<double>(g.ny - 1);
    if (fi < -0.5 || fj < -0.5 || fi > static_cast<double>(g.nx) - 0.5 || fj > static_cast<double>(g.ny) - 0.5)
        return false;
    const auto ci = static_cast<long>(std::lround(fi)), cj = static_cast<long>(std::lround(fj));
    const long ru = 1 + static_cast<long>(std::ceil(bar / g.pitch_u()));
    const long rv = 1 + static_cast<long>(std::ceil(bar / g.pitch_v()));
    for (long j = std::max(0L, cj - rv); j <= std::min(static_cast<long>(g.ny) - 1, cj + rv); ++j)
        for (long i = std::max(0L, ci - ru); i <= std::min(static_cast<long>(g.nx) - 1, ci + ru); ++i)
            if (boundary.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) return true;
    return false;
}

}  // namespace

MembershipResult lavaurs_membership(const PolyMap2& map, const ComplexPoint& p, std::size_t m_max,
                                    const MembershipParams& params) {
    MembershipResult res;
    const EscapeSettings& es = params.escape;
    if (escape_time(map, 0.0, p, es.escape_radius, es.max_iter) != kBounded) {
        res.kind = Membership::NotInK;
        res.m = 0;
        return res;
    }
    LavaursOptions lo;
    lo.orbit_ball = params.orbit_ball;
    lo.threads = 1;
    ComplexPoint cur = p;
    for (std::size_t m = 1; m <= m_max; ++m) {
        res.m = m;
        LavaursEstimate est;
        try {
            est = lavaurs_2d_estimate(map, params.sequence, cur, lo);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OrbitEscaped) throw;
            res.kind = Membership::Undetermined;  // T^m(p) not estimable
            return res;
        }
        const ComplexPoint t = est.image();
        res.images.push_back(t);
        res.error_bar = est.cauchy_gap;
        switch (classify_ring(map, t, est.cauchy_gap, es, params.trap)) {
            case RingClass::AllEscaped:
                res.kind = Membership::NotInK;
                return res;
            case RingClass::Mixed:
                res.kind = Membership::Undetermined;
                return res;
            case RingClass::AllBounded:
                break;
        }
        if (params.boundary && near_boundary(*params.boundary, t, est.cauchy_gap)) {
            res.kind = Membership::InJ1Certificate;
            return res;
        }
        cur = t;
    }
    res.kind = Membership::InK;
    return res;
}

DiscontinuityReport discontinuity_report(const PolyMap2& map, const AlphaSequence& seq, const GridSpec& grid,
                                         const ReportOptions& opt) {
    if (seq.entries.size() < 2) throw Error(ErrorCode::InvalidSequence, "ladder needs at least two entries");
    grid.validate();
    DiscontinuityReport rep;
    rep.sequence = seq;
    rep.k0 = render_K_slice(map, 0.0, grid, opt.threads);
    for (const auto& e : seq.entries) rep.k_eps.push_back(render_K_slice(map, e.eps, grid, opt.threads));

    const std::size_t nx = grid.nx, ny = grid.ny, npx = nx * ny;
    const BinaryRaster b0 = bounded_mask(rep.k0);
    std::vector<BinaryRaster> bn;
    for (const auto& r : rep.k_eps) bn.push_back(bounded_mask(r));

    rep.limsup.grid = rep.k0.grid;
    rep.limsup.cells.assign(npx, 1);
    for (const auto& b : bn)
        for (std::size_t k = 0; k < npx; ++k) rep.limsup.cells[k] &= b.cells[k];
    const BinaryRaster b0_wide = dilate(b0, 2);
    for (std::size_t k = 0; k < npx; ++k)
        if (rep.limsup.cells[k] && !b0_wide.cells[k]) ++rep.usc_violations;

    for (std::size_t v = 0; v < bn.size(); ++v) rep.hausdorff.push_back(hausdorff_grid(bn[v], b0));

    // Membership for every pixel of K(F_0).
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < npx; ++k)
        if (b0.cells[k]) idx.push_back(k);
    MembershipParams mp;
    mp.sequence = seq;
    mp.escape = {rep.k0.grid.escape_radius, rep.k0.grid.max_iter};
    mp.orbit_ball = opt.orbit_ball;
    std::optional<RegionConfig> trap;
    if (opt.trap) {
        trap.emplace(*opt.trap, map.rho);
        mp.trap = &*trap;
    }
    std::vector<MembershipResult> mem(idx.size());
    parallel_for(
        idx.size(), opt.threads,
        [&](std::size_t t) {
            const std::size_t k = idx[t];
            mem[t] = lavaurs_membership(map, grid.pixel(k % nx, k / nx), opt.m_max, mp);
        },
        64);

    std::vector<std::vector<double>> dist;
    for (const auto& b : bn) dist.push_back(distance_to_set(b));
    auto in_limsup = [&](long i, long j) {
        if (i < 0 || j < 0 || i >= static_cast<long>(nx) || j >= static_cast<long>(ny)) return false;
        return rep.limsup.cells[static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i)] != 0;
    };
    for (std::size_t t = 0; t < idx.size(); ++t) {
        const std::size_t k = idx[t];
        const auto i = static_cast<long>(k % nx), j = static_cast<long>(k / nx);
        if (mem[t].kind == Membership::Undetermined) ++rep.undetermined;
        if (mem[t].kind != Membership::NotInK) continue;
        ++rep.certified_out;
        if (rep.limsup.cells[k]) {
            ++rep.conflicts;
            const bool band = !in_limsup(i - 1, j) || !in_limsup(i + 1, j) || !in_limsup(i, j - 1) || !in_limsup(i, j + 1);
            if (band) ++rep.band_conflicts;
        }
        bool escaped_all = true;
        for (const auto& r : rep.k_eps) escaped_all = escaped_all && r.cells[k] != kBounded;
        if (!escaped_all || mem[t].m == 0) continue;
        Witness w;
        w.i = static_cast<std::size_t>(i);
        w.j = static_cast<std::size_t>(j);
        w.p = grid.pixel(w.i, w.j);
        w.m = mem[t].m;
        w.jump_lower_bound = kInf;
        for (std::size_t v = 0; v < bn.size(); ++v) {
            w.escape.push_back(rep.k_eps[v].cells[k]);
            w.jump_lower_bound = std::min(w.jump_lower_bound, dist[v][k]);
        }
        rep.max_jump = std::max(rep.max_jump, w.jump_lower_bound);
        rep.witnesses.push_back(std::move(w));
    }
    if (opt.require_witness && rep.witnesses.empty())
        throw Error(ErrorCode::InconclusiveScene, "no pixel of the slice could be certified outside the limit");
    return rep;
}

void write_ppm(std::ostream& os, const Raster& r, const BinaryRaster* boundary) {
    const std::size_t nx = r.grid.nx, ny = r.grid.ny;
    os << "P6\n" << nx << ' ' << ny << "\n255\n";
    std::vector<char> row(3 * nx);
    for (std::size_t jj = 0; jj < ny; ++jj) {
        const std::size_t j = ny - 1 - jj;  // v axis points up
        for (std::size_t i = 0; i < nx; ++i) {
            unsigned char c[3];
            if (boundary && boundary->at(i, j)) {
                c[0] = 255, c[1] = 0, c[2] = 0;
            } else if (r.bounded(i, j)) {
                c[0] = c[1] = c[2] = 0;
            } else {
                c[0] = c[1] = c[2] = 255;
            }
            std::copy(c, c + 3, row.begin() + static_cast<long>(3 * i));
        }
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

void write_ppm(std::ostream& os, const BinaryRaster& r) {
    const std::size_t nx = r.grid.nx, ny = r.grid.ny;
    os << "P6\n" << nx << ' ' << ny << "\n255\n";
    std::vector<char> row(3 * nx);
    for (std::size_t jj = 0; jj < ny; ++jj) {
        const std::size_t j = ny - 1 - jj;
        for (std::size_t i = 0; i < nx; ++i) {
            const char c = r.at(i, j) ? 0 : static_cast<char>(255);
            row[3 * i] = row[3 * i + 1] = row[3 * i + 2] = c;
        }
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

}  // namespace implab
