#include "implab/mapfamily.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace implab {

namespace {

Complex ipow(Complex z, int k) {
    Complex out{1.0};
    for (int a = 0; a < k; ++a) out *= z;
    return out;
}

void validate_monomials(const std::vector<Monomial>& terms, const char* name) {
    for (const auto& m : terms) {
        if (m.i < 0 || m.j < 0)
            throw Error(ErrorCode::InvalidMap, std::string(name) + " has a negative exponent");
        if (m.i + m.j < 2)
            throw Error(ErrorCode::InvalidMap, std::string(name) + " monomial of total degree < 2");
    }
}

template <bool Deriv>
void accumulate(const std::vector<Monomial>& terms, Complex x, Complex y, Complex& v, Complex& dx, Complex& dy) {
    for (const auto& m : terms) {
        const Complex xi = ipow(x, m.i);
        const Complex yj = ipow(y, m.j);
        v += m.c * xi * yj;
        if constexpr (Deriv) {
            if (m.i > 0) dx += m.c * static_cast<double>(m.i) * ipow(x, m.i - 1) * yj;
            if (m.j > 0) dy += m.c * static_cast<double>(m.j) * xi * ipow(y, m.j - 1);
        }
    }
}

}  // namespace

void PolyMap2::validate() const {
    if (!std::isfinite(rho) || !(rho > 1.0)) throw Error(ErrorCode::InvalidMap, "rho must be real and > 1");
    validate_monomials(alpha_extra, "alpha_extra");
    validate_monomials(beta_extra, "beta_extra");
    if (!(inverse_radius > 0.0)) throw Error(ErrorCode::InvalidMap, "inverse_radius must be positive");
}

PolyMap2 PolyMap2::default_family() {
    PolyMap2 m;
    m.q = 0.0;
    m.r = 1.0;
    m.rho = 2.0;
    m.alpha_extra = {{2, 0, 1.0}, {0, 2, 1.0}};
    m.beta_extra = {{0, 3, 1.0}};
    return m;
}

PolyMap2 PolyMap2::with_q(Complex q_new) const {
    PolyMap2 m = *this;
    m.q = q_new;
    return m;
}

MapTerms map_terms(const PolyMap2& map, Complex eps, const ComplexPoint& p) {
    MapTerms t;
    const Complex e2 = eps * eps;
    t.am1 = (map.q + 1.0) * p.x + map.r * p.y + map.eps2_alpha * e2;
    t.ax = map.q + 1.0;
    t.ay = map.r;
    accumulate<true>(map.alpha_extra, p.x, p.y, t.am1, t.ax, t.ay);
    t.b = map.rho * p.x + map.eps2_beta * e2;
    t.bx = map.rho;
    t.by = 0.0;
    accumulate<true>(map.beta_extra, p.x, p.y, t.b, t.bx, t.by);
    return t;
}

Complex alpha_minus_one(const PolyMap2& map, Complex eps, const ComplexPoint& p) {
    Complex v = (map.q + 1.0) * p.x + map.r * p.y + map.eps2_alpha * eps * eps;
    Complex unused;
    accumulate<false>(map.alpha_extra, p.x, p.y, v, unused, unused);
    return v;
}

ComplexPoint eval_F(const PolyMap2& map, Complex eps, const ComplexPoint& p) {
    const Complex e2 = eps * eps;
    Complex am1 = (map.q + 1.0) * p.x + map.r * p.y + map.eps2_alpha * e2;
    Complex b = map.rho * p.x + map.eps2_beta * e2;
    Complex unused;
    accumulate<false>(map.alpha_extra, p.x, p.y, am1, unused, unused);
    accumulate<false>(map.beta_extra, p.x, p.y, b, unused, unused);
    return {p.x + (p.x * p.x + e2) * (1.0 + am1), p.y * (1.0 + b)};
}

ComplexPoint eval_F_inverse(const PolyMap2& map, Complex eps, const ComplexPoint& p, double tol) {
    const double np = norm(p);
    if (!(np <= map.inverse_radius))
        throw Error(ErrorCode::OutsideInvertibleRegion, "point outside the invertibility ball");
    const Complex e2 = eps * eps;
    ComplexPoint z{p.x - (p.x * p.x + e2) * (1.0 + (map.q - 1.0) * p.x + map.r * p.y), p.y * (1.0 - map.rho * p.x)};

    ComplexPoint g = eval_F(map, eps, z) - p;
    double res = norm(g);
    constexpr int kMaxIter = 60;
    for (int it = 0; it < kMaxIter && res > 0.0; ++it) {
        const MapTerms t = map_terms(map, eps, z);
        const Complex s = z.x * z.x + e2;
        const Complex a = 1.0 + t.am1;
        const Complex j11 = 1.0 + 2.0 * z.x * a + s * t.ax;
        const Complex j12 = s * t.ay;
        const Complex j21 = z.y * t.bx;
        const Complex j22 = 1.0 + t.b + z.y * t.by;
        const Complex det = j11 * j22 - j12 * j21;
        if (det == Complex{}) break;
        const ComplexPoint step{(j22 * g.x - j12 * g.y) / det, (j11 * g.y - j21 * g.x) / det};

        double lambda = 1.0;
        ComplexPoint trial;
        double trial_res = 0.0;
        for (int h = 0; h < 30; ++h) {
            trial = {z.x - lambda * step.x, z.y - lambda * step.y};
            trial_res = norm(eval_F(map, eps, trial) - p);
            if (trial_res < res || !(trial_res > res * (1.0 + 1e-12) + 1e-300)) break;
            lambda *= 0.5;
        }
        const double step_size = lambda * norm(step);
        z = trial;
        g = eval_F(map, eps, z) - p;
        res = trial_res;
        if (step_size <= 8e-16 * std::max(norm(z), 1e-300)) break;
    }
    if (!(res <= tol) || !is_finite(z))
        throw Error(ErrorCode::NoConvergence, "Newton inversion did not reach tolerance");
    return z;
}

ComplexPoint eval_H(const PolyMap2& map, Complex eps, const ComplexPoint& p, double tol) {
    return sigma(eval_F_inverse(map, eps, sigma(p), tol));
}

OrbitResult iterate(const PolyMap2& map, Complex eps, const ComplexPoint& p, std::size_t n, double escape_radius,
                    bool keep_trace) {
    OrbitResult out;
    ComplexPoint z = p;
    if (keep_trace) out.trace.reserve(n + 1);
    for (std::size_t k = 0;; ++k) {
        if (keep_trace) out.trace.push_back(z);
        const double nz = norm(z);
        if (!(nz <= escape_radius)) {  // NaN counts as escaped
            out.escaped = k;
            break;
        }
        if (k == n) break;
        z = eval_F(map, eps, z);
    }
    out.point = z;
    return out;
}

HomogeneousPair quadratic_part(const PolyMap2& map) {
    HomogeneousPair pq;
    pq.P = {1.0, 0.0, 0.0};
    pq.Q = {0.0, map.rho, 0.0};
    return pq;
}

namespace {

// r(u) = Q(1,u) - u P(1,u), coefficients from u^0 upwards.
std::array<Complex, 4> r_poly(const HomogeneousPair& pq) {
    return {pq.Q[0], pq.Q[1] - pq.P[0], pq.Q[2] - pq.P[1], -pq.P[2]};
}

Complex horner(const std::array<Complex, 4>& c, Complex u) {
    return ((c[3] * u + c[2]) * u + c[1]) * u + c[0];
}

Complex horner_d(const std::array<Complex, 4>& c, Complex u) { return (3.0 * c[3] * u + 2.0 * c[2]) * u + c[1]; }

Complex p_at(const HomogeneousPair& pq, Complex u) { return pq.P[0] + pq.P[1] * u + pq.P[2] * u * u; }
Complex q_at(const HomogeneousPair& pq, Complex u) { return pq.Q[0] + pq.Q[1] * u + pq.Q[2] * u * u; }

double scale_of(const HomogeneousPair& pq) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s = std::max({s, std::abs(pq.P[k]), std::abs(pq.Q[k])});
    return s;
}

}  // namespace

std::vector<CharacteristicDirection> characteristic_directions(const HomogeneousPair& pq) {
    const double scale = scale_of(pq);
    if (std::all_of(pq.P.begin(), pq.P.end(), [](Complex c) { return c == Complex{}; }))
        throw Error(ErrorCode::DegenerateInput, "P is identically zero");
    const auto c = r_poly(pq);
    const double zero_tol = 1e-14 * scale;

    int deg = 3;
    while (deg >= 0 && std::abs(c[static_cast<std::size_t>(deg)]) <= zero_tol) --deg;
    if (deg < 0) throw Error(ErrorCode::DegenerateInput, "every direction is characteristic");

    std::vector<CharacteristicDirection> out;
    if (deg >= 1) {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
        const Complex lead = c[static_cast<std::size_t>(deg)];
        for (int k = 0; k < deg; ++k) companion(0, k) = -c[static_cast<std::size_t>(deg - 1 - k)] / lead;
        for (int k = 1; k < deg; ++k) companion(k, k - 1) = 1.0;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        for (int k = 0; k < deg; ++k) {
            Complex u = solver.eigenvalues()(k);
            // A couple of Newton polishes on r.
            for (int it = 0; it < 3; ++it) {
                const Complex d = horner_d(c, u);
                if (d == Complex{}) break;
                u -= horner(c, u) / d;
            }
            if (std::abs(u) <= zero_tol) u = 0.0;
            CharacteristicDirection dir;
            dir.u = u;
            dir.degenerate = std::abs(p_at(pq, u)) <= zero_tol * (1.0 + std::norm(u)) &&
                             std::abs(q_at(pq, u)) <= zero_tol * (1.0 + std::norm(u));
            out.push_back(dir);
        }
    }
    // The line x = 0 is invariant iff P(0,1) = 0.
    if (std::abs(pq.P[2]) <= zero_tol) {
        CharacteristicDirection dir;
        dir.at_infinity = true;
        dir.degenerate = std::abs(pq.Q[2]) <= zero_tol;
        out.push_back(dir);
    }
    return out;
}

Complex director(const HomogeneousPair& pq, Complex u0) {
    const Complex p = p_at(pq, u0);
    if (std::abs(p) <= 1e-14 * scale_of(pq) * (1.0 + std::norm(u0)))
        throw Error(ErrorCode::DegenerateDirection, "P(1,u0) vanishes");
    return horner_d(r_poly(pq), u0) / p;
}

std::array<BivariatePoly, 2> expand(const PolyMap2& map, Complex eps) {
    const Complex e2 = eps * eps;
    BivariatePoly alpha = BivariatePoly::constant(1.0 + map.eps2_alpha * e2);
    alpha.add(1, 0, map.q + 1.0);
    alpha.add(0, 1, map.r);
    for (const auto& m : map.alpha_extra) alpha.add(m.i, m.j, m.c);

    BivariatePoly one_plus_beta = BivariatePoly::constant(1.0 + map.eps2_beta * e2);
    one_plus_beta.add(1, 0, map.rho);
    for (const auto& m : map.beta_extra) one_plus_beta.add(m.i, m.j, m.c);

    BivariatePoly s = BivariatePoly::monomial(2, 0, 1.0);
    s.add(0, 0, e2);
    BivariatePoly fx = BivariatePoly::monomial(1, 0, 1.0) + s * alpha;
    BivariatePoly fy = BivariatePoly::monomial(0, 1, 1.0) * one_plus_beta;
    return {fx, fy};
}

TopForms top_forms(const PolyMap2& map, Complex eps) {
    const auto comps = expand(map, eps);
    TopForms t;
    t.degree_x = comps[0].degree();
    t.degree_y = comps[1].degree();
    if (t.degree_x >= 0) t.hx = comps[0].homogeneous_part(t.degree_x);
    if (t.degree_y >= 0) t.hy = comps[1].homogeneous_part(t.degree_y);
    return t;
}

Regularity check_regularity(const PolyMap2& map, Complex eps) {
    const TopForms t = top_forms(map, eps);
    Regularity out;
    if (t.degree_x != t.degree_y || t.degree_x < 1) return out;
    const int d = t.degree_x;
    out.degree = d;

    // Chart y = 1: h(t, 1) has coefficient hx[k] on t^k. Chart x = 1:
    // h(1, t) has coefficient hx[d-k] on t^k. Both are taken with formal
    // degree d, so a shared root at infinity of one chart still shows up.
    std::vector<Complex> ax = t.hx, ay = t.hy;
    std::vector<Complex> bx(t.hx.rbegin(), t.hx.rend()), by(t.hy.rbegin(), t.hy.rend());
    out.resultant_y_chart = sylvester_resultant(ax, ay);
    out.resultant_x_chart = sylvester_resultant(bx, by);

    double nx = 0.0, ny = 0.0;
    for (auto c : t.hx) nx = std::max(nx, std::abs(c));
    for (auto c : t.hy) ny = std::max(ny, std::abs(c));
    const double scale = std::pow(nx, d) * std::pow(ny, d);
    const double tol = 1e-10 * scale;
    out.regular = std::abs(out.resultant_y_chart) > tol && std::abs(out.resultant_x_chart) > tol;
    return out;
}

}  // namespace implab
