#include "implab/fatou.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "implab/compensated.hpp"

namespace implab {

namespace {

constexpr std::size_t kMaxTerms = 50'000'000;
constexpr double kBasinEscape = 1e3;

// log(1 + z) accurate for small z (Kahan's trick, valid for complex z).
Complex log1p_c(Complex z) {
    const Complex u = 1.0 + z;
    if (u == Complex{1.0}) return z;
    return std::log(u) * z / (u - 1.0);
}

// (atan(z) - z) / eps, written to keep relative accuracy for small z.
Complex atan_excess(Complex z, Complex eps) {
    if (std::abs(z) < 0.1) {
        const Complex z2 = z * z;
        Complex s{};
        Complex pw = z * z2;
        double sign = -1.0;
        for (int k = 3; k <= 21; k += 2) {
            s += sign * pw / static_cast<double>(k);
            pw *= z2;
            sign = -sign;
        }
        return s / eps;
    }
    return (std::atan(z) - z) / eps;
}

}  // namespace

Complex orbit_error(const PolyMap2& map, Complex eps, const ComplexPoint& p) {
    const Complex x = p.x;
    const Complex am1 = alpha_minus_one(map, eps, p);
    const Complex a = 1.0 + am1;
    const Complex xa = x * a;
    // gamma = alpha / (1 + x alpha); gamma - 1 without cancellation
    const Complex gm1 = (am1 - xa) / (1.0 + xa);
    Complex out = gm1;
    if (eps != Complex{}) out += atan_excess(eps * (1.0 + gm1), eps);
    if (map.q != Complex{}) {
        if (eps == Complex{})
            out -= map.q * log1p_c(xa);
        else
            out -= 0.5 * map.q * log1p_c(2.0 * xa + (x * x + eps * eps) * a * a);
    }
    return out;
}

namespace {

// x^2 coefficient of A_0 on the line y = 0.
Complex line_quadratic_coefficient(const PolyMap2& map) {
    Complex a20{};
    for (const auto& m : map.alpha_extra)
        if (m.i == 2 && m.j == 0) a20 += m.c;
    return a20 - map.q * map.q - 2.5 * map.q - 1.0;
}

FatouValue fatou_series(const PolyMap2& map, const ComplexPoint& p, const FatouOptions& opt, Mode mode) {
    const bool incoming = mode == Mode::Incoming;
    const ErrorCode not_in = incoming ? ErrorCode::NotInBasin : ErrorCode::NotInRepellingBasin;
    const RegionConfig cfg(opt.region, map.rho);
    auto in_petal = [&](const ComplexPoint& z) { return incoming ? in_C0(cfg, z) : in_minus_C0(cfg, z); };
    if (!is_finite(p) || p.x == Complex{}) throw Error(not_in, "chart undefined at x = 0");
    // A backward orbit that leaves the ball of the inverse branch is not in the basin.
    auto step_back = [&](const ComplexPoint& z) {
        try {
            return eval_F_inverse(map, 0.0, z, 1e-13 * norm(z) + 1e-300);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::OutsideInvertibleRegion || e.code() == ErrorCode::NoConvergence)
                throw Error(not_in, std::string("backward orbit: ") + e.what());
            throw;
        }
    };

    CompensatedSum sum(w0(map.q, p.x, mode));
    ComplexPoint z = p;

    FatouValue out;
    std::size_t k = 0;
    while (!in_petal(z)) {
        if (k >= opt.entry_budget) throw Error(not_in, "orbit does not reach the petal within budget");
        if (incoming) {
            sum += orbit_error(map, 0.0, z);
            z = eval_F(map, 0.0, z);
        } else {
            z = step_back(z);
            sum += -orbit_error(map, 0.0, z);
        }
        if (!is_finite(z) || norm(z) > kBasinEscape) throw Error(not_in, "orbit escapes");
        ++k;
    }
    if (z.x == Complex{}) throw Error(not_in, "orbit lands on x = 0");
    out.entry = k;

    // Inside the petal switch to the chart w0 + g with
    //   g = -a2 x - r y / ((rho - 1) x),
    // which has the same limit along the orbit (g -> 0) but removes the
    // x^2 and linear-in-y parts of the terms. What is left is
    // O(|x|^3 + |x||y| + |y|^2), so the tail is O(1/n^2 + |y_n|).
    const Complex a2 = line_quadratic_coefficient(map);
    const Complex ry = map.r / (map.rho - 1.0);
    auto g = [&](const ComplexPoint& w) { return -a2 * w.x - ry * w.y / w.x; };
    sum += g(z);

    const double M = std::max(1.0, std::floor(1.0 / std::abs(z.x)));
    const double rho_t = 0.5 * (1.0 + map.rho);
    double c = 0.0;
    std::size_t t = 0;
    for (;; ++t) {
        if (t >= kMaxTerms) throw Error(ErrorCode::NoConvergence, "Fatou series did not reach tolerance");
        const double y_here = std::abs(z.y);
        const Complex g_here = g(z);
        Complex b;
        if (incoming) {
            const Complex a = orbit_error(map, 0.0, z);
            z = eval_F(map, 0.0, z);
            b = a + (g(z) - g_here);
            sum += b;
        } else {
            z = step_back(z);
            b = orbit_error(map, 0.0, z) + (g_here - g(z));
            sum += -b;
        }
        if (!is_finite(z) || z.x == Complex{}) throw Error(not_in, "orbit degenerates inside the petal");
        const double n = static_cast<double>(t) + M;
        const double tn = 2.0 / n;
        const double y = incoming ? y_here : std::abs(z.y);
        const double major = tn * tn * tn + tn * y + y * y;
        if (t < 10) {
            if (major > 0.0) c = std::max(c, 2.0 * std::abs(b) / major);
            continue;
        }
        // sum_{k>n} 8/k^3 <= 4/n^2; |y_k| <= |y_n| (n/k)^rho_t.
        const double yn = std::abs(z.y);
        const double bound = c * (4.0 / (n * n) + 2.0 * yn / rho_t + yn * yn * n / (2.0 * rho_t - 1.0));
        if (bound < opt.tol && t + 1 >= opt.min_terms) {
            out.truncation_error = bound;
            break;
        }
    }
    out.terms = t + 1;
    out.value = sum.value();
    return out;
}

}  // namespace

FatouValue phi_iota(const PolyMap2& map, const ComplexPoint& p, double tol) {
    FatouOptions opt;
    opt.tol = tol;
    return phi_iota(map, p, opt);
}

FatouValue phi_iota(const PolyMap2& map, const ComplexPoint& p, const FatouOptions& opt) {
    return fatou_series(map, p, opt, Mode::Incoming);
}

FatouValue phi_o(const PolyMap2& map, const ComplexPoint& p, double tol) {
    FatouOptions opt;
    opt.tol = tol;
    return phi_o(map, p, opt);
}

FatouValue phi_o(const PolyMap2& map, const ComplexPoint& p, const FatouOptions& opt) {
    return fatou_series(map, p, opt, Mode::Outgoing);
}

std::vector<Complex> phi_almost_sweep(const PolyMap2& map, Complex eps, Mode mode, const ComplexPoint& p,
                                      const std::vector<std::size_t>& n_list, const RegionParams& region) {
    const RegionConfig cfg(region, map.rho);
    const bool unperturbed = eps == Complex{};
    if (!unperturbed) cfg.require_admissible(eps);
    std::vector<std::size_t> order(n_list.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return n_list[a] < n_list[b]; });

    std::vector<Complex> out(n_list.size());
    CompensatedSum sum(unperturbed ? w0(map.q, p.x, mode) : w_eps(eps, map.q, p.x, mode));
    ComplexPoint z = p;
    std::size_t j = 0;
    auto in_domain = [&](const ComplexPoint& w) {
        return is_finite(w) && (unperturbed ? in_C0(cfg, w) : (in_C_eps(cfg, eps, w) || in_D_eps(cfg, eps, w)));
    };
    for (std::size_t idx : order) {
        const std::size_t target = n_list[idx];
        for (; j < target; ++j) {
            if (mode == Mode::Incoming) {
                if (!in_domain(z)) throw Error(ErrorCode::OrbitLeftDomain, "orbit left C_eps u D_eps", static_cast<long>(j));
                sum += orbit_error(map, eps, z);
                z = eval_F(map, eps, z);
            } else {
                try {
                    z = eval_F_inverse(map, eps, z, 1e-13 * norm(z) + 1e-300);
                } catch (const Error& e) {
                    throw Error(ErrorCode::OrbitLeftDomain, e.what(), static_cast<long>(j));
                }
                sum += -orbit_error(map, eps, z);
            }
        }
        if (mode == Mode::Incoming && !in_domain(z))
            throw Error(ErrorCode::OrbitLeftDomain, "orbit left C_eps u D_eps", static_cast<long>(j));
        out[idx] = sum.value();
    }
    return out;
}

Complex phi_almost(const PolyMap2& map, const AlmostFatouParams& params, const ComplexPoint& p,
                   const RegionParams& region) {
    return phi_almost_sweep(map, params.eps, params.mode, p, {params.n}, region).front();
}

Complex psi_o_line(const PolyMap2& map, Complex z, double tol) {
    const double n0 = std::max(0.0, std::ceil(z.real()) + 50.0);
    const Complex t = z - n0;
    FatouOptions opt;
    opt.tol = tol;

    Complex x = -1.0 / t;
    if (map.q != Complex{})
        for (int k = 0; k < 8; ++k) x = -1.0 / (t + map.q * std::log(x));

    auto f = [&](Complex v) { return phi_o(map, {v, 0.0}, opt).value - t; };
    Complex fx = f(x);
    // First step with the chart derivative, then secant.
    Complex x_prev = x, f_prev = fx;
    x = x - fx / (1.0 / (x * x) - map.q / x);
    bool converged = std::abs(fx) < 0.1 * tol;
    for (int it = 0; it < 40 && !converged; ++it) {
        fx = f(x);
        if (!std::isfinite(std::abs(fx))) break;
        if (std::abs(fx) < 0.1 * tol) {
            converged = true;
            break;
        }
        const Complex denom = fx - f_prev;
        if (denom == Complex{}) break;
        const Complex next = x - fx * (x - x_prev) / denom;
        x_prev = x;
        f_prev = fx;
        x = next;
        if (std::abs(x - x_prev) <= 4e-16 * std::abs(x)) {
            converged = std::abs(fx) < tol;
            if (!converged) {
                fx = f(x);
                converged = std::abs(fx) < tol;
            }
            break;
        }
    }
    if (!converged) throw Error(ErrorCode::NoConvergence, "psi_o: could not solve phi_o = z - n0");

    ComplexPoint w{x, 0.0};
    for (long k = 0; k < static_cast<long>(n0); ++k) w = eval_F(map, 0.0, w);
    if (!std::isfinite(std::abs(w.x))) throw Error(ErrorCode::NoConvergence, "psi_o: forward push overflowed");
    return w.x;
}

double telescoping_product(double a, std::size_t l0, std::size_t j) {
    if (!(a > 1.0)) throw Error(ErrorCode::DomainViolation, "telescoping product needs a > 1");
    if (l0 == 0 || !(static_cast<double>(l0) > a))
        throw Error(ErrorCode::DomainViolation, "factor 1 - a/l leaves (0,1)");
    double prod = 1.0;
    for (std::size_t l = l0; l <= j; ++l) prod *= 1.0 - a / static_cast<double>(l);
    return prod;
}

}  // namespace implab
