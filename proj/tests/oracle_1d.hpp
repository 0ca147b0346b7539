#pragma once

// Independent one-variable reference computations in long double, used to
// cross-check the library on the invariant line y = 0. Nothing here calls into
// implab; the polynomial is f(x) = x + x^2 a(x) with a given by coefficients.

#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using cld = std::complex<long double>;

struct LinePoly {
    std::vector<cld> a;  // a(x) = a[0] + a[1] x + ...

    cld alpha(cld x) const {
        cld s = 0;
        for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * x + *it;
        return s;
    }
    cld dalpha(cld x) const {
        cld s = 0;
        for (std::size_t k = a.size(); k-- > 1;) s = s * x + static_cast<long double>(k) * a[k];
        return s;
    }
    cld f(cld x) const { return x + x * x * alpha(x); }
    cld df(cld x) const { return 1.0L + 2.0L * x * alpha(x) + x * x * dalpha(x); }

    // Branch of f^{-1} fixing 0, by Newton from x - x^2.
    cld finv(cld w) const {
        cld z = w - w * w;
        for (int it = 0; it < 50; ++it) {
            const cld dz = (f(z) - w) / df(z);
            z -= dz;
            if (std::abs(dz) <= 1e-18L * std::abs(z)) break;
        }
        return z;
    }
};

// -1/x_N - N along the forward orbit; the normalisation assumes the log term
// of the chart vanishes (f = x + x^2 + x^3 + O(x^4)).
inline cld forward_partial(const LinePoly& p, cld x, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) x = p.f(x);
    return -1.0L / x - static_cast<long double>(n);
}

// Incoming Fatou coordinate by Richardson extrapolation of the partial limits
// at N and 2N (the error of the plain limit is O(1/N^2) for these maps).
inline cld fatou_incoming(const LinePoly& p, cld x, std::size_t n = 100000) {
    const cld a = forward_partial(p, x, n);
    const cld b = forward_partial(p, x, 2 * n);
    return (4.0L * b - a) / 3.0L;
}

inline cld backward_partial(const LinePoly& p, cld x, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) x = p.finv(x);
    return -1.0L / x + static_cast<long double>(n);
}

// Outgoing Fatou coordinate: lim -1/f^{-N}(x) + N, same extrapolation.
inline cld fatou_outgoing(const LinePoly& p, cld x, std::size_t n = 20000) {
    const cld a = backward_partial(p, x, n);
    const cld b = backward_partial(p, x, 2 * n);
    return (4.0L * b - a) / 3.0L;
}

// Escape time of f on the line: first k with |f^k(x)| > radius, -1 if none.
inline std::int32_t escape_time(const LinePoly& p, cld x, long double radius, std::size_t max_iter) {
    for (std::size_t k = 0; k <= max_iter; ++k) {
        if (!(std::abs(x) <= radius)) return static_cast<std::int32_t>(k);
        if (k == max_iter) break;
        x = p.f(x);
    }
    return -1;
}

}  // namespace oracle
