#include "implab/polynomial.hpp"

#include <Eigen/Dense>

namespace implab {

BivariatePoly BivariatePoly::constant(Complex c) { return monomial(0, 0, c); }

BivariatePoly BivariatePoly::monomial(int i, int j, Complex c) {
    BivariatePoly p;
    p.add(i, j, c);
    return p;
}

void BivariatePoly::add(int i, int j, Complex c) {
    if (c == Complex{}) return;
    auto key = std::make_pair(i, j);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
    BivariatePoly out = *this;
    for (const auto& [k, c] : o.terms_) out.add(k.first, k.second, c);
    return out;
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
    BivariatePoly out;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

int BivariatePoly::degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
}

std::vector<Complex> BivariatePoly::homogeneous_part(int d) const {
    std::vector<Complex> h(static_cast<std::size_t>(d + 1));
    for (const auto& [k, c] : terms_)
        if (k.first + k.second == d) h[static_cast<std::size_t>(k.first)] = c;
    return h;
}

Complex BivariatePoly::eval(Complex x, Complex y) const {
    Complex s{};
    for (const auto& [k, c] : terms_) {
        Complex m = c;
        for (int a = 0; a < k.first; ++a) m *= x;
        for (int b = 0; b < k.second; ++b) m *= y;
        s += m;
    }
    return s;
}

Complex sylvester_resultant(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const int m = static_cast<int>(a.size()) - 1;
    const int n = static_cast<int>(b.size()) - 1;
    if (m < 0 || n < 0) return {};
    if (m == 0 && n == 0) return Complex{1.0};
    const int size = m + n;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(size, size);
    // Rows hold shifted coefficient vectors, leading coefficient first.
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S(r, r + k) = a[static_cast<std::size_t>(m - k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S(n + r, r + k) = b[static_cast<std::size_t>(n - k)];
    return S.partialPivLu().determinant();
}

}  // namespace implab
