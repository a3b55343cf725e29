#include "mhl/spline.hpp"

#include <algorithm>
#include <cmath>

namespace mhl {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 4 || y_.size() != n)
        throw FormatError("CubicSpline: need >= 4 matched nodes");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i] < x_[i + 1]))
            throw FormatError("CubicSpline: grid must be strictly increasing");

    // Second-derivative (moment) system with not-a-knot end conditions.
    // The end moments are eliminated:
    //   M_0     = ((h0 + h1) M_1 - h0 M_2) / h1
    //   M_{n-1} = ((g + f) M_{n-2} - f M_{n-3}) / g,  f = h_{n-2}, g = h_{n-3}
    // leaving a tridiagonal system in M_1 .. M_{n-2}.
    auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };
    const std::size_t m = n - 2; // unknowns
    std::vector<double> lo(m, 0.0), di(m, 0.0), up(m, 0.0), rhs(m, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = h(i - 1), hr = h(i);
        const std::size_t k = i - 1;
        lo[k] = hl;
        di[k] = 2.0 * (hl + hr);
        up[k] = hr;
        rhs[k] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
    }
    { // fold M_0 into the first row
        const double h0 = h(0), h1 = h(1);
        di[0] += h0 * (h0 + h1) / h1;
        up[0] -= h0 * h0 / h1;
        lo[0] = 0.0;
    }
    { // fold M_{n-1} into the last row
        const double f = h(n - 2), g = h(n - 3);
        di[m - 1] += f * (g + f) / g;
        lo[m - 1] -= f * f / g;
        up[m - 1] = 0.0;
    }
    // Thomas elimination.
    for (std::size_t k = 1; k < m; ++k) {
        const double w = lo[k] / di[k - 1];
        di[k] -= w * up[k - 1];
        rhs[k] -= w * rhs[k - 1];
    }
    std::vector<double> sol(m);
    sol[m - 1] = rhs[m - 1] / di[m - 1];
    for (std::size_t k = m - 1; k-- > 0;)
        sol[k] = (rhs[k] - up[k] * sol[k + 1]) / di[k];

    m_.assign(n, 0.0);
    for (std::size_t k = 0; k < m; ++k) m_[k + 1] = sol[k];
    m_[0] = ((h(0) + h(1)) * m_[1] - h(0) * m_[2]) / h(1);
    m_[n - 1] = ((h(n - 3) + h(n - 2)) * m_[n - 2] - h(n - 2) * m_[n - 3]) / h(n - 3);
}

double CubicSpline::eval(double s, int order) const {
    const std::size_t n = x_.size();
    auto it = std::upper_bound(x_.begin(), x_.end(), s);
    std::size_t i = (it == x_.begin()) ? 0 : std::size_t(it - x_.begin()) - 1;
    i = std::min(i, n - 2);

    const double hi = x_[i + 1] - x_[i];
    const double A = (x_[i + 1] - s) / hi;
    const double B = (s - x_[i]) / hi;
    switch (order) {
        case 0:
            return A * y_[i] + B * y_[i + 1] +
                   hi * hi / 6.0 *
                       ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]);
        case 1:
            return (y_[i + 1] - y_[i]) / hi +
                   hi / 6.0 *
                       ((1.0 - 3.0 * A * A) * m_[i] + (3.0 * B * B - 1.0) * m_[i + 1]);
        case 2:
            return A * m_[i] + B * m_[i + 1];
        case 3:
            return (m_[i + 1] - m_[i]) / hi;
        default:
            throw OrderError("CubicSpline: order must be 0..3");
    }
}

} // namespace mhl
