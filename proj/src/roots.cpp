#include "mm/measure.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace mm {

namespace {

using cd = std::complex<double>;

cd horner(const std::vector<cd>& c, cd z, cd* deriv) {
    cd p = c.back(), dp = 0.0;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    if (deriv) *deriv = dp;
    return p;
}

double max_residual(const std::vector<cd>& c, const std::vector<cd>& z, double scale) {
    double worst = 0.0;
    for (cd zi : z) worst = std::max(worst, std::abs(horner(c, zi, nullptr)) / scale);
    return worst;
}

std::vector<cd> companion_roots(const std::vector<cd>& c) {
    const std::size_t d = c.size() - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(d), static_cast<long>(d));
    for (std::size_t i = 0; i + 1 < d; ++i) m(static_cast<long>(i + 1), static_cast<long>(i)) = 1.0;
    for (std::size_t i = 0; i < d; ++i)
        m(static_cast<long>(i), static_cast<long>(d - 1)) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    std::vector<cd> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = solver.eigenvalues()(static_cast<long>(i));
    return out;
}

} // namespace

std::vector<cd> roots(const std::vector<cd>& coeffs, double tol) {
    std::vector<cd> c = coeffs;
    if (c.empty()) throw std::invalid_argument("roots: zero polynomial");
    if (std::abs(c.back()) < 1e-300)
        throw std::invalid_argument("roots: leading coefficient vanishes");
    std::vector<cd> found;
    // peel off roots at the origin
    std::size_t zeros = 0;
    while (zeros < c.size() - 1 && c[zeros] == cd(0.0)) ++zeros;
    found.assign(zeros, cd(0.0));
    c.erase(c.begin(), c.begin() + static_cast<long>(zeros));
    const std::size_t d = c.size() - 1;
    if (d == 0) return found;
    if (d == 1) {
        found.push_back(-c[0] / c[1]);
        return found;
    }

    double scale = 0.0;
    for (cd ci : c) scale = std::max(scale, std::abs(ci));

    // Cauchy-style radius for the initial circle.
    double radius = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        radius = std::max(radius, std::pow(std::abs(c[i] / c[d]), 1.0 / static_cast<double>(d - i)));
    radius = 2.0 * radius + 0.5;

    std::vector<cd> z(d);
    for (std::size_t i = 0; i < d; ++i) {
        double ang = 2.0 * 3.14159265358979323846 * (static_cast<double>(i) + 0.35) /
                     static_cast<double>(d);
        z[i] = radius * cd(std::cos(ang), std::sin(ang));
    }

    double best = max_residual(c, z, scale);
    int stale = 0;
    for (int sweep = 0; sweep < 600; ++sweep) {
        double moved = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            cd dp;
            cd p = horner(c, z[i], &dp);
            if (std::abs(p) < 1e-300) continue;
            cd ratio = (dp != cd(0.0)) ? p / dp : cd(1e-12);
            cd s = 0.0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            cd denom = 1.0 - ratio * s;
            cd step = (std::abs(denom) > 1e-300) ? ratio / denom : ratio;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        double res = max_residual(c, z, scale);
        if (res < best * (1.0 - 1e-3)) {
            best = res;
            stale = 0;
        } else {
            ++stale;
        }
        if (res < tol && moved < 1e3 * tol) break;
        if (stale >= 50) {
            z = companion_roots(c);
            break;
        }
    }

    // Newton polish from whichever estimate we ended with.
    for (std::size_t i = 0; i < d; ++i) {
        for (int it = 0; it < 8; ++it) {
            cd dp;
            cd p = horner(c, z[i], &dp);
            if (std::abs(dp) < 1e-300) break;
            cd step = p / dp;
            z[i] -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z[i]))) break;
        }
    }

    found.insert(found.end(), z.begin(), z.end());
    return found;
}

} // namespace mm
