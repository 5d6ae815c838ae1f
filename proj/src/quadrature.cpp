#include "mm/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace mm {

namespace {

std::pair<std::vector<double>, std::vector<double>> compute_gl(int n) {
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-like initial guess.
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        x[static_cast<std::size_t>(i)] = t;
        w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return {x, w};
}

struct Adaptive1D {
    const std::function<double(double)>& f;
    double tol;
    int order;
    long long evals = 0;
    double err_total = 0.0;

    double panel(double a, double b) {
        const auto& [x, w] = gauss_legendre(order);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double v = f(mid + half * x[i]);
            if (std::isfinite(v)) s += w[i] * v;
            ++evals;
        }
        return s * half;
    }

    double run(double a, double b, double whole, double local_tol, int depth) {
        double mid = 0.5 * (a + b);
        double left = panel(a, mid);
        double right = panel(mid, b);
        double delta = std::abs(left + right - whole);
        if (delta < local_tol || depth <= 0) {
            err_total += delta;
            return left + right;
        }
        return run(a, mid, left, 0.5 * local_tol, depth - 1) +
               run(mid, b, right, 0.5 * local_tol, depth - 1);
    }
};

} // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
    return it->second;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double tol, int max_depth, int order) {
    Adaptive1D ad{f, tol, order};
    double whole = ad.panel(a, b);
    double v = ad.run(a, b, whole, tol, max_depth);
    return {v, ad.err_total, ad.evals};
}

QuadResult integrate_adaptive_2d(const std::function<double(double, double)>& f,
                                 double ax, double bx, double ay, double by,
                                 double tol, int max_depth, int order) {
    long long evals = 0;
    double inner_err = 0.0;
    auto profile = [&](double x) {
        auto g = [&](double y) { return f(x, y); };
        QuadResult r = integrate_adaptive(g, ay, by, 0.05 * tol, max_depth, order);
        evals += r.evals;
        inner_err = std::max(inner_err, r.error);
        return r.value;
    };
    QuadResult outer = integrate_adaptive(profile, ax, bx, tol, max_depth, order);
    outer.evals = evals;
    outer.error += inner_err * (bx - ax);
    return outer;
}

std::vector<unsigned long long> korobov_vector(int dim, unsigned long long n) {
    // Fibonacci-flavored multiplier: the odd integer nearest n/phi.
    long double phi = 0.61803398874989484820L;
    unsigned long long a = static_cast<unsigned long long>(phi * n);
    if (a % 2 == 0) ++a;
    a %= n;
    std::vector<unsigned long long> g(static_cast<std::size_t>(dim));
    unsigned long long p = 1;
    for (int j = 0; j < dim; ++j) {
        g[static_cast<std::size_t>(j)] = p;
        p = static_cast<unsigned long long>(
            (static_cast<unsigned __int128>(p) * a) % n);
    }
    return g;
}

} // namespace mm
