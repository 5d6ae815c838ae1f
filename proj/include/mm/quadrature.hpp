#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace mm {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long long evals = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order);

/// Adaptive 1-D integration: an order-`order` Gauss panel is accepted when it
/// agrees with the sum over its two halves, otherwise the halves recurse.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double tol, int max_depth = 32,
                              int order = 15);

/// Iterated 2-D version: the inner integral over y runs adaptively at each
/// outer node, the outer integral over x adapts on the resulting profile.
QuadResult integrate_adaptive_2d(const std::function<double(double, double)>& f,
                                 double ax, double bx, double ay, double by,
                                 double tol, int max_depth = 18, int order = 15);

/// Component of a rank-1 Korobov lattice generating vector (a^j mod n).
std::vector<unsigned long long> korobov_vector(int dim, unsigned long long n);

} // namespace mm
