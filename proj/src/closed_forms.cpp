// Closed forms for the three generalized-measure families. The alternating
// zeta/polylog sums cancel to roughly n decimal digits at order n, so all of
// this is evaluated in 160-digit floats and rounded only at the end.
#include "mm/genmm.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mm/rational.hpp"

namespace mm {

namespace {

using mpf = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<160>>;
using mpc = boost::multiprecision::cpp_complex<160>;

const mpf& mp_pi() {
    static const mpf pi = boost::math::constants::pi<mpf>();
    return pi;
}

mpf mp_factorial(unsigned n) { return mpf(factorial(n)); }

// zeta(s) = eta(s) / (1 - 2^{1-s}), eta accelerated alternating sum.
mpf zeta_mp_compute(int s) {
    const int n = 280;
    mpf d = pow(mpf(3) + 2 * sqrt(mpf(2)), n);
    d = (d + 1 / d) / 2;
    mpf b = -1, c = -d, sum = 0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        sum += c / pow(mpf(k + 1), s);
        b *= mpf(k + n) * mpf(k - n) / (mpf(2 * k + 1) / 2) / mpf(k + 1);
    }
    mpf eta = sum / d;
    return eta / (1 - pow(mpf(2), 1 - s));
}

const mpf& zeta_mp(int s) {
    static std::map<int, mpf> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, zeta_mp_compute(s)).first;
    return it->second;
}

mpf one_minus_x_even(int m) {
    const mpf& pi = mp_pi();
    mpf fact = mp_factorial(static_cast<unsigned>(2 * m));
    mpf sign = (m % 2 == 0) ? mpf(-1) : mpf(1); // (-1)^{m+1}
    mpf total = sign * fact / pow(pi, 2 * m) * zeta_mp(2 * m + 1);
    for (int j = 1; j <= m; ++j) {
        mpf sj = (j % 2 == 0) ? mpf(1) : mpf(-1);
        total += fact * sj * (1 - pow(mpf(2), 2 * j)) /
                 (mp_factorial(static_cast<unsigned>(2 * m - 2 * j)) *
                  pow(2 * pi, 2 * j)) *
                 zeta_mp(2 * j + 1);
    }
    return total;
}

mpf one_minus_x_odd(int m) {
    const mpf& pi = mp_pi();
    mpf fact = mp_factorial(static_cast<unsigned>(2 * m - 1));
    mpf total = 0;
    for (int j = 1; j <= m - 1; ++j) {
        mpf sj = (j % 2 == 0) ? mpf(1) : mpf(-1);
        total += fact * sj * (1 - pow(mpf(2), 2 * j)) /
                 (mp_factorial(static_cast<unsigned>(2 * m - 2 * j - 1)) *
                  pow(2 * pi, 2 * j)) *
                 zeta_mp(2 * j + 1);
    }
    return total;
}

mpf ratio_even(int m) {
    const mpf& pi = mp_pi();
    mpf fact = mp_factorial(static_cast<unsigned>(2 * m));
    mpf sign = (m % 2 == 0) ? mpf(1) : mpf(-1); // (-1)^m
    mpf total = sign * fact * (1 - pow(mpf(2), 2 * m + 1)) / pow(2 * pi, 2 * m) *
                zeta_mp(2 * m + 1);
    for (int j = 1; j <= m; ++j) {
        mpf sj = (j % 2 == 0) ? mpf(1) : mpf(-1);
        total += fact * sj * (1 - pow(mpf(2), 2 * j + 1)) /
                 (mp_factorial(static_cast<unsigned>(2 * m - 2 * j)) *
                  pow(2 * pi, 2 * j)) *
                 zeta_mp(2 * j + 1);
    }
    return total;
}

mpf ratio_odd(int m) {
    const mpf& pi = mp_pi();
    mpf fact = mp_factorial(static_cast<unsigned>(2 * m - 1));
    mpf total = 0;
    for (int j = 1; j <= m - 1; ++j) {
        mpf sj = (j % 2 == 0) ? mpf(1) : mpf(-1);
        total += fact * sj * (1 - pow(mpf(2), 2 * j + 1)) /
                 (mp_factorial(static_cast<unsigned>(2 * m - 2 * j - 1)) *
                  pow(2 * pi, 2 * j)) *
                 zeta_mp(2 * j + 1);
    }
    return total;
}

} // namespace

double closed_one_minus_x(int n) {
    if (n < 1) throw std::invalid_argument("closed_one_minus_x: n must be >= 1");
    mpf v = (n % 2 == 0) ? one_minus_x_even(n / 2) : one_minus_x_odd((n + 1) / 2);
    return v.convert_to<double>();
}

double closed_ratio(int n) {
    if (n < 1) throw std::invalid_argument("closed_ratio: n must be >= 1");
    mpf v = (n % 2 == 0) ? ratio_even(n / 2) : ratio_odd((n + 1) / 2);
    return v.convert_to<double>();
}

// From |1 + e^{ia} - e^{-ia}| = |e^{ia} - phi| |e^{ia} + 1/phi| one gets the
// Fourier expansion log|P(e^{ia})| = -log phi - sum_j phi^{2j} cos(2ja)/j.
// Against the max order statistic (angle a = pi v / 2, v^n distribution) the
// cosine moments n int_0^1 v^{n-1} e^{i j pi v} dv follow the incomplete-
// exponential recursion J_m = (e^s - (m-1) J_{m-1}) / s, giving
//   m_n = -log phi - sum_j (phi^2)^j / j * Re(n J_n(i j pi)).
// This reproduces the n = 1 and n = 2 polylogarithmic values exactly.
double closed_golden(int n) {
    if (n < 1) throw std::invalid_argument("closed_golden: n must be >= 1");
    const mpf& pi = mp_pi();
    mpf phi = (sqrt(mpf(5)) - 1) / 2;
    mpf q = phi * phi;
    mpf total = -log(phi);
    mpf qj = 1;
    for (int j = 1; j <= 600; ++j) {
        qj *= q;
        if (qj < mpf("1e-40")) break;
        mpc s(0, j * pi);
        mpc e = (j % 2 == 1) ? mpc(-1) : mpc(1); // e^{i j pi}
        mpc J = (e - 1) / s;
        for (int m = 2; m <= n; ++m) J = (e - mpf(m - 1) * J) / s;
        total -= qj / j * n * J.real();
    }
    return total.convert_to<double>();
}

double limit_series(int m) {
    if (m < 1) throw std::invalid_argument("limit_series: m must be >= 1");
    const mpf& pi = mp_pi();
    mpf total = 0;
    for (int j = 1; j <= m - 1; ++j) {
        mpf sj = (j % 2 == 0) ? mpf(1) : mpf(-1);
        // binom(2m-1, 2j) (2j)! equals (2m-1)!/(2m-2j-1)! exactly
        BigInt w = binomial(static_cast<unsigned>(2 * m - 1), static_cast<unsigned>(2 * j)) *
                   factorial(static_cast<unsigned>(2 * j));
        total += mpf(w) * sj * (1 - pow(mpf(2), 2 * j)) / pow(2 * pi, 2 * j) *
                 zeta_mp(2 * j + 1);
    }
    return total.convert_to<double>();
}

} // namespace mm
