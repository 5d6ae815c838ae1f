#include "mm/special.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mm {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

std::vector<Rational>& bernoulli_cache() {
    static std::vector<Rational> cache{Rational(1)};
    return cache;
}
std::mutex bernoulli_mutex;

// B_m / m! in double, stable for large m (tends to 0 like (2pi)^{-m}).
const std::vector<double>& bernoulli_over_factorial(std::size_t upto) {
    static std::vector<double> q{1.0};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    // q_m = -sum_{j<m} q_j / (m+1-j)!
    while (q.size() <= upto) {
        std::size_t m = q.size();
        double s = 0.0;
        double fact = 1.0;
        // iterate j = m-1 down to 0; (m+1-j)! from 2! upward
        for (std::size_t d = 2; d <= m + 1; ++d) {
            fact *= static_cast<double>(d);
            s += q[m + 1 - d] / fact;
        }
        q.push_back(-s);
    }
    return q;
}

} // namespace

Rational bernoulli(unsigned j) {
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    auto& cache = bernoulli_cache();
    while (cache.size() <= j) {
        unsigned m = static_cast<unsigned>(cache.size());
        Rational s = 0;
        for (unsigned k = 0; k < m; ++k)
            s += Rational(binomial(m + 1, k)) * cache[k];
        cache.push_back(-s / Rational(m + 1));
    }
    return cache[j];
}

double zeta(int k, Precision prec) {
    if (k < 2) throw std::domain_error("zeta: k must be >= 2");
    if (k % 2 == 0) {
        // zeta(2n) = (-1)^{n+1} B_{2n} (2pi)^{2n} / (2 (2n)!)
        int n = k / 2;
        Rational b = bernoulli(static_cast<unsigned>(k));
        double coeff = to_double(Rational(BigInt((n % 2 == 0) ? -1 : 1)) * b /
                                 Rational(2 * factorial(static_cast<unsigned>(k))));
        return coeff * std::pow(2.0 * kPi, k);
    }
    // Euler-Maclaurin tail-corrected partial sum.
    const int N = 24;
    double s = 0.0;
    for (int n = 1; n < N; ++n) s += std::pow(static_cast<double>(n), -k);
    double Nd = static_cast<double>(N);
    s += std::pow(Nd, 1.0 - k) / (k - 1.0) + 0.5 * std::pow(Nd, -static_cast<double>(k));
    // correction terms B_{2j}/(2j)! * (k)(k+1)...(k+2j-2) * N^{-k-2j+1}
    double poch = static_cast<double>(k);
    const auto& q = bernoulli_over_factorial(40);
    for (int j = 1; j <= 12; ++j) {
        double term = q[static_cast<std::size_t>(2 * j)] * poch *
                      std::pow(Nd, -(k + 2.0 * j - 1.0));
        s += term;
        if (std::abs(term) < 0.1 * prec.target_abs_error) break;
        poch *= (k + 2.0 * j - 1.0) * (k + 2.0 * j);
    }
    return s;
}

double zeta_int(int m) {
    if (m == 1) throw std::domain_error("zeta_int: pole at 1");
    if (m >= 2) return zeta(m);
    if (m == 0) return -0.5;
    // zeta(-n) = -B_{n+1}/(n+1)
    unsigned n = static_cast<unsigned>(-m);
    return -to_double(bernoulli(n + 1) / Rational(n + 1));
}

double dirichlet_beta(int s, Precision prec) {
    if (s < 1) throw std::domain_error("dirichlet_beta: s must be >= 1");
    if (s == 1) return kPi / 4.0;
    // Cohen-Rodriguez Villegas-Zagier acceleration of the alternating series.
    int n = 4 + static_cast<int>(std::ceil(-std::log(std::max(prec.target_abs_error, 1e-17)) / 1.7627));
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0, c = -d, sum = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        sum += c * std::pow(2.0 * k + 1.0, -s);
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
    }
    return sum / d;
}

namespace {

// Direct series, |z| <= 0.5.
cd li_series(int n, cd z, const Precision& prec) {
    cd s = 0.0, p = z;
    for (int k = 1; k <= prec.max_terms; ++k) {
        cd term = p / std::pow(static_cast<double>(k), n);
        s += term;
        if (std::abs(term) < 0.1 * prec.target_abs_error && k > 4) break;
        p *= z;
    }
    return s;
}

// Expansion in mu = log z, valid for |mu| < 2 pi:
//   Li_n(z) = sum_{k>=0, k != n-1} zeta(n-k) mu^k/k!
//           + mu^{n-1}/(n-1)! (H_{n-1} - log(-mu))
// `upper` selects the branch of log(-mu) when -mu lands on the negative real
// axis (z real > 1): the upper boundary takes log(mu) - i pi.
cd li_log_series(int n, cd mu, bool upper, const Precision& prec) {
    cd s = 0.0;
    cd muk = 1.0; // mu^k / k!
    for (int k = 0; k <= n - 2; ++k) {
        s += zeta_int(n - k) * muk;
        muk *= mu / static_cast<double>(k + 1);
    }
    // k = n-1 term
    double h = 0.0;
    for (int j = 1; j <= n - 1; ++j) h += 1.0 / j;
    cd logneg;
    if (mu.imag() == 0.0 && mu.real() > 0.0) {
        logneg = cd(std::log(mu.real()), upper ? -kPi : kPi);
    } else {
        logneg = std::log(-mu);
    }
    s += muk * (h - logneg);
    muk *= mu / static_cast<double>(n);
    // k = n: zeta(0) = -1/2
    s += -0.5 * muk;
    muk *= mu / static_cast<double>(n + 1);
    // k >= n+1: zeta(n-k) = -B_m/m with m = k+1-n >= 2; only even m survive.
    // term = -(B_m/m!) * mu^k (m-1)!/k!; both factors stay bounded since
    // B_m/m! ~ (2pi)^{-m} and mu^k (m-1)!/k! ~ (|mu|/1)^k / (m...k).
    const auto& q = bernoulli_over_factorial(500);
    cd r = muk; // mu^k (m-1)!/k! at k = n+1, m = 2
    for (int k = n + 1; k <= prec.max_terms && k - n < 498; ++k) {
        int m = k + 1 - n;
        if (m % 2 == 0) {
            cd term = -q[static_cast<std::size_t>(m)] * r;
            s += term;
            if (std::abs(term) < 0.1 * prec.target_abs_error && k > n + 8) break;
        }
        r *= mu * (static_cast<double>(m) / static_cast<double>(k + 1));
    }
    return s;
}

} // namespace

std::complex<double> li(int n, std::complex<double> z, Precision prec, bool* on_cut) {
    if (n < 1) throw std::domain_error("li: order must be >= 1");
    bool cut = (z.imag() == 0.0 && z.real() > 1.0);
    if (on_cut) *on_cut = cut;
    if (n == 1) {
        if (z == cd(1.0, 0.0)) throw std::domain_error("li: Li_1 pole at 1");
        if (cut) return cd(-std::log(z.real() - 1.0), kPi);
        return -std::log(cd(1.0) - z);
    }
    if (z == cd(0.0, 0.0)) return 0.0;
    if (z == cd(1.0, 0.0)) return zeta(n, prec);
    if (std::abs(z) <= 0.5) return li_series(n, z, prec);
    cd mu = std::log(z);
    if (std::abs(mu) < 0.98 * 2.0 * kPi) return li_log_series(n, mu, cut, prec);
    // huge |z|: recurse through the defining integral Li_n(z) = int_0^1 Li_{n-1}(sz)/s ds
    // (the ray from 0 to z avoids the cut since z is far from [0,1]).
    // Composite Gauss on dyadic panels toward s = 0.
    static const double gx[8] = {-0.9602898564975363, -0.7966664774136267,
                                 -0.5255324099163290, -0.1834346424956498,
                                 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
    static const double gw[8] = {0.1012285362903763, 0.2223810344533745,
                                 0.3137066458778873, 0.3626837833783620,
                                 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    cd total = 0.0;
    double a = 0.0;
    for (int panel = 40; panel >= 0; --panel) {
        double lo = (panel == 40) ? 0.0 : std::ldexp(1.0, -(panel + 1));
        double hi = std::ldexp(1.0, -panel);
        if (panel == 40) lo = 0.0, hi = std::ldexp(1.0, -40);
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < 8; ++i) {
            double s = mid + half * gx[i];
            if (s == 0.0) continue;
            total += gw[i] * half * li(n - 1, s * z, prec) / s;
        }
        a = hi;
    }
    (void)a;
    return total;
}

double bloch_wigner(std::complex<double> z) {
    if (z.imag() == 0.0) return 0.0; // D vanishes on the real line
    if (z == cd(0.0, 0.0) || z == cd(1.0, 0.0)) return 0.0;
    cd l2 = li(2, z);
    return l2.imag() + std::log(std::abs(z)) * std::arg(cd(1.0) - z);
}

namespace {

// The Bernoulli-weighted sum of Eq.-style single-valued polylogs.
cd zagier_sum(int n, cd z, const Precision& prec) {
    if (z == cd(1.0, 0.0)) return zeta(n, prec);
    double lz = std::log(std::abs(z));
    cd s = 0.0;
    double w = 1.0; // 2^j B_j / j! * lz^j
    for (int j = 0; j <= n - 1; ++j) {
        double bj = to_double(bernoulli(static_cast<unsigned>(j)) /
                              Rational(factorial(static_cast<unsigned>(j))));
        double coeff = std::pow(2.0 * lz, j) * bj;
        if (coeff != 0.0) s += coeff * li(n - j, z, prec);
        (void)w;
    }
    return s;
}

} // namespace

double zagier_L(int n, std::complex<double> z, Precision prec) {
    if (n < 2) throw std::domain_error("zagier_L: order must be >= 2");
    if (z == cd(0.0, 0.0)) return 0.0;
    cd s = zagier_sum(n, z, prec);
    return (n % 2 == 1) ? s.real() : s.imag();
}

std::complex<double> zagier_Lhat(int n, std::complex<double> z, Precision prec) {
    if (n < 2) throw std::domain_error("zagier_Lhat: order must be >= 2");
    if (z == cd(0.0, 0.0)) return 0.0;
    cd s = zagier_sum(n, z, prec);
    return (n % 2 == 1) ? cd(s.real(), 0.0) : cd(0.0, s.imag());
}

} // namespace mm
