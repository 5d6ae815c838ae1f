#pragma once

#include <complex>

#include "mm/rational.hpp"

namespace mm {

struct Precision {
    double target_abs_error = 1e-14;
    int max_terms = 200000;
};

/// Exact Bernoulli number B_j (B_1 = -1/2).
Rational bernoulli(unsigned j);

/// zeta(k) for integer k >= 2. Even k via the Bernoulli closed form.
double zeta(int k, Precision prec = {});

/// zeta at any integer m != 1 (negative and zero arguments via Bernoulli
/// numbers); used by the polylog expansion around z = 1.
double zeta_int(int m);

/// L(chi_{-4}, s) = sum_{k>=0} (-1)^k / (2k+1)^s for s >= 1.
double dirichlet_beta(int s, Precision prec = {});

/// Classical polylogarithm Li_n(z), principal branch, cut along [1, inf).
/// Real z > 1 evaluates to the upper boundary value; *on_cut (when non-null)
/// is set accordingly.
std::complex<double> li(int n, std::complex<double> z, Precision prec = {},
                        bool* on_cut = nullptr);

/// Bloch-Wigner dilogarithm, real-valued and continuous on C.
double bloch_wigner(std::complex<double> z);

/// Single-valued polylogarithm: Re (n odd) or Im (n even) of the
/// Bernoulli-weighted sum over log^j|z| Li_{n-j}(z).
double zagier_L(int n, std::complex<double> z, Precision prec = {});

/// Same sum with Re (n odd) or i*Im (n even); real for odd n, purely
/// imaginary for even n.
std::complex<double> zagier_Lhat(int n, std::complex<double> z, Precision prec = {});

} // namespace mm
