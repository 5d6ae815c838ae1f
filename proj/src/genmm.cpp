#include "mm/genmm.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mm/quadrature.hpp"

namespace mm {

MeasureResult gmm_direct_driver(const std::vector<LaurentPolynomial>& fs,
                                const QuadratureConfig& cfg); // measure.cpp

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

} // namespace

Family family_from_string(const std::string& s) {
    if (s == "1mx" || s == "one_minus_x") return Family::one_minus_x;
    if (s == "ratio") return Family::ratio;
    if (s == "golden") return Family::golden;
    throw std::invalid_argument("unknown family: " + s);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::one_minus_x: return "1mx";
        case Family::ratio: return "ratio";
        case Family::golden: return "golden";
    }
    return "?";
}

LaurentPolynomial family_poly(Family f, const std::string& var) {
    LaurentPolynomial x = LaurentPolynomial::variable(var);
    LaurentPolynomial one = LaurentPolynomial::constant(1);
    switch (f) {
        case Family::one_minus_x: return one - x;
        case Family::ratio: return one - x; // numerator; see family_profile
        case Family::golden: return one + x - x.pow(-1);
    }
    throw std::logic_error("family_poly");
}

double family_log_sup_norm(Family f) {
    switch (f) {
        case Family::one_minus_x: return std::log(2.0);
        case Family::ratio: return std::numeric_limits<double>::infinity();
        case Family::golden: return 0.5 * std::log(5.0);
    }
    throw std::logic_error("family_log_sup_norm");
}

MonotoneProfile family_profile(Family f) {
    MonotoneProfile p;
    switch (f) {
        case Family::one_minus_x:
            // |1 - e(theta)| = 2 sin(pi u) with u = |theta|, CDF(u) = 2u
            p.g = [](double u) { return 2.0 * std::sin(kPi * u); };
            p.icdf = [](double v) { return 0.5 * v; };
            p.h = [](double t) { return t <= 0.5 ? t : 1.0 - t; };
            p.poly = family_poly(f, "x");
            return p;
        case Family::ratio:
            // |(1 - e)/(1 + e)| = tan(pi u)
            p.g = [](double u) { return std::tan(kPi * u); };
            p.icdf = [](double v) { return 0.5 * v; };
            p.h = [](double t) { return t <= 0.5 ? t : 1.0 - t; };
            p.poly = LaurentPolynomial(); // rational; validated analytically
            return p;
        case Family::golden:
            // |1 + e - e^{-1}| = sqrt(1 + 4u^2), u = |sin 2 pi theta|,
            // CDF(u) = (2/pi) arcsin u
            p.g = [](double u) { return std::sqrt(1.0 + 4.0 * u * u); };
            p.icdf = [](double v) { return std::sin(0.5 * kPi * v); };
            p.h = [](double t) { return std::abs(std::sin(2.0 * kPi * t)); };
            p.poly = family_poly(f, "x");
            return p;
    }
    throw std::logic_error("family_profile");
}

MeasureResult gmm_direct(const std::vector<LaurentPolynomial>& fs,
                         const QuadratureConfig& cfg) {
    if (fs.empty()) throw std::invalid_argument("gmm_direct: empty list");
    for (const auto& f : fs)
        if (f.is_zero()) throw std::invalid_argument("gmm_direct: zero polynomial");
    return gmm_direct_driver(fs, cfg);
}

MeasureResult gmm_direct_family(Family f, int n, const QuadratureConfig& cfg) {
    if (n < 1) throw std::invalid_argument("gmm_direct_family: n must be >= 1");
    if (f == Family::ratio) {
        auto integrand = [&](const std::vector<cd>& x) {
            double best = -std::numeric_limits<double>::infinity();
            for (const cd& xi : x)
                best = std::max(best, std::log(std::abs(cd(1.0) - xi)) -
                                          std::log(std::abs(cd(1.0) + xi)));
            return best;
        };
        QuadratureConfig c2 = cfg;
        if (c2.method == QuadMethod::automatic || c2.method == QuadMethod::tensor)
            c2.method = QuadMethod::qmc;
        return torus_average(integrand, n, c2);
    }
    std::vector<LaurentPolynomial> fs;
    for (int i = 1; i <= n; ++i) fs.push_back(family_poly(f, "x" + std::to_string(i)));
    return gmm_direct(fs, cfg);
}

MeasureResult gmm_order_stat(const MonotoneProfile& profile, int n,
                             const QuadratureConfig& cfg) {
    if (n < 1) throw std::invalid_argument("gmm_order_stat: n must be >= 1");
    if (!profile.poly.is_zero()) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            double t = U(rng);
            cd x(std::cos(2.0 * kPi * t), std::sin(2.0 * kPi * t));
            double direct = std::abs(profile.poly.evaluate(std::vector<cd>{x}));
            double viaprofile = profile.g(profile.h(t));
            if (std::abs(direct - viaprofile) > 1e-10)
                throw std::invalid_argument("gmm_order_stat: profile mismatch");
        }
    }
    auto integrand = [&](double v) {
        double u = profile.icdf(v);
        return std::log(profile.g(u)) * n * std::pow(v, n - 1);
    };
    QuadResult q = integrate_adaptive(integrand, 0.0, 1.0,
                                      std::min(cfg.target_abs_error, 1e-10), 40, 15);
    MeasureResult r;
    r.value = q.value;
    r.error_estimate = q.error;
    r.method = "order_stat";
    r.samples_used = q.evals;
    return r;
}

double closed_family(Family f, int n) {
    switch (f) {
        case Family::one_minus_x: return closed_one_minus_x(n);
        case Family::ratio: return closed_ratio(n);
        case Family::golden: return closed_golden(n);
    }
    throw std::logic_error("closed_family");
}

std::pair<double, std::vector<double>> sup_norm(const LaurentPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("sup_norm: zero polynomial");
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < p.vars().size(); ++i)
        if (p.depends_on(p.vars()[i])) active.push_back(i);
    const std::size_t dim = active.size();
    std::vector<double> best_theta(p.vars().size(), 0.0);
    std::vector<cd> pt(p.vars().size(), cd(1.0));

    auto eval_at = [&](const std::vector<double>& theta) {
        for (std::size_t i = 0; i < theta.size(); ++i)
            pt[i] = cd(std::cos(2.0 * kPi * theta[i]), std::sin(2.0 * kPi * theta[i]));
        return std::abs(p.evaluate(pt));
    };

    double best = eval_at(best_theta);
    if (dim > 0) {
        int grid = dim <= 2 ? 256 : (dim == 3 ? 40 : 16);
        std::vector<int> idx(dim, 0);
        std::vector<double> theta(p.vars().size(), 0.0);
        for (;;) {
            for (std::size_t k = 0; k < dim; ++k)
                theta[active[k]] = static_cast<double>(idx[k]) / grid;
            double v = eval_at(theta);
            if (v > best) {
                best = v;
                best_theta = theta;
            }
            std::size_t k = 0;
            while (k < dim && ++idx[k] == grid) idx[k++] = 0;
            if (k == dim) break;
        }
        // coordinate ascent: shrink a symmetric bracket around each angle
        double step = 1.0 / grid;
        for (int round = 0; round < 60; ++round) {
            bool moved = false;
            for (std::size_t k = 0; k < dim; ++k) {
                for (double s : {-step, step}) {
                    std::vector<double> cand = best_theta;
                    cand[active[k]] += s;
                    double v = eval_at(cand);
                    if (v > best) {
                        best = v;
                        best_theta = cand;
                        moved = true;
                    }
                }
            }
            if (!moved) step *= 0.5;
            if (step < 1e-12) break;
        }
    }
    for (auto& t : best_theta) t -= std::floor(t);
    return {best, best_theta};
}

} // namespace mm
