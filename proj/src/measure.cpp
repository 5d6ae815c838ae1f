#include "mm/measure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "mm/quadrature.hpp"

namespace mm {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

cd unit(double theta) { return cd(std::cos(kTwoPi * theta), std::sin(kTwoPi * theta)); }

double log_plus(double v) { return v > 1.0 ? std::log(v) : 0.0; }

// evaluate a constant polynomial that may still carry unused variable slots
cd eval_const(const LaurentPolynomial& c) {
    std::vector<cd> ones(c.vars().size(), cd(1.0));
    return c.evaluate(ones);
}

std::vector<cd> constant_coeffs(const std::vector<LaurentPolynomial>& coeffs) {
    std::vector<cd> cs(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) cs[i] = eval_const(coeffs[i]);
    return cs;
}

// chunked deterministic reduction: results are summed in chunk-index order
// no matter how many workers computed them.
template <typename Fn>
void run_chunks(long long nchunks, int threads, Fn&& body) {
    if (threads <= 1 || nchunks <= 1) {
        for (long long c = 0; c < nchunks; ++c) body(c);
        return;
    }
    std::atomic<long long> next{0};
    auto worker = [&] {
        for (;;) {
            long long c = next.fetch_add(1);
            if (c >= nchunks) return;
            body(c);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace

MeasureResult torus_average(
    const std::function<double(const std::vector<cd>&)>& f, int dim,
    const QuadratureConfig& cfg) {
    const bool qmc = cfg.method != QuadMethod::mc;
    const int S = std::max(1, cfg.shifts);
    const long long n = std::max<long long>(1, cfg.total_samples / S);
    const long long chunk = 8192;
    const long long nchunks = (n + chunk - 1) / chunk;

    std::vector<unsigned long long> g;
    std::vector<std::vector<double>> shifts(static_cast<std::size_t>(S),
                                            std::vector<double>(static_cast<std::size_t>(dim)));
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    if (qmc) {
        g = korobov_vector(dim, static_cast<unsigned long long>(n));
        for (auto& sh : shifts)
            for (auto& v : sh) v = U(rng);
    }

    std::vector<double> estimates(static_cast<std::size_t>(S));
    std::atomic<long long> skipped{0};
    for (int s = 0; s < S; ++s) {
        std::vector<double> chunk_sums(static_cast<std::size_t>(nchunks), 0.0);
        run_chunks(nchunks, cfg.threads, [&](long long c) {
            std::vector<cd> x(static_cast<std::size_t>(dim));
            std::mt19937_64 local(cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<unsigned long long>(
                                                  s * nchunks + c + 1)));
            std::uniform_real_distribution<double> Ul(0.0, 1.0);
            double sum = 0.0;
            long long lo = c * chunk, hi = std::min(n, lo + chunk);
            for (long long k = lo; k < hi; ++k) {
                for (int j = 0; j < dim; ++j) {
                    double t;
                    if (qmc) {
                        auto kj = (static_cast<unsigned __int128>(k) * g[static_cast<std::size_t>(j)]) %
                                  static_cast<unsigned long long>(n);
                        t = static_cast<double>(kj) / static_cast<double>(n) +
                            shifts[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
                        t -= std::floor(t);
                    } else {
                        t = Ul(local);
                    }
                    x[static_cast<std::size_t>(j)] = unit(t);
                }
                double v = f(x);
                if (std::isfinite(v))
                    sum += v;
                else
                    skipped.fetch_add(1);
            }
            chunk_sums[static_cast<std::size_t>(c)] = sum;
        });
        double total = 0.0;
        for (double v : chunk_sums) total += v;
        estimates[static_cast<std::size_t>(s)] = total / static_cast<double>(n);
    }

    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(S);
    double err = 0.0;
    if (S > 1) {
        double var = 0.0;
        for (double e : estimates) var += (e - mean) * (e - mean);
        err = std::sqrt(var / (static_cast<double>(S) * (S - 1.0)));
    }

    MeasureResult r;
    r.value = mean;
    r.error_estimate = err;
    r.method = qmc ? "qmc" : "mc";
    r.samples_used = n * S;
    r.metadata["seed"] = std::to_string(cfg.seed);
    r.metadata["skipped"] = std::to_string(skipped.load());
    return r;
}

namespace {

// max(log|f_1|, ..., log|f_r|) torus average; tensor rules for <= 2 joint
// variables, sampling beyond. This single driver backs both the classical
// direct estimator (r = 1) and the generalized one.
MeasureResult max_log_average(const std::vector<LaurentPolynomial>& fs,
                              const QuadratureConfig& cfg) {
    std::vector<std::string> joint;
    for (const auto& f : fs)
        for (const auto& v : f.vars())
            if (f.depends_on(v) && std::find(joint.begin(), joint.end(), v) == joint.end())
                joint.push_back(v);
    const int dim = static_cast<int>(joint.size());

    // per-polynomial index map into the joint point
    std::vector<std::vector<std::size_t>> idx(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (const auto& v : fs[i].vars())
            idx[i].push_back(static_cast<std::size_t>(
                std::find(joint.begin(), joint.end(), v) - joint.begin()));

    auto eval_max = [&](const std::vector<cd>& x) {
        double best = -std::numeric_limits<double>::infinity();
        double bigmod = 0.0;
        std::vector<cd> pt;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            pt.clear();
            for (std::size_t j : idx[i]) pt.push_back(j < x.size() ? x[j] : cd(1.0));
            double mod = std::abs(fs[i].evaluate(pt));
            bigmod = std::max(bigmod, mod);
            best = std::max(best, std::log(mod));
        }
        if (bigmod < cfg.singular_cutoff) return std::numeric_limits<double>::quiet_NaN();
        return best;
    };

    if (dim == 0) {
        std::vector<cd> none;
        MeasureResult r;
        r.value = eval_max(none);
        r.method = "exact";
        r.samples_used = 1;
        return r;
    }

    QuadMethod m = cfg.method;
    if (m == QuadMethod::automatic) m = dim <= 2 ? QuadMethod::tensor : QuadMethod::qmc;
    if (m == QuadMethod::tensor && dim > 2) m = QuadMethod::qmc;

    if (m == QuadMethod::tensor) {
        long long skipped = 0;
        auto guard = [&](double v) {
            if (std::isnan(v)) ++skipped;
            return v;
        };
        QuadResult q;
        if (dim == 1) {
            q = integrate_adaptive(
                [&](double t) { return guard(eval_max({unit(t)})); }, 0.0, 1.0,
                cfg.target_abs_error, cfg.adaptive_depth);
        } else {
            q = integrate_adaptive_2d(
                [&](double t1, double t2) { return guard(eval_max({unit(t1), unit(t2)})); },
                0.0, 1.0, 0.0, 1.0, cfg.target_abs_error, cfg.adaptive_depth);
        }
        MeasureResult r;
        r.value = q.value;
        r.error_estimate = q.error;
        r.method = "tensor";
        r.samples_used = q.evals;
        r.metadata["seed"] = std::to_string(cfg.seed);
        r.metadata["skipped"] = std::to_string(skipped);
        return r;
    }

    QuadratureConfig c2 = cfg;
    c2.method = m;
    return torus_average(eval_max, dim, c2);
}

} // namespace

double mahler_1var(const LaurentPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("mahler_1var: zero polynomial");
    if (p.is_constant())
        return std::log(std::abs(to_double(p.terms().begin()->second)));
    std::string var;
    for (const auto& v : p.vars())
        if (p.depends_on(v)) {
            if (!var.empty()) throw std::invalid_argument("mahler_1var: more than one variable");
            var = v;
        }
    auto [q, shift] = shift_var_nonneg(p, var);
    (void)shift;
    auto coeffs = as_poly_in(q, var);
    std::vector<cd> cs = constant_coeffs(coeffs);
    double value = std::log(std::abs(cs.back()));
    if (cs.size() > 1)
        for (cd a : roots(cs)) value += log_plus(std::abs(a));
    return value;
}

MeasureResult mahler_direct(const LaurentPolynomial& p, const QuadratureConfig& cfg) {
    if (p.is_zero()) throw std::invalid_argument("mahler_direct: zero polynomial");
    return max_log_average({p}, cfg);
}

MeasureResult gmm_direct_driver(const std::vector<LaurentPolynomial>& fs,
                                const QuadratureConfig& cfg) {
    return max_log_average(fs, cfg);
}

MeasureResult mahler_jensen_reduced(const LaurentPolynomial& p,
                                    const std::string& var,
                                    const QuadratureConfig& cfg) {
    if (!p.depends_on(var))
        throw std::invalid_argument("mahler_jensen_reduced: variable absent");
    auto [q, shift] = shift_var_nonneg(p, var);
    auto coeffs = as_poly_in(q, var);
    const std::size_t d = coeffs.size() - 1;
    if (d == 0) throw std::invalid_argument("mahler_jensen_reduced: degree zero");

    MeasureResult r;
    r.method = "jensen";
    r.metadata["shift_" + var] = std::to_string(shift);
    r.metadata["seed"] = std::to_string(cfg.seed);

    // m(a_d)
    const LaurentPolynomial& lead = coeffs[d];
    if (lead.is_constant()) {
        r.value = std::log(std::abs(to_double(lead.terms().begin()->second)));
    } else {
        int nvars = 0;
        std::string last;
        for (const auto& v : lead.vars())
            if (lead.depends_on(v)) {
                ++nvars;
                last = v;
            }
        if (nvars == 1) {
            r.value = mahler_1var(lead);
        } else {
            MeasureResult sub = mahler_jensen_reduced(lead, last, cfg);
            r.value = sub.value;
            r.error_estimate += sub.error_estimate;
            r.samples_used += sub.samples_used;
        }
    }

    // remaining variables, in q's order
    std::vector<std::string> rem;
    for (const auto& c : coeffs)
        for (const auto& v : c.vars())
            if (c.depends_on(v) && std::find(rem.begin(), rem.end(), v) == rem.end())
                rem.push_back(v);
    const int dim = static_cast<int>(rem.size());

    std::vector<std::vector<std::size_t>> idx(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (const auto& v : coeffs[i].vars())
            idx[i].push_back(static_cast<std::size_t>(
                std::find(rem.begin(), rem.end(), v) - rem.begin()));

    std::atomic<long long> skipped{0};
    auto integrand = [&](const std::vector<cd>& x) {
        std::vector<cd> cs(coeffs.size());
        std::vector<cd> pt;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            pt.clear();
            for (std::size_t j : idx[i]) pt.push_back(j < x.size() ? x[j] : cd(1.0));
            cs[i] = coeffs[i].evaluate(pt);
        }
        if (std::abs(cs.back()) < cfg.singular_cutoff) {
            skipped.fetch_add(1);
            return std::numeric_limits<double>::quiet_NaN();
        }
        double s = 0.0;
        if (cs.size() > 1)
            for (cd a : roots(cs)) s += log_plus(std::abs(a));
        return s;
    };

    if (dim == 0) {
        std::vector<cd> none;
        double v = integrand(none);
        r.value += v;
        r.samples_used += 1;
        r.metadata["skipped"] = std::to_string(skipped.load());
        return r;
    }

    if (dim <= 2 && (cfg.method == QuadMethod::automatic || cfg.method == QuadMethod::tensor)) {
        QuadResult qr;
        if (dim == 1) {
            qr = integrate_adaptive([&](double t) { return integrand({unit(t)}); }, 0.0,
                                    1.0, cfg.target_abs_error, cfg.adaptive_depth);
        } else {
            qr = integrate_adaptive_2d(
                [&](double t1, double t2) { return integrand({unit(t1), unit(t2)}); }, 0.0,
                1.0, 0.0, 1.0, cfg.target_abs_error, cfg.adaptive_depth);
        }
        r.value += qr.value;
        r.error_estimate += qr.error;
        r.samples_used += qr.evals;
        r.method = "jensen/tensor";
    } else {
        QuadratureConfig c2 = cfg;
        if (c2.method == QuadMethod::automatic || c2.method == QuadMethod::tensor)
            c2.method = QuadMethod::qmc;
        MeasureResult inner = torus_average(integrand, dim, c2);
        r.value += inner.value;
        r.error_estimate += inner.error_estimate;
        r.samples_used += inner.samples_used;
        r.method = "jensen/" + inner.method;
    }
    r.metadata["skipped"] = std::to_string(skipped.load());
    return r;
}

LaurentPolynomial boundary_curve(const RationalFunction& R) {
    if (R.denominator.is_zero())
        throw std::invalid_argument("boundary_curve: zero denominator");
    LaurentPolynomial p = R.numerator * R.numerator.substitute_inverse() -
                          R.denominator * R.denominator.substitute_inverse();
    for (const auto& v : std::vector<std::string>(p.vars()))
        p = shift_var_nonneg(p, v).first;
    if (p.is_zero()) return p;

    // divide out the rational content and fix the sign of the first term
    BigInt num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : p.terms()) {
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c));
        den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c));
    }
    Rational content(num_gcd, den_lcm);
    if (p.terms().begin()->second < 0) content = -content;
    return p * LaurentPolynomial::constant(Rational(1) / content);
}

} // namespace mm
