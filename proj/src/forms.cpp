#include "mm/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mm/quadrature.hpp"
#include "mm/special.hpp"

namespace mm {

namespace {

using cd = std::complex<double>;

constexpr double kCoordCutoff = 1e-10;

double dfact(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// All permutations of {0..m-1} with their signs.
const std::vector<std::pair<std::vector<int>, int>>& permutations(int m) {
    static std::vector<std::vector<std::pair<std::vector<int>, int>>> cache(1);
    while (static_cast<int>(cache.size()) <= m) {
        int k = static_cast<int>(cache.size());
        std::vector<std::pair<std::vector<int>, int>> perms;
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            int inv = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (idx[i] > idx[j]) ++inv;
            perms.emplace_back(idx, inv % 2 == 0 ? 1 : -1);
        } while (std::next_permutation(idx.begin(), idx.end()));
        cache.push_back(std::move(perms));
    }
    return cache[m];
}

// Determinant of the sub-matrix rows x cols, Laplace expansion (size <= 3).
cd det(const std::vector<std::vector<cd>>& rows, const std::vector<int>& cols) {
    const std::size_t m = rows.size();
    if (m == 0) return 1.0;
    if (m == 1) return rows[0][cols[0]];
    cd total = 0.0;
    std::vector<int> sub(cols.begin() + 1, cols.end());
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::vector<cd>> minor_rows;
        for (std::size_t r = 0; r < m; ++r)
            if (r != i) minor_rows.push_back(rows[r]);
        cd term = rows[i][cols[0]] * det(minor_rows, sub);
        total += (i % 2 == 0) ? term : -term;
    }
    return total;
}

struct CoordData {
    double lg;              // log|x|
    std::vector<cd> dlog;   // Re(dx/x) per direction
    std::vector<cd> diarg;  // i Im(dx/x) per direction
};

CoordData coord_data(const Jet& jet, std::size_t dirs) {
    if (std::abs(jet.value) < kCoordCutoff)
        throw std::invalid_argument("form evaluation: coordinate at zero");
    if (jet.d.size() < dirs)
        throw std::invalid_argument("form evaluation: missing derivatives");
    CoordData c;
    c.lg = std::log(std::abs(jet.value));
    c.dlog.resize(dirs);
    c.diarg.resize(dirs);
    for (std::size_t i = 0; i < dirs; ++i) {
        cd ratio = jet.d[i] / jet.value;
        c.dlog[i] = ratio.real();
        c.diarg[i] = cd(0.0, ratio.imag());
    }
    return c;
}

// Component vector of Lhat_{p,q}(x) along each direction.
std::vector<cd> lhat_pq(int p, int q, const Jet& x, std::size_t dirs) {
    CoordData c = coord_data(x, dirs);
    double lq = std::pow(c.lg, q - 1);
    std::vector<cd> out(dirs);
    if (p >= 2) {
        cd lhat = zagier_Lhat(p, x.value);
        for (std::size_t i = 0; i < dirs; ++i) out[i] = lhat * lq * c.dlog[i];
        return out;
    }
    cd onemx = cd(1.0) - x.value;
    if (std::abs(onemx) < kCoordCutoff)
        throw std::invalid_argument("form evaluation: class argument at 1");
    double lg1 = std::log(std::abs(onemx));
    for (std::size_t i = 0; i < dirs; ++i) {
        cd dl1mx = cd((-x.d[i] / onemx).real());
        out[i] = (c.lg * dl1mx - lg1 * c.dlog[i]) * lq;
    }
    return out;
}

} // namespace

int form_arity(const FormSpec& form) {
    switch (form.kind) {
        case FormKind::eta_nn: return form.n;
        case FormKind::eta_nl: return form.l;
        case FormKind::eta2: return 2;
        case FormKind::eta3: return 3;
        case FormKind::omega: return 2;
    }
    throw std::logic_error("form_arity");
}

Rational beta_kp(int k, int p) {
    if (k < 1 || p < 1) throw std::invalid_argument("beta_kp: k, p must be >= 1");
    Rational sum = 0;
    for (int j = 0; 2 * j <= p - 1; ++j) {
        int idx = k + p - 2 * j;
        Rational term = Rational(binomial(static_cast<unsigned>(k + p + 1),
                                          static_cast<unsigned>(2 * j + 1))) *
                        Rational(BigInt(1) << idx) *
                        bernoulli(static_cast<unsigned>(idx));
        sum += term;
    }
    Rational front = Rational(factorial(static_cast<unsigned>(p - 1)),
                              factorial(static_cast<unsigned>(k + p + 1)));
    if (p % 2 == 1) front = -front;
    return front * sum;
}

std::complex<double> eval_eta_nn(const std::vector<Jet>& xs) {
    const int n = static_cast<int>(xs.size());
    if (n < 1) throw std::invalid_argument("eval_eta_nn: no coordinates");
    const std::size_t dirs = static_cast<std::size_t>(n - 1);
    std::vector<CoordData> c;
    c.reserve(xs.size());
    for (const Jet& jet : xs) c.push_back(coord_data(jet, dirs));
    if (n == 1) return c[0].lg;

    std::vector<int> cols(dirs);
    std::iota(cols.begin(), cols.end(), 0);
    cd total = 0.0;
    for (const auto& [perm, sign] : permutations(n)) {
        for (int p = 0; 2 * p + 1 <= n; ++p) {
            std::vector<std::vector<cd>> rows;
            rows.reserve(dirs);
            for (int j = 1; j <= 2 * p; ++j) rows.push_back(c[perm[j]].dlog);
            for (int j = 2 * p + 1; j < n; ++j) rows.push_back(c[perm[j]].diarg);
            double coeff = c[perm[0]].lg / (dfact(2 * p + 1) * dfact(n - 2 * p - 1));
            total += static_cast<double>(sign) * coeff * det(rows, cols);
        }
    }
    return total;
}

std::complex<double> eval_eta_nl(int n, const Jet& x, const std::vector<Jet>& xs) {
    const int l = static_cast<int>(xs.size()) + 1;
    if (l >= n) throw std::invalid_argument("eval_eta_nl: requires l < n");
    if (std::abs(x.value) < kCoordCutoff)
        throw std::invalid_argument("eval_eta_nl: class argument at zero");
    if (l == 1) return zagier_Lhat(n, x.value);
    const std::size_t dirs = static_cast<std::size_t>(l - 1);
    std::vector<CoordData> c;
    c.reserve(xs.size());
    for (const Jet& jet : xs) c.push_back(coord_data(jet, dirs));

    std::vector<int> all_cols(dirs);
    std::iota(all_cols.begin(), all_cols.end(), 0);

    // Lhat_{n-l+1}(x) Alt_{l-1}(sum_p wedge of 2p dlog and l-1-2p diarg)
    cd alt1 = 0.0;
    for (const auto& [perm, sign] : permutations(l - 1)) {
        for (int p = 0; 2 * p <= l - 1; ++p) {
            std::vector<std::vector<cd>> rows;
            rows.reserve(dirs);
            for (int j = 0; j < 2 * p; ++j) rows.push_back(c[perm[j]].dlog);
            for (int j = 2 * p; j < l - 1; ++j) rows.push_back(c[perm[j]].diarg);
            double coeff = 1.0 / (dfact(2 * p + 1) * dfact(l - 1 - 2 * p));
            alt1 += static_cast<double>(sign) * coeff * det(rows, all_cols);
        }
    }
    cd total = zagier_Lhat(n - l + 1, x.value) * alt1;

    // beta_{k,p}-weighted correction block: a 1-form in x wedged with the
    // Alt_{l-1} of log|x_1| against p-1 dlog and l-1-p diarg factors.
    for (int k = 1; k <= n - l; ++k) {
        for (int p = 1; p <= l - 1; ++p) {
            double bkp = to_double(beta_kp(k, p));
            if (bkp == 0.0) continue;
            std::vector<cd> one_form = lhat_pq(n - l + 1 - k, k, x, dirs);
            double coeff = 1.0 / (dfact(p - 1) * dfact(l - 1 - p));
            cd wedge = 0.0;
            for (std::size_t omit = 0; omit < dirs; ++omit) {
                std::vector<int> cols;
                for (std::size_t i = 0; i < dirs; ++i)
                    if (i != omit) cols.push_back(static_cast<int>(i));
                cd alt2 = 0.0;
                for (const auto& [perm, sign] : permutations(l - 1)) {
                    std::vector<std::vector<cd>> rows;
                    for (int j = 1; j < p; ++j) rows.push_back(c[perm[j]].dlog);
                    for (int j = p; j < l - 1; ++j) rows.push_back(c[perm[j]].diarg);
                    alt2 += static_cast<double>(sign) * c[perm[0]].lg * coeff *
                            det(rows, cols);
                }
                double parity = (omit % 2 == 0) ? 1.0 : -1.0;
                wedge += parity * one_form[omit] * alt2;
            }
            total += bkp * wedge;
        }
    }
    return total;
}

std::complex<double> eval_form(const FormSpec& form, const std::vector<Jet>& xs) {
    if (static_cast<int>(xs.size()) != form_arity(form))
        throw std::invalid_argument("eval_form: argument count mismatch");
    switch (form.kind) {
        case FormKind::eta_nn:
        case FormKind::eta2:
        case FormKind::eta3:
            return eval_eta_nn(xs);
        case FormKind::omega:
            return eval_eta_nl(3, xs[0], {xs.begin() + 1, xs.end()});
        case FormKind::eta_nl:
            return eval_eta_nl(form.n, xs[0], {xs.begin() + 1, xs.end()});
    }
    throw std::logic_error("eval_form");
}

std::vector<double> validate_path(const PathSpec& path) {
    if (path.value.empty() || path.value.size() != path.deriv.size())
        throw std::invalid_argument("validate_path: malformed coordinate list");
    if (!(path.t1 > path.t0) && !(path.t1 < path.t0))
        return {};
    const double span = path.t1 - path.t0;
    const int samples = std::max(path.steps, 16) * 4;
    const double h = 1e-6 * std::abs(span);

    std::vector<double> splits;
    for (std::size_t i = 0; i < path.value.size(); ++i) {
        cd prev = 0.0;
        double prev_t = path.t0;
        for (int s = 0; s <= samples; ++s) {
            double t = path.t0 + span * s / samples;
            cd v = path.value[i](t);
            if (std::abs(v) < kCoordCutoff)
                throw std::invalid_argument("validate_path: coordinate vanishes");
            if (s > 0 && s < samples) {
                cd fd = (path.value[i](t + h) - path.value[i](t - h)) / (2.0 * h);
                cd given = path.deriv[i](t);
                if (std::abs(fd - given) > 1e-6 * (1.0 + std::abs(given)))
                    throw std::invalid_argument(
                        "validate_path: derivative disagrees with finite differences");
            }
            // negative-real-axis crossing between consecutive samples
            if (s > 0 && prev.real() < 0.0 && v.real() < 0.0 &&
                ((prev.imag() < 0.0) != (v.imag() < 0.0))) {
                double lo = prev_t, hi = t;
                bool lo_neg = prev.imag() < 0.0;
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if ((path.value[i](mid).imag() < 0.0) == lo_neg)
                        lo = mid;
                    else
                        hi = mid;
                }
                splits.push_back(0.5 * (lo + hi));
            }
            prev = v;
            prev_t = t;
        }
    }
    std::sort(splits.begin(), splits.end());
    if (span < 0) std::reverse(splits.begin(), splits.end());
    return splits;
}

std::complex<double> path_integral(const FormSpec& form, const PathSpec& path,
                                   double tol) {
    const int arity = form_arity(form);
    if (static_cast<int>(path.value.size()) != arity)
        throw std::invalid_argument("path_integral: path arity mismatch");

    std::vector<double> cuts = validate_path(path);
    std::vector<double> bounds;
    bounds.push_back(path.t0);
    for (double c : cuts) bounds.push_back(c);
    bounds.push_back(path.t1);

    auto integrand = [&](double t) {
        std::vector<Jet> xs(path.value.size());
        for (std::size_t i = 0; i < path.value.size(); ++i) {
            xs[i].value = path.value[i](t);
            xs[i].d = {path.deriv[i](t)};
        }
        return eval_form(form, xs);
    };

    const auto& [nodes, weights] = gauss_legendre(12);
    const double total_len = std::abs(path.t1 - path.t0);
    cd total = 0.0;
    for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
        double a = bounds[seg], b = bounds[seg + 1];
        double frac = total_len > 0 ? std::abs(b - a) / total_len : 1.0;
        int panels = std::max(1, static_cast<int>(std::lround(path.steps * frac)));
        auto composite = [&](int k) {
            cd sum = 0.0;
            for (int i = 0; i < k; ++i) {
                double pa = a + (b - a) * i / k;
                double pb = a + (b - a) * (i + 1) / k;
                double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
                for (std::size_t q = 0; q < nodes.size(); ++q)
                    sum += weights[q] * half * integrand(mid + half * nodes[q]);
            }
            return sum;
        };
        cd prev = composite(panels);
        for (int doubling = 0; doubling < 10; ++doubling) {
            panels *= 2;
            cd next = composite(panels);
            if (std::abs(next - prev) < tol) {
                prev = next;
                break;
            }
            prev = next;
        }
        total += prev;
    }
    return total;
}

double stokes_residual(const PatchSpec& patch) {
    if (patch.value.size() != 2 || patch.ds.size() != 2 || patch.dt.size() != 2)
        throw std::invalid_argument("stokes_residual: patch needs coordinates x, y");

    auto area_integrand = [&](double s, double t) {
        cd x = patch.value[0](s, t), y = patch.value[1](s, t);
        cd xs = patch.ds[0](s, t), xt = patch.dt[0](s, t);
        cd ys = patch.ds[1](s, t), yt = patch.dt[1](s, t);
        std::vector<Jet> jets(3);
        jets[0] = {x, {xs, xt}};
        jets[1] = {cd(1.0) - x, {-xs, -xt}};
        jets[2] = {y, {ys, yt}};
        return eval_eta_nn(jets);
    };

    const auto& [nodes, weights] = gauss_legendre(8);
    auto area = [&](int grid) {
        cd sum = 0.0;
        for (int i = 0; i < grid; ++i) {
            double sa = patch.s0 + (patch.s1 - patch.s0) * i / grid;
            double sb = patch.s0 + (patch.s1 - patch.s0) * (i + 1) / grid;
            double sm = 0.5 * (sa + sb), sh = 0.5 * (sb - sa);
            for (int j = 0; j < grid; ++j) {
                double ta = patch.t0 + (patch.t1 - patch.t0) * j / grid;
                double tb = patch.t0 + (patch.t1 - patch.t0) * (j + 1) / grid;
                double tm = 0.5 * (ta + tb), th = 0.5 * (tb - ta);
                for (std::size_t qi = 0; qi < nodes.size(); ++qi)
                    for (std::size_t qj = 0; qj < nodes.size(); ++qj)
                        sum += weights[qi] * weights[qj] * sh * th *
                               area_integrand(sm + sh * nodes[qi], tm + th * nodes[qj]);
            }
        }
        return sum;
    };
    int grid = std::max(patch.grid, 4);
    cd area_val = area(2 * grid);

    // counterclockwise boundary in (s, t)
    FormSpec omega{FormKind::omega, 3, 2};
    auto edge = [&](auto to_st, auto to_dir) {
        PathSpec p;
        p.t0 = 0.0;
        p.t1 = 1.0;
        p.steps = grid;
        for (std::size_t i = 0; i < 2; ++i) {
            p.value.push_back([&, i, to_st](double u) {
                auto [s, t] = to_st(u);
                return patch.value[i](s, t);
            });
            p.deriv.push_back([&, i, to_st, to_dir](double u) {
                auto [s, t] = to_st(u);
                auto [ws, wt] = to_dir();
                return ws * patch.ds[i](s, t) + wt * patch.dt[i](s, t);
            });
        }
        return path_integral(omega, p, 1e-10);
    };
    double dss = patch.s1 - patch.s0, dtt = patch.t1 - patch.t0;
    cd boundary = 0.0;
    boundary += edge([&](double u) { return std::pair(patch.s0 + dss * u, patch.t0); },
                     [&] { return std::pair(dss, 0.0); });
    boundary += edge([&](double u) { return std::pair(patch.s1, patch.t0 + dtt * u); },
                     [&] { return std::pair(0.0, dtt); });
    boundary += edge([&](double u) { return std::pair(patch.s1 - dss * u, patch.t1); },
                     [&] { return std::pair(-dss, 0.0); });
    boundary += edge([&](double u) { return std::pair(patch.s0, patch.t1 - dtt * u); },
                     [&] { return std::pair(0.0, -dtt); });

    return std::abs(area_val - boundary);
}

} // namespace mm
