#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "mm/rational.hpp"

namespace mm {

/// A coordinate value together with its first derivatives along each
/// parameter direction of the path/patch it lives on.
struct Jet {
    std::complex<double> value;
    std::vector<std::complex<double>> d;
};

/// Parametrized path t -> (x_1(t), ..., x_m(t)); each coordinate is supplied
/// as a (value, derivative) pair of callables. Forms never difference the
/// values themselves; validate_path cross-checks the derivatives once.
struct PathSpec {
    std::vector<std::function<std::complex<double>(double)>> value;
    std::vector<std::function<std::complex<double>(double)>> deriv;
    double t0 = 0.0;
    double t1 = 1.0;
    int steps = 64;
};

/// Rectangular patch (s,t) -> (x_1(s,t), ...) with both partial derivatives.
struct PatchSpec {
    std::vector<std::function<std::complex<double>(double, double)>> value;
    std::vector<std::function<std::complex<double>(double, double)>> ds;
    std::vector<std::function<std::complex<double>(double, double)>> dt;
    double s0 = 0.0;
    double s1 = 1.0;
    double t0 = 0.0;
    double t1 = 1.0;
    int grid = 16;
};

enum class FormKind { eta_nn, eta_nl, eta2, eta3, omega };

struct FormSpec {
    FormKind kind = FormKind::eta2;
    int n = 2;
    int l = 2;
};

/// Number of coordinate slots the form consumes. For eta_nl (and omega) the
/// first slot is the class argument x, followed by the l-1 wedge arguments.
int form_arity(const FormSpec& form);

/// Exact Bernoulli-weighted coefficient from the eta_n(l) correction block.
Rational beta_kp(int k, int p);

/// eta_n(n) at a point: n = xs.size(), each jet carrying n-1 derivatives.
/// Returns the coefficient of ds_1 ^ ... ^ ds_{n-1}.
std::complex<double> eval_eta_nn(const std::vector<Jet>& xs);

/// eta_n(l) for l < n: x is the class argument, xs the l-1 wedge arguments,
/// each jet carrying l-1 derivatives. l = 1 returns the 0-form Lhat_n(x).
std::complex<double> eval_eta_nl(int n, const Jet& x, const std::vector<Jet>& xs);

/// Dispatch on FormSpec; for eta_nl/omega xs[0] is the class argument.
std::complex<double> eval_form(const FormSpec& form, const std::vector<Jet>& xs);

/// Checks every coordinate derivative against finite differences (1e-6) and
/// that no coordinate vanishes on a sampled grid; returns the interior
/// parameter values where some coordinate crosses the negative real axis
/// (integration is split there so arg never jumps inside a panel).
std::vector<double> validate_path(const PathSpec& path);

/// Composite Gauss line integral of a 1-form along the path, panels doubled
/// until successive refinements agree to tol.
std::complex<double> path_integral(const FormSpec& form, const PathSpec& path,
                                   double tol = 1e-9);

/// |double integral of eta_3(3)(x, 1-x, y) over the patch minus the boundary
/// integral of omega(x, y)|; the patch supplies the two coordinates x, y.
double stokes_residual(const PatchSpec& patch);

} // namespace mm
