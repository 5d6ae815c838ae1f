#include "mm/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mm/forms.hpp"
#include "mm/quadrature.hpp"
#include "mm/special.hpp"

namespace mm {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

std::string op_name(ClosedForm::Op op) {
    switch (op) {
        case ClosedForm::Op::rat: return "rat";
        case ClosedForm::Op::pi: return "pi";
        case ClosedForm::Op::sqrt5: return "sqrt5";
        case ClosedForm::Op::log: return "log";
        case ClosedForm::Op::zeta: return "zeta";
        case ClosedForm::Op::beta: return "beta";
        case ClosedForm::Op::li: return "li";
        case ClosedForm::Op::zagl: return "zagl";
        case ClosedForm::Op::add: return "add";
        case ClosedForm::Op::mul: return "mul";
        case ClosedForm::Op::div: return "div";
        case ClosedForm::Op::pow: return "pow";
        case ClosedForm::Op::neg: return "neg";
    }
    return "?";
}

ClosedForm::Op op_from_name(const std::string& s) {
    for (auto op : {ClosedForm::Op::rat, ClosedForm::Op::pi, ClosedForm::Op::sqrt5,
                    ClosedForm::Op::log, ClosedForm::Op::zeta, ClosedForm::Op::beta,
                    ClosedForm::Op::li, ClosedForm::Op::zagl, ClosedForm::Op::add,
                    ClosedForm::Op::mul, ClosedForm::Op::div, ClosedForm::Op::pow,
                    ClosedForm::Op::neg})
        if (op_name(op) == s) return op;
    throw std::invalid_argument("ClosedForm: unknown op " + s);
}

} // namespace

double ClosedForm::eval() const {
    switch (op) {
        case Op::rat: return to_double(value);
        case Op::pi: return kPi;
        case Op::sqrt5: return std::sqrt(5.0);
        case Op::log: return std::log(args[0].eval());
        case Op::zeta: return mm::zeta(order);
        case Op::beta: return dirichlet_beta(order);
        case Op::li: return mm::li(order, cd(args[0].eval())).real();
        case Op::zagl: return zagier_L(order, cd(args[0].eval()));
        case Op::add: {
            double s = 0.0;
            for (const auto& a : args) s += a.eval();
            return s;
        }
        case Op::mul: {
            double p = 1.0;
            for (const auto& a : args) p *= a.eval();
            return p;
        }
        case Op::div: return args[0].eval() / args[1].eval();
        case Op::pow: return std::pow(args[0].eval(), order);
        case Op::neg: return -args[0].eval();
    }
    throw std::logic_error("ClosedForm::eval");
}

std::string ClosedForm::str() const {
    switch (op) {
        case Op::rat: return value.str();
        case Op::pi: return "pi";
        case Op::sqrt5: return "sqrt(5)";
        case Op::log: return "log(" + args[0].str() + ")";
        case Op::zeta: return "zeta(" + std::to_string(order) + ")";
        case Op::beta: return "beta(" + std::to_string(order) + ")";
        case Op::li: return "Li_" + std::to_string(order) + "(" + args[0].str() + ")";
        case Op::zagl: return "L_" + std::to_string(order) + "(" + args[0].str() + ")";
        case Op::add: {
            std::string s = "(";
            for (std::size_t i = 0; i < args.size(); ++i)
                s += (i ? " + " : "") + args[i].str();
            return s + ")";
        }
        case Op::mul: {
            std::string s;
            for (std::size_t i = 0; i < args.size(); ++i)
                s += (i ? " * " : "") + args[i].str();
            return s;
        }
        case Op::div: return args[0].str() + " / " + args[1].str();
        case Op::pow: return args[0].str() + "^" + std::to_string(order);
        case Op::neg: return "-(" + args[0].str() + ")";
    }
    return "?";
}

nlohmann::json ClosedForm::to_json() const {
    nlohmann::json j;
    j["op"] = op_name(op);
    if (op == Op::rat) j["value"] = value.str();
    if (op == Op::zeta || op == Op::beta || op == Op::li || op == Op::zagl ||
        op == Op::pow)
        j["order"] = order;
    if (!args.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& a : args) arr.push_back(a.to_json());
        j["args"] = arr;
    }
    return j;
}

ClosedForm ClosedForm::from_json(const nlohmann::json& j) {
    ClosedForm f;
    f.op = op_from_name(j.at("op").get<std::string>());
    if (f.op == Op::rat) f.value = Rational(j.at("value").get<std::string>());
    if (j.contains("order")) f.order = j.at("order").get<int>();
    if (j.contains("args"))
        for (const auto& a : j.at("args")) f.args.push_back(from_json(a));
    return f;
}

ClosedForm ClosedForm::rat(const Rational& r) {
    ClosedForm f;
    f.value = r;
    return f;
}
ClosedForm ClosedForm::integer(long long n) { return rat(Rational(n)); }
ClosedForm ClosedForm::pi_const() { return {Op::pi, 0, 0, {}}; }
ClosedForm ClosedForm::sqrt5_const() { return {Op::sqrt5, 0, 0, {}}; }
ClosedForm ClosedForm::zeta_of(int k) { return {Op::zeta, 0, k, {}}; }
ClosedForm ClosedForm::beta_of(int s) { return {Op::beta, 0, s, {}}; }
ClosedForm ClosedForm::log_of(ClosedForm a) { return {Op::log, 0, 0, {std::move(a)}}; }
ClosedForm ClosedForm::li_of(int n, ClosedForm a) { return {Op::li, 0, n, {std::move(a)}}; }
ClosedForm ClosedForm::zagl_of(int n, ClosedForm a) { return {Op::zagl, 0, n, {std::move(a)}}; }
ClosedForm ClosedForm::sum(std::vector<ClosedForm> a) { return {Op::add, 0, 0, std::move(a)}; }
ClosedForm ClosedForm::product(std::vector<ClosedForm> a) { return {Op::mul, 0, 0, std::move(a)}; }
ClosedForm ClosedForm::quotient(ClosedForm a, ClosedForm b) {
    return {Op::div, 0, 0, {std::move(a), std::move(b)}};
}
ClosedForm ClosedForm::power(ClosedForm a, int k) { return {Op::pow, 0, k, {std::move(a)}}; }
ClosedForm ClosedForm::negate(ClosedForm a) { return {Op::neg, 0, 0, {std::move(a)}}; }

double relation_residual(const RelationSpec& rel,
                         const std::vector<std::pair<cd, cd>>& pts) {
    std::vector<std::pair<cd, cd>> samples = pts;
    if (!rel.pointwise || samples.empty()) samples = {{cd(0.0), cd(0.0)}};
    double worst = 0.0;
    for (const auto& [x, y] : samples) {
        if (rel.admissible && !rel.admissible(x, y)) continue;
        double s = 0.0;
        for (const auto& term : rel.terms)
            s += to_double(term.coeff) * zagier_L(rel.order, term.arg(x, y));
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

const std::vector<RelationSpec>& builtin_relations() {
    static const std::vector<RelationSpec> rels = [] {
        auto c = [](cd v) { return [v](cd, cd) { return v; }; };
        std::vector<RelationSpec> out;

        // 2 L3(3) - L3(-3) = (13/6) zeta(3)
        out.push_back({"rel_eq22", 3,
                       {{Rational(2), c(3.0)},
                        {Rational(-1), c(-3.0)},
                        {Rational(-13, 6), c(1.0)}}});
        // 4{3} + 2{1/3} - 3{-1/3} + 6{-1} - 2{1} = 0
        out.push_back({"rel_22term", 3,
                       {{Rational(4), c(3.0)},
                        {Rational(2), c(cd(1.0 / 3.0))},
                        {Rational(-3), c(cd(-1.0 / 3.0))},
                        {Rational(6), c(-1.0)},
                        {Rational(-2), c(1.0)}}});
        // L3(-1) = -(3/4) zeta(3)
        out.push_back({"rel_minus1", 3,
                       {{Rational(1), c(-1.0)}, {Rational(3, 4), c(1.0)}}});
        // L3(2) = (7/8) zeta(3)
        out.push_back({"rel_two", 3,
                       {{Rational(1), c(2.0)}, {Rational(-7, 8), c(1.0)}}});
        // {phi}_3 + {-phi}_3 = (1/5){1}_3, phi the golden ratio
        double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        out.push_back({"rel_golden", 3,
                       {{Rational(1), c(golden)},
                        {Rational(1), c(-golden)},
                        {Rational(-1, 5), c(1.0)}}});
        // five-term relation of the Bloch-Wigner dilogarithm
        RelationSpec five;
        five.id = "rel_five_term";
        five.order = 2;
        five.pointwise = true;
        five.terms = {
            {Rational(1), [](cd x, cd) { return x; }},
            {Rational(1), [](cd x, cd y) { return cd(1.0) - x * y; }},
            {Rational(1), [](cd, cd y) { return y; }},
            {Rational(1), [](cd x, cd y) { return (cd(1.0) - y) / (cd(1.0) - x * y); }},
            {Rational(1), [](cd x, cd y) { return (cd(1.0) - x) / (cd(1.0) - x * y); }}};
        five.admissible = [](cd x, cd y) {
            return std::abs(x) > 0.05 && std::abs(y) > 0.05 &&
                   std::abs(cd(1.0) - x * y) > 0.05;
        };
        out.push_back(std::move(five));
        // L3(x) + L3(1-x) + L3(1 - 1/x) = zeta(3)
        RelationSpec three;
        three.id = "rel_l3_three";
        three.order = 3;
        three.pointwise = true;
        three.terms = {{Rational(1), [](cd x, cd) { return x; }},
                       {Rational(1), [](cd x, cd) { return cd(1.0) - x; }},
                       {Rational(1), [](cd x, cd) { return cd(1.0) - cd(1.0) / x; }},
                       {Rational(-1), [](cd, cd) { return cd(1.0); }}};
        three.admissible = [](cd x, cd) {
            return std::abs(x) > 0.08 && std::abs(cd(1.0) - x) > 0.08;
        };
        out.push_back(std::move(three));
        return out;
    }();
    return rels;
}

namespace {

const RelationSpec& relation_by_id(const std::string& id) {
    for (const auto& r : builtin_relations())
        if (r.id == id) return r;
    throw std::out_of_range("unknown relation: " + id);
}

ClosedForm zeta3_over_pi2(long long num, long long den) {
    return ClosedForm::product(
        {ClosedForm::rat(Rational(num, den)),
         ClosedForm::quotient(ClosedForm::zeta_of(3),
                              ClosedForm::power(ClosedForm::pi_const(), 2))});
}

ClosedForm golden_ratio_cf() {
    return ClosedForm::quotient(
        ClosedForm::sum({ClosedForm::integer(1), ClosedForm::sqrt5_const()}),
        ClosedForm::integer(2));
}

IdentityRecord mahler_record(std::string id, std::string input, std::string var,
                             ClosedForm cf, std::string source, double tol,
                             long long samples = 0) {
    IdentityRecord r;
    r.id = std::move(id);
    r.kind = IdentityKind::mahler;
    r.input = std::move(input);
    r.reduce_var = std::move(var);
    r.closed_form = std::move(cf);
    r.source = std::move(source);
    r.tolerance = tol;
    r.default_samples = samples;
    return r;
}

IdentityRecord gmm_record(std::string id, Family f, int n, ClosedForm cf,
                          std::string source, double tol) {
    IdentityRecord r;
    r.id = std::move(id);
    r.kind = IdentityKind::gmm;
    r.input = family_to_string(f) + ", n = " + std::to_string(n);
    r.family = {f, n};
    r.closed_form = std::move(cf);
    r.source = std::move(source);
    r.tolerance = tol;
    return r;
}

IdentityRecord relation_record(const std::string& rel_id) {
    IdentityRecord r;
    r.id = rel_id;
    r.kind = IdentityKind::polylog_relation;
    r.input = rel_id;
    r.closed_form = ClosedForm::integer(0);
    r.source = "polylogarithm functional equation";
    r.tolerance = 1e-10;
    return r;
}

} // namespace

const std::vector<IdentityRecord>& registry() {
    static const std::vector<IdentityRecord> recs = [] {
        std::vector<IdentityRecord> out;
        out.push_back(mahler_record("smyth_xyz", "1+x+y+z", "z",
                                    zeta3_over_pi2(7, 2), "Smyth (1981)", 1e-5));
        out.push_back(mahler_record("smyth2", "1+x+y^-1-(1+x+y)*z", "z",
                                    zeta3_over_pi2(14, 3), "Smyth (2002)", 1e-4));
        out.push_back(mahler_record("lalin_4_3", "(1-x)*(1-y)+(1+x)*(1+y)*z", "z",
                                    zeta3_over_pi2(7, 1), "Lalin (2003)", 1e-4));
        out.push_back(mahler_record(
            "lalin_log2", "1+x+2*y+(1-x)*z", "z",
            ClosedForm::sum({zeta3_over_pi2(7, 2),
                             ClosedForm::product({ClosedForm::rat(Rational(1, 2)),
                                                  ClosedForm::log_of(
                                                      ClosedForm::integer(2))})}),
            "Lalin (2003)", 1e-4));
        out.push_back(mahler_record("condon", "(1-y)*(1+x)+(1-x)*z", "z",
                                    zeta3_over_pi2(28, 5), "Condon (2003)", 1e-4));
        out.push_back(mahler_record(
            "fourvar", "(1+y)*(1-w)*z+(1+x)*(1+w)", "z",
            ClosedForm::product(
                {ClosedForm::integer(24),
                 ClosedForm::quotient(ClosedForm::beta_of(4),
                                      ClosedForm::power(ClosedForm::pi_const(), 3))}),
            "Lalin (2006)", 5e-3, 10'000'000));

        out.push_back(gmm_record("gmm_ratio_2", Family::ratio, 2,
                                 zeta3_over_pi2(7, 1), "Lalin (2006)", 1e-8));
        out.push_back(gmm_record("gmm_golden_1", Family::golden, 1,
                                 ClosedForm::log_of(golden_ratio_cf()),
                                 "Lalin (2006)", 1e-8));
        ClosedForm phi2 = ClosedForm::quotient(
            ClosedForm::sum({ClosedForm::integer(3),
                             ClosedForm::negate(ClosedForm::sqrt5_const())}),
            ClosedForm::integer(2));
        out.push_back(gmm_record(
            "gmm_golden_2", Family::golden, 2,
            ClosedForm::sum(
                {ClosedForm::product(
                     {ClosedForm::integer(2),
                      ClosedForm::quotient(
                          ClosedForm::sum({ClosedForm::li_of(3, phi2),
                                           ClosedForm::negate(ClosedForm::li_of(
                                               3, ClosedForm::negate(phi2)))}),
                          ClosedForm::power(ClosedForm::pi_const(), 2))}),
                 ClosedForm::log_of(golden_ratio_cf())}),
            "Lalin (2006)", 1e-8));
        out.push_back(gmm_record("gmm_1mx_2", Family::one_minus_x, 2,
                                 zeta3_over_pi2(7, 2), "Lalin (2006)", 1e-8));
        out.push_back(gmm_record("gmm_1mx_3", Family::one_minus_x, 3,
                                 zeta3_over_pi2(9, 2), "Lalin (2006)", 1e-8));

        IdentityRecord lim;
        lim.id = "limit_log2";
        lim.kind = IdentityKind::series;
        lim.input = "partial sums of the alternating zeta series, m = 64";
        lim.series_m = 64;
        lim.closed_form = ClosedForm::log_of(ClosedForm::integer(2));
        lim.source = "limit of the max-of-n measures of 1 - x";
        lim.tolerance = 1e-3;
        out.push_back(std::move(lim));

        for (const auto& rel : builtin_relations())
            out.push_back(relation_record(rel.id));
        return out;
    }();
    return recs;
}

const IdentityRecord& lookup(const std::string& id) {
    for (const auto& r : registry())
        if (r.id == id) return r;
    throw std::out_of_range("unknown identity: " + id);
}

VerifyMethod verify_method_from_string(const std::string& s) {
    if (s == "auto" || s.empty()) return VerifyMethod::automatic;
    if (s == "jensen") return VerifyMethod::jensen;
    if (s == "direct") return VerifyMethod::direct;
    if (s == "order_stat") return VerifyMethod::order_stat;
    if (s == "closed_only") return VerifyMethod::closed_only;
    throw std::invalid_argument("unknown method: " + s);
}

std::string verify_method_to_string(VerifyMethod m) {
    switch (m) {
        case VerifyMethod::automatic: return "auto";
        case VerifyMethod::jensen: return "jensen";
        case VerifyMethod::direct: return "direct";
        case VerifyMethod::order_stat: return "order_stat";
        case VerifyMethod::closed_only: return "closed_only";
    }
    return "?";
}

nlohmann::json IdentityRecord::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    switch (kind) {
        case IdentityKind::mahler: j["kind"] = "mahler"; break;
        case IdentityKind::gmm: j["kind"] = "gmm"; break;
        case IdentityKind::polylog_relation: j["kind"] = "polylog_relation"; break;
        case IdentityKind::series: j["kind"] = "series"; break;
    }
    j["input"] = input;
    if (!reduce_var.empty()) j["reduce_var"] = reduce_var;
    if (kind == IdentityKind::gmm) {
        j["family"] = family_to_string(family.family);
        j["n"] = family.n;
    }
    j["closed_form"] = closed_form.to_json();
    j["closed_form_value"] = closed_form.eval();
    j["source"] = source;
    j["tolerance"] = tolerance;
    return j;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["value"] = numeric_value;
    j["closed_form"] = closed_value;
    j["abs_diff"] = abs_diff;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    j["method"] = method;
    j["error"] = error_estimate;
    j["samples"] = samples_used;
    j["seed"] = seed;
    return j;
}

VerificationReport verify(const std::string& id, VerifyMethod method,
                          const QuadratureConfig& cfg, double tol) {
    const IdentityRecord& rec = lookup(id);
    QuadratureConfig local = cfg;
    if (rec.default_samples > 0 &&
        local.total_samples == QuadratureConfig{}.total_samples)
        local.total_samples = rec.default_samples;

    VerificationReport rep;
    rep.id = id;
    rep.tolerance = tol > 0 ? tol : rec.tolerance;
    rep.closed_value = rec.closed_form.eval();
    rep.seed = local.seed;
    local.target_abs_error = std::min(local.target_abs_error, rep.tolerance / 10.0);

    switch (rec.kind) {
        case IdentityKind::mahler: {
            if (method == VerifyMethod::automatic) method = VerifyMethod::jensen;
            if (method == VerifyMethod::order_stat)
                throw std::invalid_argument("verify: order_stat needs a gmm record");
            if (method == VerifyMethod::closed_only) {
                rep.numeric_value = rep.closed_value;
            } else {
                LaurentPolynomial p = parse(rec.input);
                MeasureResult r = method == VerifyMethod::jensen
                                      ? mahler_jensen_reduced(p, rec.reduce_var, local)
                                      : mahler_direct(p, local);
                rep.numeric_value = r.value;
                rep.error_estimate = r.error_estimate;
                rep.samples_used = r.samples_used;
            }
            break;
        }
        case IdentityKind::gmm: {
            if (method == VerifyMethod::automatic) method = VerifyMethod::order_stat;
            if (method == VerifyMethod::jensen)
                throw std::invalid_argument("verify: jensen needs a mahler record");
            if (method == VerifyMethod::closed_only) {
                // the series evaluation is still independent of the polylog tree
                rep.numeric_value = closed_family(rec.family.family, rec.family.n);
            } else if (method == VerifyMethod::order_stat) {
                MeasureResult r =
                    gmm_order_stat(family_profile(rec.family.family), rec.family.n, local);
                rep.numeric_value = r.value;
                rep.error_estimate = r.error_estimate;
                rep.samples_used = r.samples_used;
            } else {
                MeasureResult r = gmm_direct_family(rec.family.family, rec.family.n, local);
                rep.numeric_value = r.value;
                rep.error_estimate = r.error_estimate;
                rep.samples_used = r.samples_used;
            }
            break;
        }
        case IdentityKind::series: {
            rep.numeric_value = limit_series(rec.series_m);
            break;
        }
        case IdentityKind::polylog_relation: {
            const RelationSpec& rel = relation_by_id(rec.input);
            std::vector<std::pair<cd, cd>> pts;
            if (rel.pointwise) {
                std::mt19937_64 rng(local.seed + std::hash<std::string>{}(rel.id));
                std::uniform_real_distribution<double> U(-2.0, 2.0);
                while (pts.size() < 100) {
                    cd x(U(rng), U(rng)), y(U(rng), U(rng));
                    if (!rel.admissible || rel.admissible(x, y)) pts.emplace_back(x, y);
                }
            }
            rep.numeric_value = relation_residual(rel, pts);
            rep.closed_value = 0.0;
            rep.samples_used = static_cast<long long>(pts.size());
            break;
        }
    }
    rep.method = verify_method_to_string(method);
    rep.abs_diff = std::abs(rep.numeric_value - rep.closed_value);
    rep.pass = rep.abs_diff <= rep.tolerance && std::isfinite(rep.numeric_value);
    return rep;
}

double log2_block(const QuadratureConfig& cfg) {
    auto eta_coeff = [](double a, double b) {
        cd x = std::exp(cd(0.0, a)), y = std::exp(cd(0.0, b));
        cd xa = cd(0.0, 1.0) * x, yb = cd(0.0, 1.0) * y;
        cd num = cd(1.0) + x + 2.0 * x * y, den = cd(1.0) - x;
        cd z = num / den;
        cd za = (xa * (cd(1.0) + 2.0 * y) * den + num * xa) / (den * den);
        cd zb = 2.0 * x * yb / den;
        std::vector<Jet> jets(3);
        jets[0] = {cd(2.0), {cd(0.0), cd(0.0)}};
        jets[1] = {x, {xa, cd(0.0)}};
        jets[2] = {z, {za, zb}};
        return eval_eta_nn(jets).real();
    };
    auto inner = [&](double a) {
        double lo = std::max(-kPi, -kPi - a), hi = std::min(kPi, kPi - a);
        return integrate_adaptive([&](double b) { return -eta_coeff(a, b); }, lo, hi,
                                  1e-8, 22, 15)
            .value;
    };
    double tol = std::min(cfg.target_abs_error, 1e-4) * kPi * kPi;
    double v = integrate_adaptive(inner, -kPi, 0.0, tol, 18, 15).value +
               integrate_adaptive(inner, 0.0, kPi, tol, 18, 15).value;
    return v / (2.0 * kPi * kPi);
}

double tail_sum(int l, double lambda) {
    if (l < 1 || lambda <= 0.0 || lambda >= 1.0)
        throw std::invalid_argument("tail_sum: need l >= 1, 0 < lambda < 1");
    double total = 0.0;
    double binom = 1.0; // C(k, l) maintained incrementally
    double lk = std::pow(lambda, l);
    for (int k = l; k < 100000; ++k) {
        double term = binom * lk / k;
        total += term;
        if (term < 1e-18 * (1.0 + std::abs(total)) && k > l + 8) break;
        binom *= static_cast<double>(k + 1) / (k + 1 - l);
        lk *= lambda;
    }
    return total;
}

double tail_closed(int l, double lambda) {
    return std::pow(lambda, l) / (l * std::pow(1.0 - lambda, l));
}

double inner_constant() {
    // 2 sum (1-(-1)^l)/l^2 = 4 sum_{m>=0} (2m+1)^{-2}; tail by Euler-Maclaurin
    const int M = 20000;
    double s = 0.0;
    for (int m = M - 1; m >= 0; --m) s += 4.0 / ((2.0 * m + 1.0) * (2.0 * m + 1.0));
    double w = 2.0 * M + 1.0;
    s += 2.0 / w + 2.0 / (w * w) + 4.0 / (3.0 * w * w * w);
    return s;
}

} // namespace mm
