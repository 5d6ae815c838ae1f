#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mm/identities.hpp"
#include "mm/laurent.hpp"

namespace {

using nlohmann::json;

struct Row {
    std::string command;
    std::string input;
    double value = 0.0;
    double error = 0.0;
    std::optional<double> closed_form;
    std::optional<bool> pass;
    unsigned long long seed = 0;
    long long samples = 0;
    long long wall_ms = 0;
    std::string method; // extra, JSON only
    std::string note;   // plain output only
};

json row_to_json(const Row& r) {
    json j;
    j["command"] = r.command;
    j["input"] = r.input;
    j["value"] = r.value;
    j["error"] = r.error;
    j["closed_form"] = r.closed_form ? json(*r.closed_form) : json(nullptr);
    j["pass"] = r.pass ? json(*r.pass) : json(nullptr);
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["wall_ms"] = r.wall_ms;
    if (!r.method.empty()) j["method"] = r.method;
    return j;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render(const std::vector<Row>& rows, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        if (rows.size() == 1) {
            os << row_to_json(rows[0]).dump(2) << "\n";
        } else {
            json arr = json::array();
            for (const auto& r : rows) arr.push_back(row_to_json(r));
            os << arr.dump(2) << "\n";
        }
    } else if (format == "csv") {
        os << "command,input,value,error,closed_form,pass,seed,samples,wall_ms\n";
        for (const auto& r : rows) {
            os << r.command << ',' << csv_quote(r.input) << ',';
            os.precision(17);
            os << r.value << ',' << r.error << ',';
            if (r.closed_form) os << *r.closed_form;
            os << ',';
            if (r.pass) os << (*r.pass ? "true" : "false");
            os << ',' << r.seed << ',' << r.samples << ',' << r.wall_ms << "\n";
        }
    } else {
        os.precision(12);
        for (const auto& r : rows) {
            os << r.command << "  " << r.input;
            if (!r.method.empty()) os << "  [" << r.method << "]";
            os << "\n  value = " << r.value;
            if (r.error > 0) os << "  +- " << r.error;
            if (r.closed_form) {
                os << "\n  closed form = " << *r.closed_form
                   << "  (diff " << std::abs(r.value - *r.closed_form) << ")";
            }
            if (r.pass) os << "\n  " << (*r.pass ? "PASS" : "FAIL");
            if (!r.note.empty()) os << "\n  " << r.note;
            os << "\n";
        }
    }
    return os.str();
}

int emit(const std::vector<Row>& rows, const std::string& format,
         const std::string& output) {
    std::string text = render(rows, format);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file: " << output << "\n";
            return 3;
        }
        f << text;
    }
    return 0;
}

long long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

unsigned long long default_seed() {
    const char* env = std::getenv("MM_SEED");
    if (!env) return 1;
    return std::stoull(env);
}

Row report_row(const std::string& command, const mm::VerificationReport& rep,
               long long wall) {
    Row row;
    row.command = command;
    row.input = rep.id;
    row.value = rep.numeric_value;
    row.error = rep.error_estimate;
    row.closed_form = rep.closed_value;
    row.pass = rep.pass;
    row.seed = rep.seed;
    row.samples = rep.samples_used;
    row.wall_ms = wall;
    row.method = rep.method;
    return row;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mahler measure calculator and identity verifier"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json", output;
    unsigned long long seed = 0;
    bool seed_given = false;
    long long samples = 0;
    int threads = 1;
    app.add_option("--format", format, "json, csv, or plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_option("--output", output, "write the result to this file");
    app.add_option("--seed", seed, "RNG seed (default: MM_SEED or 1)")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_option("--samples", samples, "sampling budget for MC/quasi-MC");
    app.add_option("--threads", threads, "worker threads (default 1)");

    auto* eval_cmd = app.add_subcommand("eval", "Mahler measure of a polynomial");
    std::string eval_poly, eval_method = "jensen", eval_var;
    eval_cmd->add_option("polynomial", eval_poly)->required();
    eval_cmd->add_option("--method", eval_method)
        ->check(CLI::IsMember({"jensen", "direct"}));
    eval_cmd->add_option("--var", eval_var, "Jensen reduction variable");

    auto* verify_cmd = app.add_subcommand("verify", "check registry identities");
    std::string verify_id, verify_method = "auto";
    bool verify_all = false;
    double verify_tol = 0.0;
    verify_cmd->add_flag("--all", verify_all);
    verify_cmd->add_option("--id", verify_id);
    verify_cmd->add_option("--method", verify_method);
    verify_cmd->add_option("--tol", verify_tol);

    auto* gmm_cmd = app.add_subcommand("gmm", "generalized measure of a family");
    std::string gmm_family = "1mx";
    int gmm_n = 1;
    bool gmm_direct_flag = false;
    double gmm_tol = 1e-6;
    gmm_cmd->add_option("--family", gmm_family);
    gmm_cmd->add_option("--n", gmm_n);
    gmm_cmd->add_flag("--direct", gmm_direct_flag, "also run the direct estimator");
    gmm_cmd->add_option("--tol", gmm_tol);

    auto* limit_cmd = app.add_subcommand("limit", "value vs log sup-norm by n");
    std::string limit_family = "1mx";
    int limit_max_n = 41;
    limit_cmd->add_option("--family", limit_family);
    limit_cmd->add_option("--max-n", limit_max_n);

    auto* relations_cmd =
        app.add_subcommand("relations", "residuals of the built-in relations");
    (void)relations_cmd;

    auto* supnorm_cmd = app.add_subcommand("supnorm", "sup norm on the torus");
    std::string supnorm_poly;
    supnorm_cmd->add_option("polynomial", supnorm_poly)->required();

    auto* list_cmd = app.add_subcommand("list", "registry identifiers");
    (void)list_cmd;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    mm::QuadratureConfig cfg;
    try {
        cfg.seed = seed_given ? seed : default_seed();
    } catch (const std::exception&) {
        std::cerr << "invalid MM_SEED\n";
        return 2;
    }
    if (samples > 0) cfg.total_samples = samples;
    cfg.threads = std::max(1, threads);

    try {
        if (eval_cmd->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            mm::LaurentPolynomial p;
            try {
                p = mm::parse(eval_poly);
            } catch (const mm::ParseError& e) {
                std::cerr << "parse error at position " << e.position << ": "
                          << e.what() << "\n";
                return 2;
            }
            mm::MeasureResult r;
            if (eval_method == "direct") {
                r = mm::mahler_direct(p, cfg);
            } else {
                std::string var = eval_var;
                if (var.empty()) {
                    if (p.vars().empty()) var = "x";
                    else var = p.vars().back();
                }
                r = mm::mahler_jensen_reduced(p, var, cfg);
            }
            if (!std::isfinite(r.value)) {
                std::cerr << "numeric failure: non-finite result\n";
                return 3;
            }
            Row row;
            row.command = "eval";
            row.input = eval_poly;
            row.value = r.value;
            row.error = r.error_estimate;
            row.seed = cfg.seed;
            row.samples = r.samples_used;
            row.wall_ms = elapsed_ms(t0);
            row.method = r.method;
            return emit({row}, format, output);
        }

        if (verify_cmd->parsed()) {
            if (!verify_all && verify_id.empty()) {
                std::cerr << "verify: need --all or --id NAME\n";
                return 2;
            }
            std::vector<std::string> ids;
            if (verify_all) {
                for (const auto& rec : mm::registry()) ids.push_back(rec.id);
            } else {
                ids.push_back(verify_id);
            }
            mm::VerifyMethod method;
            try {
                method = mm::verify_method_from_string(verify_method);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
            std::vector<Row> rows;
            bool all_pass = true;
            for (const auto& id : ids) {
                auto t0 = std::chrono::steady_clock::now();
                mm::VerificationReport rep;
                try {
                    rep = mm::verify(id, method, cfg, verify_tol);
                } catch (const std::out_of_range& e) {
                    std::cerr << e.what() << "\n";
                    return 2;
                }
                all_pass = all_pass && rep.pass;
                rows.push_back(report_row("verify", rep, elapsed_ms(t0)));
            }
            int rc = emit(rows, format, output);
            if (rc != 0) return rc;
            return all_pass ? 0 : 1;
        }

        if (gmm_cmd->parsed()) {
            if (gmm_n < 1) {
                std::cerr << "gmm: n must be >= 1\n";
                return 2;
            }
            mm::Family fam;
            try {
                fam = mm::family_from_string(gmm_family);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
            std::string input = mm::family_to_string(fam) + " n=" + std::to_string(gmm_n);
            double closed = mm::closed_family(fam, gmm_n);
            std::vector<Row> rows;
            bool all_pass = true;
            {
                auto t0 = std::chrono::steady_clock::now();
                mm::MeasureResult r = mm::gmm_order_stat(mm::family_profile(fam), gmm_n, cfg);
                Row row;
                row.command = "gmm";
                row.input = input;
                row.value = r.value;
                row.error = r.error_estimate;
                row.closed_form = closed;
                row.pass = std::abs(r.value - closed) <= gmm_tol;
                row.seed = cfg.seed;
                row.samples = r.samples_used;
                row.wall_ms = elapsed_ms(t0);
                row.method = r.method;
                all_pass = all_pass && *row.pass;
                rows.push_back(row);
            }
            if (gmm_direct_flag) {
                auto t0 = std::chrono::steady_clock::now();
                mm::MeasureResult r = mm::gmm_direct_family(fam, gmm_n, cfg);
                Row row;
                row.command = "gmm";
                row.input = input;
                row.value = r.value;
                row.error = r.error_estimate;
                row.closed_form = closed;
                row.pass = std::abs(r.value - closed) <= 4.0 * r.error_estimate + gmm_tol;
                row.seed = cfg.seed;
                row.samples = r.samples_used;
                row.wall_ms = elapsed_ms(t0);
                row.method = r.method;
                all_pass = all_pass && *row.pass;
                rows.push_back(row);
            }
            int rc = emit(rows, format, output);
            if (rc != 0) return rc;
            return all_pass ? 0 : 1;
        }

        if (limit_cmd->parsed()) {
            if (limit_max_n < 1) {
                std::cerr << "limit: max-n must be >= 1\n";
                return 2;
            }
            mm::Family fam;
            try {
                fam = mm::family_from_string(limit_family);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
            double sup = mm::family_log_sup_norm(fam);
            std::vector<Row> rows;
            for (int n = 1; n <= limit_max_n; ++n) {
                Row row;
                row.command = "limit";
                row.input = mm::family_to_string(fam) + " n=" + std::to_string(n);
                row.value = mm::closed_family(fam, n);
                row.seed = cfg.seed;
                if (std::isfinite(sup)) {
                    row.closed_form = sup;
                    row.pass = row.value < sup;
                    std::ostringstream note;
                    note.precision(12);
                    note << "log sup norm = " << sup << ", gap = " << sup - row.value;
                    row.note = note.str();
                } else {
                    row.note = "log sup norm infinite";
                }
                rows.push_back(row);
            }
            return emit(rows, format, output);
        }

        if (relations_cmd->parsed()) {
            std::vector<Row> rows;
            bool all_pass = true;
            for (const auto& rel : mm::builtin_relations()) {
                auto t0 = std::chrono::steady_clock::now();
                mm::VerificationReport rep = mm::verify(rel.id, mm::VerifyMethod::automatic, cfg);
                all_pass = all_pass && rep.pass;
                rows.push_back(report_row("relations", rep, elapsed_ms(t0)));
            }
            int rc = emit(rows, format, output);
            if (rc != 0) return rc;
            return all_pass ? 0 : 1;
        }

        if (supnorm_cmd->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            mm::LaurentPolynomial p;
            try {
                p = mm::parse(supnorm_poly);
            } catch (const mm::ParseError& e) {
                std::cerr << "parse error at position " << e.position << ": "
                          << e.what() << "\n";
                return 2;
            }
            auto [value, theta] = mm::sup_norm(p);
            Row row;
            row.command = "supnorm";
            row.input = supnorm_poly;
            row.value = value;
            row.seed = cfg.seed;
            row.wall_ms = elapsed_ms(t0);
            std::ostringstream note;
            note.precision(12);
            note << "argmax theta = (";
            for (std::size_t i = 0; i < theta.size(); ++i)
                note << (i ? ", " : "") << theta[i];
            note << ")";
            row.note = note.str();
            return emit({row}, format, output);
        }

        if (list_cmd->parsed()) {
            if (format == "json") {
                json arr = json::array();
                for (const auto& rec : mm::registry()) arr.push_back(rec.to_json());
                std::string text = arr.dump(2) + "\n";
                if (output.empty()) {
                    std::cout << text;
                } else {
                    std::ofstream f(output, std::ios::binary);
                    f << text;
                }
            } else {
                std::ostringstream os;
                for (const auto& rec : mm::registry()) os << rec.id << "\n";
                if (output.empty()) {
                    std::cout << os.str();
                } else {
                    std::ofstream f(output, std::ios::binary);
                    f << os.str();
                }
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
