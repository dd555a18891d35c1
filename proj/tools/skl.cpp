// skl: command-line front end for the lambda-Bernstein-Schurer-Kantorovich operators.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skl/analysis.hpp"
#include "skl/bivariate.hpp"
#include "skl/csv.hpp"
#include "skl/expression.hpp"
#include "skl/operator.hpp"
#include "skl/report.hpp"
#include "skl/svg.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verify_failed = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OperatorFlags {
    int m = 20;
    std::vector<int> m_list;
    int q = 5;
    double lambda = 0.5;
    double rho = 0.1;
    std::string f = "table1-poly";
    std::string grid;
    std::string out;
    std::string format = "csv";
    bool unchecked = false;
    double u = -1.0;
};

void add_operator_flags(CLI::App* cmd, OperatorFlags& o) {
    cmd->add_option("--m", o.m, "degree parameter m >= 2");
    cmd->add_option("--m-list", o.m_list, "comma-separated list of m")->delimiter(',');
    cmd->add_option("--q", o.q, "Schurer shift q >= 0");
    cmd->add_option("--lambda", o.lambda, "shape parameter in [0,1]");
    cmd->add_option("--rho", o.rho, "Kantorovich exponent > 0");
    cmd->add_option("--f", o.f, "table1-poly | fig3-poly | e<k> | const:<c> | expression");
    cmd->add_option("--grid", o.grid, "LO:HI:COUNT");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--format", o.format, "csv | svg | both")->check(CLI::IsMember({"csv", "svg", "both"}));
    cmd->add_flag("--unchecked", o.unchecked, "allow lambda and points outside [0,1]");
}

skl::OperatorConfig config_from(const OperatorFlags& o, int m) {
    return skl::make_config(m, o.q, o.lambda, o.rho, o.unchecked);
}

skl::Grid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("--grid expects LO:HI:COUNT");
    try {
        return skl::Grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
    } catch (const std::invalid_argument&) {
        throw UsageError("--grid expects numbers, got " + text);
    }
}

std::string num(double v) { return skl::format_number(v); }

void emit(const skl::CsvTable& table, const std::string& out) {
    if (out.empty())
        std::cout << table.to_string();
    else
        table.write(out);
}

std::string with_extension(const std::string& base, const std::string& ext) {
    const auto dot = base.find_last_of('.');
    const auto slash = base.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return base.substr(0, dot) + ext;
    return base + ext;
}

bool wants_csv(const std::string& f) { return f == "csv" || f == "both"; }
bool wants_svg(const std::string& f) { return f == "svg" || f == "both"; }

// ---------------------------------------------------------------------------

int run_eval(const OperatorFlags& o) {
    const auto cfg = config_from(o, o.m);
    const auto f = skl::resolve_function(o.f);
    const skl::BoundOperator op(cfg, f);
    if (o.grid.empty()) {
        if (o.u < 0.0 && !o.unchecked) throw UsageError("eval needs --u or --grid");
        std::cout << "K = " << num(op(o.u)) << "\n"
                  << "f = " << num(f(o.u)) << "\n"
                  << "error = " << num(std::abs(op(o.u) - f(o.u))) << "\n";
        return exit_ok;
    }
    const auto grid = parse_grid(o.grid);
    skl::CsvTable t{{"x", "K", "f", "error"}, {}};
    for (double x : grid.points()) {
        const double k = op(x), fx = f(x);
        t.rows.push_back({x, k, fx, std::abs(k - fx)});
    }
    emit(t, o.out);
    return exit_ok;
}

int run_moments(const OperatorFlags& o) {
    const auto cfg = config_from(o, o.m);
    auto row = [&](double u) {
        const auto raw = skl::moments_closed(cfg, u);
        const auto c = skl::central_moments(cfg, u);
        return std::vector<double>{u,          raw.e0,        raw.oracle_e0, raw.e1,       raw.oracle_e1,
                                   raw.e2,     raw.oracle_e2, c.psi1,        c.oracle_psi1, c.psi2,
                                   c.oracle_psi2, raw.max_discrepancy};
    };
    const std::vector<std::string> header{"u",      "e0_closed",   "e0_oracle",   "e1_closed",
                                          "e1_oracle", "e2_closed", "e2_oracle",  "psi1_closed",
                                          "psi1_oracle", "psi2_closed", "psi2_oracle", "max_discrepancy"};
    if (o.grid.empty()) {
        if (o.u < 0.0 && !o.unchecked) throw UsageError("moments needs --u or --grid");
        const auto r = row(o.u);
        for (std::size_t i = 0; i < header.size(); ++i) std::cout << header[i] << " = " << num(r[i]) << "\n";
        return exit_ok;
    }
    skl::CsvTable t{header, {}};
    for (double u : parse_grid(o.grid).points()) t.rows.push_back(row(u));
    emit(t, o.out);
    return exit_ok;
}

int run_table1(const OperatorFlags& o) {
    const auto t = skl::report::table1();
    t.write(o.out.empty() ? "table1.csv" : o.out);
    std::cout << t.to_string();
    const auto c = skl::report::compare_table1(t);
    std::cout << "max |computed - reference| = " << num(c.max_deviation) << " (x = "
              << num(skl::report::table1_abscissa(c.worst_row)) << ", n = "
              << skl::report::table1_degrees[c.worst_column] << ")\n"
              << "exact tier (" << num(skl::report::table1_exact_tier) << "): " << (c.exact() ? "PASS" : "FAIL") << "\n"
              << "qualitative tier (" << num(skl::report::table1_qualitative_tier)
              << "): " << (c.qualitative() ? "PASS" : "FAIL") << "\n";
    return exit_ok;
}

std::vector<skl::svg::Series> series_from(const skl::CsvTable& t, const std::vector<std::string>& columns,
                                          const std::vector<std::string>& labels) {
    std::vector<skl::svg::Series> out;
    const auto x = t.column_values("x");
    for (std::size_t i = 0; i < columns.size(); ++i) out.push_back({labels[i], x, t.column_values(columns[i])});
    return out;
}

int run_figure(const OperatorFlags& o, int id) {
    const std::string base = o.out.empty() ? "figure" + std::to_string(id) : o.out;
    if (id == 1 || id == 2) {
        // the SVG is drawn from the CSV as it reads back
        const auto t = (id == 1 ? skl::report::figure1() : skl::report::figure2()).round_tripped();
        if (wants_csv(o.format)) t.write(with_extension(base, ".csv"));
        if (wants_svg(o.format)) {
            const std::vector<std::string> cols =
                id == 1 ? std::vector<std::string>{"f", "K_n20", "K_n30", "K_n40"}
                        : std::vector<std::string>{"E_n20", "E_n30", "E_n40"};
            const std::vector<std::string> labels =
                id == 1 ? std::vector<std::string>{"f", "n = 20", "n = 30", "n = 40"}
                        : std::vector<std::string>{"n = 20", "n = 30", "n = 40"};
            const std::string title = id == 1 ? "Approximation of y^3 - 5y^2 + 6y + 2 (q=5, rho=0.1, lambda=0.5)"
                                              : "|K(f;x) - f(x)| (q=5, rho=0.1, lambda=0.5)";
            skl::svg::write_file(with_extension(base, ".svg"),
                                 skl::svg::line_chart(title, series_from(t, cols, labels), "x",
                                                      id == 1 ? "value" : "error"));
        }
        std::cout << "figure " << id << ": " << t.rows.size() << " rows\n";
        return exit_ok;
    }
    if (id != 3) throw UsageError("--id must be 1, 2 or 3");

    const auto g = skl::functions::fig3_poly();
    std::vector<double> sup;
    skl::CsvTable last;
    for (int m : skl::report::fig3_degrees) {
        const auto t = skl::surface_table(skl::report::fig3_config(m), g, skl::report::fig3_grid).round_tripped();
        if (wants_csv(o.format)) t.write(with_extension(base, "_m" + std::to_string(m) + ".csv"));
        sup.push_back(skl::report::max_column(t, "error"));
        std::cout << "figure 3: m1 = m2 = " << m << ", sup error = " << num(sup.back()) << "\n";
        last = t;
    }
    if (wants_svg(o.format)) {
        const int n = skl::report::fig3_grid;
        // rows are y1-major; the heatmap wants y2 along rows and y1 along columns
        std::vector<double> values(static_cast<std::size_t>(n) * n);
        const auto err = last.column_values("error");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) values[static_cast<std::size_t>(b) * n + a] = err[a * n + b];
        skl::svg::write_file(with_extension(base, ".svg"),
                             skl::svg::heatmap("|K(g) - g| for g = y1^3 y2^2, m1 = m2 = 20", n, n, values, 0.0, 1.0,
                                               0.0, 1.0, "y1", "y2"));
    }
    std::cout << "sup error decreases: " << (sup[1] < sup[0] ? "yes" : "no") << "\n";
    return exit_ok;
}

struct BivariateFlags {
    int m2 = -1;
    int q2 = -1;
    double lambda2 = -1.0;
    double y1 = -1.0, y2 = -1.0;
    int count = 0;
};

skl::BivariateConfig bivariate_from(const OperatorFlags& o, const BivariateFlags& b) {
    const auto c1 = config_from(o, o.m);
    const auto c2 = skl::make_config(b.m2 < 0 ? o.m : b.m2, b.q2 < 0 ? o.q : b.q2,
                                     b.lambda2 < 0.0 ? o.lambda : b.lambda2, o.rho, o.unchecked);
    skl::BivariateConfig cfg{c1, c2};
    cfg.validate();
    return cfg;
}

int run_bivariate(const OperatorFlags& o, const BivariateFlags& b) {
    const auto cfg = bivariate_from(o, b);
    const auto g = skl::resolve_bivariate(o.f == "table1-poly" ? "fig3-poly" : o.f);
    if (b.count > 0) {
        emit(skl::surface_table(cfg, g, b.count), o.out);
        return exit_ok;
    }
    if (b.y1 < 0.0 || b.y2 < 0.0) throw UsageError("bivariate needs --y1 and --y2, or --count");
    const double k = skl::apply_bi(cfg, g, b.y1, b.y2);
    const auto mom = skl::bi_moments(cfg, b.y1, b.y2);
    const auto eta = skl::bi_central_moments(cfg, b.y1, b.y2);
    std::cout << "K = " << num(k) << "\nf = " << num(g(b.y1, b.y2)) << "\nerror = " << num(std::abs(k - g(b.y1, b.y2)))
              << "\n";
    auto pr = [](const char* name, const skl::MomentPair& p) {
        std::cout << name << " closed = " << num(p.closed) << ", oracle = " << num(p.oracle) << "\n";
    };
    pr("e00", mom.e00);
    pr("e10", mom.e10);
    pr("e01", mom.e01);
    pr("e11", mom.e11);
    pr("e20", mom.e20);
    pr("e02", mom.e02);
    pr("eta10", eta.eta10);
    pr("eta01", eta.eta01);
    pr("eta11", eta.eta11);
    pr("eta20", eta.eta20);
    pr("eta02", eta.eta02);
    return exit_ok;
}

struct BoundFlags {
    int thm = 33;
    skl::LipschitzParams lip;
    double lipschitz = 0.0;
};

int run_bounds(const OperatorFlags& o, const BivariateFlags& b, const BoundFlags& bf) {
    switch (bf.thm) {
    case 33: {
        const auto cfg = config_from(o, o.m);
        const auto f = skl::resolve_function(o.f);
        auto one = [&](double u) {
            const auto r = skl::bound_thm33(cfg, f, u);
            const double err = std::abs(skl::apply(cfg, f, u) - f(u));
            return std::vector<double>{u, err, r.bound, r.delta, r.bound + bf.lipschitz * r.modulus_step};
        };
        if (o.grid.empty()) {
            if (o.u < 0.0) throw UsageError("bounds --thm 33 needs --u or --grid");
            const auto r = one(o.u);
            std::cout << "error = " << num(r[1]) << "\nbound = " << num(r[2]) << "\ndelta = " << num(r[3])
                      << "\npadded bound = " << num(r[4]) << "\n";
            return exit_ok;
        }
        skl::CsvTable t{{"x", "error", "bound_thm33", "delta", "padded_bound"}, {}};
        for (double u : parse_grid(o.grid).points()) t.rows.push_back(one(u));
        emit(t, o.out);
        return exit_ok;
    }
    case 41: {
        const auto cfg = config_from(o, o.m);
        if (o.grid.empty()) {
            if (o.u <= 0.0) throw UsageError("bounds --thm 41 needs --u > 0 or --grid");
            std::cout << "bound = " << num(skl::bound_thm41(cfg, bf.lip, o.u)) << "\n";
            return exit_ok;
        }
        skl::CsvTable t{{"x", "bound_thm41"}, {}};
        for (double u : parse_grid(o.grid).points())
            if (u > 0.0) t.rows.push_back({u, skl::bound_thm41(cfg, bf.lip, u)});
        emit(t, o.out);
        return exit_ok;
    }
    case 71: {
        const auto cfg = bivariate_from(o, b);
        const auto g = skl::resolve_bivariate(o.f == "table1-poly" ? "fig3-poly" : o.f);
        if (b.y1 < 0.0 || b.y2 < 0.0) throw UsageError("bounds --thm 71 needs --y1 and --y2");
        const auto r = skl::bound_thm71(cfg, g, b.y1, b.y2);
        std::cout << "error = " << num(std::abs(skl::apply_bi(cfg, g, b.y1, b.y2) - g(b.y1, b.y2)))
                  << "\nbound = " << num(r.bound) << "\ndelta1 = " << num(r.delta1) << "\ndelta2 = " << num(r.delta2)
                  << "\n";
        return exit_ok;
    }
    case 72: {
        const auto cfg = bivariate_from(o, b);
        if (b.y1 < 0.0 || b.y2 < 0.0) throw UsageError("bounds --thm 72 needs --y1 and --y2");
        if (bf.lip.E_set.empty()) throw UsageError("bounds --thm 72 needs --E");
        std::cout << "bound = " << num(skl::bound_thm72(cfg, bf.lip, b.y1, b.y2)) << "\n";
        return exit_ok;
    }
    default:
        throw UsageError("--thm must be one of 33, 41, 71, 72");
    }
}

int run_verify(const std::string& level, const std::string& out) {
    const auto report = skl::report::run_verify(level == "full" ? skl::report::Level::full : skl::report::Level::fast);
    std::cout << "checks (" << level << ")\n";
    for (const auto& c : report.checks)
        std::cout << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << ": " << num(c.measured)
                  << " (threshold " << num(c.threshold) << ") " << c.detail << "\n";
    std::cout << "closed-form audit (reported only; consistency threshold " << num(report.audit.pass_threshold)
              << ")\n";
    for (const auto& s : report.audit.classes)
        std::cout << "  " << s.name << ": " << s.records << " points, max gap " << num(s.max_gap) << " -> "
                  << (s.consistent ? "consistent" : "inconsistent") << "\n";
    std::cout << "elapsed " << num(report.seconds) << " s\n";
    if (!out.empty()) skl::svg::write_file(out, report.audit.to_csv());
    std::cout << (report.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
    return report.passed() ? exit_ok : exit_verify_failed;
}

/// Reads flat `key = value` lines; `#` starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

/// Splices config-file values in front of the command-line flags, which win.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty() || rest.empty()) return rest;
    std::vector<std::string> merged{rest.front()};
    for (const auto& [key, value] : read_config(path)) {
        const std::string flag = "--" + key;
        bool given = false;
        for (const auto& a : rest)
            if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
        if (given) continue;
        if (value == "true" || value == "false") {
            if (value == "true") merged.push_back(flag);
        } else {
            merged.push_back(flag + "=" + value);
        }
    }
    merged.insert(merged.end(), rest.begin() + 1, rest.end());
    return merged;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"skl: lambda-Bernstein-Schurer-Kantorovich operators"};
    app.require_subcommand(1);

    OperatorFlags o;
    BivariateFlags b;
    BoundFlags bf;
    int figure_id = 1;
    std::string level = "fast";

    auto* eval = app.add_subcommand("eval", "evaluate K(f; u) at a point or on a grid");
    add_operator_flags(eval, o);
    eval->add_option("--u", o.u, "evaluation point");

    auto* moments = app.add_subcommand("moments", "closed-form and summed moments");
    add_operator_flags(moments, o);
    moments->add_option("--u", o.u, "evaluation point");

    auto* table1 = app.add_subcommand("table1", "error table for y^3 - 5y^2 + 6y + 2, n = 20, 30, 40");
    table1->add_option("--out", o.out, "CSV path (default table1.csv)");

    auto* figure = app.add_subcommand("figure", "figure data (CSV) and charts (SVG)");
    figure->add_option("--id", figure_id, "1, 2 or 3")->check(CLI::Range(1, 3));
    figure->add_option("--out", o.out, "output base path");
    figure->add_option("--format", o.format, "csv | svg | both")->check(CLI::IsMember({"csv", "svg", "both"}));

    auto* bivariate = app.add_subcommand("bivariate", "tensor operator at a point or on a square grid");
    add_operator_flags(bivariate, o);
    for (auto* cmd : {bivariate}) {
        cmd->add_option("--m2", b.m2, "second-coordinate m (default --m)");
        cmd->add_option("--q2", b.q2, "second-coordinate q (default --q)");
        cmd->add_option("--lambda2", b.lambda2, "second-coordinate lambda (default --lambda)");
        cmd->add_option("--y1", b.y1);
        cmd->add_option("--y2", b.y2);
        cmd->add_option("--count", b.count, "emit a count x count surface CSV");
    }

    auto* bounds = app.add_subcommand("bounds", "pointwise error bounds");
    add_operator_flags(bounds, o);
    bounds->add_option("--u", o.u, "evaluation point");
    bounds->add_option("--thm", bf.thm, "33 | 41 | 71 | 72");
    bounds->add_option("--m2", b.m2);
    bounds->add_option("--q2", b.q2);
    bounds->add_option("--lambda2", b.lambda2);
    bounds->add_option("--y1", b.y1);
    bounds->add_option("--y2", b.y2);
    bounds->add_option("--M", bf.lip.M, "Lipschitz constant M");
    bounds->add_option("--k1", bf.lip.k1);
    bounds->add_option("--k2", bf.lip.k2);
    bounds->add_option("--gamma", bf.lip.gamma);
    bounds->add_option("--tau1", bf.lip.tau1);
    bounds->add_option("--tau2", bf.lip.tau2);
    bounds->add_option("--E", bf.lip.E_set, "comma-separated points of E")->delimiter(',');
    bounds->add_option("--lipschitz", bf.lipschitz, "derivative bound of f for the padded bound");

    auto* verify = app.add_subcommand("verify", "run the invariant checks and the closed-form audit");
    verify->add_option("--level", level, "fast | full")->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--out", o.out, "audit CSV path");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*eval) return run_eval(o);
        if (*moments) return run_moments(o);
        if (*table1) return run_table1(o);
        if (*figure) return run_figure(o, figure_id);
        if (*bivariate) return run_bivariate(o, b);
        if (*bounds) return run_bounds(o, b, bf);
        if (*verify) return run_verify(level, o.out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const skl::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const skl::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
