// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "skl/analysis.hpp"
#include "skl/report.hpp"

using namespace skl;

namespace {

// Tolerances, pinned.
constexpr double table_exact_tol = 1e-6;
constexpr double table_qualitative_tol = 5e-3;
constexpr double oracle_tol = 1e-9;
constexpr double oracle_tol_rho_small = 1e-7;
constexpr double unity_tol = 1e-12;
constexpr double weight_floor = -1e-14;
constexpr double algebra_tol = 1e-12;
constexpr double psi2_floor = -1e-12;
constexpr double korovkin_level = 0.05;
constexpr double trend_slack = 0.10;
constexpr double factor_tol = 1e-10;
constexpr double zero_row_tol = 1e-14;

int failures = 0;

void line(int id, const std::string& title, bool pass, const std::string& detail) {
    std::printf("criterion %d %-28s %s  %s\n", id, title.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string series(const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + format_number(x);
    return "[" + s + "]";
}

void table() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto t = report::table1();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto cmp = report::compare_table1(t);
    const bool exact = cmp.max_deviation <= table_exact_tol;
    const bool qualitative = cmp.max_deviation <= table_qualitative_tol;
    line(1, "table reproduction", exact || qualitative,
         fmt("max|dev|=%.3e", cmp.max_deviation) + (exact ? " (exact tier)" : qualitative ? " (qualitative tier)" : "") +
             fmt(" runtime=%.3fs", secs));
}

void oracle_equivalence() {
    std::mt19937_64 rng(2001);
    const double rhos[] = {0.1, 0.5, 1.0, 2.0};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_ratio = 0.0;
    for (int s = 0; s < 200; ++s) {
        const int m = std::uniform_int_distribution<int>(2, 50)(rng);
        const int q = std::uniform_int_distribution<int>(0, 5)(rng);
        const double lambda = unit(rng);
        const double rho = rhos[std::uniform_int_distribution<int>(0, 3)(rng)];
        const double u = unit(rng);
        const auto cfg = make_config(m, q, lambda, rho);
        const double tol = rho == 0.1 ? oracle_tol_rho_small : oracle_tol;
        for (int k = 0; k <= 4; ++k) {
            const double gap = std::abs(apply(cfg, functions::monomial(k), u) - oracle_moment(cfg, k, u));
            worst_ratio = std::max(worst_ratio, gap / tol);
        }
    }
    line(2, "oracle equivalence", worst_ratio <= 1.0, fmt("max gap/tol=%.3e over 200 configs, k<=4", worst_ratio));
}

void partition() {
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0, lowest = 0.0;
    for (int s = 0; s < 1000; ++s) {
        const int m = std::uniform_int_distribution<int>(2, 100)(rng);
        const int q = std::uniform_int_distribution<int>(0, 10)(rng);
        const double lambda = unit(rng);
        const double y = unit(rng);
        const auto row = basis_row({m, q, lambda}, y);
        double sum = 0.0;
        for (double w : row) {
            sum += w;
            lowest = std::min(lowest, w);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    line(3, "partition of unity", worst <= unity_tol && lowest >= weight_floor,
         fmt("max|sum-1|=%.3e", worst) + fmt(" min weight=%.3e", lowest));
}

void central_algebra() {
    std::mt19937_64 rng(2003);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0, lowest = 1.0;
    for (int s = 0; s < 1000; ++s) {
        const int m = std::uniform_int_distribution<int>(2, 100)(rng);
        const int q = std::uniform_int_distribution<int>(0, 10)(rng);
        const double lambda = unit(rng);
        const double rho = 0.1 + 1.9 * unit(rng);
        const double u = unit(rng);
        const auto c = central_moments(make_config(m, q, lambda, rho), u);
        worst = std::max(worst, c.identity_residual);
        lowest = std::min(lowest, c.direct_psi2);
    }
    line(4, "central-moment algebra", worst <= algebra_tol && lowest >= psi2_floor,
         fmt("max residual=%.3e", worst) + fmt(" min psi2=%.3e", lowest));
}

void korovkin() {
    bool pass = true;
    std::string detail;
    for (int k : {1, 2}) {
        const auto s = report::checks::korovkin_series(5, 0.5, 0.1, k);
        const bool trend = non_increasing_with_slack(s, trend_slack);
        const bool level = s.back() < korovkin_level;
        pass = pass && trend && level;
        detail += "e" + std::to_string(k) + " " + series(s) + (trend ? " trend ok" : " trend FAIL") +
                  (level ? ", level ok; " : ", level FAIL; ");
    }
    line(5, "Korovkin convergence", pass, detail);
}

void bound_soundness() {
    const auto uni = report::checks::modulus_bound_soundness();
    const auto bi = report::checks::partial_modulus_bound_soundness();
    line(6, "bound soundness", uni.passed && bi.passed,
         fmt("uni max(err-bound-pad)=%.3e", uni.measured) + fmt(" bi max(err-bound-pad)=%.3e", bi.measured));
}

void factorization() {
    std::mt19937_64 rng(2007);
    std::uniform_real_distribution<double> unit(0.0, 1.0), coef(-2.0, 2.0);
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
        std::vector<double> a(static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 4)(rng)) + 1);
        std::vector<double> b(static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 4)(rng)) + 1);
        for (auto& v : a) v = coef(rng);
        for (auto& v : b) v = coef(rng);
        const Polynomial pa(a), pb(b);
        const int m1 = std::uniform_int_distribution<int>(2, 20)(rng);
        const int m2 = std::uniform_int_distribution<int>(2, 20)(rng);
        const int q1 = std::uniform_int_distribution<int>(0, 5)(rng);
        const int q2 = std::uniform_int_distribution<int>(0, 5)(rng);
        const double l1 = unit(rng), l2 = unit(rng);
        const double rho = report::detail::rho_choices[std::uniform_int_distribution<int>(0, 3)(rng)];
        const double y1 = unit(rng), y2 = unit(rng);
        const auto cfg = make_bivariate(m1, m2, q1, q2, l1, l2, rho);
        // generic tensor quadrature, not the separable fast path
        const BivariateFunction g("g", [&](double s1, double s2) { return pa(s1) * pb(s2); });
        const double product =
            apply(cfg.first, TargetFunction("a", pa), y1) * apply(cfg.second, TargetFunction("b", pb), y2);
        worst = std::max(worst, std::abs(apply_bi(cfg, g, y1, y2) - product));
    }

    const auto g = functions::fig3_poly();
    double sup[2];
    for (int j = 0; j < 2; ++j) {
        const auto t = surface_table(report::fig3_config(report::fig3_degrees[j]), g, report::fig3_grid);
        sup[j] = report::max_column(t, "error");
    }
    line(7, "bivariate factorization", worst <= factor_tol && sup[1] < sup[0],
         fmt("max gap=%.3e", worst) + fmt(" sup err m=10: %.6g", sup[0]) + fmt(" m=20: %.6g", sup[1]));
}

void weighted_norm() {
    const std::vector<int> ladder{10, 20, 40, 80};
    const Grid grid(0.0, 1.0, 1001);
    bool pass = true;
    std::string detail;
    // the error-table parameters and the q = 0 reference point
    for (const auto& fixed : {make_config(2, 5, 0.5, 0.1), make_config(2, 0, 0.5, 1.0)}) {
        const auto r = weighted_convergence(fixed, ladder, grid);
        std::vector<double> n1, n2;
        double zero_row = 0.0;
        for (const auto& row : r.norms) {
            zero_row = std::max(zero_row, row[0]);
            n1.push_back(row[1]);
            n2.push_back(row[2]);
        }
        const bool ok = zero_row <= zero_row_tol && non_increasing_with_slack(n1, trend_slack) &&
                        non_increasing_with_slack(n2, trend_slack);
        pass = pass && ok;
        detail += "q=" + std::to_string(fixed.q()) + fmt(" rho=%g:", fixed.rho) + fmt(" e0 max=%.1e", zero_row) +
                  " e1 " + series(n1) + " e2 " + series(n2) + "; ";
    }
    line(8, "weighted-norm convergence", pass, detail);
}

} // namespace

int main() {
    table();
    oracle_equivalence();
    partition();
    central_algebra();
    korovkin();
    bound_soundness();
    factorization();
    weighted_norm();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
