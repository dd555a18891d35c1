#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "skl/bivariate.hpp"

using namespace skl;

namespace {

double sup_error(const CsvTable& t) {
    double best = 0.0;
    for (const auto& row : t.rows) best = std::max(best, row[4]);
    return best;
}

} // namespace

TEST_CASE("bivariate constant and product of identities") {
    const auto cfg = make_bivariate(10, 10, 0, 0, 0.5, 0.5, 1.0);
    CHECK(std::abs(apply_bi(cfg, functions::constant2(1.0), 0.3, 0.8) - 1.0) < 1e-12);
    const BivariateFunction one("one", [](double, double) { return 1.0; });
    CHECK(std::abs(apply_bi(make_bivariate(7, 12, 3, 1, 0.2, 0.9, 0.4), one, 0.1, 0.6) - 1.0) < 1e-12);

    const BivariateFunction st("s*t", [](double s, double t) { return s * t; });
    CHECK(std::abs(apply_bi(cfg, st, 0.5, 0.5) - 0.25) < 1e-9);
}

TEST_CASE("generic tensor path factorizes on separable targets") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0), coef(-2.0, 2.0);
    for (int s = 0; s < 10; ++s) {
        std::vector<double> a(4), b(3);
        for (auto& v : a) v = coef(rng);
        for (auto& v : b) v = coef(rng);
        const Polynomial pa(a), pb(b);
        const int m1 = std::uniform_int_distribution<int>(2, 10)(rng);
        const int m2 = std::uniform_int_distribution<int>(2, 10)(rng);
        const double l1 = unit(rng), l2 = unit(rng);
        const auto cfg = make_bivariate(m1, m2, 2, 1, l1, l2, 0.7);
        const BivariateFunction generic("g", [&](double x, double y) { return pa(x) * pb(y); });
        const double y1 = unit(rng), y2 = unit(rng);
        const double product =
            apply(cfg.first, TargetFunction("a", pa), y1) * apply(cfg.second, TargetFunction("b", pb), y2);
        CHECK(std::abs(apply_bi(cfg, generic, y1, y2) - product) < 1e-10);
    }
}

TEST_CASE("swapping coordinates and transposing the target") {
    const auto cfg = make_bivariate(8, 13, 2, 4, 0.25, 0.75, 0.6);
    const BivariateFunction g("g", [](double s, double t) { return std::sin(s + 2.0 * t) + s * s * t; });
    const BoundBivariateOperator op(cfg, g), op_swapped(cfg.swapped(), g.transposed());
    for (double y1 : {0.0, 0.35, 1.0})
        for (double y2 : {0.2, 0.9}) {
            const double direct = op(y1, y2);
            const double swapped = op_swapped(y2, y1);
            CHECK(std::abs(direct - swapped) < 1e-12);
        }
    const auto sep = functions::fig3_poly();
    CHECK(std::abs(apply_bi(cfg, sep, 0.4, 0.7) - apply_bi(cfg.swapped(), sep.transposed(), 0.7, 0.4)) < 1e-12);
}

TEST_CASE("surface error shrinks from m = 10 to m = 20") {
    const auto g = functions::fig3_poly();
    const auto t10 = surface_table(make_bivariate(10, 10, 5, 5, 0.5, 0.5, 0.9), g, 41);
    const auto t20 = surface_table(make_bivariate(20, 20, 5, 5, 0.5, 0.5, 0.9), g, 41);
    REQUIRE(t10.rows.size() == 41 * 41);
    CHECK(t10.header == std::vector<std::string>{"y1", "y2", "K", "f", "error"});
    CHECK(sup_error(t20) < sup_error(t10));
}

TEST_CASE("bivariate raw moments") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < 50; ++s) {
        const auto cfg = make_bivariate(std::uniform_int_distribution<int>(2, 30)(rng),
                                        std::uniform_int_distribution<int>(2, 30)(rng), 3, 2, unit(rng), unit(rng),
                                        0.5);
        const double y1 = unit(rng), y2 = unit(rng);
        const auto m = bi_moments(cfg, y1, y2);
        CHECK(m.e00.closed == 1.0);
        CHECK(std::abs(m.e00.oracle - 1.0) < 1e-12);
        const double e10 = m.e10.oracle, e01 = m.e01.oracle;
        CHECK(std::abs(m.e11.oracle - e10 * e01) < 1e-12);
        // tensor quadrature on s*t against the oracle product
        if (s < 5) {
            const BivariateFunction st("s*t", [](double a, double b) { return a * b; });
            CHECK(std::abs(apply_bi(cfg, st, y1, y2) - m.e11.oracle) < 1e-9);
        }
    }
    const auto sym = bi_moments(make_bivariate(10, 10, 0, 0, 0.5, 0.5, 1.0), 0.5, 0.5);
    CHECK(std::abs(sym.e10.closed - 0.5) < 1e-15);
    CHECK(std::abs(sym.e10.oracle - 0.5) < 1e-14);
}

TEST_CASE("bivariate central moments") {
    const auto sym = bi_central_moments(make_bivariate(10, 10, 0, 0, 0.5, 0.5, 1.0), 0.5, 0.5);
    CHECK(std::abs(sym.eta10.oracle) < 1e-14);
    CHECK(std::abs(sym.eta11.oracle - sym.eta10.oracle * sym.eta01.oracle) < 1e-12);

    const auto cfg = make_bivariate(12, 9, 1, 4, 0.3, 0.8, 0.4);
    const auto c = bi_central_moments(cfg, 0.2, 0.65);
    CHECK(std::abs(c.eta20.oracle - oracle_second_central(cfg.first, 0.2)) < 1e-12);
    CHECK(std::abs(c.eta02.oracle - oracle_second_central(cfg.second, 0.65)) < 1e-12);
    CHECK(c.eta20.oracle >= 0.0);
    CHECK(c.eta02.oracle >= 0.0);
}

TEST_CASE("bivariate configuration errors") {
    BivariateConfig mismatched{make_config(5, 0, 0.5, 1.0), make_config(5, 0, 0.5, 2.0)};
    CHECK_THROWS_AS(mismatched.validate(), DomainError);
    const auto cfg = make_bivariate(5, 5, 0, 0, 0.5, 0.5, 1.0);
    const BivariateFunction g("g", [](double s, double t) { return s + t; });
    CHECK_THROWS_AS(apply_bi(cfg, g, 1.5, 0.5), DomainError);
    CHECK_THROWS_AS(apply_bi(cfg, functions::fig3_poly(), 0.5, -0.5), DomainError);
}
