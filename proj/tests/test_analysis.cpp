#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "skl/analysis.hpp"

using namespace skl;

TEST_CASE("modulus examples") {
    CHECK(modulus([](double) { return 4.0; }, {0.0, 1.0}, 0.1).value == 0.0);
    const auto lin = modulus([](double u) { return u; }, {0.0, 1.0}, 0.1);
    CHECK(std::abs(lin.value - 0.1) <= lin.grid_step);
    CHECK(lin.kind == ModulusKind::full);
    CHECK(std::abs(modulus([](double u) { return u * u; }, {0.0, 1.0}, 0.1).value - 0.19) < 1e-3);
    // brute force over all grid pairs
    auto f = [](double u) { return std::sin(7.0 * u) * u; };
    const auto w = modulus(f, {0.0, 1.0}, 0.13, 201);
    const Grid g(0.0, 1.0, 201);
    double brute = 0.0;
    for (int i = 0; i < 201; ++i)
        for (int j = i; j < 201 && g[j] - g[i] <= 0.13 + 1e-12; ++j) brute = std::max(brute, std::abs(f(g[i]) - f(g[j])));
    CHECK(std::abs(w.value - brute) < 1e-15);

    CHECK_THROWS_AS(modulus([](double u) { return u; }, {0.0, 1.0}, 0.0), DomainError);
    CHECK_THROWS_AS(modulus([](double u) { return u; }, {0.0, 1.0}, 0.1, 50), DomainError);
    CHECK_THROWS_AS(modulus([](double u) { return 1.0 / (u - 0.5); }, {0.0, 1.0}, 0.1, 101), EvaluationError);
}

TEST_CASE("modulus is monotone in delta") {
    auto f = [](double u) { return u * u * u - 5.0 * u * u + 6.0 * u + 2.0; };
    double previous = 0.0;
    for (double delta = 0.001; delta < 1.5; delta *= 1.3) {
        const double v = modulus(f, {0.0, 1.2}, delta).value;
        CHECK(v >= previous - 1e-12);
        CHECK(v >= 0.0);
        previous = v;
    }
}

TEST_CASE("padded modulus satisfies the quadratic-growth inequality") {
    auto f = [](double u) { return u * u * u - 5.0 * u * u + 6.0 * u + 2.0; };
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < 500; ++s) {
        const double delta = 0.01 + 0.3 * unit(rng);
        const auto w = modulus(f, {0.0, 1.0}, delta);
        const double r1 = unit(rng), r2 = unit(rng);
        const double d = r1 - r2;
        CHECK(std::abs(f(r1) - f(r2)) <= (1.0 + d * d / (delta * delta)) * w.padded(6.0) + 1e-12);
    }
}

TEST_CASE("partial moduli examples") {
    const auto zero = partial_moduli(functions::constant2(2.0), 0.1, 0.1);
    CHECK(zero.first.value == 0.0);
    CHECK(zero.second.value == 0.0);

    const BivariateFunction s("s", [](double a, double) { return a; });
    const auto ws = partial_moduli(s, 0.2, 0.2);
    CHECK(std::abs(ws.first.value - 0.2) <= ws.first.grid_step);
    CHECK(ws.second.value == 0.0);
    CHECK(ws.first.kind == ModulusKind::partial_1);
    CHECK(ws.second.kind == ModulusKind::partial_2);

    const BivariateFunction st("s*t", [](double a, double b) { return a * b; });
    const auto wst = partial_moduli(st, 0.1, 0.1);
    CHECK(std::abs(wst.first.value - 0.1) < 1e-3);
    CHECK(std::abs(wst.second.value - 0.1) < 1e-3);
}

TEST_CASE("univariate modulus bound") {
    const auto cfg = make_config(20, 5, 0.5, 0.1);
    const auto flat = bound_thm33(cfg, functions::constant(2.0), 0.4);
    CHECK(flat.bound == 0.0);
    CHECK(std::abs(apply(cfg, functions::constant(2.0), 0.4) - 2.0) < 1e-12);

    const auto f = functions::table1_poly();
    const auto b = bound_thm33(cfg, f, 0.5);
    CHECK(b.bound >= 0.1324072752);
    CHECK(std::abs(b.delta - std::sqrt(oracle_second_central(cfg, 0.5))) < 1e-15);

    // identity: omega(id; delta) = delta on a domain wider than delta
    for (double u : {0.1, 0.5, 0.9}) {
        const auto id = bound_thm33(cfg, functions::monomial(1), u);
        CHECK(std::abs(id.bound - 2.0 * id.delta) <= 2.0 * id.modulus_step);
    }
}

TEST_CASE("Lipschitz-class bound") {
    const auto cfg = make_config(20, 5, 0.5, 0.1);
    LipschitzParams p;
    CHECK(std::abs(bound_thm41(cfg, p, 1.0) - std::sqrt(oracle_second_central(cfg, 1.0) / 2.0)) < 1e-15);
    p.M = 0.0;
    CHECK(bound_thm41(cfg, p, 0.5) == 0.0);

    LipschitzParams full, half;
    half.gamma = 0.5;
    const double ratio = oracle_second_central(cfg, 0.5) / (0.5 + 0.25);
    REQUIRE(ratio < 1.0);
    CHECK(bound_thm41(cfg, full, 0.5) < bound_thm41(cfg, half, 0.5));

    CHECK_THROWS_AS(bound_thm41(cfg, full, 0.0), DomainError);
    LipschitzParams bad;
    bad.gamma = 1.5;
    CHECK_THROWS_AS(bound_thm41(cfg, bad, 0.5), DomainError);
}

TEST_CASE("bivariate modulus bound") {
    const auto cfg = make_bivariate(10, 10, 5, 5, 0.5, 0.5, 0.9);
    CHECK(bound_thm71(cfg, functions::constant2(3.0), 0.5, 0.5).bound == 0.0);

    // g1 (x) 1: the second partial modulus vanishes
    const auto g = BivariateFunction::separable("sq", functions::monomial(2), functions::constant(1.0));
    const auto b = bound_thm71(cfg, g, 0.3, 0.6);
    CHECK(b.moduli.second.value == 0.0);
    const auto uni = modulus([](double x) { return x * x; }, cfg.first.support(), b.delta1, 401);
    CHECK(std::abs(b.bound - 2.0 * uni.value) < 1e-15);

    const auto fig3 = functions::fig3_poly();
    const auto at = bound_thm71(cfg, fig3, 0.5, 0.5);
    CHECK(at.bound >= std::abs(apply_bi(cfg, fig3, 0.5, 0.5) - 0.125 * 0.25));
}

TEST_CASE("Lipschitz maximal bound") {
    const auto cfg = make_bivariate(10, 15, 2, 3, 0.5, 0.4, 0.8);
    const double d1 = std::sqrt(oracle_second_central(cfg.first, 0.7));
    const double d2 = std::sqrt(oracle_second_central(cfg.second, 0.7));
    LipschitzParams p;
    p.E_set = {0.5};
    CHECK(std::abs(bound_thm72(cfg, p, 0.7, 0.7) - ((0.2 + d1) * (0.2 + d2) + 0.04)) < 1e-14);

    p.E_set = {0.3, 0.7};
    CHECK(std::abs(bound_thm72(cfg, p, 0.7, 0.3) -
                   std::sqrt(oracle_second_central(cfg.first, 0.7)) * std::sqrt(oracle_second_central(cfg.second, 0.3))) <
          1e-15);
    p.M = 0.0;
    CHECK(bound_thm72(cfg, p, 0.1, 0.2) == 0.0);
    p.E_set.clear();
    CHECK_THROWS_AS(bound_thm72(cfg, p, 0.1, 0.2), DomainError);
    CHECK(distance_to_set(0.45, {0.1, 0.5, 0.9}) == Catch::Approx(0.05));
}

TEST_CASE("weighted norm convergence") {
    const auto fixed = make_config(2, 0, 0.5, 1.0);
    const auto r = weighted_convergence(fixed, {10, 20, 40, 80}, Grid(0.0, 1.0, 201));
    REQUIRE(r.norms.size() == 4);
    for (std::size_t i = 0; i < r.norms.size(); ++i) {
        CHECK(r.norms[i][0] < 1e-14);
        for (double v : r.norms[i]) CHECK(v >= 0.0);
        if (i > 0) CHECK(r.norms[i][1] < r.norms[i - 1][1]);
    }
    CHECK(r.to_csv().rows.size() == 4);
    CHECK_THROWS_AS(weighted_convergence(fixed, {20, 10}, Grid(0.0, 1.0, 11)), DomainError);
    CHECK_THROWS_AS(weighted_convergence(fixed, {10}, Grid(0.0, 2.0, 11)), DomainError);
}

TEST_CASE("Korovkin defect helpers") {
    CHECK(non_increasing_with_slack({1.0, 1.05, 0.5}, 0.1));
    CHECK_FALSE(non_increasing_with_slack({1.0, 1.2}, 0.1));
    const Grid g(0.0, 1.0, 101);
    const auto c = make_config(40, 0, 0.5, 1.0);
    CHECK(korovkin_defect(c, 0, g) < 1e-13);
    CHECK(korovkin_defect(c, 1, g) < korovkin_defect(make_config(20, 0, 0.5, 1.0), 1, g));
}
