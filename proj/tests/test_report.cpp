#include "catch2/catch_amalgamated.hpp"

#include <cmath>

#include "skl/expression.hpp"
#include "skl/report.hpp"
#include "skl/svg.hpp"

using namespace skl;

TEST_CASE("expression parser") {
    const auto f = resolve_function("y^3 - 5*y^2 + 6*y + 2");
    const auto ref = functions::table1_poly();
    for (double y : {0.0, 0.3, 1.0, 1.2}) CHECK(std::abs(f(y) - ref(y)) < 1e-14);

    CHECK(resolve_function("2^3^2")(0.0) == 512.0);
    CHECK(resolve_function("-y^2")(3.0) == -9.0);
    CHECK(resolve_function("(1 + y) / 4")(1.0) == 0.5);
    CHECK(resolve_function("1.5e1 - y")(5.0) == 10.0);
    CHECK(resolve_function("e2")(3.0) == 9.0);
    CHECK(resolve_function("const:2.5")(7.0) == 2.5);
    CHECK(resolve_function("table1-poly").name() == "table1-poly");

    const auto g = resolve_bivariate("y1^3 * y2^2");
    CHECK(std::abs(g(0.5, 0.4) - 0.125 * 0.16) < 1e-15);
    CHECK(resolve_bivariate("fig3-poly").is_separable());

    CHECK_THROWS_AS(resolve_function("y^^2"), ParseError);
    CHECK_THROWS_AS(resolve_function("(y + 1"), ParseError);
    CHECK_THROWS_AS(resolve_function("x + 1"), ParseError);
    CHECK_THROWS_AS(resolve_bivariate("y1 + y3"), ParseError);
}

TEST_CASE("CSV formatting and round trip") {
    CHECK(format_number(0.1324072752) == "0.1324072752");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CsvTable t{{"a", "b"}, {{1.0, 2.5}, {1e-20, -3.0}}};
    const auto back = t.round_tripped();
    CHECK(back.header == t.header);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[1][0] == 1e-20);
    CHECK(t.to_string() == back.to_string());
    CHECK_THROWS_AS(CsvTable::parse("a,b\n1\n"), std::runtime_error);
    CHECK_THROWS_AS(t.column("c"), std::out_of_range);
}

TEST_CASE("error table shape and reference values") {
    const auto t = report::table1();
    CHECK(t.header == std::vector<std::string>{"x", "E_n20", "E_n30", "E_n40"});
    REQUIRE(t.rows.size() == 10);
    CHECK(report::table1_reference(6, 1) == 0.0036833631);
    CHECK(report::table1_reference(9, 0) == 0.3303053711);
    const auto cmp = report::compare_table1(t);
    CHECK(cmp.exact());
    CHECK(cmp.max_deviation < 1e-6);
    CHECK(t.to_string() == report::table1().to_string());
}

TEST_CASE("figure data") {
    const auto f1 = report::figure1();
    CHECK(f1.header == std::vector<std::string>{"x", "f", "K_n20", "K_n30", "K_n40"});
    CHECK(f1.rows.size() == 501);

    // every table abscissa x = k/10 is a node of the 501-point grid
    const auto f2 = report::figure2();
    const auto t = report::table1();
    double fig_max = 0.0, table_max = 0.0;
    for (int r = 0; r < 10; ++r) {
        const int idx = 50 * (r + 1);
        CHECK(std::abs(f2.rows[idx][0] - report::table1_abscissa(r)) < 1e-15);
        fig_max = std::max(fig_max, f2.rows[idx][3]);
        table_max = std::max(table_max, t.rows[r][3]);
    }
    CHECK(std::abs(fig_max - table_max) < 1e-9);

    const auto svg = svg::line_chart("test", {{"a", {0.0, 1.0}, {1.0, 2.0}}}, "x", "y");
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("viewBox=\"0 0 800 600\"") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK_THROWS_AS(svg::line_chart("bad", {{"a", {0.0}, {1.0, 2.0}}}, "x", "y"), std::invalid_argument);
    const auto heat = svg::heatmap("h", 2, 2, {0.0, 1.0, 2.0, 3.0}, 0, 1, 0, 1, "x", "y");
    CHECK(heat.find("<rect") != std::string::npos);
}

TEST_CASE("closed-form audit layout") {
    const auto a = report::build_audit(7);
    CHECK(a.records.size() == 7 * 5 + 7 * 11);
    CHECK(a.classes.size() == 16);
    for (const auto& c : a.classes) CHECK(c.records == 7);
    const auto csv = a.to_csv();
    CHECK(csv.rfind("name,parameters,closed,oracle,abs_gap\n", 0) == 0);
    // e0 closed and oracle agree exactly up to rounding
    CHECK(a.classes[0].name == "uni_e0");
    CHECK(a.classes[0].consistent);
    CHECK(report::build_audit(7).to_csv() == csv);
}

TEST_CASE("fast verification passes") {
    const auto r = report::run_verify(report::Level::fast);
    for (const auto& c : r.checks) {
        INFO(c.name << " measured " << c.measured << " threshold " << c.threshold << " " << c.detail);
        CHECK(c.passed);
    }
    CHECK(r.passed());
    CHECK(r.audit.records.size() == 10 * 16);
}
