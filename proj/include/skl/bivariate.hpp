#pragma once

// Tensor-product operator on [0,1]^2:
//
//   K(g; y1, y2) = sum_{i1,i2} p_{m1,i1}^{l1}(y1) p_{m2,i2}^{l2}(y2)
//                  * int_0^1 int_0^1 g((i1 + t1^rho)/(m1+1), (i2 + t2^rho)/(m2+1)) dt1 dt2

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "skl/operator.hpp"

namespace skl {

/// Two univariate configurations sharing one Kantorovich exponent.
struct BivariateConfig {
    OperatorConfig first;
    OperatorConfig second;

    [[nodiscard]] double rho() const noexcept { return first.rho; }

    void validate() const {
        first.validate();
        second.validate();
        if (first.rho != second.rho) throw DomainError("bivariate: both coordinates must share rho");
    }

    [[nodiscard]] BivariateConfig swapped() const { return {second, first}; }
};

[[nodiscard]] inline BivariateConfig make_bivariate(int m1, int m2, int q1, int q2, double lambda1, double lambda2,
                                                    double rho) {
    BivariateConfig c{make_config(m1, q1, lambda1, rho), make_config(m2, q2, lambda2, rho)};
    c.validate();
    return c;
}

/// The tensor operator with a fixed target function.
///
/// Separable targets integrate each coordinate on its own; anything else goes
/// through a full tensor quadrature whose cell integrals are cached here.
class BoundBivariateOperator {
public:
    BoundBivariateOperator(BivariateConfig config, const BivariateFunction& g) : config_(config) {
        config_.validate();
        if (g.is_separable()) {
            factors_.emplace(BoundOperator(config_.first, g.first_factor()),
                             BoundOperator(config_.second, g.second_factor()));
            return;
        }
        const auto rule = composite_rule(config_.first.quadrature());
        std::vector<double> powered(rule.nodes.size());
        for (std::size_t j = 0; j < powered.size(); ++j) powered[j] = std::pow(rule.nodes[j], config_.rho());

        const int n1 = config_.first.degree() + 1;
        const int n2 = config_.second.degree() + 1;
        const double scale1 = 1.0 / (config_.first.m() + 1);
        const double scale2 = 1.0 / (config_.second.m() + 1);
        cells_.assign(static_cast<std::size_t>(n1) * n2, 0.0);
        std::vector<double> s2(powered.size());
        for (int i1 = 0; i1 < n1; ++i1) {
            for (int i2 = 0; i2 < n2; ++i2) {
                for (std::size_t b = 0; b < powered.size(); ++b) s2[b] = (i2 + powered[b]) * scale2;
                CompensatedSum acc;
                for (std::size_t a = 0; a < powered.size(); ++a) {
                    const double s1 = (i1 + powered[a]) * scale1;
                    double inner = 0.0;
                    for (std::size_t b = 0; b < powered.size(); ++b) {
                        const double v = g(s1, s2[b]);
                        if (!std::isfinite(v)) throw EvaluationError("bivariate: " + g.name() + " is non-finite");
                        inner += rule.weights[b] * v;
                    }
                    acc += rule.weights[a] * inner;
                }
                cells_[static_cast<std::size_t>(i1) * n2 + i2] = acc.value();
            }
        }
    }

    [[nodiscard]] double operator()(double y1, double y2) const {
        if (factors_) return factors_->first(y1) * factors_->second(y2);
        detail::check_eval_point(config_.first, y1);
        detail::check_eval_point(config_.second, y2);
        const auto row1 = basis_row(config_.first.basis, y1);
        const auto row2 = basis_row(config_.second.basis, y2);
        CompensatedSum acc;
        for (std::size_t i1 = 0; i1 < row1.size(); ++i1) {
            CompensatedSum inner;
            for (std::size_t i2 = 0; i2 < row2.size(); ++i2) inner += row2[i2] * cells_[i1 * row2.size() + i2];
            acc += row1[i1] * inner.value();
        }
        return acc.value();
    }

    [[nodiscard]] const BivariateConfig& config() const noexcept { return config_; }

private:
    BivariateConfig config_;
    std::optional<std::pair<BoundOperator, BoundOperator>> factors_;
    std::vector<double> cells_;
};

[[nodiscard]] inline double apply_bi(const BivariateConfig& config, const BivariateFunction& g, double y1, double y2) {
    return BoundBivariateOperator(config, g)(y1, y2);
}

struct MomentPair {
    double closed = 0.0;
    double oracle = 0.0;

    [[nodiscard]] double gap() const noexcept { return std::abs(closed - oracle); }
};

struct BiMomentSet {
    double y1 = 0.0, y2 = 0.0;
    MomentPair e00, e10, e01, e11, e20, e02;
    double max_discrepancy = 0.0;
};

/// Raw moments e_{ij} = K(s^i t^j). Closed values follow the printed product
/// formulas, including the second-coordinate e01 term that carries m1 and
/// lambda1; oracle values multiply univariate summation moments.
[[nodiscard]] inline BiMomentSet bi_moments(const BivariateConfig& config, double y1, double y2) {
    config.validate();
    const auto& c1 = config.first;
    const auto& c2 = config.second;
    const double m1 = c1.m(), m2 = c2.m(), l1 = c1.lambda(), l2 = c2.lambda(), rho = config.rho();

    const double offset2 = ((l2 + 1.0) * (rho + 1.0) + 1.0) / (2.0 * (rho + 1.0) * (m2 + 1.0));
    const double e10c = closed_form::e1(m1, l1, rho, y1);
    const double e01c = (m1 + 2.0 * (l1 - 1.0)) / (m2 + 1.0) * y2 + offset2;
    const double e11_second = (m2 + 2.0 * (l2 - 1.0)) / (m2 + 1.0) * y2 + offset2;

    const double a0 = oracle_moment(c1, 0, y1), a1 = oracle_moment(c1, 1, y1), a2 = oracle_moment(c1, 2, y1);
    const double b0 = oracle_moment(c2, 0, y2), b1 = oracle_moment(c2, 1, y2), b2 = oracle_moment(c2, 2, y2);

    BiMomentSet s;
    s.y1 = y1;
    s.y2 = y2;
    s.e00 = {1.0, a0 * b0};
    s.e10 = {e10c, a1 * b0};
    s.e01 = {e01c, a0 * b1};
    s.e11 = {e10c * e11_second, a1 * b1};
    s.e20 = {closed_form::e2(m1, l1, rho, y1), a2 * b0};
    s.e02 = {closed_form::e2(m2, l2, rho, y2), a0 * b2};
    s.max_discrepancy = std::max({s.e00.gap(), s.e10.gap(), s.e01.gap(), s.e11.gap(), s.e20.gap(), s.e02.gap()});
    return s;
}

struct BiCentralMomentSet {
    double y1 = 0.0, y2 = 0.0;
    MomentPair eta10, eta01, eta11, eta20, eta02;
    double max_discrepancy = 0.0;
};

/// Central moments eta_{ij} = K((s-y1)^i (t-y2)^j). Closed values are the
/// printed formulas (the eta01 slope uses lambda1, the eta02 linear term uses
/// m1); oracle values use the identities eta20 = e20 - 2 y1 e10 + y1^2 and
/// eta11 = eta10 * eta01.
[[nodiscard]] inline BiCentralMomentSet bi_central_moments(const BivariateConfig& config, double y1, double y2) {
    const auto raw = bi_moments(config, y1, y2);
    const auto& c1 = config.first;
    const auto& c2 = config.second;
    const double m1 = c1.m(), m2 = c2.m(), l1 = c1.lambda(), l2 = c2.lambda(), rho = config.rho();

    const double eta10c = closed_form::psi1(m1, l1, rho, y1);
    const double eta01c =
        (2.0 * l1 - 3.0) / (m2 + 1.0) * y2 + ((l2 + 1.0) * (rho + 1.0) + 1.0) / ((rho + 1.0) * (m2 + 1.0));

    BiCentralMomentSet s;
    s.y1 = y1;
    s.y2 = y2;
    const double eta10o = raw.e10.oracle - y1 * raw.e00.oracle;
    const double eta01o = raw.e01.oracle - y2 * raw.e00.oracle;
    s.eta10 = {eta10c, eta10o};
    s.eta01 = {eta01c, eta01o};
    s.eta11 = {eta10c * eta01c, eta10o * eta01o};
    s.eta20 = {closed_form::psi2(m1, l1, rho, y1),
               raw.e20.oracle - 2.0 * y1 * raw.e10.oracle + y1 * y1 * raw.e00.oracle};
    s.eta02 = {closed_form::psi2(m2, l2, rho, y2, m1),
               raw.e02.oracle - 2.0 * y2 * raw.e01.oracle + y2 * y2 * raw.e00.oracle};
    s.max_discrepancy =
        std::max({s.eta10.gap(), s.eta01.gap(), s.eta11.gap(), s.eta20.gap(), s.eta02.gap()});
    return s;
}

/// Rows y1,y2,K,f,error over a count x count grid on [0,1]^2.
[[nodiscard]] inline CsvTable surface_table(const BivariateConfig& config, const BivariateFunction& g, int count) {
    const BoundBivariateOperator op(config, g);
    const Grid grid(0.0, 1.0, count);
    CsvTable t{{"y1", "y2", "K", "f", "error"}, {}};
    t.rows.reserve(static_cast<std::size_t>(count) * count);
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            const double y1 = grid[a], y2 = grid[b];
            const double k = op(y1, y2), f = g(y1, y2);
            t.rows.push_back({y1, y2, k, f, std::abs(k - f)});
        }
    return t;
}

} // namespace skl
