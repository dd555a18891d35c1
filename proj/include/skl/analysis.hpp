#pragma once

// Error bounds for the univariate and bivariate operators and the
// weighted-norm convergence sweep. All second central moments feeding a bound
// come from the exact summation path.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "skl/bivariate.hpp"
#include "skl/modulus.hpp"
#include "skl/operator.hpp"

namespace skl {

/// Constants of the Lipschitz-type classes used by the pointwise bounds.
struct LipschitzParams {
    double M = 1.0;
    double k1 = 1.0;
    double k2 = 1.0;
    double gamma = 1.0; ///< exponent of the univariate class, in (0,1]
    double tau1 = 1.0;  ///< bivariate exponents, in (0,1]
    double tau2 = 1.0;
    std::vector<double> E_set; ///< finite subset of [0,1] for d(y, E)

    void validate() const {
        if (!(M >= 0.0)) throw DomainError("lipschitz: M must be >= 0");
        if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("lipschitz: gamma must lie in (0,1]");
        if (!(tau1 > 0.0 && tau1 <= 1.0) || !(tau2 > 0.0 && tau2 <= 1.0))
            throw DomainError("lipschitz: tau must lie in (0,1]");
    }
};

struct Thm33Bound {
    double bound = 0.0;
    double delta = 0.0;
    double modulus_step = 0.0; ///< grid step of the modulus estimate
};

/// |K(f;u) - f(u)| <= 2 omega(f; delta), delta^2 = K((s-u)^2; u).
template <typename F>
[[nodiscard]] Thm33Bound bound_thm33(const OperatorConfig& config, F&& f, double u,
                                     int resolution = default_sup_resolution) {
    const auto b = modulus_bound(config, std::forward<F>(f), u, resolution);
    return {b.bound, b.delta, b.modulus.grid_step};
}

/// M (psi2(u) / (k1 u + k2 u^2))^{gamma/2}, for u > 0.
[[nodiscard]] inline double bound_thm41(const OperatorConfig& config, const LipschitzParams& params, double u) {
    params.validate();
    if (params.k1 <= 0.0 || params.k2 <= 0.0) throw DomainError("bound_thm41: k1 and k2 must be > 0");
    if (!(u > 0.0)) throw DomainError("bound_thm41: u must be > 0");
    const double delta = checked_delta(oracle_second_central(config, u));
    return params.M * std::pow(delta * delta / (params.k1 * u + params.k2 * u * u), params.gamma / 2.0);
}

struct Thm71Bound {
    double bound = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    PartialModuli moduli;
};

/// 2 (omega_1(g; delta1) + omega_2(g; delta2)) with delta_k^2 the coordinate
/// second central moments. The partial moduli range over the sampling support.
[[nodiscard]] inline Thm71Bound bound_thm71(const BivariateConfig& config, const BivariateFunction& g, double y1,
                                            double y2, int resolution = 401) {
    config.validate();
    const double d1 = checked_delta(oracle_second_central(config.first, y1));
    const double d2 = checked_delta(oracle_second_central(config.second, y2));
    // A zero delta only occurs where the operator interpolates; the modulus there is 0.
    constexpr double tiny = std::numeric_limits<double>::min();
    auto w = partial_moduli(g, std::max(d1, tiny), std::max(d2, tiny), resolution, config.first.support(),
                            config.second.support());
    if (d1 == 0.0) w.first.value = 0.0;
    if (d2 == 0.0) w.second.value = 0.0;
    return {2.0 * (w.first.value + w.second.value), d1, d2, w};
}

/// min_{e in E} |y - e|
[[nodiscard]] inline double distance_to_set(double y, const std::vector<double>& set) {
    if (set.empty()) throw DomainError("distance_to_set: empty set");
    double best = std::numeric_limits<double>::infinity();
    for (double e : set) best = std::min(best, std::abs(y - e));
    return best;
}

/// M {(d1^tau1 + delta1^tau1)(d2^tau2 + delta2^tau2) + d1^tau1 d2^tau2}
[[nodiscard]] inline double bound_thm72(const BivariateConfig& config, const LipschitzParams& params, double y1,
                                        double y2) {
    params.validate();
    if (params.E_set.empty()) throw DomainError("bound_thm72: E_set must be non-empty");
    const double d1 = std::pow(distance_to_set(y1, params.E_set), params.tau1);
    const double d2 = std::pow(distance_to_set(y2, params.E_set), params.tau2);
    const double s1 = std::pow(checked_delta(oracle_second_central(config.first, y1)), params.tau1);
    const double s2 = std::pow(checked_delta(oracle_second_central(config.second, y2)), params.tau2);
    return params.M * ((d1 + s1) * (d2 + s2) + d1 * d2);
}

struct WeightedNormReport {
    std::vector<int> n_ladder;
    /// norms[r][i] = sup_u |K(e_i; u) - u^i| / (1 + u^2) for n_ladder[r], i = 0, 1, 2
    std::vector<std::array<double, 3>> norms;

    [[nodiscard]] CsvTable to_csv() const {
        CsvTable t{{"n", "norm_e0", "norm_e1", "norm_e2"}, {}};
        for (std::size_t r = 0; r < n_ladder.size(); ++r)
            t.rows.push_back({static_cast<double>(n_ladder[r]), norms[r][0], norms[r][1], norms[r][2]});
        return t;
    }
};

/// Weighted sup-norm defect of the test monomials along a ladder of m.
/// `fixed` supplies q, lambda, rho and the unchecked flag; its m is ignored.
[[nodiscard]] inline WeightedNormReport weighted_convergence(const OperatorConfig& fixed,
                                                             const std::vector<int>& n_ladder, const Grid& grid) {
    if (n_ladder.empty()) throw DomainError("weighted_convergence: empty ladder");
    if (!std::is_sorted(n_ladder.begin(), n_ladder.end()) ||
        std::adjacent_find(n_ladder.begin(), n_ladder.end()) != n_ladder.end())
        throw DomainError("weighted_convergence: ladder must be strictly increasing");
    if (!fixed.basis.unchecked && (grid.lo() < 0.0 || grid.hi() > 1.0))
        throw DomainError("weighted_convergence: grid outside [0,1] requires unchecked");

    WeightedNormReport report;
    report.n_ladder = n_ladder;
    for (int n : n_ladder) {
        OperatorConfig config = fixed;
        config.basis.m = n;
        config.validate();
        std::array<double, 3> row{};
        for (int i = 0; i < 3; ++i) {
            const auto sup = sup_on_grid(
                [&](double u) { return std::abs(oracle_moment(config, i, u) - ipow(u, i)) / (1.0 + u * u); }, grid);
            row[i] = sup.value;
        }
        report.norms.push_back(row);
    }
    return report;
}

/// sup over the grid of |K(e_k; u) - u^k| from the summation path.
[[nodiscard]] inline double korovkin_defect(const OperatorConfig& config, int k, const Grid& grid) {
    return sup_on_grid([&](double u) { return std::abs(oracle_moment(config, k, u) - ipow(u, k)); }, grid).value;
}

/// True when every entry is at most (1 + slack) times its predecessor.
[[nodiscard]] inline bool non_increasing_with_slack(const std::vector<double>& values, double slack) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] * (1.0 + slack)) return false;
    return true;
}

} // namespace skl
