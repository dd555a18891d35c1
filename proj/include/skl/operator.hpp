#pragma once

// Univariate lambda-Bernstein-Schurer-Kantorovich operator
//
//   K(f; u) = sum_{i=0}^{m+q} p_{m,i}^lambda(u) * int_0^1 f((i + t^rho) / (m+1)) dt
//
// with its raw and central moments. Moments come in two flavours: the
// published closed forms (evaluated as printed, with n = m) and an exact
// summation over the basis. Everything downstream consumes the summation.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "skl/basis.hpp"
#include "skl/csv.hpp"
#include "skl/modulus.hpp"
#include "skl/numerics.hpp"
#include "skl/target.hpp"

namespace skl {

struct OperatorConfig {
    BasisParams basis;
    double rho = 1.0; ///< Kantorovich exponent, > 0

    [[nodiscard]] int m() const noexcept { return basis.m; }
    [[nodiscard]] int q() const noexcept { return basis.q; }
    [[nodiscard]] double lambda() const noexcept { return basis.lambda; }
    [[nodiscard]] int degree() const noexcept { return basis.degree(); }

    /// Largest argument at which the operator samples f: (m+q+1)/(m+1).
    [[nodiscard]] double sample_upper() const noexcept {
        return static_cast<double>(degree() + 1) / (m() + 1);
    }

    /// Closed interval holding every evaluation point and every sample argument.
    [[nodiscard]] Interval support() const noexcept { return {0.0, std::max(1.0, sample_upper())}; }

    [[nodiscard]] QuadraturePolicy quadrature() const { return QuadraturePolicy::for_exponent(rho); }

    void validate() const {
        basis.validate();
        if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("operator: rho must be > 0");
    }
};

[[nodiscard]] inline OperatorConfig make_config(int m, int q, double lambda, double rho, bool unchecked = false) {
    OperatorConfig c{{m, q, lambda, unchecked}, rho};
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// Operator application
// ---------------------------------------------------------------------------

/// int_0^1 f((i + t^rho)/(m+1)) dt for i = 0..m+q. Independent of the evaluation point.
[[nodiscard]] inline std::vector<double> kantorovich_averages(const OperatorConfig& config, const TargetFunction& f,
                                                              const QuadraturePolicy& policy) {
    config.validate();
    const auto rule = composite_rule(policy);
    std::vector<double> powered(rule.nodes.size());
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) powered[j] = std::pow(rule.nodes[j], config.rho);

    const double scale = 1.0 / (config.m() + 1);
    std::vector<double> averages(static_cast<std::size_t>(config.degree()) + 1);
    for (int i = 0; i <= config.degree(); ++i) {
        CompensatedSum acc;
        for (std::size_t j = 0; j < powered.size(); ++j) {
            const double s = (i + powered[j]) * scale;
            const double v = f(s);
            if (!std::isfinite(v))
                throw EvaluationError("operator: " + f.name() + " is non-finite at " + std::to_string(s));
            acc += rule.weights[j] * v;
        }
        averages[i] = acc.value();
    }
    return averages;
}

namespace detail {

inline void check_eval_point(const OperatorConfig& config, double u) {
    if (!std::isfinite(u)) throw DomainError("operator: non-finite evaluation point");
    if (!config.basis.unchecked && (u < 0.0 || u > 1.0))
        throw DomainError("operator: evaluation point " + std::to_string(u) + " outside [0,1]");
}

/// sum_i p_i(u) * coefficients[i]
inline double basis_combination(const OperatorConfig& config, const std::vector<double>& coefficients, double u) {
    check_eval_point(config, u);
    const auto row = basis_row(config.basis, u);
    CompensatedSum acc;
    for (std::size_t i = 0; i < row.size(); ++i) acc += row[i] * coefficients[i];
    return acc.value();
}

} // namespace detail

/// The operator with a fixed target function; the inner integrals are computed once.
class BoundOperator {
public:
    BoundOperator(OperatorConfig config, const TargetFunction& f)
        : BoundOperator(config, f, config.quadrature()) {}

    BoundOperator(OperatorConfig config, const TargetFunction& f, const QuadraturePolicy& policy)
        : config_(config), averages_(kantorovich_averages(config, f, policy)) {}

    [[nodiscard]] double operator()(double u) const { return detail::basis_combination(config_, averages_, u); }

    [[nodiscard]] const OperatorConfig& config() const noexcept { return config_; }
    [[nodiscard]] const std::vector<double>& averages() const noexcept { return averages_; }

private:
    OperatorConfig config_;
    std::vector<double> averages_;
};

/// K(f; u) by quadrature of the inner integrals.
[[nodiscard]] inline double apply(const OperatorConfig& config, const TargetFunction& f, double u) {
    return BoundOperator(config, f)(u);
}

[[nodiscard]] inline double apply(const OperatorConfig& config, const TargetFunction& f, double u,
                                  const QuadraturePolicy& policy) {
    return BoundOperator(config, f, policy)(u);
}

// ---------------------------------------------------------------------------
// Exact summation path
// ---------------------------------------------------------------------------

/// int_0^1 ((i + t^rho)/(m+1))^k dt = (m+1)^{-k} sum_j C(k,j) i^{k-j} / (rho j + 1).
[[nodiscard]] inline double monomial_kantorovich_integral(const OperatorConfig& config, int i, int k) {
    config.validate();
    if (i < 0 || i > config.degree()) throw DomainError("monomial integral: index outside [0, m+q]");
    if (k < 0) throw DomainError("monomial integral: k must be >= 0");
    CompensatedSum acc;
    for (int j = 0; j <= k; ++j)
        acc += binomial_value(k, j) * ipow(static_cast<double>(i), k - j) / (config.rho * j + 1.0);
    return acc.value() / ipow(config.m() + 1.0, k);
}

/// K(e_k; u) by exact summation over the basis.
[[nodiscard]] inline double oracle_moment(const OperatorConfig& config, int k, double u) {
    std::vector<double> coefficients(static_cast<std::size_t>(config.degree()) + 1);
    for (int i = 0; i <= config.degree(); ++i) coefficients[i] = monomial_kantorovich_integral(config, i, k);
    return detail::basis_combination(config, coefficients, u);
}

/// K((s-u)^2; u) summed directly: each inner integral is a^2 + 2ab/(rho+1) + b^2/(2rho+1)
/// with a = i/(m+1) - u, b = 1/(m+1).
[[nodiscard]] inline double oracle_second_central(const OperatorConfig& config, double u) {
    config.validate();
    const double b = 1.0 / (config.m() + 1);
    std::vector<double> coefficients(static_cast<std::size_t>(config.degree()) + 1);
    for (int i = 0; i <= config.degree(); ++i) {
        const double a = i * b - u;
        coefficients[i] = a * a + 2.0 * a * b / (config.rho + 1.0) + b * b / (2.0 * config.rho + 1.0);
    }
    return detail::basis_combination(config, coefficients, u);
}

// ---------------------------------------------------------------------------
// Published closed forms, evaluated as printed with n = m (no q dependence).
// ---------------------------------------------------------------------------

namespace closed_form {

[[nodiscard]] inline double e1(double n, double lambda, double rho, double u) {
    return (n + 2.0 * (lambda - 1.0)) / (n + 1.0) * u +
           ((lambda + 1.0) * (rho + 1.0) + 1.0) / (2.0 * (rho + 1.0) * (n + 1.0));
}

[[nodiscard]] inline double second_order_constant(double n, double lambda, double rho) {
    return (2.0 * n * (2.0 * rho + 1.0) +
            (lambda + 1.0) * (2.0 * rho + 1.0) * ((lambda + 2.0) * (rho + 1.0) + 2.0) + rho + 1.0) /
           ((2.0 * rho + 1.0) * (rho + 1.0) * (n + 1.0) * (n + 1.0));
}

[[nodiscard]] inline double e2(double n, double lambda, double rho, double u) {
    const double np1 = n + 1.0;
    const double quad = (1.0 + (4.0 * lambda - 3.0) / n) * n * n * u * u / (np1 * np1);
    const double lin = ((rho + 1.0) * (n * (2.0 * lambda + 3.0) + (lambda - 1.0) * (2.0 * lambda + 7.0)) +
                        4.0 * (lambda - 1.0)) /
                       ((rho + 1.0) * np1 * np1) * u;
    return quad + lin + second_order_constant(n, lambda, rho);
}

[[nodiscard]] inline double psi1(double n, double lambda, double rho, double u) {
    return (2.0 * lambda - 3.0) / (n + 1.0) * u +
           ((lambda + 1.0) * (rho + 1.0) + 1.0) / ((rho + 1.0) * (n + 1.0));
}

/// `n_linear` is the n appearing inside the linear coefficient; it differs from
/// n only in the bivariate transcription, which prints m1 there for the second coordinate.
[[nodiscard]] inline double psi2(double n, double lambda, double rho, double u, double n_linear) {
    const double np1 = n + 1.0;
    const double quad =
        ((1.0 + (4.0 * lambda - 3.0) / n) * n * n / (np1 * np1) - (2.0 * n + 4.0 * lambda - 1.0) / np1 + 1.0) * u * u;
    const double lin =
        ((rho + 1.0) * (n_linear * (2.0 * lambda + 3.0) + (lambda - 1.0) * (2.0 * lambda + 7.0) - 2.0 * (lambda + 1.0)) +
         lambda - 6.0) /
        ((rho + 1.0) * np1 * np1) * u;
    return quad + lin + second_order_constant(n, lambda, rho);
}

[[nodiscard]] inline double psi2(double n, double lambda, double rho, double u) {
    return psi2(n, lambda, rho, u, n);
}

} // namespace closed_form

struct MomentSet {
    double at = 0.0;
    double e0 = 1.0, e1 = 0.0, e2 = 0.0;
    double oracle_e0 = 0.0, oracle_e1 = 0.0, oracle_e2 = 0.0;
    double max_discrepancy = 0.0;
};

[[nodiscard]] inline MomentSet moments_closed(const OperatorConfig& config, double u) {
    config.validate();
    const double n = config.m();
    MomentSet s;
    s.at = u;
    s.e0 = 1.0;
    s.e1 = closed_form::e1(n, config.lambda(), config.rho, u);
    s.e2 = closed_form::e2(n, config.lambda(), config.rho, u);
    s.oracle_e0 = oracle_moment(config, 0, u);
    s.oracle_e1 = oracle_moment(config, 1, u);
    s.oracle_e2 = oracle_moment(config, 2, u);
    s.max_discrepancy = std::max({std::abs(s.e0 - s.oracle_e0), std::abs(s.e1 - s.oracle_e1),
                                  std::abs(s.e2 - s.oracle_e2)});
    return s;
}

struct CentralMomentSet {
    double at = 0.0;
    double psi1 = 0.0, psi2 = 0.0;               ///< closed forms as printed
    double oracle_psi1 = 0.0, oracle_psi2 = 0.0; ///< oracle e-values through the algebraic identity
    double direct_psi2 = 0.0;                    ///< direct summation of (s-u)^2
    /// |direct_psi2 - (e2 - 2u e1 + u^2)| with both sides from the summation path.
    double identity_residual = 0.0;
    /// |psi2 - (e2 - 2u e1 + u^2)| with both sides from the closed forms.
    double closed_identity_residual = 0.0;
};

[[nodiscard]] inline CentralMomentSet central_moments(const OperatorConfig& config, double u) {
    const auto raw = moments_closed(config, u);
    const double n = config.m();
    CentralMomentSet c;
    c.at = u;
    c.psi1 = closed_form::psi1(n, config.lambda(), config.rho, u);
    c.psi2 = closed_form::psi2(n, config.lambda(), config.rho, u);
    c.oracle_psi1 = raw.oracle_e1 - u * raw.oracle_e0;
    c.oracle_psi2 = raw.oracle_e2 - 2.0 * u * raw.oracle_e1 + u * u * raw.oracle_e0;
    c.direct_psi2 = oracle_second_central(config, u);
    c.identity_residual = std::abs(c.direct_psi2 - c.oracle_psi2);
    c.closed_identity_residual = std::abs(c.psi2 - (raw.e2 - 2.0 * u * raw.e1 + u * u));
    return c;
}

// ---------------------------------------------------------------------------
// Error curves
// ---------------------------------------------------------------------------

struct ErrorRow {
    double x = 0.0;
    double error = 0.0; ///< |K(f;x) - f(x)|
    double bound = 0.0; ///< 2 * omega(f; delta)
    double delta = 0.0; ///< sqrt(K((s-x)^2; x))
};

struct ErrorTable {
    std::vector<ErrorRow> rows;

    [[nodiscard]] CsvTable to_csv() const {
        CsvTable t{{"x", "error", "bound_thm33", "delta"}, {}};
        for (const auto& r : rows) t.rows.push_back({r.x, r.error, r.bound, r.delta});
        return t;
    }
};

/// Second central moment from the summation path, clamped at zero; rejects
/// values below -1e-12, which would mean the summation itself is broken.
[[nodiscard]] inline double checked_delta(double psi2) {
    if (psi2 < -1e-12) throw std::logic_error("negative second central moment " + std::to_string(psi2));
    return std::sqrt(std::max(psi2, 0.0));
}

/// 2 omega(f; delta) with delta = sqrt(psi2(u)), the modulus taken over config.support().
struct ModulusBound {
    double bound = 0.0;
    double delta = 0.0;
    ModulusEstimate modulus;
};

template <typename F>
[[nodiscard]] ModulusBound modulus_bound(const OperatorConfig& config, F&& f, double u,
                                         int resolution = default_sup_resolution) {
    const double delta = checked_delta(oracle_second_central(config, u));
    if (delta == 0.0) return {0.0, 0.0, {0.0, 0.0, ModulusKind::full, resolution, 0.0}};
    auto w = modulus(f, config.support(), delta, resolution);
    return {2.0 * w.value, delta, w};
}

[[nodiscard]] inline ErrorTable error_curve(const OperatorConfig& config, const TargetFunction& f,
                                            const std::vector<double>& points,
                                            int modulus_resolution = default_sup_resolution) {
    const BoundOperator op(config, f);
    ErrorTable table;
    table.rows.reserve(points.size());
    for (double x : points) {
        const auto b = modulus_bound(config, f, x, modulus_resolution);
        table.rows.push_back({x, std::abs(op(x) - f(x)), b.bound, b.delta});
    }
    return table;
}

[[nodiscard]] inline ErrorTable error_curve(const OperatorConfig& config, const TargetFunction& f, const Grid& grid,
                                            int modulus_resolution = default_sup_resolution) {
    if (!config.basis.unchecked && (grid.lo() < 0.0 || grid.hi() > 1.0))
        throw DomainError("error_curve: grid must lie in [0,1]");
    return error_curve(config, f, grid.points(), modulus_resolution);
}

} // namespace skl
