#pragma once

// Combinatorics, quadrature and grid utilities shared by the operator code.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace skl {

/// Raised when an argument falls outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a target function produces a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }
    explicit operator double() const noexcept { return value(); }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// x^n for n >= 0 by repeated squaring. 0^0 is 1.
[[nodiscard]] constexpr double ipow(double x, int n) noexcept {
    double result = 1.0;
    while (n > 0) {
        if (n & 1) result *= x;
        x *= x;
        n >>= 1;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Binomial coefficients
// ---------------------------------------------------------------------------

/// Binomial coefficient C(n,k). Exact as a 64-bit integer for n <= exact_limit;
/// above that a double (long double Pascal rows, then long double products)
/// plus a natural-log magnitude from lgamma for sizes that overflow a double.
struct BinomialValue {
    bool exact = true;
    std::uint64_t integer = 0; ///< valid when exact
    double log_magnitude = -std::numeric_limits<double>::infinity();
    double approx = 0.0; ///< valid when !exact; inf once C(n,k) overflows

    [[nodiscard]] bool is_zero() const noexcept {
        return exact ? integer == 0 : std::isinf(log_magnitude) && log_magnitude < 0;
    }
    [[nodiscard]] double to_double() const noexcept {
        return exact ? static_cast<double>(integer) : approx;
    }
};

class BinomialTable {
public:
    static constexpr int exact_limit = 64;
    static constexpr int table_limit = 400;

    BinomialTable() {
        rows_.reserve(exact_limit + 1);
        for (int n = 0; n <= exact_limit; ++n) {
            std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 1);
            for (int k = 1; k < n; ++k)
                row[k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
            rows_.push_back(std::move(row));
        }
        std::vector<long double> prev(rows_.back().begin(), rows_.back().end()), cur;
        for (int n = exact_limit + 1; n <= table_limit; ++n) {
            cur.assign(static_cast<std::size_t>(n) + 1, 1.0L);
            for (int k = 1; k < n; ++k) cur[k] = prev[k - 1] + prev[k];
            wide_rows_.emplace_back(cur.begin(), cur.end());
            prev.swap(cur);
        }
    }

    [[nodiscard]] BinomialValue operator()(int n, int k) const {
        if (n < 0) throw DomainError("binomial: negative top index " + std::to_string(n));
        if (k < 0 || k > n) return BinomialValue{true, 0, -std::numeric_limits<double>::infinity(), 0.0};
        if (n <= exact_limit) {
            const auto v = rows_[n][k];
            return BinomialValue{true, v, std::log(static_cast<double>(v)), 0.0};
        }
        const double lg = log_binomial(n, k);
        if (n <= table_limit) return BinomialValue{false, 0, lg, wide_rows_[n - exact_limit - 1][k]};
        const int kk = std::min(k, n - k);
        long double v = 1.0L;
        for (int j = 1; j <= kk && std::isfinite(static_cast<double>(v)); ++j) v = v * (n - kk + j) / j;
        return BinomialValue{false, 0, lg, static_cast<double>(v)};
    }

    /// C(n,k) as a double; 0 outside 0 <= k <= n.
    [[nodiscard]] double value(int n, int k) const { return (*this)(n, k).to_double(); }

    [[nodiscard]] static double log_binomial(int n, int k) noexcept {
        return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    }

private:
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::vector<double>> wide_rows_;
};

[[nodiscard]] inline const BinomialTable& binomial_table() {
    static const BinomialTable table;
    return table;
}

/// C(n,k) with C(n,k) = 0 for k < 0 or k > n. Throws DomainError for n < 0.
[[nodiscard]] inline BinomialValue binomial(int n, int k) { return binomial_table()(n, k); }

[[nodiscard]] inline double binomial_value(int n, int k) { return binomial_table().value(n, k); }

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature
// ---------------------------------------------------------------------------

/// Gauss-Legendre rule mapped to [0,1]; weights sum to one.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

namespace detail {

inline QuadratureRule make_gauss_legendre(int order) {
    if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int i = 0; i < (order + 1) / 2; ++i) {
        long double x = std::cos(pi * (i + 0.75L) / (order + 0.5L));
        long double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1);
        }
        const long double w = 2 / ((1 - x * x) * dp * dp);
        // x is the i-th largest root on [-1,1]; map to [0,1] and store ascending.
        rule.nodes[order - 1 - i] = static_cast<double>((1 + x) / 2);
        rule.nodes[i] = static_cast<double>((1 - x) / 2);
        rule.weights[order - 1 - i] = static_cast<double>(w / 2);
        rule.weights[i] = static_cast<double>(w / 2);
    }
    return rule;
}

} // namespace detail

/// Cached Gauss-Legendre rule on [0,1].
[[nodiscard]] inline const QuadratureRule& gauss_legendre(int order) {
    if (order == 32) {
        static const QuadratureRule rule32 = detail::make_gauss_legendre(32);
        return rule32;
    }
    static thread_local std::map<int, QuadratureRule> cache;
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, detail::make_gauss_legendre(order)).first;
    return it->second;
}

/// Subdivision policy for integrals over [0,1].
///
/// The first cell [0, 1/subdivisions] is split geometrically `graded_levels`
/// times toward zero, which controls the endpoint singularity of t^rho, rho < 1.
struct QuadraturePolicy {
    int order = 32;
    int subdivisions = 8;
    int graded_levels = 24;
    int graded_order = 12; ///< nodes per geometric cell; each spans a factor of 2, so few suffice

    /// Default policy for integrands built on t^rho.
    [[nodiscard]] static QuadraturePolicy for_exponent(double rho) {
        QuadraturePolicy p;
        p.graded_levels = graded_levels_for(rho);
        return p;
    }

    /// 24 levels unless rho is a whole number; t^rho is then a polynomial and needs none.
    [[nodiscard]] static int graded_levels_for(double rho) noexcept { return rho == std::floor(rho) ? 0 : 24; }
};

/// Flattened composite rule: every node and weight used by a policy on [0,1].
struct CompositeRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

[[nodiscard]] inline CompositeRule composite_rule(const QuadraturePolicy& policy) {
    if (policy.subdivisions < 1) throw DomainError("quadrature: subdivisions must be >= 1");
    if (policy.graded_levels < 0) throw DomainError("quadrature: graded_levels must be >= 0");
    const auto& base = gauss_legendre(policy.order);
    const auto& graded = gauss_legendre(policy.graded_order);

    std::vector<double> edges{0.0};
    const double h = 1.0 / policy.subdivisions;
    for (int level = policy.graded_levels; level >= 1; --level)
        edges.push_back(std::ldexp(h, -level));
    for (int s = 1; s <= policy.subdivisions; ++s)
        edges.push_back(s == policy.subdivisions ? 1.0 : s * h);

    CompositeRule out;
    const auto graded_cells = static_cast<std::size_t>(policy.graded_levels);
    for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
        // cell 0 touches the singularity and keeps the full-order rule
        const auto& rule = c > 0 && c <= graded_cells ? graded : base;
        const double a = edges[c];
        const double width = edges[c + 1] - a;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            out.nodes.push_back(a + width * rule.nodes[j]);
            out.weights.push_back(width * rule.weights[j]);
        }
    }
    return out;
}

/// Composite Gauss-Legendre estimate of the integral of f over [0,1].
template <typename F>
[[nodiscard]] double integrate_unit(F&& f, const QuadraturePolicy& policy) {
    const auto rule = composite_rule(policy);
    CompensatedSum acc;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double v = f(rule.nodes[j]);
        if (!std::isfinite(v))
            throw EvaluationError("integrate_unit: non-finite integrand at t = " +
                                  std::to_string(rule.nodes[j]));
        acc += rule.weights[j] * v;
    }
    return acc.value();
}

template <typename F>
[[nodiscard]] double integrate_unit(F&& f, int subdivisions = 8) {
    QuadraturePolicy policy;
    policy.subdivisions = subdivisions;
    return integrate_unit(std::forward<F>(f), policy);
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// Uniform grid including both endpoints.
class Grid {
public:
    Grid(double lo, double hi, int count) : lo_(lo), hi_(hi), count_(count) {
        if (count < 2) throw DomainError("Grid: count must be >= 2");
        if (!(hi > lo)) throw DomainError("Grid: hi must exceed lo");
    }

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }
    [[nodiscard]] int count() const noexcept { return count_; }
    [[nodiscard]] double step() const noexcept { return (hi_ - lo_) / (count_ - 1); }

    [[nodiscard]] double operator[](int i) const noexcept {
        if (i == count_ - 1) return hi_;
        return lo_ + (hi_ - lo_) * static_cast<double>(i) / (count_ - 1);
    }

    [[nodiscard]] std::vector<double> points() const {
        std::vector<double> p(count_);
        for (int i = 0; i < count_; ++i) p[i] = (*this)[i];
        return p;
    }

private:
    double lo_;
    double hi_;
    int count_;
};

inline constexpr int default_sup_resolution = 10001;

struct SupResult {
    double value;
    double argmax;
};

/// Maximum of f over the grid; ties go to the smallest abscissa.
template <typename F>
[[nodiscard]] SupResult sup_on_grid(F&& f, const Grid& grid) {
    SupResult best{-std::numeric_limits<double>::infinity(), grid.lo()};
    for (int i = 0; i < grid.count(); ++i) {
        const double x = grid[i];
        const double v = f(x);
        if (!std::isfinite(v))
            throw EvaluationError("sup_on_grid: non-finite value at " + std::to_string(x));
        if (v > best.value) best = {v, x};
    }
    return best;
}

} // namespace skl
