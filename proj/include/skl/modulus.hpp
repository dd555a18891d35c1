#pragma once

// Grid estimates of the modulus of continuity and the partial moduli of a
// bivariate function. Every estimate here is a lower bound on the true sup:
// only grid pairs are compared.

#include <algorithm>
#include <cmath>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "skl/numerics.hpp"
#include "skl/target.hpp"

namespace skl {

enum class ModulusKind { full, partial_1, partial_2 };

struct ModulusEstimate {
    double delta = 0.0;
    double value = 0.0;
    ModulusKind kind = ModulusKind::full;
    int grid_resolution = 0;
    double grid_step = 0.0;

    /// Grid value plus lipschitz * grid_step, for callers holding a derivative bound.
    [[nodiscard]] double padded(double lipschitz) const noexcept { return value + lipschitz * grid_step; }
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

inline constexpr int min_modulus_resolution = 100;

namespace detail {

/// Largest index offset w with w * step <= delta (absorbing rounding noise).
inline int window_span(double delta, double step) {
    return static_cast<int>(std::floor(delta / step * (1.0 + 1e-12) + 1e-9));
}

/// max over windows [i, i+span] of (max - min), in O(n) with monotone deques.
inline double sliding_oscillation(std::span<const double> values, int span) {
    const int n = static_cast<int>(values.size());
    if (n == 0 || span <= 0) return 0.0;
    if (span >= n - 1) {
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        return *hi - *lo;
    }
    std::deque<int> maxq, minq;
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
        while (!maxq.empty() && values[maxq.back()] <= values[j]) maxq.pop_back();
        while (!minq.empty() && values[minq.back()] >= values[j]) minq.pop_back();
        maxq.push_back(j);
        minq.push_back(j);
        const int start = j - span;
        if (maxq.front() < start) maxq.pop_front();
        if (minq.front() < start) minq.pop_front();
        best = std::max(best, values[maxq.front()] - values[minq.front()]);
    }
    return best;
}

inline void check_modulus_args(double delta, int resolution) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw DomainError("modulus: delta must be a positive finite number");
    if (resolution < min_modulus_resolution)
        throw DomainError("modulus: resolution must be >= " + std::to_string(min_modulus_resolution));
}

} // namespace detail

/// omega(f; delta) on `domain`, sampled on `resolution` uniform points.
template <typename F>
[[nodiscard]] ModulusEstimate modulus(F&& f, Interval domain, double delta,
                                      int resolution = default_sup_resolution) {
    detail::check_modulus_args(delta, resolution);
    const Grid grid(domain.lo, domain.hi, resolution);
    std::vector<double> values(resolution);
    for (int i = 0; i < resolution; ++i) {
        values[i] = f(grid[i]);
        if (!std::isfinite(values[i]))
            throw EvaluationError("modulus: non-finite value at " + std::to_string(grid[i]));
    }
    return {delta, detail::sliding_oscillation(values, detail::window_span(delta, grid.step())),
            ModulusKind::full, resolution, grid.step()};
}

struct PartialModuli {
    ModulusEstimate first;  ///< omega_1: variation in the first coordinate, sup over the second
    ModulusEstimate second; ///< omega_2: variation in the second coordinate, sup over the first
};

/// Partial moduli of g on domain1 x domain2 from one resolution x resolution sample.
inline PartialModuli partial_moduli(const BivariateFunction& g, double delta1, double delta2,
                                    int resolution = 401, Interval domain1 = {}, Interval domain2 = {}) {
    detail::check_modulus_args(delta1, resolution);
    detail::check_modulus_args(delta2, resolution);
    const Grid g1(domain1.lo, domain1.hi, resolution);
    const Grid g2(domain2.lo, domain2.hi, resolution);

    // samples[a * resolution + b] = g(g1[a], g2[b])
    std::vector<double> samples(static_cast<std::size_t>(resolution) * resolution);
    for (int a = 0; a < resolution; ++a)
        for (int b = 0; b < resolution; ++b) {
            const double v = g(g1[a], g2[b]);
            if (!std::isfinite(v)) throw EvaluationError("partial_moduli: non-finite sample");
            samples[static_cast<std::size_t>(a) * resolution + b] = v;
        }

    const int span1 = detail::window_span(delta1, g1.step());
    const int span2 = detail::window_span(delta2, g2.step());
    double w1 = 0.0, w2 = 0.0;
    std::vector<double> line(resolution);
    for (int b = 0; b < resolution; ++b) {
        for (int a = 0; a < resolution; ++a) line[a] = samples[static_cast<std::size_t>(a) * resolution + b];
        w1 = std::max(w1, detail::sliding_oscillation(line, span1));
    }
    for (int a = 0; a < resolution; ++a) {
        const std::span<const double> row(samples.data() + static_cast<std::size_t>(a) * resolution, resolution);
        w2 = std::max(w2, detail::sliding_oscillation(row, span2));
    }
    return {{delta1, w1, ModulusKind::partial_1, resolution, g1.step()},
            {delta2, w2, ModulusKind::partial_2, resolution, g2.step()}};
}

} // namespace skl
