#pragma once

// lambda-Bernstein-Schurer basis functions p_{m,i}^lambda(y), i = 0..m+q.

#include <cmath>
#include <string>
#include <vector>

#include "skl/numerics.hpp"

namespace skl {

/// Degree m >= 2, Schurer shift q >= 0 and shape parameter lambda in [0,1].
///
/// `unchecked` lifts the lambda and evaluation-point range checks; positivity
/// of the basis is no longer guaranteed once it is set.
struct BasisParams {
    int m = 2;
    int q = 0;
    double lambda = 1.0;
    bool unchecked = false;

    [[nodiscard]] int degree() const noexcept { return m + q; }

    void validate() const {
        if (m < 2) throw DomainError("basis: m must be >= 2, got " + std::to_string(m));
        if (q < 0) throw DomainError("basis: q must be >= 0, got " + std::to_string(q));
        if (!std::isfinite(lambda)) throw DomainError("basis: lambda must be finite");
        if (!unchecked && (lambda < 0.0 || lambda > 1.0))
            throw DomainError("basis: lambda must lie in [0,1] (pass unchecked to override)");
    }
};

namespace detail {

inline void check_point(const BasisParams& params, double y) {
    if (!std::isfinite(y)) throw DomainError("basis: non-finite evaluation point");
    if (!params.unchecked && (y < 0.0 || y > 1.0))
        throw DomainError("basis: evaluation point " + std::to_string(y) + " outside [0,1]");
}

// Three-term form with the y and (1-y) prefactors absorbed into the powers:
//   (1-l) C(N-2,i)   y^i     (1-y)^(N-i-1)
// + (1-l) C(N-2,i-2) y^(i-1) (1-y)^(N-i)
// +   l   C(N,i)     y^i     (1-y)^(N-i)
// Each term is dropped when its binomial vanishes, so no negative power is formed.
inline double basis_weight_unchecked(const BasisParams& params, int i, double y) {
    const int n = params.degree();
    const double z = 1.0 - y;
    const auto& table = binomial_table();
    double result = 0.0;
    if (i <= n - 2) result += (1.0 - params.lambda) * table.value(n - 2, i) * ipow(y, i) * ipow(z, n - i - 1);
    if (i >= 2) result += (1.0 - params.lambda) * table.value(n - 2, i - 2) * ipow(y, i - 1) * ipow(z, n - i);
    result += params.lambda * table.value(n, i) * ipow(y, i) * ipow(z, n - i);
    return result;
}

} // namespace detail

/// p_{m,i}^lambda(y) for 0 <= i <= m+q.
[[nodiscard]] inline double basis_weight(const BasisParams& params, int i, double y) {
    params.validate();
    if (i < 0 || i > params.degree())
        throw DomainError("basis: index " + std::to_string(i) + " outside [0, m+q]");
    detail::check_point(params, y);
    return detail::basis_weight_unchecked(params, i, y);
}

/// All m+q+1 basis weights at y.
[[nodiscard]] inline std::vector<double> basis_row(const BasisParams& params, double y) {
    params.validate();
    detail::check_point(params, y);
    std::vector<double> row(static_cast<std::size_t>(params.degree()) + 1);
    for (int i = 0; i <= params.degree(); ++i) row[i] = detail::basis_weight_unchecked(params, i, y);
    return row;
}

} // namespace skl
