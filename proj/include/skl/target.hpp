#pragma once

// Target functions fed to the operators: univariate callables, polynomials,
// and bivariate functions that may declare a separable (tensor) structure.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skl/numerics.hpp"

namespace skl {

/// Dense polynomial, coefficients in ascending degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

    [[nodiscard]] static Polynomial monomial(int k) {
        std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
        c.back() = 1.0;
        return Polynomial(std::move(c));
    }

    [[nodiscard]] double operator()(double x) const noexcept {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    [[nodiscard]] Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial({0.0});
        std::vector<double> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
        return Polynomial(std::move(d));
    }

    [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return c_; }
    [[nodiscard]] int degree() const noexcept { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }

private:
    std::vector<double> c_;
};

/// Named real function of one variable.
class TargetFunction {
public:
    TargetFunction(std::string name, std::function<double(double)> fn)
        : name_(std::move(name)), fn_(std::move(fn)) {}

    TargetFunction(std::string name, Polynomial poly)
        : name_(std::move(name)), poly_(std::move(poly)) {
        fn_ = [p = *poly_](double x) { return p(x); };
    }

    [[nodiscard]] double operator()(double x) const { return fn_(x); }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::optional<Polynomial>& polynomial() const noexcept { return poly_; }

private:
    std::string name_;
    std::function<double(double)> fn_;
    std::optional<Polynomial> poly_;
};

/// Named real function of two variables. When built with `separable`, the
/// factors are kept so tensor operators can integrate each coordinate alone.
class BivariateFunction {
public:
    BivariateFunction(std::string name, std::function<double(double, double)> fn)
        : name_(std::move(name)), fn_(std::move(fn)) {}

    [[nodiscard]] static BivariateFunction separable(std::string name, TargetFunction first,
                                                     TargetFunction second) {
        BivariateFunction g(std::move(name), [a = first, b = second](double s, double t) { return a(s) * b(t); });
        g.factors_ = std::make_shared<std::pair<TargetFunction, TargetFunction>>(std::move(first), std::move(second));
        return g;
    }

    [[nodiscard]] double operator()(double s, double t) const { return fn_(s, t); }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] bool is_separable() const noexcept { return factors_ != nullptr; }
    [[nodiscard]] const TargetFunction& first_factor() const { return factors_->first; }
    [[nodiscard]] const TargetFunction& second_factor() const { return factors_->second; }

    /// g^T(s,t) = g(t,s).
    [[nodiscard]] BivariateFunction transposed() const {
        if (factors_) return separable(name_ + "^T", factors_->second, factors_->first);
        return BivariateFunction(name_ + "^T", [fn = fn_](double s, double t) { return fn(t, s); });
    }

private:
    std::string name_;
    std::function<double(double, double)> fn_;
    std::shared_ptr<const std::pair<TargetFunction, TargetFunction>> factors_;
};

namespace functions {

[[nodiscard]] inline TargetFunction constant(double c) {
    return TargetFunction("const:" + std::to_string(c), Polynomial({c}));
}

/// e_k(s) = s^k
[[nodiscard]] inline TargetFunction monomial(int k) {
    return TargetFunction("e" + std::to_string(k), Polynomial::monomial(k));
}

/// y^3 - 5y^2 + 6y + 2, the univariate test function of the error table.
[[nodiscard]] inline TargetFunction table1_poly() {
    return TargetFunction("table1-poly", Polynomial({2.0, 6.0, -5.0, 1.0}));
}

/// |d/dy (y^3 - 5y^2 + 6y + 2)| <= 6 on [0,1].
inline constexpr double table1_poly_lipschitz = 6.0;

/// y1^3 y2^2, the bivariate surface test function.
[[nodiscard]] inline BivariateFunction fig3_poly() {
    return BivariateFunction::separable("fig3-poly", monomial(3), monomial(2));
}

[[nodiscard]] inline BivariateFunction constant2(double c) {
    return BivariateFunction::separable("const:" + std::to_string(c), constant(c), constant(1.0));
}

} // namespace functions

} // namespace skl
