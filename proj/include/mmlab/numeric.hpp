#pragma once

#include <concepts>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mmlab {

// Composite Simpson rule on [a, b] with n subintervals (n rounded up to even).
template <std::invocable<double> F>
double composite_simpson(F&& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; i += 2) odd += f(a + i * h);
    for (int i = 2; i < n; i += 2) even += f(a + i * h);
    return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

// Right-continuous step function given by breakpoints and values:
// value(t) = values[i] for t in [breaks[i], breaks[i+1]). Used as the
// time-dependent drift/volatility hook of the backward ODE system.
class PiecewiseConstantFn {
  public:
    explicit PiecewiseConstantFn(double constant) : breaks_{0.0}, values_{constant} {}

    PiecewiseConstantFn(std::vector<double> breaks, std::vector<double> values)
        : breaks_(std::move(breaks)), values_(std::move(values)) {
        if (breaks_.empty() || breaks_.size() != values_.size())
            throw std::invalid_argument("piecewise table needs matching, non-empty breaks/values");
        for (std::size_t i = 1; i < breaks_.size(); ++i)
            if (breaks_[i] <= breaks_[i - 1])
                throw std::invalid_argument("piecewise breakpoints must be strictly increasing");
    }

    double operator()(double t) const {
        std::size_t i = breaks_.size();
        while (i > 1 && t < breaks_[i - 1]) --i;
        return values_[i - 1];
    }

  private:
    std::vector<double> breaks_;
    std::vector<double> values_;
};

}  // namespace mmlab
