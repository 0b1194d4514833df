#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "mmlab/quotes.hpp"

namespace mmlab {

// The inventory truncation |q| <= q_max produced a non-positive v_q;
// the caller should enlarge q_max or refine the grid.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Backward ODE system for the exact exponential-utility solution under
// ABM-class dynamics (drift and volatility independent of s):
//   v_q'(t) = (k gamma q^2 sigma^2(t)/2 - gamma q b(t)) v_q(t)
//             - A (1 + k/gamma)^{-1-k/gamma} (v_{q+1}(t) + v_{q-1}(t)),
//   v_q(T) = 1,
// truncated to q in [-q_max, q_max] with v_{+-(q_max+1)} = 0.
struct OdeSystem {
    int q_max = 30;
    int n_steps = 2000;
    StrategyParams params;  // uses A, k, gamma, horizon
    std::function<double(double)> drift;  // b(t)
    std::function<double(double)> vol;    // sigma(t)

    // Constant-coefficient system from an ABM-class model; throws if the
    // model's drift depends on s (Ornstein-Uhlenbeck).
    static OdeSystem from_model(const MidPriceModel& model, const StrategyParams& params,
                                int q_max = 30, int n_steps = 2000);
};

class OdeSolution {
  public:
    OdeSolution(std::vector<double> times, std::vector<double> values, int q_max);

    int q_max() const { return q_max_; }
    const std::vector<double>& times() const { return times_; }
    double value(std::size_t time_index, long q) const {
        return values_[time_index * row_ + index_of(q)];
    }
    // v_q(t) and ln v_q(t); off-grid t interpolates linearly in ln v_q
    // (ratios of v enter the quotes through logs).
    double value(double t, long q) const;
    double log_value(double t, long q) const;

  private:
    std::size_t index_of(long q) const {
        if (q < -q_max_ || q > q_max_)
            throw std::out_of_range("inventory outside ODE truncation");
        return static_cast<std::size_t>(q + q_max_);
    }

    std::vector<double> times_;   // ascending, t_0 = 0 .. t_n = T
    std::vector<double> values_;  // row-major [time][q + q_max]
    int q_max_;
    std::size_t row_;
};

// Classical RK4 from T down to 0 on a uniform grid. Throws
// TruncationError if any v_q drops to <= 0.
OdeSolution solve_backward(const OdeSystem& system);

// Quotes from ratios of v_q:
//   delta_ask = (1/gamma) ln(1 + gamma/k) + (1/k) ln(v_q / v_{q-1})
//   delta_bid = (1/gamma) ln(1 + gamma/k) - (1/k) ln(v_{q+1} / v_q)
// Requires |q| < q_max so both neighbours exist. The mid-price s only
// positions the indifference price; the distances do not depend on it.
QuotePair ode_quotes(const OdeSolution& solution, const StrategyParams& params, double t,
                     long q, double s = 0.0);

}  // namespace mmlab
