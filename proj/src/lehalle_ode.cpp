#include "mmlab/lehalle_ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mmlab {

OdeSystem OdeSystem::from_model(const MidPriceModel& model, const StrategyParams& params,
                                int q_max, int n_steps) {
    if (model.kind != ModelKind::abm)
        throw std::invalid_argument(
            "ODE system needs drift/vol independent of s (ABM-class model)");
    OdeSystem sys;
    sys.q_max = q_max;
    sys.n_steps = n_steps;
    sys.params = params;
    sys.drift = [b = model.drift](double) { return b; };
    sys.vol = [sig = model.sigma](double) { return sig; };
    return sys;
}

OdeSolution::OdeSolution(std::vector<double> times, std::vector<double> values, int q_max)
    : times_(std::move(times)),
      values_(std::move(values)),
      q_max_(q_max),
      row_(static_cast<std::size_t>(2 * q_max + 1)) {}

double OdeSolution::log_value(double t, long q) const {
    const std::size_t col = index_of(q);
    if (t <= times_.front()) return std::log(values_[col]);
    if (t >= times_.back()) return std::log(values_[(times_.size() - 1) * row_ + col]);
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
    const double log_lo = std::log(values_[lo * row_ + col]);
    const double log_hi = std::log(values_[hi * row_ + col]);
    return (1.0 - w) * log_lo + w * log_hi;
}

double OdeSolution::value(double t, long q) const { return std::exp(log_value(t, q)); }

namespace {

struct OdeRhs {
    const OdeSystem& sys;
    double coupling;  // A (1 + k/gamma)^{-1-k/gamma}
    int n;            // 2 q_max + 1

    // out = dv/dt at time t; boundary closure v_{+-(q_max+1)} = 0.
    void operator()(double t, const std::vector<double>& v, std::vector<double>& out) const {
        const double sig2 = sys.vol(t) * sys.vol(t);
        const double b = sys.drift(t);
        const double k = sys.params.decay;
        const double g = sys.params.gamma;
        for (int i = 0; i < n; ++i) {
            const double q = static_cast<double>(i - sys.q_max);
            const double lin = (0.5 * k * g * q * q * sig2 - g * q * b) * v[i];
            const double up = (i + 1 < n) ? v[i + 1] : 0.0;
            const double down = (i > 0) ? v[i - 1] : 0.0;
            out[i] = lin - coupling * (up + down);
        }
    }
};

}  // namespace

OdeSolution solve_backward(const OdeSystem& system) {
    if (system.q_max < 1) throw std::invalid_argument("q_max must be >= 1");
    if (system.n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
    validate(system.params);
    if (!(system.params.gamma > 0.0))
        throw std::invalid_argument("gamma must be > 0 for the exponential ODE system");
    if (!system.drift || !system.vol)
        throw std::invalid_argument("drift and vol functions must be set");

    const int n = 2 * system.q_max + 1;
    const double T = system.params.horizon;
    const double h = T / system.n_steps;
    const double ratio = system.params.decay / system.params.gamma;
    const double coupling =
        system.params.base_intensity * std::exp((-1.0 - ratio) * std::log1p(ratio));
    const OdeRhs rhs{system, coupling, n};

    std::vector<double> times(system.n_steps + 1);
    for (int i = 0; i <= system.n_steps; ++i) times[i] = i * h;
    times.back() = T;

    std::vector<double> values(times.size() * static_cast<std::size_t>(n));
    std::vector<double> v(n, 1.0);  // terminal condition v_q(T) = 1
    std::copy(v.begin(), v.end(), values.end() - n);

    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (int i = system.n_steps; i > 0; --i) {
        // RK4 step of size -h from times[i] to times[i-1].
        const double t = times[i];
        rhs(t, v, k1);
        for (int j = 0; j < n; ++j) tmp[j] = v[j] - 0.5 * h * k1[j];
        rhs(t - 0.5 * h, tmp, k2);
        for (int j = 0; j < n; ++j) tmp[j] = v[j] - 0.5 * h * k2[j];
        rhs(t - 0.5 * h, tmp, k3);
        for (int j = 0; j < n; ++j) tmp[j] = v[j] - h * k3[j];
        rhs(t - h, tmp, k4);
        for (int j = 0; j < n; ++j)
            v[j] -= h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

        for (int j = 0; j < n; ++j)
            if (!(v[j] > 0.0))
                throw TruncationError(
                    "v_q became non-positive at t=" + std::to_string(times[i - 1]) +
                    ", q=" + std::to_string(j - system.q_max) +
                    "; increase q_max or n_steps");
        std::copy(v.begin(), v.end(),
                  values.begin() + static_cast<std::size_t>(i - 1) * n);
    }

    return OdeSolution(std::move(times), std::move(values), system.q_max);
}

QuotePair ode_quotes(const OdeSolution& solution, const StrategyParams& params, double t,
                     long q, double s) {
    if (std::labs(q) >= solution.q_max())
        throw std::out_of_range("inventory |q| must be < q_max so both neighbours exist");
    const double log_term = std::log1p(params.gamma / params.decay) / params.gamma;
    const double inv_k = 1.0 / params.decay;
    const double log_vq = solution.log_value(t, q);
    const double delta_ask = log_term + inv_k * (log_vq - solution.log_value(t, q - 1));
    const double delta_bid = log_term - inv_k * (solution.log_value(t, q + 1) - log_vq);
    QuotePair quotes;
    quotes.delta_ask = delta_ask;
    quotes.delta_bid = delta_bid;
    quotes.spread = delta_ask + delta_bid;
    quotes.indifference = s + 0.5 * (delta_ask - delta_bid);
    return quotes;
}

}  // namespace mmlab
