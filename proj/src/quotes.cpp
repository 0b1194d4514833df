#include "mmlab/quotes.hpp"

#include <cmath>
#include <stdexcept>

#include "mmlab/numeric.hpp"

namespace mmlab {

namespace {

constexpr double e_const = 2.718281828459045235360287471352662498;

double half_spread_log_term(const StrategyParams& p) {
    // (1/gamma) ln(1 + gamma/k); log1p keeps the gamma -> 0 limit (1/k) stable.
    return std::log1p(p.gamma / p.decay) / p.gamma;
}

// Int_t^T Int_zeta^T sigma^2 beta^2(xi, T) dxi dzeta in closed form
// (sigma constant per model instance).
double beta2_double_integral(const MidPriceModel& model, double t, double T) {
    const double tau = T - t;
    const double sig2 = model.sigma * model.sigma;
    if (model.kind == ModelKind::abm) return sig2 * tau * tau / 2.0;
    const double a = model.reversion;
    return sig2 / (2.0 * a) * (tau - (1.0 - std::exp(-2.0 * a * tau)) / (2.0 * a));
}

void require_gamma(const StrategyParams& params) {
    if (!(params.gamma > 0.0))
        throw std::invalid_argument("gamma must be > 0 for exponential utility");
}

}  // namespace

void validate(const StrategyParams& params) {
    if (!(params.base_intensity > 0.0)) throw std::invalid_argument("A must be > 0");
    if (!(params.decay > 0.0)) throw std::invalid_argument("k must be > 0");
    if (params.eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (!(params.horizon > 0.0)) throw std::invalid_argument("T must be > 0");
    if (params.utility == Utility::exponential && !(params.gamma > 0.0))
        throw std::invalid_argument("gamma must be > 0 for exponential utility");
}

double intensity(const StrategyParams& params, double delta) {
    return params.base_intensity * std::exp(-params.decay * delta);
}

QuotePair linear_quotes(const MidPriceModel& model, const StrategyParams& params,
                        const MarketState& state) {
    const double m = conditional_mean(model, state.t, state.s, params.horizon);
    return QuotePair::from_half_spread(1.0 / params.decay, m - state.s, state.s);
}

QuotePair linear_penalty_quotes(const MidPriceModel& model, const StrategyParams& params,
                                const MarketState& state) {
    const double m = conditional_mean(model, state.t, state.s, params.horizon);
    const double half = 1.0 / params.decay + params.eta;
    const double skew = m - state.s - 2.0 * static_cast<double>(state.q) * params.eta;
    return QuotePair::from_half_spread(half, skew, state.s);
}

double expected_penalty(const MidPriceModel& model, PenaltyKind penalty, double t, double s,
                        double T) {
    switch (penalty) {
        case PenaltyKind::one:
            return 1.0;
        case PenaltyKind::square: {
            const double m = conditional_mean(model, t, s, T);
            return m * m + conditional_variance(model, t, T);
        }
    }
    throw std::invalid_argument("unsupported penalty function");
}

QuotePair general_penalty_quotes(const MidPriceModel& model, const StrategyParams& params,
                                 const MarketState& state) {
    const double m = conditional_mean(model, state.t, state.s, params.horizon);
    const double pi = expected_penalty(model, params.penalty, state.t, state.s, params.horizon);
    const double half = 1.0 / params.decay + params.eta;
    const double skew = m - state.s - 2.0 * static_cast<double>(state.q) * params.eta * pi;
    return QuotePair::from_half_spread(half, skew, state.s);
}

double theta2_exponential(const MidPriceModel& model, const StrategyParams& params, double t) {
    const double T = params.horizon;
    const double tau = T - t;
    if (!(t >= 0.0) || !(t <= T))
        throw std::invalid_argument("invalid horizon: need 0 <= t <= T");
    const double sig2 = model.sigma * model.sigma;
    switch (model.kind) {
        case ModelKind::abm:
            return -(params.eta + 0.5 * params.gamma * sig2 * tau);
        case ModelKind::ou: {
            const double a = model.reversion;
            return -(params.eta +
                     params.gamma * sig2 / (4.0 * a) * (1.0 - std::exp(-2.0 * a * tau)));
        }
    }
    throw std::invalid_argument("model does not satisfy the sigma(t)/affine hypothesis");
}

double theta0_exponential(const MidPriceModel& model, const StrategyParams& params, double t) {
    require_gamma(params);
    const double k = params.decay;
    const double g = params.gamma;
    const double A = params.base_intensity;
    const double tau = params.horizon - t;
    const double linear_term =
        2.0 * A / (k + g) * (1.0 - k * half_spread_log_term(params) - k * params.eta) * tau;
    return linear_term - k * g * A / (k + g) * beta2_double_integral(model, t, params.horizon);
}

QuotePair exponential_quotes(const MidPriceModel& model, const StrategyParams& params,
                             const MarketState& state) {
    require_gamma(params);
    const double theta1 = conditional_mean(model, state.t, state.s, params.horizon);
    const double theta2 = theta2_exponential(model, params, state.t);
    const double half = half_spread_log_term(params) - theta2;
    const double skew = theta1 - state.s + 2.0 * static_cast<double>(state.q) * theta2;
    return QuotePair::from_half_spread(half, skew, state.s);
}

QuotePair optimal_quotes(const MidPriceModel& model, const StrategyParams& params,
                         const MarketState& state) {
    switch (params.utility) {
        case Utility::linear:
            return linear_quotes(model, params, state);
        case Utility::linear_penalty:
            return linear_penalty_quotes(model, params, state);
        case Utility::general_penalty:
            return general_penalty_quotes(model, params, state);
        case Utility::exponential:
            return exponential_quotes(model, params, state);
    }
    throw std::invalid_argument("unknown utility");
}

double value_lower_bound(const MidPriceModel& model, const StrategyParams& params,
                         const MarketState& state) {
    const double A = params.base_intensity;
    const double k = params.decay;
    const double eta = params.eta;
    const double T = params.horizon;
    const double tau = T - state.t;
    const double q = static_cast<double>(state.q);
    const double theta1 = conditional_mean(model, state.t, state.s, T);

    switch (params.utility) {
        case Utility::linear:
            return state.x + 2.0 * A / (e_const * k) * tau + q * theta1;
        case Utility::linear_penalty:
            return state.x + A / (e_const * k) * (2.0 - k * eta) * tau + q * theta1 -
                   eta * q * q;
        case Utility::general_penalty: {
            // x + (2A/ek)(T-t) - (eta A/e) Int_t^T E_{t,s}[theta2(xi, S(xi))] dxi
            //   + q theta1 - eta q^2 theta2(t,s),  theta2(t,s) = E_{t,s}[pi(S(T))].
            // The integrand is evaluated through the law of S(xi) given
            // (t, s); by the tower property it is constant in xi, which
            // the quadrature reproduces to machine precision.
            const auto integrand = [&](double xi) {
                const auto [al, be] = affine_coeffs(model, xi, T);
                const double mean_xi = conditional_mean(model, state.t, state.s, xi);
                const double var_xi = conditional_variance(model, state.t, xi);
                switch (params.penalty) {
                    case PenaltyKind::one:
                        return 1.0;
                    case PenaltyKind::square: {
                        const double m = al + be * mean_xi;
                        return m * m + be * be * var_xi + conditional_variance(model, xi, T);
                    }
                }
                throw std::invalid_argument("unsupported penalty function");
            };
            const double integral = composite_simpson(integrand, state.t, T, 64);
            const double theta2 =
                expected_penalty(model, params.penalty, state.t, state.s, T);
            return state.x + 2.0 * A / (e_const * k) * tau - eta * A / e_const * integral +
                   q * theta1 - eta * q * q * theta2;
        }
        case Utility::exponential: {
            const double theta0 = theta0_exponential(model, params, state.t);
            const double theta2 = theta2_exponential(model, params, state.t);
            return -std::exp(-params.gamma * (state.x + theta0 + q * theta1 + q * q * theta2));
        }
    }
    throw std::invalid_argument("unknown utility");
}

}  // namespace mmlab
