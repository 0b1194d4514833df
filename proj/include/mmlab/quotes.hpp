#pragma once

#include "mmlab/midprice.hpp"

namespace mmlab {

enum class Utility { linear, linear_penalty, general_penalty, exponential };

// Terminal inventory penalty weight pi(s) in x + q s - eta q^2 pi(S(T)).
// pi = 1 reproduces the plain quadratic penalty; pi = s^2 the
// mean-variance criterion. Both have closed Gaussian moments.
enum class PenaltyKind { one, square };

struct StrategyParams {
    double base_intensity = 0.0;  // A, fill intensity at distance 0 (events/day)
    double decay = 0.0;           // k, intensity decay (1/price)
    double gamma = 0.0;           // exponential risk aversion (1/price)
    double eta = 0.0;             // inventory-risk aversion (price/share^2)
    double horizon = 0.0;         // T (day)
    Utility utility = Utility::linear;
    PenaltyKind penalty = PenaltyKind::one;

    bool operator==(const StrategyParams&) const = default;
};

// Throws std::invalid_argument on A <= 0, k <= 0, eta < 0, T <= 0, or a
// non-positive gamma with exponential utility.
void validate(const StrategyParams& params);

// Optimal quote distances around the mid-price. delta_ask/delta_bid may
// be negative; the simulator treats those as market orders. The spread
// and indifference price are stored from their closed forms, so the
// spread identities (2/k, 2/k + 2 eta, ...) hold exactly; the deltas
// recombine to them up to rounding.
struct QuotePair {
    double delta_ask = 0.0;     // ask distance above mid
    double delta_bid = 0.0;     // bid distance below mid
    double spread = 0.0;        // delta_ask + delta_bid
    double indifference = 0.0;  // mid-point of the quotes, s + (delta_ask - delta_bid)/2

    static QuotePair from_half_spread(double half_spread, double skew, double s) {
        return {half_spread + skew, half_spread - skew, 2.0 * half_spread, s + skew};
    }
};

struct MarketState {
    double t = 0.0;  // time in [0, T]
    double s = 0.0;  // mid-price
    long q = 0;      // inventory (shares)
    double x = 0.0;  // cash
};

// Poisson fill rate A e^{-k delta}; extrapolated to delta <= 0.
double intensity(const StrategyParams& params, double delta);

// Linear utility x + q s:
//   delta+- = 1/k +- (E_{t,s}[S(T)] - s),  spread 2/k,  r = E_{t,s}[S(T)].
QuotePair linear_quotes(const MidPriceModel& model, const StrategyParams& params,
                        const MarketState& state);

// Linear utility with quadratic inventory penalty x + q s - eta q^2:
//   delta+- = 1/k + eta +- (E_{t,s}[S(T)] - s - 2 q eta),  spread 2/k + 2 eta.
QuotePair linear_penalty_quotes(const MidPriceModel& model, const StrategyParams& params,
                                const MarketState& state);

// E_{t,s}[pi(S(T))] for the supported penalty weights.
double expected_penalty(const MidPriceModel& model, PenaltyKind penalty, double t, double s,
                        double T);

// General penalty x + q s - eta q^2 pi(S(T)):
//   delta+- = 1/k + eta +- (E[S(T)] - s - 2 q eta E[pi(S(T))]).
QuotePair general_penalty_quotes(const MidPriceModel& model, const StrategyParams& params,
                                 const MarketState& state);

// theta2(t) = -eta - (gamma/2) Int_t^T sigma^2(xi) beta^2(xi, T) dxi,
// in closed form for the two model families (constant sigma):
//   ABM: -eta - gamma sigma^2 (T-t) / 2
//   OU:  -eta - gamma sigma^2 (1 - e^{-2a(T-t)}) / (4a)
double theta2_exponential(const MidPriceModel& model, const StrategyParams& params, double t);

// theta0(t) of the exponential value bound (does not affect quotes).
double theta0_exponential(const MidPriceModel& model, const StrategyParams& params, double t);

// Exponential utility -exp(-gamma (x + q s - eta q^2)):
//   delta+- = (1/gamma) ln(1 + gamma/k) - theta2 +- (theta1 - s + 2 q theta2)
// with theta1 = E_{t,s}[S(T)]. With drift = 0 and eta = 0 this reduces
// to the Avellaneda-Stoikov quotes.
QuotePair exponential_quotes(const MidPriceModel& model, const StrategyParams& params,
                             const MarketState& state);

// Dispatch on params.utility.
QuotePair optimal_quotes(const MidPriceModel& model, const StrategyParams& params,
                         const MarketState& state);

// Explicit lower bound on the value function at (t, s, q, x) for the
// selected utility (the sub-solution obtained by linearising the jump
// functional; exact solution in the plain linear case).
double value_lower_bound(const MidPriceModel& model, const StrategyParams& params,
                         const MarketState& state);

}  // namespace mmlab
