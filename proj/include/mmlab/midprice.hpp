#pragma once

#include <string>

namespace mmlab {

enum class ModelKind { abm, ou };

// Mid-price diffusion dS = b(t,S)dt + sigma dW. Two families are
// supported: arithmetic Brownian motion with drift (b(t,s) = drift,
// the martingale benchmark being drift = 0) and Ornstein-Uhlenbeck
// (b(t,s) = reversion * (mean - s)). Both have conditional means that
// are affine in s, E_{t,s}[S(T)] = alpha(t,T) + beta(t,T) * s, which
// every quote formula relies on. Prices may go negative; both models
// are Gaussian and no floor is applied.
struct MidPriceModel {
    ModelKind kind = ModelKind::abm;
    double drift = 0.0;      // b, ABM only (price/day)
    double reversion = 0.0;  // a, OU only (1/day)
    double mean = 0.0;       // mu, OU only (price)
    double sigma = 0.0;      // volatility (price/sqrt(day))
    double s0 = 0.0;         // initial price

    static MidPriceModel abm(double drift, double sigma, double s0);
    static MidPriceModel martingale(double sigma, double s0) { return abm(0.0, sigma, s0); }
    static MidPriceModel ou(double reversion, double mean, double sigma, double s0);

    bool operator==(const MidPriceModel&) const = default;

    bool is_martingale() const { return kind == ModelKind::abm && drift == 0.0; }
    // Strips the directional component: the same noise, no bet.
    MidPriceModel as_martingale() const { return martingale(sigma, s0); }

    std::string label() const;
};

struct AffineCoeffs {
    double alpha;
    double beta;
};

// Coefficients of E_{t,s}[S(T)] = alpha + beta * s.
//   ABM: (drift * (T - t), 1)
//   OU:  (mean * (1 - e^{-a(T-t)}), e^{-a(T-t)})
AffineCoeffs affine_coeffs(const MidPriceModel& model, double t, double T);

double conditional_mean(const MidPriceModel& model, double t, double s, double T);

// Var_{t,s}[S(T)]: ABM sigma^2 (T-t); OU sigma^2 (1 - e^{-2a(T-t)}) / (2a).
double conditional_variance(const MidPriceModel& model, double t, double T);

// Instantaneous drift b(t, s).
double drift_at(const MidPriceModel& model, double t, double s);

// One Euler-Maruyama update s + b(t,s) dt + sigma sqrt(dt) z.
double step(const MidPriceModel& model, double t, double s, double dt, double z);

}  // namespace mmlab
