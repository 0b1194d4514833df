#include "mmlab/midprice.hpp"

#include <cmath>
#include <stdexcept>

namespace mmlab {

namespace {

void check_horizon(double t, double T) {
    if (!(t >= 0.0) || !(t <= T))
        throw std::invalid_argument("invalid horizon: need 0 <= t <= T, got t=" +
                                    std::to_string(t) + ", T=" + std::to_string(T));
}

}  // namespace

MidPriceModel MidPriceModel::abm(double drift, double sigma, double s0) {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    MidPriceModel m;
    m.kind = ModelKind::abm;
    m.drift = drift;
    m.sigma = sigma;
    m.s0 = s0;
    return m;
}

MidPriceModel MidPriceModel::ou(double reversion, double mean, double sigma, double s0) {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (!(reversion > 0.0)) throw std::invalid_argument("OU reversion speed must be > 0");
    MidPriceModel m;
    m.kind = ModelKind::ou;
    m.reversion = reversion;
    m.mean = mean;
    m.sigma = sigma;
    m.s0 = s0;
    return m;
}

std::string MidPriceModel::label() const {
    if (kind == ModelKind::ou) return "ou";
    return drift == 0.0 ? "martingale" : "abm";
}

AffineCoeffs affine_coeffs(const MidPriceModel& model, double t, double T) {
    check_horizon(t, T);
    const double tau = T - t;
    if (model.kind == ModelKind::abm) return {model.drift * tau, 1.0};
    const double beta = std::exp(-model.reversion * tau);
    return {model.mean * (1.0 - beta), beta};
}

double conditional_mean(const MidPriceModel& model, double t, double s, double T) {
    const auto [alpha, beta] = affine_coeffs(model, t, T);
    return alpha + beta * s;
}

double conditional_variance(const MidPriceModel& model, double t, double T) {
    check_horizon(t, T);
    const double tau = T - t;
    const double sig2 = model.sigma * model.sigma;
    if (model.kind == ModelKind::abm) return sig2 * tau;
    const double a = model.reversion;
    return sig2 * (1.0 - std::exp(-2.0 * a * tau)) / (2.0 * a);
}

double drift_at(const MidPriceModel& model, double /*t*/, double s) {
    if (model.kind == ModelKind::abm) return model.drift;
    return model.reversion * (model.mean - s);
}

double step(const MidPriceModel& model, double t, double s, double dt, double z) {
    if (!(dt > 0.0)) throw std::invalid_argument("step size dt must be > 0");
    return s + drift_at(model, t, s) * dt + model.sigma * std::sqrt(dt) * z;
}

}  // namespace mmlab
