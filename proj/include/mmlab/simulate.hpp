#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mmlab/lehalle_ode.hpp"
#include "mmlab/midprice.hpp"
#include "mmlab/quotes.hpp"

namespace mmlab {

enum class Strategy { linear, linear_penalty, general_penalty, exponential, ode_exponential };

// Which mid-price model the quote formulas are fed. `model` quotes off
// the true market dynamics (a directional bet when the market mean
// reverts); `martingale` quotes off the drift-stripped benchmark,
// E_{t,s}[S(T)] = s.
enum class QuoteAssumption { model, martingale };

struct SimConfig {
    MidPriceModel model;      // market dynamics
    StrategyParams params;    // A, k, gamma, eta, T, penalty
    Strategy strategy = Strategy::linear;
    QuoteAssumption assume = QuoteAssumption::model;
    int n_steps = 1000;
    int n_paths = 20000;
    std::uint64_t seed = 0;
    long q0 = 0;
    double x0 = 0.0;
    int threads = 0;  // 0 = hardware concurrency
    bool record_trajectory = false;
    int ode_q_max = 30;     // ode_exponential only
    int ode_n_steps = 2000;

    bool operator==(const SimConfig&) const = default;
};

void validate(const SimConfig& config);

struct TrajectoryPoint {
    double t;
    double s;
    double delta_ask;
    double delta_bid;
    long q;
    double x;
};

struct PathResult {
    double pnl_final = 0.0;  // X(T) + Q(T) S(T)
    long q_final = 0;
    double x_final = 0.0;
    double s_final = 0.0;
    std::vector<TrajectoryPoint> trajectory;  // filled when requested
};

// Quote rule resolved from a SimConfig: strategy, assumed model and,
// for ode_exponential, the solved v_q grid (shared and immutable, so a
// policy can serve any number of concurrent paths).
class QuotePolicy {
  public:
    explicit QuotePolicy(const SimConfig& config);

    QuotePair at(double t, double s, long q) const;
    const MidPriceModel& quote_model() const { return quote_model_; }

  private:
    MidPriceModel quote_model_;
    StrategyParams params_;
    Strategy strategy_;
    std::shared_ptr<const OdeSolution> ode_;
};

// P(at least one fill in dt) for a side quoted at Poisson rate lambda.
double fill_probability(double lambda, double dt);

// Poisson(mean) sample by inverse transform of a single uniform; keeps
// fill counts a pure function of the (seed, path, step, channel) draw.
int poisson_inverse_transform(double u, double mean);

// One trading day: per step, quotes are computed at the current state
// (predictable), each side with delta > 0 fills Poisson(lambda(delta) dt)
// units at the quoted price, a side with delta <= 0 sends one market
// order executed at mid, and the price then makes an Euler step. Path
// `path_index` is fully determined by (config.seed, path_index).
PathResult simulate_path(const SimConfig& config, const QuotePolicy& policy,
                         std::uint64_t path_index);
PathResult simulate_path(const SimConfig& config, std::uint64_t path_index);

// n_paths independent paths, ordered by path index no matter how many
// workers ran them.
std::vector<PathResult> run_monte_carlo(const SimConfig& config);

}  // namespace mmlab
