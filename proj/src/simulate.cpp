#include "mmlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mmlab/rng.hpp"

namespace mmlab {

void validate(const SimConfig& config) {
    validate(config.params);
    if (config.n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
    if (config.n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
    if (config.threads < 0) throw std::invalid_argument("threads must be >= 0");
    if ((config.strategy == Strategy::exponential ||
         config.strategy == Strategy::ode_exponential) &&
        !(config.params.gamma > 0.0))
        throw std::invalid_argument("gamma must be > 0 for exponential strategies");
}

namespace {

StrategyParams params_for(const SimConfig& config) {
    StrategyParams p = config.params;
    switch (config.strategy) {
        case Strategy::linear: p.utility = Utility::linear; break;
        case Strategy::linear_penalty: p.utility = Utility::linear_penalty; break;
        case Strategy::general_penalty: p.utility = Utility::general_penalty; break;
        case Strategy::exponential:
        case Strategy::ode_exponential: p.utility = Utility::exponential; break;
    }
    return p;
}

}  // namespace

QuotePolicy::QuotePolicy(const SimConfig& config)
    : quote_model_(config.assume == QuoteAssumption::martingale ? config.model.as_martingale()
                                                                : config.model),
      params_(params_for(config)),
      strategy_(config.strategy) {
    if (strategy_ == Strategy::ode_exponential) {
        ode_ = std::make_shared<const OdeSolution>(solve_backward(
            OdeSystem::from_model(quote_model_, params_, config.ode_q_max, config.ode_n_steps)));
    }
}

QuotePair QuotePolicy::at(double t, double s, long q) const {
    const MarketState state{t, s, q, 0.0};
    if (strategy_ == Strategy::ode_exponential) {
        // Inventory past the truncation falls back to the closed-form
        // sub-solution quotes, which need no grid.
        if (std::labs(q) < ode_->q_max()) return ode_quotes(*ode_, params_, t, q, s);
        return exponential_quotes(quote_model_, params_, state);
    }
    return optimal_quotes(quote_model_, params_, state);
}

double fill_probability(double lambda, double dt) { return -std::expm1(-lambda * dt); }

int poisson_inverse_transform(double u, double mean) {
    if (!(mean > 0.0)) return 0;
    double p = std::exp(-mean);
    double cdf = p;
    int n = 0;
    while (u >= cdf && n < 1024) {
        ++n;
        p *= mean / n;
        cdf += p;
    }
    return n;
}

PathResult simulate_path(const SimConfig& config, const QuotePolicy& policy,
                         std::uint64_t path_index) {
    const double dt = config.params.horizon / config.n_steps;
    const std::uint64_t seed = config.seed;

    double s = config.model.s0;
    long q = config.q0;
    double x = config.x0;

    PathResult result;
    if (config.record_trajectory) result.trajectory.reserve(config.n_steps + 1);

    for (int i = 0; i < config.n_steps; ++i) {
        const double t = i * dt;
        const QuotePair quotes = policy.at(t, s, q);

        if (config.record_trajectory)
            result.trajectory.push_back({t, s, quotes.delta_ask, quotes.delta_bid, q, x});

        if (quotes.delta_ask > 0.0) {
            const double mean = intensity(config.params, quotes.delta_ask) * dt;
            const double u = rng::uniform(seed, path_index, i, rng::Channel::ask_fill);
            const int fills = poisson_inverse_transform(u, mean);
            q -= fills;
            x += fills * (s + quotes.delta_ask);
        } else {
            // Crossed ask: one market sell at mid replaces the quote.
            q -= 1;
            x += s;
        }

        if (quotes.delta_bid > 0.0) {
            const double mean = intensity(config.params, quotes.delta_bid) * dt;
            const double u = rng::uniform(seed, path_index, i, rng::Channel::bid_fill);
            const int fills = poisson_inverse_transform(u, mean);
            q += fills;
            x -= fills * (s - quotes.delta_bid);
        } else {
            q += 1;
            x -= s;
        }

        const double z = rng::normal(seed, path_index, i, rng::Channel::price_noise);
        s = step(config.model, t, s, dt, z);
    }

    if (config.record_trajectory) {
        const QuotePair quotes = policy.at(config.params.horizon, s, q);
        result.trajectory.push_back(
            {config.params.horizon, s, quotes.delta_ask, quotes.delta_bid, q, x});
    }

    result.q_final = q;
    result.x_final = x;
    result.s_final = s;
    result.pnl_final = x + static_cast<double>(q) * s;
    return result;
}

PathResult simulate_path(const SimConfig& config, std::uint64_t path_index) {
    validate(config);
    return simulate_path(config, QuotePolicy(config), path_index);
}

std::vector<PathResult> run_monte_carlo(const SimConfig& config) {
    validate(config);
    const QuotePolicy policy(config);
    std::vector<PathResult> results(config.n_paths);

    unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(config.n_paths));

    if (workers == 1) {
        for (int i = 0; i < config.n_paths; ++i)
            results[i] = simulate_path(config, policy, static_cast<std::uint64_t>(i));
        return results;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = static_cast<int>(w); i < config.n_paths;
                 i += static_cast<int>(workers))
                results[i] = simulate_path(config, policy, static_cast<std::uint64_t>(i));
        });
    }
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace mmlab
