#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mmlab {

// One full statistics row for an ensemble: PNL moments, normality and
// tail numbers, plus the inventory block. Conventions: std dev uses the
// n-1 denominator; skewness and kurtosis standardise the 1/n central
// moments; kurtosis is non-excess (Gaussian = 3); Jarque-Bera is
// (n/6)(S^2 + (K-3)^2/4); "sharpe" is mean / std dev computed from the
// already-rounded mean and std fields. Degenerate fields (zero
// variance) are reported as NaN sentinels.
struct StatsRecord {
    std::size_t n = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double sharpe = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
    double jarque_bera = 0.0;
    double var5 = 0.0;  // 5% lower quantile of final PNL (a PNL level)
    double var1 = 0.0;
    double inv_mean = 0.0;
    double inv_std = 0.0;
    double inv_skewness = 0.0;
    double inv_kurtosis = 0.0;
    double inv_jarque_bera = 0.0;
    long q90_lo = 0;  // 5th percentile of Q(T)
    long q90_hi = 0;  // 95th percentile of Q(T)
};

// Nearest-rank quantile: the ceil(p n)-th order statistic. Throws on an
// empty sample or p outside (0, 1).
double quantile(std::span<const double> samples, double p);

// Moments/VaR/intervals for a PNL ensemble and its matching final
// inventories. Requires at least two samples in each series.
StatsRecord summarize(std::span<const double> pnl, std::span<const double> inventories);

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<long> counts;
    long underflow = 0;  // samples below lo
    long overflow = 0;   // samples above hi
};

// Equal-width bins over [lo, hi]; hi itself lands in the last bin.
Histogram histogram(std::span<const double> samples, int n_bins, double lo, double hi);

}  // namespace mmlab
