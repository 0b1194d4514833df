#include "mmlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmlab {

namespace {

constexpr double nan_sentinel = std::numeric_limits<double>::quiet_NaN();

struct MomentBlock {
    double mean, std_dev, skewness, kurtosis, jarque_bera;
};

// Expects sorted input so that results are independent of the caller's
// sample ordering (summation order is fixed by value).
MomentBlock moments(std::span<const double> xs) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    MomentBlock out;
    out.mean = mean;
    out.std_dev = std::sqrt(m2 * n / (n - 1.0));
    if (m2 > 0.0) {
        out.skewness = m3 / std::pow(m2, 1.5);
        out.kurtosis = m4 / (m2 * m2);
        const double excess = out.kurtosis - 3.0;
        out.jarque_bera =
            n / 6.0 * (out.skewness * out.skewness + 0.25 * excess * excess);
    } else {
        out.skewness = nan_sentinel;
        out.kurtosis = nan_sentinel;
        out.jarque_bera = nan_sentinel;
    }
    return out;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    // Nearest rank with a guard against ties like p*n = 7.000000000001
    // from decimal p, so the convention reproduces across platforms.
    const double pn = p * static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(pn - 1e-9));
    if (rank < 1) rank = 1;
    if (rank > sorted.size()) rank = sorted.size();
    return sorted[rank - 1];
}

}  // namespace

double quantile(std::span<const double> samples, double p) {
    if (samples.empty()) throw std::invalid_argument("quantile of an empty sample");
    if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("quantile level must be in (0,1)");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, p);
}

StatsRecord summarize(std::span<const double> pnl, std::span<const double> inventories) {
    if (pnl.size() < 2 || inventories.size() < 2)
        throw std::invalid_argument("summarize needs at least 2 samples");

    std::vector<double> pnl_sorted(pnl.begin(), pnl.end());
    std::sort(pnl_sorted.begin(), pnl_sorted.end());
    std::vector<double> inv_sorted(inventories.begin(), inventories.end());
    std::sort(inv_sorted.begin(), inv_sorted.end());

    const MomentBlock p = moments(pnl_sorted);
    const MomentBlock v = moments(inv_sorted);

    StatsRecord rec;
    rec.n = pnl.size();
    rec.mean = p.mean;
    rec.std_dev = p.std_dev;
    rec.sharpe = p.std_dev > 0.0 ? p.mean / p.std_dev : nan_sentinel;
    rec.skewness = p.skewness;
    rec.kurtosis = p.kurtosis;
    rec.jarque_bera = p.jarque_bera;
    rec.var5 = quantile_sorted(pnl_sorted, 0.05);
    rec.var1 = quantile_sorted(pnl_sorted, 0.01);
    rec.inv_mean = v.mean;
    rec.inv_std = v.std_dev;
    rec.inv_skewness = v.skewness;
    rec.inv_kurtosis = v.kurtosis;
    rec.inv_jarque_bera = v.jarque_bera;
    rec.q90_lo = std::lround(quantile_sorted(inv_sorted, 0.05));
    rec.q90_hi = std::lround(quantile_sorted(inv_sorted, 0.95));
    return rec;
}

Histogram histogram(std::span<const double> samples, int n_bins, double lo, double hi) {
    if (n_bins < 1) throw std::invalid_argument("histogram needs n_bins >= 1");
    if (!(lo < hi)) throw std::invalid_argument("histogram range is degenerate");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(static_cast<std::size_t>(n_bins), 0);
    const double width = (hi - lo) / n_bins;
    for (double x : samples) {
        if (x < lo) {
            ++h.underflow;
        } else if (x > hi) {
            ++h.overflow;
        } else {
            auto idx = static_cast<long>((x - lo) / width);
            if (idx >= n_bins) idx = n_bins - 1;  // x == hi
            ++h.counts[static_cast<std::size_t>(idx)];
        }
    }
    return h;
}

}  // namespace mmlab
