#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "mmlab/rng.hpp"
#include "mmlab/stats.hpp"

using namespace mmlab;

namespace {

std::vector<double> iota_samples(int n) {
    std::vector<double> xs(n);
    std::iota(xs.begin(), xs.end(), 1.0);
    return xs;
}

std::vector<double> normal_draws(std::size_t n, std::uint64_t seed) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = rng::normal(seed, 1, i, rng::Channel::price_noise);
    return xs;
}

}  // namespace

TEST_CASE("nearest-rank quantiles") {
    const auto xs = iota_samples(100);
    CHECK(quantile(xs, 0.05) == 5.0);
    CHECK(quantile(xs, 0.95) == 95.0);
    CHECK(quantile(xs, 0.01) == 1.0);
    CHECK(quantile(xs, 0.5) == 50.0);
    CHECK(quantile(std::vector<double>{3.25}, 0.7) == 3.25);
    CHECK(quantile(std::vector<double>{3.25}, 0.001) == 3.25);

    CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(quantile(xs, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(quantile(xs, 1.0), std::invalid_argument);
}

TEST_CASE("summarize on 1..100") {
    const auto xs = iota_samples(100);
    const auto rec = summarize(xs, xs);
    CHECK(rec.n == 100);
    CHECK(rec.mean == doctest::Approx(50.5).epsilon(1e-14));
    CHECK(rec.var5 == 5.0);
    CHECK(rec.var1 == 1.0);
    CHECK(rec.q90_lo == 5);
    CHECK(rec.q90_hi == 95);
    CHECK(rec.std_dev == doctest::Approx(29.011491975882016).epsilon(1e-12));
    CHECK(rec.sharpe == rec.mean / rec.std_dev);
    // ordering invariant var1 <= var5 <= median
    CHECK(rec.var1 <= rec.var5);
    CHECK(rec.var5 <= quantile(xs, 0.5));
}

TEST_CASE("degenerate constant sample reports sentinels") {
    const std::vector<double> xs(50, 4.2);
    const auto rec = summarize(xs, xs);
    CHECK(rec.mean == doctest::Approx(4.2));
    CHECK(rec.std_dev == 0.0);
    CHECK(std::isnan(rec.sharpe));
    CHECK(std::isnan(rec.skewness));
    CHECK(std::isnan(rec.kurtosis));
    CHECK(std::isnan(rec.jarque_bera));
    CHECK(rec.var5 == 4.2);
    CHECK(rec.q90_lo == 4);  // nearest integer of 4.2
}

TEST_CASE("insufficient samples are rejected") {
    const std::vector<double> one{1.0};
    const std::vector<double> two{1.0, 2.0};
    CHECK_THROWS_AS(summarize(one, two), std::invalid_argument);
    CHECK_THROWS_AS(summarize(two, one), std::invalid_argument);
    CHECK_NOTHROW(summarize(two, two));
}

TEST_CASE("jarque-bera wiring matches (n/6)(S^2 + (K-3)^2/4)") {
    const auto xs = normal_draws(5000, 11);
    const auto ys = normal_draws(5000, 12);
    const auto rec = summarize(xs, ys);
    const double n = 5000.0;
    const double expected =
        n / 6.0 *
        (rec.skewness * rec.skewness + 0.25 * (rec.kurtosis - 3.0) * (rec.kurtosis - 3.0));
    CHECK(rec.jarque_bera == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("summarize is permutation invariant, bit for bit") {
    auto xs = normal_draws(4096, 21);
    auto ys = normal_draws(4096, 22);
    const auto before = summarize(xs, ys);
    std::mt19937 gen(99);
    std::shuffle(xs.begin(), xs.end(), gen);
    std::shuffle(ys.begin(), ys.end(), gen);
    const auto after = summarize(xs, ys);
    CHECK(before.mean == after.mean);
    CHECK(before.std_dev == after.std_dev);
    CHECK(before.skewness == after.skewness);
    CHECK(before.kurtosis == after.kurtosis);
    CHECK(before.jarque_bera == after.jarque_bera);
    CHECK(before.var5 == after.var5);
    CHECK(before.var1 == after.var1);
    CHECK(before.q90_lo == after.q90_lo);
    CHECK(before.q90_hi == after.q90_hi);
}

TEST_CASE("large normal samples calibrate kurtosis near 3") {
    const auto xs = normal_draws(1'000'000, 31);
    const auto rec = summarize(xs, xs);
    CHECK(rec.kurtosis == doctest::Approx(3.0).epsilon(0.05 / 3.0));
    CHECK(std::abs(rec.skewness) < 0.01);
}

TEST_CASE("JB of 1e5 normal draws sits below the chi2 99.9% point almost always") {
    int below = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const auto xs = normal_draws(100'000, 1000 + t);
        const auto rec = summarize(xs, xs);
        if (rec.jarque_bera < 13.8) ++below;
    }
    CHECK(below >= 99);
}

TEST_CASE("histogram") {
    SUBCASE("two samples, two bins") {
        const std::vector<double> xs{0.5, 1.5};
        const auto h = histogram(xs, 2, 0.0, 2.0);
        CHECK(h.counts == std::vector<long>{1, 1});
        CHECK(h.underflow == 0);
        CHECK(h.overflow == 0);
    }
    SUBCASE("identical samples land in one bin") {
        const std::vector<double> xs(17, 0.3);
        const auto h = histogram(xs, 5, 0.0, 1.0);
        CHECK(h.counts[1] == 17);
        CHECK(std::accumulate(h.counts.begin(), h.counts.end(), 0L) == 17);
    }
    SUBCASE("range edges: hi lands in the last bin, outliers in overflow") {
        const std::vector<double> xs{-0.1, 0.0, 1.0, 1.1};
        const auto h = histogram(xs, 4, 0.0, 1.0);
        CHECK(h.underflow == 1);
        CHECK(h.overflow == 1);
        CHECK(h.counts.front() == 1);
        CHECK(h.counts.back() == 1);
    }
    SUBCASE("uniform draws fill bins to binomial accuracy") {
        const std::size_t n = 1'000'000;
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = rng::uniform(606, 0, i, rng::Channel::price_noise);
        const auto h = histogram(xs, 10, 0.0, 1.0);
        const double sigma = std::sqrt(n * 0.1 * 0.9);
        for (long c : h.counts) CHECK(std::abs(c - 100'000.0) < 4.0 * sigma);
    }
    SUBCASE("errors") {
        const std::vector<double> xs{1.0};
        CHECK_THROWS_AS(histogram(xs, 0, 0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(histogram(xs, 3, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(histogram(xs, 3, 2.0, 1.0), std::invalid_argument);
    }
}
