#include "busfactor/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/zeta.hpp>

#include "busfactor/errors.hpp"

namespace busfactor::stats {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

namespace {

double pearson(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("spearman needs two equal-length samples");
    auto rx = average_ranks(x);
    auto ry = average_ranks(y);
    return pearson(rx, ry);
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope needs two equal-length samples");
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0) throw InvalidArgument("slope undefined for constant x");
    return sxy / sxx;
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0) return 1.0;
    // The alternating series converges slowly for small lambda, where the
    // survival probability is 1 to double precision anyway.
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_uniform(std::span<const double> sample) {
    if (sample.empty()) throw InvalidArgument("KS test needs a non-empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double x = std::clamp(sorted[i], 0.0, 1.0);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - x, x - static_cast<double>(i) / n});
    }
    const double root = std::sqrt(n);
    return {d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d)};
}

namespace {

/// zeta(a, xmin) = sum_{k >= xmin} k^-a.
double hurwitz_zeta(double a, std::size_t xmin) {
    double z = boost::math::zeta(a);
    for (std::size_t k = 1; k < xmin; ++k) z -= std::pow(static_cast<double>(k), -a);
    return z;
}

}  // namespace

double fit_discrete_powerlaw(std::span<const std::size_t> values, std::size_t xmin) {
    if (xmin < 1) throw InvalidArgument("xmin must be positive");
    double log_sum = 0.0;
    std::size_t n = 0;
    for (std::size_t v : values) {
        if (v < xmin) continue;
        log_sum += std::log(static_cast<double>(v));
        ++n;
    }
    if (n == 0) throw InvalidArgument("no values at or above xmin");
    const auto count = static_cast<double>(n);
    auto log_likelihood = [&](double a) { return -count * std::log(hurwitz_zeta(a, xmin)) - a * log_sum; };

    // The log-likelihood is concave in the exponent; golden-section search.
    double lo = 1.0001, hi = 10.0;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - ratio * (hi - lo);
    double d = lo + ratio * (hi - lo);
    double fc = log_likelihood(c), fd = log_likelihood(d);
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = log_likelihood(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = log_likelihood(d);
        }
    }
    return (lo + hi) / 2.0;
}

PowerlawFit fit_discrete_powerlaw_scan(std::span<const std::size_t> values, std::size_t min_tail) {
    std::vector<std::size_t> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || sorted.front() < 1) throw InvalidArgument("power-law fit needs positive values");
    PowerlawFit best;
    bool found = false;
    for (auto it = sorted.begin(); it != sorted.end(); it = std::upper_bound(it, sorted.end(), *it)) {
        const std::size_t xmin = *it;
        const auto tail = static_cast<std::size_t>(sorted.end() - it);
        if (tail < std::max<std::size_t>(min_tail, 2)) break;
        const double a = fit_discrete_powerlaw(values, xmin);
        const double norm = hurwitz_zeta(a, xmin);
        // Compare CDFs at every distinct tail value.
        double distance = 0.0, model_cdf = 0.0;
        std::size_t k = xmin;
        for (auto jt = it; jt != sorted.end();) {
            const std::size_t x = *jt;
            for (; k <= x; ++k) model_cdf += std::pow(static_cast<double>(k), -a) / norm;
            jt = std::upper_bound(jt, sorted.end(), x);
            const double empirical = static_cast<double>(jt - it) / static_cast<double>(tail);
            distance = std::max(distance, std::abs(empirical - model_cdf));
        }
        if (!found || distance < best.ks_distance) {
            best = {a, xmin, tail, distance};
            found = true;
        }
    }
    if (!found) throw InvalidArgument("too few values for a power-law fit");
    return best;
}

}  // namespace busfactor::stats
