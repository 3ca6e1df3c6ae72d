#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace busfactor::stats {

/// Ranks starting at 1; tied values share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation (Pearson correlation of average ranks).
/// Returns 0 when either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// One-sample Kolmogorov-Smirnov test against Uniform(0, 1), with the asymptotic
/// Kolmogorov distribution (Stephens' small-sample correction).
KsResult ks_uniform(std::span<const double> sample);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

/// Discrete power-law exponent by maximum likelihood over values >= xmin,
/// maximising -n log zeta(a, xmin) - a sum log x.
double fit_discrete_powerlaw(std::span<const std::size_t> values, std::size_t xmin = 1);

struct PowerlawFit {
    double exponent = 0.0;
    std::size_t xmin = 1;
    std::size_t tail_size = 0;
    /// KS distance between the tail and the fitted law.
    double ks_distance = 0.0;
};

/// Fits every candidate xmin leaving at least `min_tail` values and keeps the one
/// whose fitted law is closest to the tail in KS distance.
PowerlawFit fit_discrete_powerlaw_scan(std::span<const std::size_t> values, std::size_t min_tail = 50);

}  // namespace busfactor::stats
