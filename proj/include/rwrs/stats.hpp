#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rwrs::stats {

double mean(const std::vector<double>& xs);
/// Unbiased sample variance; needs at least two points.
double variance(const std::vector<double>& xs);

/// Linear-interpolation quantile (the common "type 7" rule) of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double q);
/// Quantile of unsorted data (copies and sorts).
double quantile(std::vector<double> xs, double q);
/// Inter-quartile range q75 - q25.
double iqr(std::vector<double> xs);

struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double min = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double max = 0.0;
    double iqr = 0.0;
};

SummaryStats summarize(std::vector<double> xs);

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Least squares y = intercept + slope x; stderr needs >= 3 points.
OlsFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

struct KsResult {
    double statistic = 0.0;
    double critical_99 = 0.0;
    bool below_critical = false;
};

/// Two-sample Kolmogorov-Smirnov distance with the asymptotic 99% critical
/// value 1.6276 sqrt((m + n) / (m n)).
KsResult two_sample_ks(std::vector<double> a, std::vector<double> b);
double ks_critical_99(std::size_t m, std::size_t n);

/// (1/N) sum exp(i u x_j).
std::complex<double> empirical_cf(const std::vector<double>& xs, double u);

} // namespace rwrs::stats
