#include "rwrs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rwrs::stats {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean needs at least one sample");
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance needs at least two samples");
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size() - 1);
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile needs at least one sample");
    if (!(q >= 0.0) || !(q <= 1.0))
        throw std::invalid_argument("quantile level must lie in [0, 1]");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - std::floor(pos);
    if (frac == 0.0 || lo + 1 >= sorted.size()) return sorted[lo];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::vector<double> xs, double q) {
    std::sort(xs.begin(), xs.end());
    return quantile_sorted(xs, q);
}

double iqr(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    return quantile_sorted(xs, 0.75) - quantile_sorted(xs, 0.25);
}

SummaryStats summarize(std::vector<double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("summary needs at least two samples");
    SummaryStats s;
    s.count = xs.size();
    s.mean = mean(xs);
    s.variance = variance(xs);
    std::sort(xs.begin(), xs.end());
    s.min = xs.front();
    s.max = xs.back();
    s.q25 = quantile_sorted(xs, 0.25);
    s.median = quantile_sorted(xs, 0.5);
    s.q75 = quantile_sorted(xs, 0.75);
    s.iqr = s.q75 - s.q25;
    return s;
}

OlsFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("regression needs matched arrays");
    if (x.size() < 2) throw std::invalid_argument("regression needs at least two points");
    const auto n = static_cast<double>(x.size());
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("regression abscissae are degenerate");
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (x.size() >= 3) {
        double rss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            rss += r * r;
        }
        fit.slope_stderr = std::sqrt(rss / (n - 2.0) / sxx);
    }
    return fit;
}

double ks_critical_99(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) throw std::invalid_argument("KS needs nonempty samples");
    const auto dm = static_cast<double>(m);
    const auto dn = static_cast<double>(n);
    return 1.6276 * std::sqrt((dm + dn) / (dm * dn));
}

KsResult two_sample_ks(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS needs nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double gap = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        gap = std::max(gap, std::abs(static_cast<double>(i) / na -
                                     static_cast<double>(j) / nb));
    }
    KsResult result;
    result.statistic = gap;
    result.critical_99 = ks_critical_99(a.size(), b.size());
    result.below_critical = result.statistic < result.critical_99;
    return result;
}

std::complex<double> empirical_cf(const std::vector<double>& xs, double u) {
    if (xs.empty()) throw std::invalid_argument("empirical CF needs samples");
    double re = 0.0;
    double im = 0.0;
    for (double x : xs) {
        re += std::cos(u * x);
        im += std::sin(u * x);
    }
    const auto n = static_cast<double>(xs.size());
    return {re / n, im / n};
}

} // namespace rwrs::stats
