#include "rwrs/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rwrs {

namespace {

// a + s*b on the merged partition.  Values are located by index-walking over
// exact edge values (never by evaluating at synthesised interior points), so
// the result is exact whenever the inputs share edge representations.
StepFunction combine(const StepFunction& a, const StepFunction& b, double s) {
    if (a.empty() && b.empty()) return StepFunction();
    std::vector<double> merged;
    merged.reserve(a.edges().size() + b.edges().size());
    merged.insert(merged.end(), a.edges().begin(), a.edges().end());
    merged.insert(merged.end(), b.edges().begin(), b.edges().end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    std::vector<double> values(merged.size() - 1, 0.0);
    std::size_t ia = 0;
    std::size_t ib = 0;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        const double left = merged[i];
        double v = 0.0;
        if (!a.empty()) {
            while (ia < a.cells() && a.edges()[ia + 1] <= left) ++ia;
            if (ia < a.cells() && a.edges()[ia] <= left) v += a.values()[ia];
        }
        if (!b.empty()) {
            while (ib < b.cells() && b.edges()[ib + 1] <= left) ++ib;
            if (ib < b.cells() && b.edges()[ib] <= left) v += s * b.values()[ib];
        }
        values[i] = v;
    }
    return StepFunction(std::move(merged), std::move(values));
}

} // namespace

StepFunction::StepFunction(std::vector<double> edges, std::vector<double> values)
    : edges_(std::move(edges)), values_(std::move(values)) {
    if (edges_.size() != values_.size() + 1)
        throw std::invalid_argument("step function needs one more edge than values");
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i)
        if (!(edges_[i] < edges_[i + 1]))
            throw std::invalid_argument("step function edges must be strictly increasing");
    trim();
}

StepFunction StepFunction::indicator(double a, double b, double value) {
    if (!(a < b)) throw std::invalid_argument("indicator needs a < b");
    return StepFunction({a, b}, {value});
}

void StepFunction::trim() {
    if (values_.empty()) {
        edges_.clear();
        return;
    }
    // Merge adjacent cells with identical values (canonical form).
    std::vector<double> e{edges_.front()};
    std::vector<double> v;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!v.empty() && v.back() == values_[i]) {
            e.back() = edges_[i + 1];
        } else {
            v.push_back(values_[i]);
            e.push_back(edges_[i + 1]);
        }
    }
    // Drop zero tails.
    std::size_t lo = 0;
    std::size_t hi = v.size();
    while (lo < hi && v[lo] == 0.0) ++lo;
    while (hi > lo && v[hi - 1] == 0.0) --hi;
    if (lo == hi) {
        edges_.clear();
        values_.clear();
        return;
    }
    values_.assign(v.begin() + static_cast<std::ptrdiff_t>(lo),
                   v.begin() + static_cast<std::ptrdiff_t>(hi));
    edges_.assign(e.begin() + static_cast<std::ptrdiff_t>(lo),
                  e.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
}

double StepFunction::operator()(double x) const {
    if (empty() || x < edges_.front() || x >= edges_.back()) return 0.0;
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    const auto idx = static_cast<std::size_t>(it - edges_.begin()) - 1;
    return values_[idx];
}

std::pair<double, double> StepFunction::support() const {
    if (empty()) return {0.0, 0.0};
    return {edges_.front(), edges_.back()};
}

StepFunction& StepFunction::scale(double s) {
    for (auto& v : values_) v *= s;
    trim();
    return *this;
}

StepFunction StepFunction::scaled(double s) const {
    StepFunction out(*this);
    out.scale(s);
    return out;
}

StepFunction StepFunction::dilate_arg(double c) const {
    if (!(c > 0.0)) throw std::invalid_argument("dilation factor must be positive");
    if (empty()) return StepFunction();
    std::vector<double> e;
    std::vector<double> v;
    e.reserve(edges_.size());
    v.reserve(values_.size());
    e.push_back(edges_.front() / c);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double next = edges_[i + 1] / c;
        if (next > e.back()) { // guard against rounding collapsing a cell
            v.push_back(values_[i]);
            e.push_back(next);
        }
    }
    if (v.empty()) return StepFunction();
    return StepFunction(std::move(e), std::move(v));
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
    return combine(a, b, 1.0);
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
    return combine(a, b, -1.0);
}

StepFunction StepFunction::grid_project(double delta) const {
    if (!(delta > 0.0)) throw std::invalid_argument("grid step must be positive");
    if (empty()) return StepFunction();
    const auto j0 = static_cast<std::int64_t>(std::floor(edges_.front() / delta));
    const auto j1 = static_cast<std::int64_t>(std::floor(edges_.back() / delta));
    std::vector<double> e;
    std::vector<double> v;
    e.reserve(static_cast<std::size_t>(j1 - j0 + 2));
    e.push_back(static_cast<double>(j0) * delta);
    for (std::int64_t j = j0; j <= j1; ++j) {
        v.push_back((*this)(static_cast<double>(j) * delta));
        e.push_back(static_cast<double>(j + 1) * delta);
    }
    return StepFunction(std::move(e), std::move(v));
}

StepFunction StepFunction::block_average(double delta) const {
    if (!(delta > 0.0)) throw std::invalid_argument("grid step must be positive");
    if (empty()) return StepFunction();
    const auto j0 = static_cast<std::int64_t>(std::floor(edges_.front() / delta));
    const auto j1 = static_cast<std::int64_t>(std::floor(edges_.back() / delta));
    std::vector<double> e;
    std::vector<double> v;
    e.push_back(static_cast<double>(j0) * delta);
    std::size_t cell = 0;
    for (std::int64_t j = j0; j <= j1; ++j) {
        const double lo = static_cast<double>(j) * delta;
        const double hi = lo + delta;
        double acc = 0.0;
        while (cell < values_.size() && edges_[cell + 1] <= lo) ++cell;
        for (std::size_t i = cell; i < values_.size() && edges_[i] < hi; ++i) {
            const double seg = std::min(hi, edges_[i + 1]) - std::max(lo, edges_[i]);
            if (seg > 0.0) acc += values_[i] * seg;
        }
        v.push_back(acc / delta);
        e.push_back(hi);
    }
    return StepFunction(std::move(e), std::move(v));
}

double StepFunction::integral() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
        acc += values_[i] * (edges_[i + 1] - edges_[i]);
    return acc;
}

double StepFunction::integral_abs_pow(double p) const {
    if (empty()) return 0.0;
    return integral_abs_pow(p, edges_.front(), edges_.back());
}

double StepFunction::integral_abs_pow(double p, double lo, double hi) const {
    if (!(p >= 1.0)) throw std::invalid_argument("exponent p must be >= 1");
    if (empty() || !(lo < hi)) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double seg = std::min(hi, edges_[i + 1]) - std::max(lo, edges_[i]);
        if (seg > 0.0 && values_[i] != 0.0) acc += std::pow(std::abs(values_[i]), p) * seg;
    }
    return acc;
}

double lp_norm(const StepFunction& f, double p) {
    return std::pow(f.integral_abs_pow(p), 1.0 / p);
}

double lp_norm(const StepFunction& f, double p, double lo, double hi) {
    return std::pow(f.integral_abs_pow(p, lo, hi), 1.0 / p);
}

double lp_distance(const StepFunction& f, const StepFunction& g, double p) {
    return lp_norm(f - g, p);
}

double lp_distance(const StepFunction& f, const StepFunction& g, double p, double lo,
                   double hi) {
    return lp_norm(f - g, p, lo, hi);
}

} // namespace rwrs
