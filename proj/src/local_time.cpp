#include "rwrs/local_time.hpp"

#include <cmath>
#include <stdexcept>

namespace rwrs {

namespace {

// Cells [site, site+1) / a_n with the given values; gaps between runs get a
// single zero cell so the edge array stays strictly increasing.
StepFunction step_from_sites(const std::vector<std::pair<std::int64_t, double>>& cells,
                             double inv_an) {
    if (cells.empty()) return StepFunction();
    std::vector<double> e;
    std::vector<double> v;
    e.reserve(cells.size() + 2);
    v.reserve(cells.size() + 1);
    e.push_back(static_cast<double>(cells.front().first) * inv_an);
    std::int64_t prev = cells.front().first - 1;
    for (const auto& [site, value] : cells) {
        if (site != prev + 1) {
            v.push_back(0.0); // gap cell
            e.push_back(static_cast<double>(site) * inv_an);
        }
        v.push_back(value);
        e.push_back(static_cast<double>(site + 1) * inv_an);
        prev = site;
    }
    return StepFunction(std::move(e), std::move(v));
}

} // namespace

LocalTimeField LocalTimeField::accumulate(std::shared_ptr<const WalkPath> path,
                                          std::size_t horizon) {
    if (path == nullptr) throw std::invalid_argument("local time needs a walk path");
    if (horizon > path->length())
        throw std::invalid_argument("accumulation horizon exceeds recorded path length");

    LocalTimeField field;
    field.path_ = std::move(path);
    field.horizon_ = horizon;
    const auto& pos = field.path_->positions;
    std::int64_t lo = pos[0];
    std::int64_t hi = pos[0];
    for (std::size_t k = 1; k <= horizon; ++k) {
        lo = std::min(lo, pos[k]);
        hi = std::max(hi, pos[k]);
    }
    field.min_site_ = lo;
    field.max_site_ = hi;
    const auto range = static_cast<std::uint64_t>(hi - lo);
    field.dense_ = range < static_cast<std::uint64_t>(kDenseLimit);
    if (field.dense_) {
        field.counts_.assign(range + 1, 0);
        for (std::size_t k = 0; k <= horizon; ++k) ++field.counts_[pos[k] - lo];
    } else {
        for (std::size_t k = 0; k <= horizon; ++k) ++field.sparse_[pos[k]];
    }
    return field;
}

std::int64_t LocalTimeField::count(std::int64_t site) const {
    if (site < min_site_ || site > max_site_) return 0;
    if (dense_) return counts_[static_cast<std::size_t>(site - min_site_)];
    const auto it = sparse_.find(site);
    return it == sparse_.end() ? 0 : it->second;
}

std::uint64_t LocalTimeField::total_visits() const {
    return static_cast<std::uint64_t>(horizon_) + 1;
}

std::vector<std::pair<std::int64_t, std::int64_t>> LocalTimeField::nonzero() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    if (dense_) {
        for (std::size_t i = 0; i < counts_.size(); ++i)
            if (counts_[i] != 0)
                out.emplace_back(min_site_ + static_cast<std::int64_t>(i), counts_[i]);
    } else {
        out.assign(sparse_.begin(), sparse_.end());
    }
    return out;
}

RescaledLocalTime::RescaledLocalTime(const LocalTimeField& field, std::uint64_t n,
                                     double a_n, double t)
    : field_(field), n_(n), a_n_(a_n), t_(t) {
    if (n_ == 0) throw std::invalid_argument("rescaled local time needs n >= 1");
    if (!(a_n_ > 0.0)) throw std::invalid_argument("scaling a_n must be positive");
    if (!(t_ >= 0.0)) throw std::invalid_argument("time must be nonnegative");
    const auto steps = static_cast<std::uint64_t>(std::floor(static_cast<double>(n_) * t_));
    if (steps > field.horizon())
        throw std::invalid_argument("time t is too large for the recorded horizon");
    if (steps < field.horizon())
        field_ = LocalTimeField::accumulate(field.path_ptr(), steps);
}

double RescaledLocalTime::operator()(double x) const {
    const double site = std::floor(a_n_ * x);
    const double scale = a_n_ / static_cast<double>(n_);
    return scale * static_cast<double>(field_.count(static_cast<std::int64_t>(site)));
}

StepFunction RescaledLocalTime::to_step_function() const {
    const double inv_an = 1.0 / a_n_;
    const double scale = a_n_ / static_cast<double>(n_);
    std::vector<std::pair<std::int64_t, double>> cells;
    for (const auto& [site, count] : field_.nonzero())
        cells.emplace_back(site, scale * static_cast<double>(count));
    return step_from_sites(cells, inv_an);
}

RescaledLocalTime rescale(const LocalTimeField& field, std::uint64_t n, double a_n,
                          double t) {
    return RescaledLocalTime(field, n, a_n, t);
}

RescaledLocalTime rescaled_local_time(std::shared_ptr<const WalkPath> path, std::uint64_t n,
                                      double a_n, double t) {
    if (path == nullptr) throw std::invalid_argument("local time needs a walk path");
    const auto steps = static_cast<std::uint64_t>(std::floor(static_cast<double>(n) * t));
    auto field = LocalTimeField::accumulate(std::move(path), steps);
    return RescaledLocalTime(field, n, a_n, t);
}

StepFunction coarsen(const RescaledLocalTime& lt, double delta) {
    return lt.to_step_function().grid_project(delta);
}

StepFunction combine(const std::vector<double>& theta,
                     const std::vector<RescaledLocalTime>& fields) {
    if (theta.size() != fields.size())
        throw std::invalid_argument("combine needs one weight per field");
    if (fields.empty()) return StepFunction();
    const std::uint64_t n = fields.front().n();
    const double a_n = fields.front().a_n();
    for (const auto& f : fields)
        if (f.n() != n || f.a_n() != a_n)
            throw std::invalid_argument("combined local times must share n and a_n");

    std::map<std::int64_t, double> acc;
    const double scale = a_n / static_cast<double>(n);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (theta[i] == 0.0) continue;
        for (const auto& [site, count] : fields[i].field().nonzero())
            acc[site] += theta[i] * scale * static_cast<double>(count);
    }
    std::vector<std::pair<std::int64_t, double>> cells(acc.begin(), acc.end());
    return step_from_sites(cells, 1.0 / a_n);
}

} // namespace rwrs
