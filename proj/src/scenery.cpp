#include "rwrs/scenery.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <mutex>
#include <stdexcept>

#include "rwrs/fft.hpp"

namespace rwrs {

namespace {

constexpr std::int64_t kDirectKernelLimit = 256; // direct convolution below this size
constexpr std::int64_t kBlockSmall = 4096;
constexpr std::int64_t kBlockLarge = 32768;

void append_bits(std::vector<std::uint64_t>& buf, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    buf.push_back(bits);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Exact Var(w_n) for a moving-average scenery: w_n = sum_k A_k eta_k with
// A_k a window sum of kernel coefficients, evaluated via prefix sums.
double exact_cumulative_variance(const MovingAverageKernel& kernel, double innovation_std,
                                 std::int64_t n) {
    const auto coeffs = kernel.materialise();
    const std::int64_t lo = kernel.lag_lo();
    const std::int64_t hi = kernel.lag_hi();
    std::vector<double> prefix(coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) prefix[i + 1] = prefix[i] + coeffs[i];
    double acc = 0.0;
    for (std::int64_t k = -hi; k <= n - 1 - lo; ++k) {
        const std::int64_t jlo = std::max(lo, -k);
        const std::int64_t jhi = std::min(hi, n - 1 - k);
        if (jhi < jlo) continue;
        const double a = prefix[static_cast<std::size_t>(jhi - lo + 1)] -
                         prefix[static_cast<std::size_t>(jlo - lo)];
        acc += a * a;
    }
    return innovation_std * innovation_std * acc;
}

// kappa = sqrt(Var(w_n)) / n^H at a calibration n inside the kernel's scaling
// window.  Beyond the truncation radius the kernel's partial sums cross over
// to linear growth, so the calibration point must stay well below the radius.
double power_decay_kappa(const ScenerySpec& spec) {
    static std::mutex mutex;
    static std::map<std::uint64_t, double> cache;
    const std::uint64_t key = spec.fingerprint();
    {
        std::lock_guard<std::mutex> lock(mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const std::int64_t n_cal =
        std::min<std::int64_t>(1 << 18, std::max<std::int64_t>(1024, spec.kernel.radius / 2));
    const double var = exact_cumulative_variance(spec.kernel, spec.innovation_std, n_cal);
    const double kappa =
        std::sqrt(var) / std::pow(static_cast<double>(n_cal), spec.kernel.hurst());
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, kappa);
    return kappa;
}

// Kernel spectra for FFT convolution, cached per (spec, transform size).
const std::vector<std::complex<double>>& kernel_spectrum(const ScenerySpec& spec,
                                                         std::size_t fft_n) {
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, std::size_t>,
                    std::unique_ptr<std::vector<std::complex<double>>>>
        cache;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_pair(spec.fingerprint(), fft_n);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto spec_fft = std::make_unique<std::vector<std::complex<double>>>(fft_n);
        const auto coeffs = spec.kernel.materialise();
        for (std::size_t i = 0; i < coeffs.size(); ++i) (*spec_fft)[i] = coeffs[i];
        fft::transform(*spec_fft, false);
        it = cache.emplace(key, std::move(spec_fft)).first;
    }
    return *it->second;
}

} // namespace

void MovingAverageKernel::validate() const {
    switch (kind) {
        case KernelKind::summable: {
            if (coeffs.empty())
                throw std::invalid_argument("summable kernel needs at least one coefficient");
            double total = 0.0;
            double total_abs = 0.0;
            for (double c : coeffs) {
                total += c;
                total_abs += std::abs(c);
            }
            if (total_abs == 0.0 || std::abs(total) < 1e-12 * total_abs)
                throw std::invalid_argument(
                    "summable kernel coefficients sum to zero; the cumulative scenery "
                    "would not scale diffusively");
            break;
        }
        case KernelKind::power_decay:
            if (!(decay > 0.5) || !(decay < 1.0))
                throw std::invalid_argument("power-decay exponent must lie in (1/2, 1)");
            if (p_plus == 0.0 || p_minus == 0.0)
                throw std::invalid_argument("power-decay weights must both be nonzero");
            if (radius < 16)
                throw std::invalid_argument("power-decay truncation radius must be >= 16");
            break;
    }
}

std::vector<double> MovingAverageKernel::materialise() const {
    if (kind == KernelKind::summable) return coeffs;
    std::vector<double> c(static_cast<std::size_t>(2 * radius + 1), 0.0);
    for (std::int64_t k = -radius; k <= radius; ++k) {
        const auto idx = static_cast<std::size_t>(k + radius);
        if (k >= 0)
            c[idx] = p_plus * (k == 0 ? 1.0 : std::pow(static_cast<double>(k), -decay));
        else
            c[idx] = p_minus * std::pow(static_cast<double>(-k), -decay);
    }
    return c;
}

std::int64_t MovingAverageKernel::lag_lo() const {
    return kind == KernelKind::summable ? min_lag : -radius;
}

std::int64_t MovingAverageKernel::lag_hi() const {
    return kind == KernelKind::summable
               ? min_lag + static_cast<std::int64_t>(coeffs.size()) - 1
               : radius;
}

double MovingAverageKernel::hurst() const {
    return kind == KernelKind::summable ? 0.5 : 1.5 - decay;
}

void ScenerySpec::validate() const {
    switch (kind) {
        case SceneryKind::iid_stable:
            marginal.validate();
            break;
        case SceneryKind::moving_average:
            kernel.validate();
            if (!(innovation_std > 0.0))
                throw std::invalid_argument("innovation std must be positive");
            break;
    }
}

double ScenerySpec::noise_index() const {
    return kind == SceneryKind::iid_stable ? marginal.index : 2.0;
}

std::uint64_t ScenerySpec::fingerprint() const {
    std::vector<std::uint64_t> buf;
    buf.push_back(static_cast<std::uint64_t>(kind));
    if (kind == SceneryKind::iid_stable) {
        append_bits(buf, marginal.index);
        append_bits(buf, marginal.scale);
        append_bits(buf, marginal.skewness);
    } else {
        buf.push_back(static_cast<std::uint64_t>(kernel.kind));
        append_bits(buf, innovation_std);
        if (kernel.kind == KernelKind::summable) {
            buf.push_back(static_cast<std::uint64_t>(kernel.min_lag));
            for (double c : kernel.coeffs) append_bits(buf, c);
        } else {
            append_bits(buf, kernel.decay);
            append_bits(buf, kernel.p_plus);
            append_bits(buf, kernel.p_minus);
            buf.push_back(static_cast<std::uint64_t>(kernel.radius));
        }
    }
    return fnv1a64(buf.data(), buf.size() * sizeof(std::uint64_t));
}

double normalization(const ScenerySpec& spec, double h) {
    spec.validate();
    if (!(h > 0.0)) throw std::invalid_argument("mesh h must be positive");
    switch (spec.kind) {
        case SceneryKind::iid_stable:
            return std::pow(h, 1.0 / spec.marginal.index) / spec.marginal.scale;
        case SceneryKind::moving_average:
            if (spec.kernel.kind == KernelKind::summable) {
                double total = 0.0;
                for (double c : spec.kernel.coeffs) total += c;
                return std::sqrt(h) / (std::abs(total) * spec.innovation_std);
            }
            return std::pow(h, spec.kernel.hurst()) / power_decay_kappa(spec);
    }
    throw std::logic_error("unreachable scenery kind");
}

Scenery::Scenery(const ScenerySpec& spec, const SeedSpec& seed) : spec_(spec), seed_(seed) {
    spec_.validate();
    site_key_ = fold_seed(fold_seed(seed.master_seed, "scenery-sites"), seed.stream_id);
    const bool heavy = spec_.kind == SceneryKind::moving_average &&
                       spec_.kernel.kind == KernelKind::power_decay;
    block_size_ = heavy ? kBlockLarge : kBlockSmall;
}

std::shared_ptr<Scenery> Scenery::fixed(std::map<std::int64_t, double> values,
                                        const ScenerySpec& spec) {
    auto out = std::make_shared<Scenery>(spec, SeedSpec{});
    out->fixed_mode_ = true;
    out->fixed_ = std::move(values);
    return out;
}

double Scenery::innovation(std::int64_t site) const {
    RandomStream stream(site_key_, zigzag(site));
    return spec_.innovation_std * stream.gaussian();
}

const std::vector<double>& Scenery::block(std::int64_t index) {
    auto it = blocks_.find(index);
    if (it == blocks_.end()) it = blocks_.emplace(index, build_block(index)).first;
    return it->second;
}

std::vector<double> Scenery::build_block(std::int64_t index) const {
    const std::int64_t start = index * block_size_;
    const std::int64_t count = block_size_;
    std::vector<double> out(static_cast<std::size_t>(count));

    if (spec_.kind == SceneryKind::iid_stable) {
        StableSampler sampler(spec_.marginal);
        for (std::int64_t i = 0; i < count; ++i) {
            RandomStream stream(site_key_, zigzag(start + i));
            out[static_cast<std::size_t>(i)] = sampler(stream);
        }
        return out;
    }

    const std::int64_t lo = spec_.kernel.lag_lo();
    const std::int64_t hi = spec_.kernel.lag_hi();
    const std::int64_t ksize = hi - lo + 1;
    // Innovations needed for xi_i = sum_j c_j eta_{i-j}, i in [start, start+count).
    const std::int64_t eta_lo = start - hi;
    const std::int64_t eta_hi = start + count - 1 - lo;
    const std::int64_t eta_n = eta_hi - eta_lo + 1;

    if (ksize <= kDirectKernelLimit) {
        const auto coeffs = spec_.kernel.materialise();
        std::vector<double> eta(static_cast<std::size_t>(eta_n));
        for (std::int64_t b = 0; b < eta_n; ++b)
            eta[static_cast<std::size_t>(b)] = innovation(eta_lo + b);
        for (std::int64_t i = 0; i < count; ++i) {
            double acc = 0.0;
            const std::int64_t site = start + i;
            for (std::int64_t j = lo; j <= hi; ++j)
                acc += coeffs[static_cast<std::size_t>(j - lo)] *
                       eta[static_cast<std::size_t>(site - j - eta_lo)];
            out[static_cast<std::size_t>(i)] = acc;
        }
        return out;
    }

    // FFT convolution.  The transform size is a pure function of the kernel
    // and block geometry, so a site's value never depends on the query pattern.
    const std::size_t fft_n =
        fft::next_pow2(static_cast<std::size_t>(eta_n + ksize - 1));
    const auto& kfft = kernel_spectrum(spec_, fft_n);
    std::vector<std::complex<double>> work(fft_n);
    for (std::int64_t b = 0; b < eta_n; ++b)
        work[static_cast<std::size_t>(b)] = innovation(eta_lo + b);
    fft::transform(work, false);
    for (std::size_t i = 0; i < fft_n; ++i) work[i] *= kfft[i];
    fft::transform(work, true);
    const double scale = 1.0 / static_cast<double>(fft_n);
    for (std::int64_t i = 0; i < count; ++i) {
        // conv index m = (site - lo) - eta_lo = i + (hi - lo)
        const auto m = static_cast<std::size_t>(i + hi - lo);
        out[static_cast<std::size_t>(i)] = work[m].real() * scale;
    }
    return out;
}

double Scenery::value(std::int64_t site) {
    if (fixed_mode_) {
        const auto it = fixed_.find(site);
        return it == fixed_.end() ? 0.0 : it->second;
    }
    const std::int64_t b = floor_div(site, block_size_);
    const auto& blk = block(b);
    return blk[static_cast<std::size_t>(site - b * block_size_)];
}

std::vector<double> Scenery::window(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("scenery window needs lo <= hi");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t s = lo; s <= hi; ++s) out.push_back(value(s));
    return out;
}

std::shared_ptr<Scenery> generate_scenery(const ScenerySpec& spec, const SeedSpec& seed) {
    return std::make_shared<Scenery>(spec, seed);
}

CumulativeScenery::CumulativeScenery(std::shared_ptr<Scenery> scenery)
    : scenery_(std::move(scenery)) {
    if (scenery_ == nullptr)
        throw std::invalid_argument("cumulative scenery needs a scenery");
    w_.assign(1, 0.0);
    lo_ = hi_ = 0;
}

void CumulativeScenery::extend(std::int64_t lo, std::int64_t hi) {
    if (lo < lo_) {
        std::vector<double> left;
        left.reserve(static_cast<std::size_t>(lo_ - lo));
        double w = w_.front();
        for (std::int64_t x = lo_; x > lo; --x) {
            w -= scenery_->value(x - 1);
            left.push_back(w);
        }
        std::reverse(left.begin(), left.end());
        left.insert(left.end(), w_.begin(), w_.end());
        w_ = std::move(left);
        lo_ = lo;
    }
    if (hi > hi_) {
        w_.reserve(static_cast<std::size_t>(hi - lo_ + 1));
        double w = w_.back();
        for (std::int64_t x = hi_; x < hi; ++x) {
            w += scenery_->value(x);
            w_.push_back(w);
        }
        hi_ = hi;
    }
}

double CumulativeScenery::at_int(std::int64_t x) {
    if (x < lo_ || x > hi_) extend(std::min(x, lo_), std::max(x, hi_));
    return w_[static_cast<std::size_t>(x - lo_)];
}

double CumulativeScenery::operator()(double x) {
    const double fl = std::floor(x);
    const auto xi = static_cast<std::int64_t>(fl);
    const double frac = x - fl;
    const double w0 = at_int(xi);
    if (frac == 0.0) return w0;
    return w0 + frac * (at_int(xi + 1) - w0);
}

RescaledCumulative::RescaledCumulative(std::shared_ptr<CumulativeScenery> w, double h,
                                       double gamma_h)
    : w_(std::move(w)), h_(h), gamma_(gamma_h) {
    if (w_ == nullptr) throw std::invalid_argument("rescaled cumulative needs w");
    if (!(h_ > 0.0)) throw std::invalid_argument("mesh h must be positive");
}

double RescaledCumulative::operator()(double x) const { return gamma_ * (*w_)(x / h_); }

RescaledCumulative rescaled_cumulative(std::shared_ptr<Scenery> scenery, double h) {
    if (scenery == nullptr) throw std::invalid_argument("rescaled cumulative needs scenery");
    const double gamma = normalization(scenery->spec(), h);
    return RescaledCumulative(std::make_shared<CumulativeScenery>(std::move(scenery)), h,
                              gamma);
}

} // namespace rwrs
