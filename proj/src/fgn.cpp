#include "rwrs/fgn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "rwrs/fft.hpp"

namespace rwrs {

namespace {
constexpr double kEigTolerance = 1e-8;    // relative to the largest eigenvalue
constexpr std::size_t kCholeskyMax = 2048;
} // namespace

void FgnParams::validate() const {
    if (!(hurst > 0.0) || !(hurst < 1.0))
        throw std::invalid_argument("fgn hurst index must lie in (0, 1)");
    if (length < 1)
        throw std::invalid_argument("fgn length must be at least 1");
}

double fgn_autocovariance(double hurst, std::int64_t lag) {
    const double k = static_cast<double>(lag < 0 ? -lag : lag);
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
                  std::pow(std::abs(k - 1.0), two_h));
}

FgnGenerator::FgnGenerator(const FgnParams& params, Method method) : params_(params) {
    params_.validate();
    switch (method) {
        case Method::cholesky:
            build_cholesky();
            break;
        case Method::circulant:
            build_circulant();
            break;
        case Method::automatic:
            try {
                build_circulant();
            } catch (const std::runtime_error&) {
                if (params_.length > kCholeskyMax) throw;
                build_cholesky();
            }
            break;
    }
}

void FgnGenerator::build_circulant() {
    const std::size_t n = params_.length;
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> c(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t lag = j <= n ? j : m - j;
        c[j] = fgn_autocovariance(params_.hurst, static_cast<std::int64_t>(lag));
    }
    fft::transform(c, false);

    double max_eig = 0.0;
    for (const auto& v : c) max_eig = std::max(max_eig, v.real());
    std::vector<double> lambda(m);
    for (std::size_t j = 0; j < m; ++j) {
        double eig = c[j].real();
        if (eig < -kEigTolerance * max_eig)
            throw std::runtime_error("circulant embedding has negative eigenvalues");
        lambda[j] = std::max(eig, 0.0);
    }

    // Amplitudes so that Re(DFT(w)) has the requested covariance: the two
    // self-conjugate bins carry sqrt(lambda/m), paired bins sqrt(lambda/2m).
    spectral_amp_.assign(m, 0.0);
    const double dm = static_cast<double>(m);
    spectral_amp_[0] = std::sqrt(lambda[0] / dm);
    spectral_amp_[n] = std::sqrt(lambda[n] / dm);
    for (std::size_t k = 1; k < n; ++k)
        spectral_amp_[k] = std::sqrt(lambda[k] / (2.0 * dm));

    embed_size_ = m;
    method_ = Method::circulant;
}

void FgnGenerator::build_cholesky() {
    const std::size_t n = params_.length;
    if (n > kCholeskyMax)
        throw std::runtime_error("cholesky fallback limited to length 2048");
    Eigen::MatrixXd cov(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cov(i, j) = fgn_autocovariance(params_.hurst,
                                           static_cast<std::int64_t>(i) -
                                               static_cast<std::int64_t>(j));
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("fgn covariance is not positive definite");
    Eigen::MatrixXd lower = llt.matrixL();
    chol_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) chol_[i * n + j] = lower(i, j);
    method_ = Method::cholesky;
}

std::vector<double> FgnGenerator::sample(RandomStream& stream) const {
    return method_ == Method::circulant ? sample_circulant(stream) : sample_cholesky(stream);
}

std::vector<double> FgnGenerator::sample_circulant(RandomStream& stream) const {
    const std::size_t n = params_.length;
    const std::size_t m = embed_size_;
    std::vector<std::complex<double>> w(m);
    w[0] = spectral_amp_[0] * stream.gaussian();
    w[n] = spectral_amp_[n] * stream.gaussian();
    for (std::size_t k = 1; k < n; ++k) {
        const double re = stream.gaussian();
        const double im = stream.gaussian();
        w[k] = spectral_amp_[k] * std::complex<double>(re, im);
        w[m - k] = std::conj(w[k]);
    }
    fft::transform(w, false);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = w[j].real();
    return out;
}

std::vector<double> FgnGenerator::sample_cholesky(RandomStream& stream) const {
    const std::size_t n = params_.length;
    std::vector<double> z(n);
    for (auto& v : z) v = stream.gaussian();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += chol_[i * n + j] * z[j];
        out[i] = acc;
    }
    return out;
}

std::vector<double> sample_fgn(const FgnParams& params, RandomStream& stream) {
    return FgnGenerator(params).sample(stream);
}

} // namespace rwrs
