#include "rwrs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace rwrs::fft {

namespace {
// FFTW's planner is not thread-safe, so plan creation is serialised and plans
// are cached per (size, direction).  FFTW_UNALIGNED keeps the plans usable on
// arbitrary caller buffers via the new-array execute interface.
std::mutex planner_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> plan_cache;

fftw_plan plan_for(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    const auto key = std::make_pair(n, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    // The plan must be created in-place: execute_dft may only be applied to
    // buffers with the same in-place-ness as the original plan.
    std::vector<fftw_complex> scratch(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch.data(), scratch.data(),
                                      sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("fftw plan creation failed");
    plan_cache.emplace(key, plan);
    return plan;
}
} // namespace

void transform(std::complex<double>* data, std::size_t n, bool inverse) {
    if (n == 0) return;
    if (n == 1) return;
    fftw_plan plan = plan_for(n, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
    auto* raw = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, raw, raw);
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace rwrs::fft
