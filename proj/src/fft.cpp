#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace levyig::detail {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for(std::size_t n) {
    static std::map<std::size_t, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_free(buf);
    if (!plan) throw std::runtime_error("fftw planning failed");
    cache.emplace(n, plan);
    return plan;
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::runtime_error("fft_forward: size must be a power of two");
    fftw_plan plan = plan_for(n);
    fftw_complex* buf = fftw_alloc_complex(n);
    std::memcpy(buf, data.data(), n * sizeof(fftw_complex));
    fftw_execute_dft(plan, buf, buf);
    std::memcpy(data.data(), buf, n * sizeof(fftw_complex));
    fftw_free(buf);
}

}  // namespace levyig::detail
