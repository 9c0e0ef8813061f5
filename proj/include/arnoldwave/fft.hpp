#ifndef ARNOLDWAVE_FFT_HPP
#define ARNOLDWAVE_FFT_HPP

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace aw {

namespace detail {

// FFTW plan creation is not thread-safe; plans are cached per size and reused
// (FFTW_ESTIMATE plans do not touch the arrays passed at creation time, so a
// cached plan may be executed on any properly aligned buffer via the _dft
// new-array interface).
class FftPlans {
public:
    static FftPlans& instance() {
        static FftPlans p;
        return p;
    }

    void transform(std::vector<std::complex<double>>& data, const std::vector<int>& dims,
                   int sign) {
        if (data.empty()) return;
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto key = std::make_pair(dims, sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                std::vector<std::complex<double>> scratch(data.size());
                plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(),
                                     reinterpret_cast<fftw_complex*>(scratch.data()),
                                     reinterpret_cast<fftw_complex*>(scratch.data()),
                                     sign, FFTW_ESTIMATE);
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data.data()),
                         reinterpret_cast<fftw_complex*>(data.data()));
    }

private:
    FftPlans() = default;
    ~FftPlans() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    std::mutex mutex_;
    std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

}  // namespace detail

/// In-place unnormalized DFT, e^{-i k x} convention on the forward transform.
inline void fft_forward(std::vector<std::complex<double>>& data) {
    detail::FftPlans::instance().transform(data, {static_cast<int>(data.size())},
                                           FFTW_FORWARD);
}

/// In-place inverse DFT including the 1/N normalization.
inline void fft_inverse(std::vector<std::complex<double>>& data) {
    detail::FftPlans::instance().transform(data, {static_cast<int>(data.size())},
                                           FFTW_BACKWARD);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= inv;
}

/// In-place unnormalized rank-N DFT; data is row-major with extents dims.
inline void fft_forward_nd(std::vector<std::complex<double>>& data,
                           const std::vector<int>& dims) {
    detail::FftPlans::instance().transform(data, dims, FFTW_FORWARD);
}

/// Angular wavenumber of DFT bin j for n samples with spacing dx.
inline double fft_wavenumber(std::size_t j, std::size_t n, double dx) {
    const double dk = 2.0 * M_PI / (static_cast<double>(n) * dx);
    const auto half = n / 2;
    const double idx = (j < half) ? static_cast<double>(j)
                                  : static_cast<double>(j) - static_cast<double>(n);
    return idx * dk;
}

}  // namespace aw

#endif
