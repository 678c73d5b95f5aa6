#include "paramres/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace paramres {

namespace {
std::mutex planner_mutex;
}

RealFft::RealFft(std::size_t n) : n_(n) {
    if (n_ < 2) throw std::invalid_argument("RealFft: length must be >= 2");
    std::lock_guard<std::mutex> lock(planner_mutex);
    in_ = fftw_alloc_real(n_);
    out_ = fftw_alloc_complex(n_ / 2 + 1);
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), in_,
                                 static_cast<fftw_complex*>(out_), FFTW_ESTIMATE);
    if (!plan_) throw std::runtime_error("RealFft: planning failed");
}

RealFft::~RealFft() {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    fftw_free(in_);
    fftw_free(out_);
}

std::vector<std::complex<double>> RealFft::forward(const std::vector<double>& input) {
    if (input.size() != n_) throw std::invalid_argument("RealFft: length mismatch");
    std::memcpy(in_, input.data(), n_ * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_));
    std::vector<std::complex<double>> result(bins());
    const auto* c = static_cast<fftw_complex*>(out_);
    for (std::size_t i = 0; i < result.size(); ++i)
        result[i] = std::complex<double>(c[i][0], c[i][1]);
    return result;
}

}  // namespace paramres
