#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace paramres {

/// Real-to-complex FFT of a fixed length, backed by FFTW.  Plan creation is
/// serialized internally (the FFTW planner is not thread-safe); execution is
/// safe from the owning thread.  Output has n/2 + 1 bins.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();

    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] std::size_t bins() const { return n_ / 2 + 1; }

    /// input.size() must equal size().
    std::vector<std::complex<double>> forward(const std::vector<double>& input);

private:
    std::size_t n_;
    void* plan_;
    double* in_;
    void* out_;
};

}  // namespace paramres
