#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace gaborcx::detail {
namespace {

// the FFTW planner is not reentrant
std::mutex planner_mutex;

fftw_complex* as_fftw(std::vector<std::complex<double>>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

void transform(std::vector<std::complex<double>>& v, int sign) {
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(v.size()), as_fftw(v), as_fftw(v), sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
}

}  // namespace

std::vector<std::complex<double>> cyclic_convolution(std::vector<std::complex<double>> a,
                                                     std::vector<std::complex<double>> b) {
    if (a.size() != b.size()) throw std::invalid_argument("cyclic_convolution: length mismatch");
    transform(a, FFTW_FORWARD);
    transform(b, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k] * scale;
    transform(a, FFTW_BACKWARD);
    return a;
}

}  // namespace gaborcx::detail
