#include "fbh/fft.hpp"
#include "fbh/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace fbh::fft {

namespace {
// FFTW planner state is not thread safe.
std::mutex planner_mutex;
}

void dft(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign) {
    if (dims.empty()) throw domain_error("fft::dft: empty dims");
    size_t expected = 1;
    for (int d : dims) {
        if (d < 2) throw domain_error("fft::dft: each dim must be >= 2");
        expected *= static_cast<size_t>(d);
    }
    if (expected != data.size()) throw domain_error("fft::dft: size mismatch");

    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), raw, raw,
                             sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw quadrature_error("fft::dft: planner failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
}

double frequency(int k, int n, double L) {
    int ks = (k <= n / 2) ? k : k - n;
    return M_PI * ks / L;
}

} // namespace fbh::fft
