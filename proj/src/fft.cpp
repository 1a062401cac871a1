#include "fft.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

namespace fractalmsg::detail {
namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* plan) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

} // namespace

std::vector<std::complex<double>> real_dft(std::span<const double> samples) {
    const auto n = static_cast<int>(samples.size());
    std::vector<double> in(samples.begin(), samples.end());
    std::vector<std::complex<double>> out(samples.size() / 2 + 1);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                        FFTW_ESTIMATE));
    }
    fftw_execute(plan.get());
    return out;
}

std::vector<double> real_inverse_dft(std::span<const std::complex<double>> bins, std::size_t n) {
    // c2r overwrites its input.
    std::vector<std::complex<double>> in(bins.begin(), bins.end());
    std::vector<double> out(n);
    Plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                        out.data(), FFTW_ESTIMATE));
    }
    fftw_execute(plan.get());
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return out;
}

} // namespace fractalmsg::detail
