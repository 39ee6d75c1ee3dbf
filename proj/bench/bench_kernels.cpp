// Times the OpenMP kernels against their serial reference implementations:
// interference-profile construction and the threshold sweep.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wavecoex/interference.hpp"
#include "wavecoex/scenario.hpp"

using namespace wavecoex;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

template <typename Fn>
double time_once(Fn&& fn) {
    const auto start = clock_type::now();
    fn();
    return seconds_since(start);
}

}  // namespace

int main(int argc, char** argv) {
    int subcarriers = 600;
    if (argc > 1) subcarriers = std::max(12, std::atoi(argv[1]));

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    const double delta_f = 15e3;
    const Band victim{(subcarriers - 0.5) * delta_f, subcarriers * delta_f};
    std::vector<int> own(static_cast<std::size_t>(subcarriers));
    for (int i = 0; i < subcarriers; ++i) own[static_cast<std::size_t>(i)] = i;

    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial_s", "parallel_s", "speedup");

    const std::vector<std::pair<const char*, WaveformParams>> cases = {
        {"profile/ofdm", WaveformParams{OfdmParams::from_spacing(delta_f)}},
        {"profile/fbmc", WaveformParams{FbmcParams::phydyas_default(delta_f)}},
        {"profile/ufmc", WaveformParams{[&] {
             UfmcParams p;
             p.subcarrier_spacing_hz = delta_f;
             return p;
         }()}},
    };
    for (const auto& [name, params] : cases) {
        InterferenceProfile serial_out, parallel_out;
        const double serial_s = time_once(
            [&] { serial_out = interference_profile_serial(params, own, victim, delta_f); });
        const double parallel_s =
            time_once([&] { parallel_out = interference_profile(params, own, victim, delta_f); });
        for (std::size_t i = 0; i < serial_out.coefficients.size(); ++i) {
            if (serial_out.coefficients[i] != parallel_out.coefficients[i]) {
                std::printf("MISMATCH in %s at %zu\n", name, i);
                return 1;
            }
        }
        std::printf("%-28s %10.3f %10.3f %8.2f\n", name, serial_s, parallel_s,
                    serial_s / parallel_s);
    }

    {
        auto [grid, systems] = build_default_scenario();
        const auto thresholds = default_threshold_grid(13);
        // Warm the profile cache so the sweep timings isolate the solver work.
        run_threshold_sweep_serial(grid, systems, {1e-3});
        SweepResult serial_out, parallel_out;
        const double serial_s =
            time_once([&] { serial_out = run_threshold_sweep_serial(grid, systems, thresholds); });
        const double parallel_s =
            time_once([&] { parallel_out = run_threshold_sweep(grid, systems, thresholds); });
        for (std::size_t s = 0; s < 2; ++s) {
            for (std::size_t t = 0; t < thresholds.size(); ++t) {
                if (serial_out.systems[s].throughput_bps[t] !=
                    parallel_out.systems[s].throughput_bps[t]) {
                    std::printf("MISMATCH in sweep at (%zu, %zu)\n", s, t);
                    return 1;
                }
            }
        }
        std::printf("%-28s %10.3f %10.3f %8.2f\n", "sweep/ofdm-13pts", serial_s, parallel_s,
                    serial_s / parallel_s);
    }
    return 0;
}
