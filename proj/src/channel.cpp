#include "wavecoex/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "wavecoex/types.hpp"

namespace wavecoex {

std::vector<double> channel_gains(ChannelProfile profile, std::size_t num_subcarriers,
                                  std::uint64_t seed, int num_taps, double decay) {
    if (num_subcarriers == 0) {
        throw ParameterRangeError("channel_gains: need at least one subcarrier");
    }
    if (profile == ChannelProfile::flat) {
        return std::vector<double>(num_subcarriers, 1.0);
    }
    if (num_taps < 1 || !(decay > 0.0)) {
        throw ParameterRangeError("channel_gains: taps must be >= 1 and decay > 0");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::complex<double>> taps(static_cast<std::size_t>(num_taps));
    for (int m = 0; m < num_taps; ++m) {
        const double magnitude = std::exp(-m / decay);
        taps[static_cast<std::size_t>(m)] =
            magnitude * std::complex<double>(gauss(rng), gauss(rng)) / std::numbers::sqrt2;
    }

    std::vector<double> gains(num_subcarriers);
    double mean = 0.0;
    for (std::size_t k = 0; k < num_subcarriers; ++k) {
        std::complex<double> h{0.0, 0.0};
        for (int m = 0; m < num_taps; ++m) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(m) *
                                 static_cast<double>(k) / static_cast<double>(num_subcarriers);
            h += taps[static_cast<std::size_t>(m)] * std::polar(1.0, phase);
        }
        gains[k] = std::norm(h);
        mean += gains[k];
    }
    mean /= static_cast<double>(num_subcarriers);
    if (!(mean > 0.0)) {
        throw ParameterRangeError("channel_gains: degenerate channel draw");
    }
    for (double& g : gains) g /= mean;
    return gains;
}

}  // namespace wavecoex
