#pragma once

#include <cstdint>
#include <vector>

namespace wavecoex {

enum class ChannelProfile { flat, multipath };

// Deterministic frequency-selective gain profile: |H(f_n)|^2 of a seeded
// exponential-decay multipath response, normalized to unit mean. flat returns
// all-ones.
std::vector<double> channel_gains(ChannelProfile profile, std::size_t num_subcarriers,
                                  std::uint64_t seed, int num_taps = 8, double decay = 2.0);

}  // namespace wavecoex
