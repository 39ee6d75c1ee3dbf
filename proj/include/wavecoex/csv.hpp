#pragma once

#include <string>
#include <vector>

#include "wavecoex/interference.hpp"
#include "wavecoex/scenario.hpp"

namespace wavecoex {

// Locale-independent formatting via to_chars, dot decimal separator.
// significant_digits = 0 selects the shortest round-trip representation;
// the window/profile exports pin 17 significant digits.
std::string format_double(double value, int significant_digits = 0);

// Writes through a temp file in the same directory and renames into place, so
// a failure never leaves a partial file at the target path.
void write_file_atomic(const std::string& path, const std::string& contents);

std::string render_psd_csv(const PsdSampleTable& table);
std::string render_sweep_csv(const std::vector<SweepResult>& runs);
std::string render_window_csv(const std::vector<double>& taps);
std::string render_profile_csv(const InterferenceProfile& profile,
                               const std::vector<int>& subcarriers);

}  // namespace wavecoex
