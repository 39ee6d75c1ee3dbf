#pragma once

#include <vector>

namespace wavecoex {

// Chebyshev polynomial C_n(x), extended off [-1, 1] with the cosh branches.
double chebyshev_polynomial(int order, double x);

// Dolph-Chebyshev window taps with equiripple sidelobes alpha_db below the
// main lobe. Odd lengths use the closed-form cosine series; even lengths are
// synthesized from the frequency-domain specification with a half-sample
// phase. Taps are normalized so the frequency response at f = 0 equals 1.
std::vector<double> chebyshev_window(int filter_length, double alpha_db);

// |W(nu)| of a real tap vector at normalized frequency nu (cycles/sample).
double window_response_magnitude(const std::vector<double>& taps, double cycles_per_sample);

// Peak sidelobe level in dB relative to the main lobe, scanned on an
// oversampled frequency grid, plus the list of all sidelobe maxima.
struct SidelobeScan {
    double peak_sidelobe_db;
    std::vector<double> sidelobe_maxima_db;
};
SidelobeScan scan_sidelobes(const std::vector<double>& taps, int oversampling = 64);

}  // namespace wavecoex
