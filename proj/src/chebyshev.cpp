#include "wavecoex/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "wavecoex/types.hpp"

namespace wavecoex {

double chebyshev_polynomial(int order, double x) {
    if (x > 1.0) {
        return std::cosh(order * std::acosh(x));
    }
    if (x < -1.0) {
        const double sign = (order % 2 == 0) ? 1.0 : -1.0;
        return sign * std::cosh(order * std::acosh(-x));
    }
    return std::cos(order * std::acos(x));
}

std::vector<double> chebyshev_window(int filter_length, double alpha_db) {
    if (filter_length < 2) {
        throw ParameterRangeError("chebyshev_window: filter_length must be >= 2");
    }
    if (!(alpha_db > 0.0)) {
        throw ParameterRangeError("chebyshev_window: alpha_db must be > 0");
    }

    const int n = filter_length;
    const int order = n - 1;
    const double ripple = std::pow(10.0, alpha_db / 20.0);
    if (!std::isfinite(ripple)) {
        throw ParameterRangeError("chebyshev_window: attenuation too large, 10^(alpha/20) overflows");
    }
    const double kappa0 = std::cosh(std::acosh(ripple) / order);

    // Frequency-domain samples of the window: T_{n-1}(kappa0 * cos(pi k / n)).
    std::vector<double> samples(n);
    for (int k = 0; k < n; ++k) {
        const double x = kappa0 * std::cos(std::numbers::pi * k / n);
        samples[k] = chebyshev_polynomial(order, x);
        if (!std::isfinite(samples[k])) {
            throw ParameterRangeError("chebyshev_window: non-finite frequency sample, attenuation out of range");
        }
    }

    // Inverse transform, direct O(n^2) evaluation. Even lengths need a
    // half-sample phase so the taps sit symmetrically about (n-1)/2.
    std::vector<double> taps(n);
    if (n % 2 == 1) {
        const int half = (n + 1) / 2;
        std::vector<double> w(half);
        for (int j = 0; j < half; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                acc += samples[k] * std::cos(2.0 * std::numbers::pi * k * j / n);
            }
            w[j] = acc;
        }
        for (int j = 0; j < half; ++j) {
            taps[half - 1 + j] = w[j];
            taps[half - 1 - j] = w[j];
        }
    } else {
        const int half = n / 2 + 1;
        std::vector<double> w(half);
        for (int j = 0; j < half; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double phase = std::numbers::pi * k * (1.0 + 2.0 * j) / n;
                acc += samples[k] * std::cos(phase);
            }
            w[j] = acc;
        }
        for (int j = 0; j < n / 2; ++j) {
            taps[n / 2 + j] = w[j];
            taps[n / 2 - 1 - j] = w[j];
        }
    }

    double sum = 0.0;
    for (double t : taps) sum += t;
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw ParameterRangeError("chebyshev_window: degenerate tap sum");
    }
    for (double& t : taps) t /= sum;
    return taps;
}

double window_response_magnitude(const std::vector<double>& taps, double cycles_per_sample) {
    std::complex<double> acc{0.0, 0.0};
    const double w = -2.0 * std::numbers::pi * cycles_per_sample;
    for (std::size_t l = 0; l < taps.size(); ++l) {
        acc += taps[l] * std::polar(1.0, w * static_cast<double>(l));
    }
    return std::abs(acc);
}

SidelobeScan scan_sidelobes(const std::vector<double>& taps, int oversampling) {
    const int n = static_cast<int>(taps.size());
    const int num_points = n * oversampling;

    std::vector<double> mag(num_points + 1);
    for (int i = 0; i <= num_points; ++i) {
        const double nu = 0.5 * i / num_points;  // [0, 0.5] cycles/sample
        mag[i] = window_response_magnitude(taps, nu);
    }
    const double peak = mag[0];

    // Skip the main lobe (descend to the first local minimum), then record
    // every local maximum out to Nyquist.
    int i = 1;
    while (i < num_points && mag[i] <= mag[i - 1]) ++i;

    SidelobeScan scan;
    scan.peak_sidelobe_db = -std::numeric_limits<double>::infinity();
    for (; i < num_points; ++i) {
        if (mag[i] >= mag[i - 1] && mag[i] >= mag[i + 1]) {
            const double level_db = 20.0 * std::log10(mag[i] / peak);
            scan.sidelobe_maxima_db.push_back(level_db);
            scan.peak_sidelobe_db = std::max(scan.peak_sidelobe_db, level_db);
        }
    }
    return scan;
}

}  // namespace wavecoex
