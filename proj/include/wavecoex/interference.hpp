#pragma once

#include <memory>
#include <span>
#include <vector>

#include "wavecoex/psd.hpp"
#include "wavecoex/quadrature.hpp"
#include "wavecoex/types.hpp"

namespace wavecoex {

// Contiguous run of grid indices [first, first + count).
struct IndexRange {
    int first = 0;
    int count = 0;

    std::vector<int> indices() const;
};

// Per-subcarrier unit-power spill factors into one victim band.
struct InterferenceProfile {
    std::vector<double> coefficients;        // I_n for P_n = 1, dimensionless
    std::vector<double> spectral_distances;  // d_n in subcarrier spacings

    // Aggregate interference for a power vector; linear in the powers.
    double total_for(std::span<const double> powers_w) const;
};

// Eq.-style single-subcarrier coefficient: integral of the unit-power PSD
// from (d_n - 1/2) * delta_f over band_width_hz. The victim band is anchored
// at the interfering subcarrier's center. For UFMC the subband filter is
// placed on the subcarrier itself.
double interference_coefficient(const WaveformParams& params, double d_n, double band_width_hz,
                                double delta_f_hz, double rel_tol = 1e-9);

// Full profile of a set of own subcarriers against a victim band on the same
// grid. rb_size fixes each UFMC subcarrier's position inside its subband;
// subbands tile from the first own subcarrier. OpenMP-parallel over
// subcarriers; the serial variant computes identical values and is kept as
// the reference implementation.
InterferenceProfile interference_profile(const WaveformParams& params,
                                         const std::vector<int>& own_subcarriers,
                                         const Band& victim_band, double delta_f_hz,
                                         int rb_size = 12, double rel_tol = 1e-9);
InterferenceProfile interference_profile_serial(const WaveformParams& params,
                                                const std::vector<int>& own_subcarriers,
                                                const Band& victim_band, double delta_f_hz,
                                                int rb_size = 12, double rel_tol = 1e-9);

// Write-once memoization of profiles across threshold sweeps; Eq. (5) is
// power-independent so a fixed geometry never needs recomputation.
class ProfileCache {
  public:
    ProfileCache();

    std::shared_ptr<const InterferenceProfile> get_or_compute(const WaveformParams& params,
                                                              const IndexRange& own_range,
                                                              const Band& victim_band,
                                                              double delta_f_hz, int rb_size,
                                                              double rel_tol = 1e-9);
    void clear();

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Process-wide cache used by the scenario layer.
ProfileCache& global_profile_cache();

}  // namespace wavecoex
