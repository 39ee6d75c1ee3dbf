#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "wavecoex/types.hpp"

namespace wavecoex {

struct OfdmParams {
    double symbol_duration_s = 1.0 / 15e3;
    double subcarrier_spacing_hz = 15e3;

    static OfdmParams from_spacing(double delta_f_hz);
    void validate() const;
};

struct FbmcParams {
    int overlap_factor = 4;
    int fft_size = 1024;
    double subcarrier_spacing_hz = 15e3;
    std::vector<double> polyphase_coeffs;  // H_0 .. H_{K-1}; H_{-k} = H_k implied

    static FbmcParams phydyas_default(double delta_f_hz = 15e3, int fft_size = 1024);
    void validate() const;

    double coeff(int k) const { return polyphase_coeffs[static_cast<std::size_t>(k < 0 ? -k : k)]; }
    // sum_{k=-K+1}^{K-1} H_k^2; fixes the unit-power scale analytically since
    // the shifted sinc components are orthonormal over the full line.
    double squared_coeff_sum() const;
};

struct UfmcParams {
    int filter_length = 74;
    double sidelobe_attenuation_db = 40.0;
    int fft_size = 1024;
    int psd_oversampling = 16;
    double subcarrier_spacing_hz = 15e3;

    void validate() const;
    double kappa0() const;
};

using WaveformParams = std::variant<OfdmParams, FbmcParams, UfmcParams>;

WaveformKind kind_of(const WaveformParams& params);
double spacing_of(const WaveformParams& params);
void validate(const WaveformParams& params);

struct ResourceBlockSpec {
    int start_subcarrier = 0;
    int num_subcarriers = 12;
    std::vector<double> powers_w;  // P_n, one per subcarrier

    void validate() const;
};

// Evaluable PSD over a frequency-offset axis (0 = the curve's reference
// frequency, i.e. the subcarrier center for per-subcarrier curves).
//
// `support` is the band where the density is non-negligible: the integration
// layer treats everything outside it as zero. eval() stays total for the
// analytic curves and rejects offsets outside the computed span for
// table-backed (UFMC) curves. `feature_scale_hz` is the finest spectral
// feature, used to seed quadrature panels.
class PsdCurve {
  public:
    PsdCurve(std::function<double(double)> density, Band support, double feature_scale_hz,
             bool total = true)
        : density_(std::move(density)),
          support_(support),
          feature_scale_hz_(feature_scale_hz),
          total_(total) {}

    double operator()(double f_offset_hz) const { return density_(f_offset_hz); }
    // Zero outside the declared support; what the quadrature layer integrates.
    double clipped(double f_offset_hz) const {
        return support_.contains(f_offset_hz) ? density_(f_offset_hz) : 0.0;
    }
    // Analytic value everywhere for total curves, clipped for table-backed ones.
    double extended(double f_offset_hz) const {
        return total_ ? density_(f_offset_hz) : clipped(f_offset_hz);
    }

    const Band& support() const { return support_; }
    double feature_scale_hz() const { return feature_scale_hz_; }
    bool total() const { return total_; }

  private:
    std::function<double(double)> density_;
    Band support_;
    double feature_scale_hz_;
    bool total_;
};

// Eq.-level per-subcarrier densities, W/Hz at offset f from the subcarrier.
double psd_ofdm_subcarrier(double f_offset_hz, double power_w, const OfdmParams& params);
double psd_fbmc_subcarrier(double f_offset_hz, double power_w, const FbmcParams& params);

// Chebyshev taps modulated to the subband center: tap l (1-based) times
// exp(i 2 pi (l-1) f_c / N_FFT), f_c in FFT-bin units.
std::vector<std::complex<double>> build_ufmc_subband_filter(const UfmcParams& params,
                                                            double rb_center_subcarrier);

// Semi-analytic UFMC per-subcarrier density. rb_center_offset_subcarriers is
// the subband (RB) center minus this subcarrier's own position, in subcarrier
// units; 0 places the filter on the subcarrier itself.
double psd_ufmc_subcarrier(double f_offset_hz, double power_w, const UfmcParams& params,
                           double rb_center_offset_subcarriers);

PsdCurve make_ofdm_subcarrier_curve(double power_w, const OfdmParams& params);
PsdCurve make_fbmc_subcarrier_curve(double power_w, const FbmcParams& params);
PsdCurve make_ufmc_subcarrier_curve(double power_w, const UfmcParams& params,
                                    double rb_center_offset_subcarriers);

PsdCurve make_subcarrier_curve(const WaveformParams& params, double power_w,
                               double rb_center_offset_subcarriers = 0.0);

// RB PSD: sum of the per-subcarrier densities shifted to each subcarrier
// center, (start_subcarrier + n) * delta_f on the grid axis. For UFMC every
// subcarrier keeps its own position relative to the subband filter.
double psd_resource_block(WaveformKind kind, const ResourceBlockSpec& rb,
                          const WaveformParams& params, double f_offset_hz);
PsdCurve make_resource_block_curve(WaveformKind kind, const ResourceBlockSpec& rb,
                                   const WaveformParams& params);

// FBMC prototype taps implied by the polyphase coefficients, length K*M + 1,
// even-symmetric about K*M/2.
std::vector<double> fbmc_prototype_taps(const FbmcParams& params);

}  // namespace wavecoex
