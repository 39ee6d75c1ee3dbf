#include "wavecoex/psd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "wavecoex/chebyshev.hpp"
#include "wavecoex/fft.hpp"

namespace wavecoex {

namespace {

constexpr double kSincSingularityTol = 1e-12;

// sin(pi u)/(pi u) with the removable singularity evaluated by its limit.
double sinc(double u) {
    const double denom = std::numbers::pi * u;
    if (std::abs(denom) < kSincSingularityTol) return 1.0;
    return std::sin(denom) / denom;
}

}  // namespace

const char* to_string(WaveformKind kind) {
    switch (kind) {
        case WaveformKind::ofdm: return "ofdm";
        case WaveformKind::fbmc: return "fbmc";
        case WaveformKind::ufmc: return "ufmc";
    }
    return "?";
}

WaveformKind waveform_from_string(const std::string& name) {
    if (name == "ofdm") return WaveformKind::ofdm;
    if (name == "fbmc") return WaveformKind::fbmc;
    if (name == "ufmc") return WaveformKind::ufmc;
    throw ConfigError("unknown waveform '" + name + "' (allowed: ofdm, fbmc, ufmc)");
}

OfdmParams OfdmParams::from_spacing(double delta_f_hz) {
    if (!(delta_f_hz > 0.0)) {
        throw ParameterRangeError("OfdmParams: subcarrier spacing must be > 0");
    }
    OfdmParams p;
    p.subcarrier_spacing_hz = delta_f_hz;
    p.symbol_duration_s = 1.0 / delta_f_hz;
    return p;
}

void OfdmParams::validate() const {
    if (!(symbol_duration_s > 0.0) || !(subcarrier_spacing_hz > 0.0)) {
        throw ParameterRangeError("OfdmParams: symbol duration and spacing must be > 0");
    }
    const double product = symbol_duration_s * subcarrier_spacing_hz;
    if (std::abs(product - 1.0) > 1e-12) {
        throw ParameterRangeError("OfdmParams: spacing * symbol duration must equal 1 (got " +
                                  std::to_string(product) + ")");
    }
}

FbmcParams FbmcParams::phydyas_default(double delta_f_hz, int fft_size) {
    FbmcParams p;
    p.overlap_factor = 4;
    p.fft_size = fft_size;
    p.subcarrier_spacing_hz = delta_f_hz;
    p.polyphase_coeffs = {1.0, 0.971960, std::numbers::sqrt2 / 2.0, 0.235147};
    p.validate();
    return p;
}

void FbmcParams::validate() const {
    if (overlap_factor < 1) {
        throw ParameterRangeError("FbmcParams: overlap_factor must be >= 1");
    }
    if (fft_size < 1) {
        throw ParameterRangeError("FbmcParams: fft_size must be >= 1");
    }
    if (!(subcarrier_spacing_hz > 0.0)) {
        throw ParameterRangeError("FbmcParams: subcarrier spacing must be > 0");
    }
    if (polyphase_coeffs.size() != static_cast<std::size_t>(overlap_factor)) {
        throw ParameterRangeError("FbmcParams: polyphase coefficient count must equal overlap_factor");
    }
    if (polyphase_coeffs[0] != 1.0) {
        throw ParameterRangeError("FbmcParams: H_0 must be exactly 1");
    }
    for (double h : polyphase_coeffs) {
        if (!(h > 0.0) || h > 1.0) {
            throw ParameterRangeError("FbmcParams: polyphase coefficients must lie in (0, 1]");
        }
    }
}

double FbmcParams::squared_coeff_sum() const {
    double sum = polyphase_coeffs[0] * polyphase_coeffs[0];
    for (std::size_t k = 1; k < polyphase_coeffs.size(); ++k) {
        sum += 2.0 * polyphase_coeffs[k] * polyphase_coeffs[k];
    }
    return sum;
}

void UfmcParams::validate() const {
    if (filter_length < 2) {
        throw ParameterRangeError("UfmcParams: filter_length must be >= 2");
    }
    if (!(sidelobe_attenuation_db > 0.0)) {
        throw ParameterRangeError("UfmcParams: sidelobe_attenuation_db must be > 0");
    }
    if (fft_size < filter_length) {
        throw ParameterRangeError("UfmcParams: fft_size must be >= filter_length");
    }
    if (psd_oversampling < 1) {
        throw ParameterRangeError("UfmcParams: psd_oversampling must be >= 1");
    }
    if (!(subcarrier_spacing_hz > 0.0)) {
        throw ParameterRangeError("UfmcParams: subcarrier spacing must be > 0");
    }
    const double k0 = kappa0();
    if (!std::isfinite(k0) || !(k0 > 1.0)) {
        throw ParameterRangeError("UfmcParams: kappa0 must be finite and > 1");
    }
}

double UfmcParams::kappa0() const {
    const double ripple = std::pow(10.0, sidelobe_attenuation_db / 20.0);
    return std::cosh(std::acosh(ripple) / (filter_length - 1));
}

WaveformKind kind_of(const WaveformParams& params) {
    if (std::holds_alternative<OfdmParams>(params)) return WaveformKind::ofdm;
    if (std::holds_alternative<FbmcParams>(params)) return WaveformKind::fbmc;
    return WaveformKind::ufmc;
}

double spacing_of(const WaveformParams& params) {
    return std::visit([](const auto& p) { return p.subcarrier_spacing_hz; }, params);
}

void validate(const WaveformParams& params) {
    std::visit([](const auto& p) { p.validate(); }, params);
}

void ResourceBlockSpec::validate() const {
    if (num_subcarriers < 1) {
        throw ParameterRangeError("ResourceBlockSpec: num_subcarriers must be >= 1");
    }
    if (powers_w.size() != static_cast<std::size_t>(num_subcarriers)) {
        throw ParameterRangeError("ResourceBlockSpec: powers_w length must equal num_subcarriers");
    }
    for (double p : powers_w) {
        if (!(p >= 0.0)) {
            throw ParameterRangeError("ResourceBlockSpec: powers must be >= 0");
        }
    }
}

double psd_ofdm_subcarrier(double f_offset_hz, double power_w, const OfdmParams& params) {
    const double s = sinc(f_offset_hz * params.symbol_duration_s);
    return power_w * params.symbol_duration_s * s * s;
}

double psd_fbmc_subcarrier(double f_offset_hz, double power_w, const FbmcParams& params) {
    const int overlap = params.overlap_factor;
    const double u0 = overlap * f_offset_hz / params.subcarrier_spacing_hz;
    double g = 0.0;
    for (int k = -overlap + 1; k <= overlap - 1; ++k) {
        g += params.coeff(k) * sinc(u0 - k);
    }
    const double scale =
        overlap / (params.subcarrier_spacing_hz * params.squared_coeff_sum());
    return power_w * scale * g * g;
}

std::vector<std::complex<double>> build_ufmc_subband_filter(const UfmcParams& params,
                                                            double rb_center_subcarrier) {
    params.validate();
    if (!(rb_center_subcarrier >= 0.0) || !(rb_center_subcarrier < params.fft_size)) {
        throw ParameterRangeError("build_ufmc_subband_filter: rb_center must lie in [0, fft_size)");
    }
    const std::vector<double> taps =
        chebyshev_window(params.filter_length, params.sidelobe_attenuation_db);
    std::vector<std::complex<double>> shifted(taps.size());
    const double step = 2.0 * std::numbers::pi * rb_center_subcarrier / params.fft_size;
    for (std::size_t l = 0; l < taps.size(); ++l) {
        shifted[l] = taps[l] * std::polar(1.0, step * static_cast<double>(l));
    }
    return shifted;
}

namespace {

// Oversampled squared-magnitude spectrum of one filtered subcarrier,
// normalized to unit power over the sampled span and re-centered so offset 0
// is the subcarrier itself.
struct UfmcTable {
    double f_lo_hz;
    double bin_width_hz;
    std::vector<double> density;  // unit power

    Band support() const {
        return Band{f_lo_hz, bin_width_hz * static_cast<double>(density.size() - 1)};
    }

    double eval(double f_offset_hz) const {
        const double pos = (f_offset_hz - f_lo_hz) / bin_width_hz;
        if (pos < 0.0 || pos > static_cast<double>(density.size() - 1)) {
            std::ostringstream msg;
            msg << "psd_ufmc_subcarrier: offset " << f_offset_hz
                << " Hz is outside the computed span [" << f_lo_hz << ", "
                << f_lo_hz + bin_width_hz * (density.size() - 1) << "] Hz";
            throw ParameterRangeError(msg.str());
        }
        const auto j = static_cast<std::size_t>(pos);
        if (j + 1 >= density.size()) return density.back();
        const double frac = pos - static_cast<double>(j);
        return density[j] + frac * (density[j + 1] - density[j]);
    }
};

std::shared_ptr<const UfmcTable> build_ufmc_table(const UfmcParams& params,
                                                  double rb_center_offset_subcarriers) {
    params.validate();
    const int n_fft = params.fft_size;
    const int n_filt = params.filter_length;

    // The modulation is periodic in the FFT size; wrap signed offsets into
    // the filter builder's [0, fft_size) domain.
    double center = std::fmod(rb_center_offset_subcarriers, static_cast<double>(n_fft));
    if (center < 0.0) center += n_fft;
    const auto filter = build_ufmc_subband_filter(params, center);

    // DC subcarrier, zeros elsewhere, convolved with the shifted filter.
    std::vector<std::complex<double>> y(static_cast<std::size_t>(n_fft + n_filt - 1), {0.0, 0.0});
    for (int t = 0; t < n_fft + n_filt - 1; ++t) {
        const int l_min = std::max(0, t - n_fft + 1);
        const int l_max = std::min(n_filt - 1, t);
        std::complex<double> acc{0.0, 0.0};
        for (int l = l_min; l <= l_max; ++l) {
            acc += filter[static_cast<std::size_t>(l)];  // x[t-l] == 1 inside the block
        }
        y[static_cast<std::size_t>(t)] = acc;
    }

    const std::size_t m = next_pow2(static_cast<std::size_t>(params.psd_oversampling) *
                                    static_cast<std::size_t>(n_fft + n_filt - 1));
    y.resize(m, {0.0, 0.0});
    fft_pow2(y);

    auto table = std::make_shared<UfmcTable>();
    const double f_s = n_fft * params.subcarrier_spacing_hz;
    table->bin_width_hz = f_s / static_cast<double>(m);
    table->f_lo_hz = -0.5 * f_s;
    table->density.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t k = (j + m / 2) % m;  // rotate negative frequencies first
        table->density[j] = std::norm(y[k]);
    }

    // Unit power over the span, taken on the piecewise-linear interpolant.
    double sum = 0.0;
    for (double v : table->density) sum += v;
    const double integral =
        table->bin_width_hz * (sum - 0.5 * (table->density.front() + table->density.back()));
    if (!(integral > 0.0)) {
        throw ParameterRangeError("psd_ufmc_subcarrier: degenerate spectrum");
    }
    for (double& v : table->density) v /= integral;
    return table;
}

std::shared_ptr<const UfmcTable> ufmc_table(const UfmcParams& params,
                                            double rb_center_offset_subcarriers) {
    struct Key {
        int filter_length;
        double alpha_db;
        int fft_size;
        int oversampling;
        double spacing_hz;
        double offset;
        auto operator<=>(const Key&) const = default;
    };
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const UfmcTable>> cache;

    const Key key{params.filter_length, params.sidelobe_attenuation_db, params.fft_size,
                  params.psd_oversampling, params.subcarrier_spacing_hz,
                  rb_center_offset_subcarriers};
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto table = build_ufmc_table(params, rb_center_offset_subcarriers);
    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = cache.emplace(key, std::move(table));
    return it->second;
}

}  // namespace

double psd_ufmc_subcarrier(double f_offset_hz, double power_w, const UfmcParams& params,
                           double rb_center_offset_subcarriers) {
    return power_w * ufmc_table(params, rb_center_offset_subcarriers)->eval(f_offset_hz);
}

PsdCurve make_ofdm_subcarrier_curve(double power_w, const OfdmParams& params) {
    params.validate();
    const double delta_f = params.subcarrier_spacing_hz;
    // Support sized so the truncated sinc^2 tail mass stays below 1e-7.
    const Band support{-1e6 * delta_f, 2e6 * delta_f};
    return PsdCurve(
        [power_w, params](double f) { return psd_ofdm_subcarrier(f, power_w, params); }, support,
        0.5 * delta_f);
}

PsdCurve make_fbmc_subcarrier_curve(double power_w, const FbmcParams& params) {
    params.validate();
    const double delta_f = params.subcarrier_spacing_hz;
    // The composite response decays like u^-3 in amplitude; beyond 8 spacings
    // the truncated mass is under 1e-10 of the subcarrier power.
    const Band support{-8.0 * delta_f, 16.0 * delta_f};
    return PsdCurve(
        [power_w, params](double f) { return psd_fbmc_subcarrier(f, power_w, params); }, support,
        0.5 * delta_f / params.overlap_factor);
}

PsdCurve make_ufmc_subcarrier_curve(double power_w, const UfmcParams& params,
                                    double rb_center_offset_subcarriers) {
    auto table = ufmc_table(params, rb_center_offset_subcarriers);
    const Band support = table->support();
    return PsdCurve([power_w, table](double f) { return power_w * table->eval(f); }, support,
                    0.5 * params.subcarrier_spacing_hz, /*total=*/false);
}

PsdCurve make_subcarrier_curve(const WaveformParams& params, double power_w,
                               double rb_center_offset_subcarriers) {
    switch (kind_of(params)) {
        case WaveformKind::ofdm:
            return make_ofdm_subcarrier_curve(power_w, std::get<OfdmParams>(params));
        case WaveformKind::fbmc:
            return make_fbmc_subcarrier_curve(power_w, std::get<FbmcParams>(params));
        case WaveformKind::ufmc:
            return make_ufmc_subcarrier_curve(power_w, std::get<UfmcParams>(params),
                                              rb_center_offset_subcarriers);
    }
    throw Error("make_subcarrier_curve: unreachable");
}

PsdCurve make_resource_block_curve(WaveformKind kind, const ResourceBlockSpec& rb,
                                   const WaveformParams& params) {
    rb.validate();
    if (kind_of(params) != kind) {
        throw ConfigError("psd_resource_block: waveform kind does not match the supplied parameters");
    }
    validate(params);

    const double delta_f = spacing_of(params);
    const double rb_center = 0.5 * (rb.num_subcarriers - 1);

    auto components = std::make_shared<std::vector<std::pair<double, PsdCurve>>>();
    components->reserve(static_cast<std::size_t>(rb.num_subcarriers));
    Band hull{0.0, 0.0};
    double feature = std::numeric_limits<double>::max();
    for (int n = 0; n < rb.num_subcarriers; ++n) {
        const double center_hz = (rb.start_subcarrier + n) * delta_f;
        const double offset = (kind == WaveformKind::ufmc) ? rb_center - n : 0.0;
        PsdCurve curve = make_subcarrier_curve(params, rb.powers_w[static_cast<std::size_t>(n)], offset);
        const Band sup = curve.support();
        if (n == 0) {
            hull = Band{center_hz + sup.start_hz, sup.width_hz};
        } else {
            const double lo = std::min(hull.start_hz, center_hz + sup.start_hz);
            const double hi = std::max(hull.end_hz(), center_hz + sup.end_hz());
            hull = Band{lo, hi - lo};
        }
        feature = std::min(feature, curve.feature_scale_hz());
        components->emplace_back(center_hz, std::move(curve));
    }

    return PsdCurve(
        [components](double f) {
            double acc = 0.0;
            for (const auto& [center, curve] : *components) acc += curve.extended(f - center);
            return acc;
        },
        hull, feature);
}

double psd_resource_block(WaveformKind kind, const ResourceBlockSpec& rb,
                          const WaveformParams& params, double f_offset_hz) {
    return make_resource_block_curve(kind, rb, params)(f_offset_hz);
}

std::vector<double> fbmc_prototype_taps(const FbmcParams& params) {
    params.validate();
    const int overlap = params.overlap_factor;
    const int m = params.fft_size;
    const int km = overlap * m;
    std::vector<double> taps(static_cast<std::size_t>(km) + 1);
    for (int l = 0; l <= km; ++l) {
        double acc = 1.0;
        for (int k = 1; k < overlap; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            acc += 2.0 * sign * params.polyphase_coeffs[static_cast<std::size_t>(k)] *
                   std::cos(2.0 * std::numbers::pi * k * (l - 0.5 * km) / km);
        }
        taps[static_cast<std::size_t>(l)] = acc / km;
    }
    return taps;
}

}  // namespace wavecoex
