#include "wavecoex/interference.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>

namespace wavecoex {

std::vector<int> IndexRange::indices() const {
    std::vector<int> out(static_cast<std::size_t>(count));
    std::iota(out.begin(), out.end(), first);
    return out;
}

double InterferenceProfile::total_for(std::span<const double> powers_w) const {
    if (powers_w.size() != coefficients.size()) {
        throw ContractError("InterferenceProfile: power vector length does not match profile");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        total += coefficients[i] * powers_w[i];
    }
    return total;
}

double interference_coefficient(const WaveformParams& params, double d_n, double band_width_hz,
                                double delta_f_hz, double rel_tol) {
    if (!(d_n >= 0.5)) {
        throw GeometryError("interference_coefficient: d_n must be >= 1/2");
    }
    if (!(band_width_hz > 0.0) || !(delta_f_hz > 0.0)) {
        throw GeometryError("interference_coefficient: band width and spacing must be > 0");
    }
    const PsdCurve unit = make_subcarrier_curve(params, 1.0, 0.0);
    const Band band{(d_n - 0.5) * delta_f_hz, band_width_hz};
    return integrate_psd(unit, band, rel_tol);
}

namespace {

struct SubcarrierGeometry {
    double distance;       // d_n in spacings
    Band relative_band;    // victim band in the subcarrier's offset frame
};

SubcarrierGeometry geometry_for(int subcarrier, const Band& victim_band, double delta_f_hz) {
    const double center_hz = subcarrier * delta_f_hz;
    SubcarrierGeometry geo;
    geo.relative_band = Band{victim_band.start_hz - center_hz, victim_band.width_hz};
    if (center_hz < victim_band.start_hz) {
        geo.distance = (victim_band.start_hz - center_hz) / delta_f_hz + 0.5;
    } else if (center_hz > victim_band.end_hz()) {
        geo.distance = (center_hz - victim_band.end_hz()) / delta_f_hz + 0.5;
    } else {
        std::ostringstream msg;
        msg << "interference_profile: subcarrier " << subcarrier
            << " lies inside the victim band";
        throw GeometryError(msg.str());
    }
    return geo;
}

double ufmc_position_offset(int subcarrier, int first_subcarrier, int rb_size) {
    if (rb_size <= 1) return 0.0;
    const int pos = ((subcarrier - first_subcarrier) % rb_size + rb_size) % rb_size;
    return 0.5 * (rb_size - 1) - pos;
}

InterferenceProfile build_profile(const WaveformParams& params,
                                  const std::vector<int>& own_subcarriers,
                                  const Band& victim_band, double delta_f_hz, int rb_size,
                                  double rel_tol, bool parallel) {
    validate(params);
    if (own_subcarriers.empty()) {
        throw GeometryError("interference_profile: no own subcarriers given");
    }
    if (!(victim_band.width_hz > 0.0) || !(delta_f_hz > 0.0)) {
        throw GeometryError("interference_profile: band width and spacing must be > 0");
    }

    const auto n = own_subcarriers.size();
    InterferenceProfile profile;
    profile.coefficients.resize(n);
    profile.spectral_distances.resize(n);

    // Geometry (and the overlap check) first, so errors surface before work.
    std::vector<SubcarrierGeometry> geometry(n);
    for (std::size_t i = 0; i < n; ++i) {
        geometry[i] = geometry_for(own_subcarriers[i], victim_band, delta_f_hz);
        profile.spectral_distances[i] = geometry[i].distance;
    }

    const bool is_ufmc = kind_of(params) == WaveformKind::ufmc;
    const int first = own_subcarriers.front();

    // Unit curves per distinct subband position; one shared curve otherwise.
    const int num_offsets = is_ufmc ? std::max(rb_size, 1) : 1;
    std::vector<PsdCurve> unit_curves;
    unit_curves.reserve(static_cast<std::size_t>(num_offsets));
    for (int pos = 0; pos < num_offsets; ++pos) {
        const double offset = is_ufmc ? ufmc_position_offset(first + pos, first, rb_size) : 0.0;
        unit_curves.push_back(make_subcarrier_curve(params, 1.0, offset));
    }

    auto coefficient_at = [&](std::size_t i) {
        const PsdCurve& curve =
            is_ufmc ? unit_curves[static_cast<std::size_t>(
                          ((own_subcarriers[i] - first) % num_offsets + num_offsets) % num_offsets)]
                    : unit_curves.front();
        return integrate_psd(curve, geometry[i].relative_band, rel_tol);
    };

    if (parallel) {
        // Exceptions may not cross the parallel region; carry the first one out.
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            try {
                profile.coefficients[static_cast<std::size_t>(i)] =
                    coefficient_at(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            profile.coefficients[i] = coefficient_at(i);
        }
    }
    return profile;
}

}  // namespace

InterferenceProfile interference_profile(const WaveformParams& params,
                                         const std::vector<int>& own_subcarriers,
                                         const Band& victim_band, double delta_f_hz, int rb_size,
                                         double rel_tol) {
    return build_profile(params, own_subcarriers, victim_band, delta_f_hz, rb_size, rel_tol, true);
}

InterferenceProfile interference_profile_serial(const WaveformParams& params,
                                                const std::vector<int>& own_subcarriers,
                                                const Band& victim_band, double delta_f_hz,
                                                int rb_size, double rel_tol) {
    return build_profile(params, own_subcarriers, victim_band, delta_f_hz, rb_size, rel_tol, false);
}

namespace {

std::string params_fingerprint(const WaveformParams& params) {
    std::ostringstream key;
    key.precision(17);
    key << to_string(kind_of(params)) << '|';
    switch (kind_of(params)) {
        case WaveformKind::ofdm: {
            const auto& p = std::get<OfdmParams>(params);
            key << p.symbol_duration_s << '|' << p.subcarrier_spacing_hz;
            break;
        }
        case WaveformKind::fbmc: {
            const auto& p = std::get<FbmcParams>(params);
            key << p.overlap_factor << '|' << p.fft_size << '|' << p.subcarrier_spacing_hz;
            for (double h : p.polyphase_coeffs) key << '|' << h;
            break;
        }
        case WaveformKind::ufmc: {
            const auto& p = std::get<UfmcParams>(params);
            key << p.filter_length << '|' << p.sidelobe_attenuation_db << '|' << p.fft_size << '|'
                << p.psd_oversampling << '|' << p.subcarrier_spacing_hz;
            break;
        }
    }
    return key.str();
}

}  // namespace

struct ProfileCache::Impl {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const InterferenceProfile>> entries;
};

ProfileCache::ProfileCache() : impl_(std::make_shared<Impl>()) {}

std::shared_ptr<const InterferenceProfile> ProfileCache::get_or_compute(
    const WaveformParams& params, const IndexRange& own_range, const Band& victim_band,
    double delta_f_hz, int rb_size, double rel_tol) {
    std::ostringstream key;
    key.precision(17);
    key << params_fingerprint(params) << '#' << own_range.first << ':' << own_range.count << '#'
        << victim_band.start_hz << ':' << victim_band.width_hz << '#' << delta_f_hz << '#'
        << rb_size << '#' << rel_tol;
    const std::string k = key.str();

    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        if (auto it = impl_->entries.find(k); it != impl_->entries.end()) return it->second;
    }
    auto profile = std::make_shared<const InterferenceProfile>(
        interference_profile(params, own_range.indices(), victim_band, delta_f_hz, rb_size, rel_tol));
    std::lock_guard<std::mutex> lock(impl_->mutex);
    auto [it, inserted] = impl_->entries.emplace(k, std::move(profile));
    return it->second;
}

void ProfileCache::clear() {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->entries.clear();
}

ProfileCache& global_profile_cache() {
    static ProfileCache cache;
    return cache;
}

}  // namespace wavecoex
