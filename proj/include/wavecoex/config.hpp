#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wavecoex/scenario.hpp"
#include "wavecoex/types.hpp"

namespace wavecoex {

// User-facing configuration in interface units (kHz, dBm, W). Unspecified
// fields keep the default two-system scenario. The full key list lives in
// docs/config-schema.md.
struct RunConfig {
    std::uint64_t seed = 0;

    struct Grid {
        int total_subcarriers = 1200;
        double subcarrier_spacing_khz = 15.0;
        int rb_size = 12;
    } grid;

    struct Sweep {
        double threshold_min_w = 1e-6;
        double threshold_max_w = 1e-1;
        int num_points = 25;
        std::vector<WaveformKind> waveforms = {WaveformKind::ofdm, WaveformKind::fbmc,
                                               WaveformKind::ufmc};
    } sweep;

    struct Psd {
        int num_subcarriers = 60;
        int num_points = 2201;
        double min_offset_df = -25.5;  // in subcarrier spacings from subcarrier 0
        double max_offset_df = 84.5;
    } psd;

    struct Alloc {
        double threshold_w = 1e-3;
    } alloc;

    struct Channel {
        ChannelProfile profile = ChannelProfile::flat;
        int multipath_taps = 8;
        double multipath_decay = 2.0;
    } channel;

    struct System {
        WaveformKind waveform = WaveformKind::ofdm;
        double power_budget_dbm = 43.0;
        double interference_threshold_w = 1e-3;
        int num_users = 10;
        int fbmc_overlap_factor = 4;
        int fbmc_fft_size = 1024;
        std::vector<double> fbmc_coeffs;  // empty = PHYDYAS defaults
        int ufmc_filter_length = 74;
        double ufmc_attenuation_db = 40.0;
        int ufmc_fft_size = 1024;
        int ufmc_psd_oversampling = 16;
    };
    std::array<System, 2> systems;  // [0] = A, [1] = B
};

// Parses the flat key-value document (sections in brackets, `key = value`
// lines, `#` comments). Unknown sections or keys are rejected by name;
// syntax errors carry the line number.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

// Canonical serialization; parse_config(serialize_config(c)) is equivalent
// to c.
std::string serialize_config(const RunConfig& config);

// Internal-unit scenario objects for a given waveform choice per system.
WaveformParams waveform_params_for(const RunConfig& config, std::size_t system_index,
                                   WaveformKind kind);
std::pair<GridSpec, std::array<SystemSpec, 2>> build_scenario(const RunConfig& config);
std::vector<double> threshold_grid(const RunConfig& config);
ScenarioOptions scenario_options(const RunConfig& config);

}  // namespace wavecoex
