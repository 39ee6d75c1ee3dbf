#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wavecoex/allocation.hpp"
#include "wavecoex/channel.hpp"
#include "wavecoex/interference.hpp"
#include "wavecoex/psd.hpp"
#include "wavecoex/types.hpp"

namespace wavecoex {

// Common subcarrier grid with contiguous fragment assignments per system.
struct GridSpec {
    int total_subcarriers = 1200;
    double subcarrier_spacing_hz = 15e3;
    int rb_size = 12;
    std::vector<std::pair<std::string, IndexRange>> assignments;

    void validate() const;
    int num_resource_blocks() const { return total_subcarriers / rb_size; }
    const IndexRange& fragment_of(const std::string& system_id) const;
    // Band covered by a fragment: subcarrier centers +/- half a spacing.
    Band fragment_band(const IndexRange& range) const;
};

struct SystemSpec {
    std::string id;
    WaveformParams waveform = OfdmParams{};
    double power_budget_w = 0.0;
    double interference_threshold_w = 1e-3;
    int num_users = 10;

    void validate() const;
};

struct SweepResult {
    std::vector<double> thresholds_w;
    struct SystemCurves {
        std::string id;
        std::string waveform;
        std::vector<double> throughput_bps;
        std::vector<double> power_used_w;
        std::vector<double> power_loss_pct;
        std::vector<std::string> status;  // "ok" or the solver error per point
    };
    std::array<SystemCurves, 2> systems;

    // Empty when throughput is non-decreasing and power-loss non-increasing
    // along the threshold axis for both systems.
    std::vector<std::string> monotonicity_violations(double rel_tol = 1e-9) const;
};

struct ScenarioOptions {
    ChannelProfile channel = ChannelProfile::flat;
    std::uint64_t seed = 0;
    double quadrature_rel_tol = 1e-9;
};

// The default two-system coexistence layout: 1200 subcarriers at 15 kHz
// (100 RBs of 12), split into two 600-subcarrier halves, 43 dBm budget and
// 10 users per system.
std::pair<GridSpec, std::array<SystemSpec, 2>> build_default_scenario();

// 25 log-spaced thresholds across 1e-6..1e-1 W.
std::vector<double> default_threshold_grid(int num_points = 25, double min_w = 1e-6,
                                           double max_w = 1e-1);

// Solves both systems' allocations at every threshold. Points run
// independently; the parallel version distributes them over OpenMP threads
// and returns bit-identical results to the serial reference.
SweepResult run_threshold_sweep(const GridSpec& grid, const std::array<SystemSpec, 2>& systems,
                                const std::vector<double>& thresholds_w,
                                const ScenarioOptions& options = {});
SweepResult run_threshold_sweep_serial(const GridSpec& grid,
                                       const std::array<SystemSpec, 2>& systems,
                                       const std::vector<double>& thresholds_w,
                                       const ScenarioOptions& options = {});

// Multi-subcarrier PSD sampling for the waveform comparison plot. Frequencies
// are absolute on the grid axis with subcarrier n centered at n * delta_f.
struct PsdSampleTable {
    std::vector<double> freq_hz;
    struct Column {
        std::string waveform;
        std::vector<double> density_w_per_hz;
        std::vector<double> normalized_db;  // 0 dB at the column's peak
    };
    std::vector<Column> columns;
};

PsdSampleTable sample_psd_comparison(const std::vector<WaveformParams>& waveforms,
                                     int num_subcarriers, const Band& f_range, int num_points,
                                     int rb_size = 12);

// Round-robin RB ownership: entry r is the user index serving RB r.
std::vector<int> round_robin_user_of_rb(int num_rbs, int num_users);

}  // namespace wavecoex
