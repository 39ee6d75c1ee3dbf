#include "wavecoex/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavecoex/quadrature.hpp"

namespace wavecoex {

void GridSpec::validate() const {
    if (total_subcarriers < 1 || rb_size < 1) {
        throw GeometryError("GridSpec: subcarrier count and rb_size must be >= 1");
    }
    if (!(subcarrier_spacing_hz > 0.0)) {
        throw GeometryError("GridSpec: subcarrier spacing must be > 0");
    }
    if (total_subcarriers % rb_size != 0) {
        throw GeometryError("GridSpec: total_subcarriers must be a multiple of rb_size");
    }
    for (std::size_t a = 0; a < assignments.size(); ++a) {
        const IndexRange& r = assignments[a].second;
        if (r.count < 1 || r.first < 0 || r.first + r.count > total_subcarriers) {
            throw GeometryError("GridSpec: assignment '" + assignments[a].first +
                                "' falls outside the grid");
        }
        for (std::size_t b = a + 1; b < assignments.size(); ++b) {
            const IndexRange& s = assignments[b].second;
            const bool disjoint = r.first + r.count <= s.first || s.first + s.count <= r.first;
            if (!disjoint) {
                throw GeometryError("GridSpec: assignments '" + assignments[a].first + "' and '" +
                                    assignments[b].first + "' overlap");
            }
        }
    }
}

const IndexRange& GridSpec::fragment_of(const std::string& system_id) const {
    for (const auto& [id, range] : assignments) {
        if (id == system_id) return range;
    }
    throw GeometryError("GridSpec: no assignment for system '" + system_id + "'");
}

Band GridSpec::fragment_band(const IndexRange& range) const {
    const double delta_f = subcarrier_spacing_hz;
    return Band{(range.first - 0.5) * delta_f, range.count * delta_f};
}

void SystemSpec::validate() const {
    wavecoex::validate(waveform);
    if (!(power_budget_w > 0.0)) {
        throw ParameterRangeError("SystemSpec '" + id + "': power budget must be > 0");
    }
    if (!(interference_threshold_w > 0.0)) {
        throw ParameterRangeError("SystemSpec '" + id + "': interference threshold must be > 0");
    }
    if (num_users < 1) {
        throw ParameterRangeError("SystemSpec '" + id + "': num_users must be >= 1");
    }
}

std::pair<GridSpec, std::array<SystemSpec, 2>> build_default_scenario() {
    GridSpec grid;
    grid.total_subcarriers = 1200;
    grid.subcarrier_spacing_hz = 15e3;
    grid.rb_size = 12;
    grid.assignments = {{"A", IndexRange{0, 600}}, {"B", IndexRange{600, 600}}};
    grid.validate();

    std::array<SystemSpec, 2> systems;
    for (int s = 0; s < 2; ++s) {
        systems[static_cast<std::size_t>(s)].id = s == 0 ? "A" : "B";
        systems[static_cast<std::size_t>(s)].waveform =
            OfdmParams::from_spacing(grid.subcarrier_spacing_hz);
        systems[static_cast<std::size_t>(s)].power_budget_w = dbm_to_watt(43.0);
        systems[static_cast<std::size_t>(s)].interference_threshold_w = 1e-3;
        systems[static_cast<std::size_t>(s)].num_users = 10;
    }
    return {grid, systems};
}

std::vector<double> default_threshold_grid(int num_points, double min_w, double max_w) {
    if (num_points < 2 || !(min_w > 0.0) || !(max_w > min_w)) {
        throw ParameterRangeError("default_threshold_grid: need >= 2 points and 0 < min < max");
    }
    std::vector<double> grid(static_cast<std::size_t>(num_points));
    const double log_lo = std::log10(min_w);
    const double log_hi = std::log10(max_w);
    for (int i = 0; i < num_points; ++i) {
        const double t = static_cast<double>(i) / (num_points - 1);
        grid[static_cast<std::size_t>(i)] = std::pow(10.0, log_lo + t * (log_hi - log_lo));
    }
    grid.front() = min_w;
    grid.back() = max_w;
    return grid;
}

std::vector<std::string> SweepResult::monotonicity_violations(double rel_tol) const {
    std::vector<std::string> violations;
    for (const auto& sys : systems) {
        for (std::size_t i = 1; i < thresholds_w.size(); ++i) {
            if (sys.status[i] != "ok" || sys.status[i - 1] != "ok") continue;
            const double tp_prev = sys.throughput_bps[i - 1];
            const double tp = sys.throughput_bps[i];
            if (tp < tp_prev * (1.0 - rel_tol)) {
                std::ostringstream msg;
                msg << "system " << sys.id << ": throughput decreases at threshold "
                    << thresholds_w[i] << " W";
                violations.push_back(msg.str());
            }
            const double loss_prev = sys.power_loss_pct[i - 1];
            const double loss = sys.power_loss_pct[i];
            if (loss > loss_prev + 100.0 * rel_tol) {
                std::ostringstream msg;
                msg << "system " << sys.id << ": power-loss increases at threshold "
                    << thresholds_w[i] << " W";
                violations.push_back(msg.str());
            }
        }
    }
    return violations;
}

namespace {

SweepResult run_sweep(const GridSpec& grid, const std::array<SystemSpec, 2>& systems,
                      const std::vector<double>& thresholds_w, const ScenarioOptions& options,
                      bool parallel) {
    grid.validate();
    for (const auto& sys : systems) sys.validate();
    if (thresholds_w.empty()) {
        throw ParameterRangeError("run_threshold_sweep: need at least one threshold");
    }
    for (std::size_t i = 0; i < thresholds_w.size(); ++i) {
        if (thresholds_w[i] < 1e-7 || thresholds_w[i] > 1.0) {
            throw ParameterRangeError("run_threshold_sweep: thresholds must lie within [1e-7, 1] W");
        }
        if (i > 0 && !(thresholds_w[i] > thresholds_w[i - 1])) {
            throw ParameterRangeError("run_threshold_sweep: thresholds must be strictly increasing");
        }
    }

    SweepResult result;
    result.thresholds_w = thresholds_w;

    // Per-system problem skeletons; the Eq.-(5) profiles are power-independent
    // and shared across all threshold points.
    std::array<AllocationProblem, 2> base;
    for (std::size_t s = 0; s < 2; ++s) {
        const SystemSpec& own = systems[s];
        const SystemSpec& other = systems[1 - s];
        const IndexRange& own_range = grid.fragment_of(own.id);
        const IndexRange& victim_range = grid.fragment_of(other.id);
        const Band victim_band = grid.fragment_band(victim_range);

        if (spacing_of(own.waveform) != grid.subcarrier_spacing_hz) {
            throw GeometryError("run_threshold_sweep: system '" + own.id +
                                "' waveform spacing does not match the grid");
        }

        auto profile = global_profile_cache().get_or_compute(
            own.waveform, own_range, victim_band, grid.subcarrier_spacing_hz, grid.rb_size,
            options.quadrature_rel_tol);

        base[s].channel_gains = channel_gains(options.channel,
                                              static_cast<std::size_t>(own_range.count),
                                              options.seed + s);
        base[s].subcarrier_spacing_hz = grid.subcarrier_spacing_hz;
        base[s].power_budget_w = own.power_budget_w;
        base[s].interference_coeffs = profile->coefficients;

        result.systems[s].id = own.id;
        result.systems[s].waveform = to_string(kind_of(own.waveform));
        result.systems[s].throughput_bps.assign(thresholds_w.size(), 0.0);
        result.systems[s].power_used_w.assign(thresholds_w.size(), 0.0);
        result.systems[s].power_loss_pct.assign(thresholds_w.size(), 0.0);
        result.systems[s].status.assign(thresholds_w.size(), "ok");
    }

    const auto num_points = static_cast<std::ptrdiff_t>(2 * thresholds_w.size());
    auto solve_point = [&](std::ptrdiff_t point) {
        const std::size_t s = static_cast<std::size_t>(point) % 2;
        const std::size_t t = static_cast<std::size_t>(point) / 2;
        AllocationProblem problem = base[s];
        problem.interference_threshold_w = thresholds_w[t];
        auto& curves = result.systems[s];
        try {
            const AllocationResult solved = solve_power_allocation(problem);
            curves.throughput_bps[t] = solved.throughput_bps;
            curves.power_used_w[t] = solved.total_power_used_w;
            curves.power_loss_pct[t] =
                power_loss_percent(solved.total_power_used_w, problem.power_budget_w);
        } catch (const std::exception& err) {
            // Per-point failures are recorded; the sweep carries on. Points
            // run inside the parallel region, so nothing may escape.
            curves.status[t] = err.what();
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t point = 0; point < num_points; ++point) solve_point(point);
    } else {
        for (std::ptrdiff_t point = 0; point < num_points; ++point) solve_point(point);
    }
    return result;
}

}  // namespace

SweepResult run_threshold_sweep(const GridSpec& grid, const std::array<SystemSpec, 2>& systems,
                                const std::vector<double>& thresholds_w,
                                const ScenarioOptions& options) {
    return run_sweep(grid, systems, thresholds_w, options, true);
}

SweepResult run_threshold_sweep_serial(const GridSpec& grid,
                                       const std::array<SystemSpec, 2>& systems,
                                       const std::vector<double>& thresholds_w,
                                       const ScenarioOptions& options) {
    return run_sweep(grid, systems, thresholds_w, options, false);
}

PsdSampleTable sample_psd_comparison(const std::vector<WaveformParams>& waveforms,
                                     int num_subcarriers, const Band& f_range, int num_points,
                                     int rb_size) {
    if (num_points < 2) {
        throw ParameterRangeError("sample_psd_comparison: num_points must be >= 2");
    }
    if (num_subcarriers < 1 || rb_size < 1) {
        throw ParameterRangeError("sample_psd_comparison: subcarrier and RB counts must be >= 1");
    }
    if (!(f_range.width_hz > 0.0)) {
        throw ParameterRangeError("sample_psd_comparison: frequency range must have width > 0");
    }

    PsdSampleTable table;
    table.freq_hz.resize(static_cast<std::size_t>(num_points));
    for (int i = 0; i < num_points; ++i) {
        table.freq_hz[static_cast<std::size_t>(i)] =
            f_range.start_hz + f_range.width_hz * i / (num_points - 1);
    }

    for (const WaveformParams& params : waveforms) {
        validate(params);
        const WaveformKind kind = kind_of(params);

        // One RB curve per subband tile so UFMC keeps its per-RB filtering;
        // OFDM/FBMC tiles compose to exactly the flat sum of subcarriers.
        std::vector<PsdCurve> tiles;
        for (int start = 0; start < num_subcarriers; start += rb_size) {
            const int count = std::min(rb_size, num_subcarriers - start);
            ResourceBlockSpec rb;
            rb.start_subcarrier = start;
            rb.num_subcarriers = count;
            rb.powers_w.assign(static_cast<std::size_t>(count), 1.0);
            tiles.push_back(make_resource_block_curve(kind, rb, params));
        }

        PsdSampleTable::Column column;
        column.waveform = to_string(kind);
        column.density_w_per_hz.resize(static_cast<std::size_t>(num_points));

        auto& density = column.density_w_per_hz;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(num_points); ++i) {
            double acc = 0.0;
            for (const PsdCurve& tile : tiles) acc += tile.extended(table.freq_hz[static_cast<std::size_t>(i)]);
            density[static_cast<std::size_t>(i)] = acc;
        }

        const double peak = *std::max_element(density.begin(), density.end());
        column.normalized_db.resize(density.size());
        for (std::size_t i = 0; i < density.size(); ++i) {
            const double ratio = peak > 0.0 ? density[i] / peak : 0.0;
            column.normalized_db[i] = ratio > 1e-30 ? 10.0 * std::log10(ratio) : -300.0;
        }
        table.columns.push_back(std::move(column));
    }
    return table;
}

std::vector<int> round_robin_user_of_rb(int num_rbs, int num_users) {
    if (num_rbs < 0 || num_users < 1) {
        throw ParameterRangeError("round_robin_user_of_rb: invalid counts");
    }
    std::vector<int> users(static_cast<std::size_t>(num_rbs));
    for (int r = 0; r < num_rbs; ++r) users[static_cast<std::size_t>(r)] = r % num_users;
    return users;
}

}  // namespace wavecoex
