#include "wavecoex/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wavecoex/csv.hpp"

namespace wavecoex {

namespace {

std::string trim(const std::string& s) {
    std::size_t lo = 0;
    std::size_t hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
    return s.substr(lo, hi - lo);
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& value, int line, const std::string& key) {
    const std::string v = trim(value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        fail(line, "invalid number '" + v + "' for key '" + key + "'");
    }
    return out;
}

int parse_int(const std::string& value, int line, const std::string& key) {
    const std::string v = trim(value);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        fail(line, "invalid integer '" + v + "' for key '" + key + "'");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& value, int line, const std::string& key) {
    const std::string v = trim(value);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        fail(line, "invalid unsigned integer '" + v + "' for key '" + key + "'");
    }
    return out;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) parts.push_back(t);
    }
    return parts;
}

WaveformKind parse_waveform(const std::string& value, int line, const std::string& key) {
    try {
        return waveform_from_string(trim(value));
    } catch (const ConfigError& err) {
        fail(line, std::string("key '") + key + "': " + err.what());
    }
}

struct SystemKeyState {
    bool threshold_w_seen = false;
    bool threshold_dbw_seen = false;
};

void apply_system_key(RunConfig::System& sys, SystemKeyState& state, const std::string& key,
                      const std::string& value, int line) {
    if (key == "waveform") {
        sys.waveform = parse_waveform(value, line, key);
    } else if (key == "power_budget_dbm") {
        sys.power_budget_dbm = parse_double(value, line, key);
    } else if (key == "interference_threshold_w") {
        if (state.threshold_dbw_seen) {
            fail(line, "interference threshold given in both W and dBW");
        }
        state.threshold_w_seen = true;
        sys.interference_threshold_w = parse_double(value, line, key);
    } else if (key == "interference_threshold_dbw") {
        if (state.threshold_w_seen) {
            fail(line, "interference threshold given in both W and dBW");
        }
        state.threshold_dbw_seen = true;
        sys.interference_threshold_w = dbw_to_watt(parse_double(value, line, key));
    } else if (key == "num_users") {
        sys.num_users = parse_int(value, line, key);
    } else if (key == "fbmc_overlap_factor") {
        sys.fbmc_overlap_factor = parse_int(value, line, key);
    } else if (key == "fbmc_fft_size") {
        sys.fbmc_fft_size = parse_int(value, line, key);
    } else if (key == "fbmc_coeffs") {
        sys.fbmc_coeffs.clear();
        for (const std::string& item : split_list(value)) {
            sys.fbmc_coeffs.push_back(parse_double(item, line, key));
        }
    } else if (key == "ufmc_filter_length") {
        sys.ufmc_filter_length = parse_int(value, line, key);
    } else if (key == "ufmc_attenuation_db") {
        sys.ufmc_attenuation_db = parse_double(value, line, key);
    } else if (key == "ufmc_fft_size") {
        sys.ufmc_fft_size = parse_int(value, line, key);
    } else if (key == "ufmc_psd_oversampling") {
        sys.ufmc_psd_oversampling = parse_int(value, line, key);
    } else {
        fail(line, "unknown key '" + key + "' in a [system.*] section");
    }
}

void validate_user_units(const RunConfig& config) {
    if (config.grid.total_subcarriers < 1) {
        throw ConfigError("grid.total_subcarriers must be >= 1");
    }
    if (!(config.grid.subcarrier_spacing_khz > 0.0)) {
        throw ConfigError("grid.subcarrier_spacing_khz must be > 0");
    }
    if (config.grid.rb_size < 1) {
        throw ConfigError("grid.rb_size must be >= 1");
    }
    if (config.sweep.num_points < 2) {
        throw ConfigError("sweep.num_points must be >= 2");
    }
    if (!(config.sweep.threshold_min_w > 0.0) ||
        !(config.sweep.threshold_max_w > config.sweep.threshold_min_w)) {
        throw ConfigError("sweep thresholds must satisfy 0 < min < max");
    }
    if (config.sweep.waveforms.empty()) {
        throw ConfigError("sweep.waveforms must name at least one waveform");
    }
    if (config.psd.num_points < 2) {
        throw ConfigError("psd.num_points must be >= 2");
    }
    if (config.psd.num_subcarriers < 1) {
        throw ConfigError("psd.num_subcarriers must be >= 1");
    }
    if (!(config.psd.max_offset_df > config.psd.min_offset_df)) {
        throw ConfigError("psd offset range must satisfy min < max");
    }
    if (!(config.alloc.threshold_w > 0.0)) {
        throw ConfigError("alloc.threshold_w must be > 0");
    }
    if (config.channel.multipath_taps < 1 || !(config.channel.multipath_decay > 0.0)) {
        throw ConfigError("channel multipath parameters must be positive");
    }
    for (std::size_t s = 0; s < 2; ++s) {
        const auto& sys = config.systems[s];
        const std::string label = s == 0 ? "system.A" : "system.B";
        if (!(sys.interference_threshold_w > 0.0)) {
            throw ConfigError(label + ".interference_threshold_w must be > 0");
        }
        if (sys.num_users < 1) {
            throw ConfigError(label + ".num_users must be >= 1");
        }
        if (!(sys.ufmc_attenuation_db > 0.0)) {
            throw ConfigError(label + ".ufmc_attenuation_db must be > 0 dB");
        }
        if (sys.ufmc_filter_length < 2) {
            throw ConfigError(label + ".ufmc_filter_length must be >= 2");
        }
        if (sys.fbmc_overlap_factor < 1) {
            throw ConfigError(label + ".fbmc_overlap_factor must be >= 1");
        }
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::array<SystemKeyState, 2> system_state;

    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        std::string content = raw;
        if (const auto hash = content.find('#'); hash != std::string::npos) {
            content = content.substr(0, hash);
        }
        content = trim(content);
        if (content.empty()) continue;

        if (content.front() == '[') {
            if (content.back() != ']') {
                fail(line, "unterminated section header");
            }
            section = trim(content.substr(1, content.size() - 2));
            if (section != "grid" && section != "sweep" && section != "psd" &&
                section != "alloc" && section != "channel" && section != "system.A" &&
                section != "system.B") {
                fail(line, "unknown section '" + section + "'");
            }
            continue;
        }

        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            fail(line, "expected 'key = value'");
        }
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (value.empty()) fail(line, "empty value for key '" + key + "'");

        if (section.empty()) {
            if (key == "seed") {
                config.seed = parse_u64(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' outside any section");
            }
        } else if (section == "grid") {
            if (key == "total_subcarriers") {
                config.grid.total_subcarriers = parse_int(value, line, key);
            } else if (key == "subcarrier_spacing_khz") {
                config.grid.subcarrier_spacing_khz = parse_double(value, line, key);
            } else if (key == "rb_size") {
                config.grid.rb_size = parse_int(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [grid]");
            }
        } else if (section == "sweep") {
            if (key == "threshold_min_w") {
                config.sweep.threshold_min_w = parse_double(value, line, key);
            } else if (key == "threshold_max_w") {
                config.sweep.threshold_max_w = parse_double(value, line, key);
            } else if (key == "num_points") {
                config.sweep.num_points = parse_int(value, line, key);
            } else if (key == "waveforms") {
                config.sweep.waveforms.clear();
                for (const std::string& item : split_list(value)) {
                    config.sweep.waveforms.push_back(parse_waveform(item, line, key));
                }
            } else {
                fail(line, "unknown key '" + key + "' in [sweep]");
            }
        } else if (section == "psd") {
            if (key == "num_subcarriers") {
                config.psd.num_subcarriers = parse_int(value, line, key);
            } else if (key == "num_points") {
                config.psd.num_points = parse_int(value, line, key);
            } else if (key == "min_offset_df") {
                config.psd.min_offset_df = parse_double(value, line, key);
            } else if (key == "max_offset_df") {
                config.psd.max_offset_df = parse_double(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [psd]");
            }
        } else if (section == "alloc") {
            if (key == "threshold_w") {
                config.alloc.threshold_w = parse_double(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [alloc]");
            }
        } else if (section == "channel") {
            if (key == "profile") {
                const std::string v = trim(value);
                if (v == "flat") {
                    config.channel.profile = ChannelProfile::flat;
                } else if (v == "multipath") {
                    config.channel.profile = ChannelProfile::multipath;
                } else {
                    fail(line, "key 'profile': unknown channel '" + v +
                                   "' (allowed: flat, multipath)");
                }
            } else if (key == "multipath_taps") {
                config.channel.multipath_taps = parse_int(value, line, key);
            } else if (key == "multipath_decay") {
                config.channel.multipath_decay = parse_double(value, line, key);
            } else {
                fail(line, "unknown key '" + key + "' in [channel]");
            }
        } else {
            const std::size_t idx = section == "system.A" ? 0 : 1;
            apply_system_key(config.systems[idx], system_state[idx], key, value, line);
        }
    }

    validate_user_units(config);
    return config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    out << "seed = " << config.seed << "\n\n";
    out << "[grid]\n";
    out << "total_subcarriers = " << config.grid.total_subcarriers << '\n';
    out << "subcarrier_spacing_khz = " << format_double(config.grid.subcarrier_spacing_khz) << '\n';
    out << "rb_size = " << config.grid.rb_size << "\n\n";

    out << "[sweep]\n";
    out << "threshold_min_w = " << format_double(config.sweep.threshold_min_w) << '\n';
    out << "threshold_max_w = " << format_double(config.sweep.threshold_max_w) << '\n';
    out << "num_points = " << config.sweep.num_points << '\n';
    out << "waveforms = ";
    for (std::size_t i = 0; i < config.sweep.waveforms.size(); ++i) {
        if (i) out << ',';
        out << to_string(config.sweep.waveforms[i]);
    }
    out << "\n\n";

    out << "[psd]\n";
    out << "num_subcarriers = " << config.psd.num_subcarriers << '\n';
    out << "num_points = " << config.psd.num_points << '\n';
    out << "min_offset_df = " << format_double(config.psd.min_offset_df) << '\n';
    out << "max_offset_df = " << format_double(config.psd.max_offset_df) << "\n\n";

    out << "[alloc]\n";
    out << "threshold_w = " << format_double(config.alloc.threshold_w) << "\n\n";

    out << "[channel]\n";
    out << "profile = "
        << (config.channel.profile == ChannelProfile::flat ? "flat" : "multipath") << '\n';
    out << "multipath_taps = " << config.channel.multipath_taps << '\n';
    out << "multipath_decay = " << format_double(config.channel.multipath_decay) << '\n';

    for (std::size_t s = 0; s < 2; ++s) {
        const auto& sys = config.systems[s];
        out << "\n[system." << (s == 0 ? 'A' : 'B') << "]\n";
        out << "waveform = " << to_string(sys.waveform) << '\n';
        out << "power_budget_dbm = " << format_double(sys.power_budget_dbm) << '\n';
        out << "interference_threshold_w = " << format_double(sys.interference_threshold_w) << '\n';
        out << "num_users = " << sys.num_users << '\n';
        out << "fbmc_overlap_factor = " << sys.fbmc_overlap_factor << '\n';
        out << "fbmc_fft_size = " << sys.fbmc_fft_size << '\n';
        if (!sys.fbmc_coeffs.empty()) {
            out << "fbmc_coeffs = ";
            for (std::size_t i = 0; i < sys.fbmc_coeffs.size(); ++i) {
                if (i) out << ',';
                out << format_double(sys.fbmc_coeffs[i]);
            }
            out << '\n';
        }
        out << "ufmc_filter_length = " << sys.ufmc_filter_length << '\n';
        out << "ufmc_attenuation_db = " << format_double(sys.ufmc_attenuation_db) << '\n';
        out << "ufmc_fft_size = " << sys.ufmc_fft_size << '\n';
        out << "ufmc_psd_oversampling = " << sys.ufmc_psd_oversampling << '\n';
    }
    return out.str();
}

WaveformParams waveform_params_for(const RunConfig& config, std::size_t system_index,
                                   WaveformKind kind) {
    const auto& sys = config.systems.at(system_index);
    const double delta_f = config.grid.subcarrier_spacing_khz * 1e3;
    switch (kind) {
        case WaveformKind::ofdm:
            return OfdmParams::from_spacing(delta_f);
        case WaveformKind::fbmc: {
            FbmcParams p = FbmcParams::phydyas_default(delta_f, sys.fbmc_fft_size);
            p.overlap_factor = sys.fbmc_overlap_factor;
            if (!sys.fbmc_coeffs.empty()) {
                p.polyphase_coeffs = sys.fbmc_coeffs;
            } else if (sys.fbmc_overlap_factor != 4) {
                throw ConfigError("fbmc_coeffs must be given for overlap factors other than 4");
            }
            p.validate();
            return p;
        }
        case WaveformKind::ufmc: {
            UfmcParams p;
            p.filter_length = sys.ufmc_filter_length;
            p.sidelobe_attenuation_db = sys.ufmc_attenuation_db;
            p.fft_size = sys.ufmc_fft_size;
            p.psd_oversampling = sys.ufmc_psd_oversampling;
            p.subcarrier_spacing_hz = delta_f;
            p.validate();
            return p;
        }
    }
    throw ConfigError("waveform_params_for: unreachable");
}

std::pair<GridSpec, std::array<SystemSpec, 2>> build_scenario(const RunConfig& config) {
    GridSpec grid;
    grid.total_subcarriers = config.grid.total_subcarriers;
    grid.subcarrier_spacing_hz = config.grid.subcarrier_spacing_khz * 1e3;
    grid.rb_size = config.grid.rb_size;
    const int half = config.grid.total_subcarriers / 2;
    grid.assignments = {{"A", IndexRange{0, half}},
                        {"B", IndexRange{half, config.grid.total_subcarriers - half}}};
    grid.validate();

    std::array<SystemSpec, 2> systems;
    for (std::size_t s = 0; s < 2; ++s) {
        systems[s].id = s == 0 ? "A" : "B";
        systems[s].waveform = waveform_params_for(config, s, config.systems[s].waveform);
        systems[s].power_budget_w = dbm_to_watt(config.systems[s].power_budget_dbm);
        systems[s].interference_threshold_w = config.systems[s].interference_threshold_w;
        systems[s].num_users = config.systems[s].num_users;
        systems[s].validate();
    }
    return {grid, systems};
}

std::vector<double> threshold_grid(const RunConfig& config) {
    return default_threshold_grid(config.sweep.num_points, config.sweep.threshold_min_w,
                                  config.sweep.threshold_max_w);
}

ScenarioOptions scenario_options(const RunConfig& config) {
    ScenarioOptions options;
    options.channel = config.channel.profile;
    options.seed = config.seed;
    return options;
}

}  // namespace wavecoex
