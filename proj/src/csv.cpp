#include "wavecoex/csv.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wavecoex {

std::string format_double(double value, int significant_digits) {
    std::array<char, 64> buffer{};
    const auto [ptr, ec] =
        significant_digits > 0
            ? std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                            std::chars_format::general, significant_digits)
            : std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                            std::chars_format::general);
    if (ec != std::errc{}) {
        throw Error("format_double: conversion failed");
    }
    return std::string(buffer.data(), ptr);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";

    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open '" + tmp.string() + "' for writing");
        }
        out << contents;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error("write failed for '" + tmp.string() + "'");
        }
    }

    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ignore;
        fs::remove(tmp, ignore);
        throw Error("cannot move output into place at '" + path + "': " + ec.message());
    }
}

std::string render_psd_csv(const PsdSampleTable& table) {
    std::ostringstream out;
    out << "freq_hz";
    for (const auto& column : table.columns) out << ',' << column.waveform << "_db";
    out << '\n';
    for (std::size_t i = 0; i < table.freq_hz.size(); ++i) {
        out << format_double(table.freq_hz[i]);
        for (const auto& column : table.columns) out << ',' << format_double(column.normalized_db[i]);
        out << '\n';
    }
    return out.str();
}

std::string render_sweep_csv(const std::vector<SweepResult>& runs) {
    std::ostringstream out;
    out << "threshold_w,threshold_dbw,system,waveform,throughput_bps,power_used_w,power_loss_pct,status\n";
    for (const SweepResult& run : runs) {
        for (std::size_t t = 0; t < run.thresholds_w.size(); ++t) {
            for (const auto& sys : run.systems) {
                out << format_double(run.thresholds_w[t]) << ','
                    << format_double(watt_to_dbw(run.thresholds_w[t])) << ',' << sys.id << ','
                    << sys.waveform << ',' << format_double(sys.throughput_bps[t]) << ','
                    << format_double(sys.power_used_w[t]) << ','
                    << format_double(sys.power_loss_pct[t]) << ','
                    << (sys.status[t] == "ok" ? "ok" : "error") << '\n';
            }
        }
    }
    return out.str();
}

std::string render_window_csv(const std::vector<double>& taps) {
    std::ostringstream out;
    for (double tap : taps) out << format_double(tap, 17) << '\n';
    return out.str();
}

std::string render_profile_csv(const InterferenceProfile& profile,
                               const std::vector<int>& subcarriers) {
    if (subcarriers.size() != profile.coefficients.size()) {
        throw ContractError("render_profile_csv: subcarrier list does not match profile");
    }
    std::ostringstream out;
    out << "subcarrier_index,d_n,coefficient\n";
    for (std::size_t i = 0; i < subcarriers.size(); ++i) {
        out << subcarriers[i] << ',' << format_double(profile.spectral_distances[i], 17) << ','
            << format_double(profile.coefficients[i], 17) << '\n';
    }
    return out.str();
}

}  // namespace wavecoex
