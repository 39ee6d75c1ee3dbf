#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wavecoex {

// Frequency interval [start_hz, start_hz + width_hz).
struct Band {
    double start_hz = 0.0;
    double width_hz = 0.0;

    double end_hz() const { return start_hz + width_hz; }
    bool contains(double f_hz) const { return f_hz >= start_hz && f_hz <= end_hz(); }
};

enum class WaveformKind { ofdm, fbmc, ufmc };

const char* to_string(WaveformKind kind);
WaveformKind waveform_from_string(const std::string& name);

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A numeric parameter is outside the range the model supports.
class ParameterRangeError : public Error {
  public:
    using Error::Error;
};

// Configuration document is syntactically or semantically invalid.
class ConfigError : public Error {
  public:
    using Error::Error;
};

// Subcarrier/band layout is inconsistent (overlap, bad range).
class GeometryError : public Error {
  public:
    using Error::Error;
};

// A caller violated a documented contract (e.g. used power > budget).
class ContractError : public Error {
  public:
    using Error::Error;
};

// Adaptive quadrature hit the subdivision limit; carries the partial estimate.
class QuadratureError : public Error {
  public:
    QuadratureError(const std::string& what, double partial_estimate)
        : Error(what), partial_(partial_estimate) {}
    double partial_estimate() const { return partial_; }

  private:
    double partial_;
};

// Allocation solver failed to converge; carries the best iterate found.
class SolverError : public Error {
  public:
    SolverError(const std::string& what, std::vector<double> best_powers_w)
        : Error(what), best_powers_(std::move(best_powers_w)) {}
    const std::vector<double>& best_powers_w() const { return best_powers_; }

  private:
    std::vector<double> best_powers_;
};

// dB conversions live at the interface layer; all internal math is W and Hz.
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
inline double dbw_to_watt(double dbw) { return std::pow(10.0, dbw / 10.0); }
inline double watt_to_dbw(double watt) { return 10.0 * std::log10(watt); }

}  // namespace wavecoex
