#pragma once

#include <span>
#include <vector>

#include "wavecoex/types.hpp"

namespace wavecoex {

// Throughput-maximizing power allocation under a total power budget and a
// linear interference cap toward the neighboring system.
struct AllocationProblem {
    std::vector<double> channel_gains;            // g_n, dimensionless
    double noise_density_w_per_hz = 3.9810717055349694e-21;  // -174 dBm/Hz
    double subcarrier_spacing_hz = 15e3;
    double power_budget_w = 0.0;                  // P_max
    std::vector<double> interference_coeffs;      // i_n, unit-power spill factors
    double interference_threshold_w = 0.0;        // I_th
    // Optional per-subcarrier incoming interference added to the noise floor;
    // empty means none. Off by default: systems couple only through I_th.
    std::vector<double> incoming_interference_w;

    void validate() const;
    std::size_t size() const { return channel_gains.size(); }
};

struct BindingConstraints {
    bool power = false;
    bool interference = false;
};

struct AllocationResult {
    std::vector<double> powers_w;
    double total_power_used_w = 0.0;
    double total_interference_w = 0.0;
    double throughput_bps = 0.0;
    double dual_power = 0.0;         // lambda in 1/(lambda + mu i_n) = P_n + N0 df / g_n
    double dual_interference = 0.0;  // mu
    BindingConstraints binding;
    int iterations = 0;
};

// Water-filling via nested bisection: outer on the interference multiplier,
// inner on the power multiplier. Spec form P_n = max(0, 1/(lambda + mu i_n)
// - N0 df / g_n).
AllocationResult solve_power_allocation(const AllocationProblem& problem);

// Sum-rate Shannon throughput of a power vector for the problem's gains.
double throughput(std::span<const double> powers_w, const AllocationProblem& problem);

// 100 - used/budget*100, clamped to [0, 100].
double power_loss_percent(double used_w, double budget_w);

// Largest relative violation of the water-level identity over subcarriers
// with positive power; diagnostic for KKT checks.
double water_level_residual(const AllocationResult& result, const AllocationProblem& problem);

}  // namespace wavecoex
