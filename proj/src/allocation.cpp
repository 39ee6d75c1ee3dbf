#include "wavecoex/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wavecoex {

namespace {

constexpr int kMaxBisectIterations = 200;
constexpr int kMaxGrowthIterations = 2200;
constexpr double kConstraintTol = 1e-10;  // on normalized constraints
constexpr double kHuge = std::numeric_limits<double>::infinity();

struct Workspace {
    std::vector<double> floors;   // N0 df / g_n (+ incoming / g_n)
    std::vector<double> powers;
    const std::vector<double>* coeffs = nullptr;

    // P_n(lambda, mu) = max(0, 1/(lambda + mu i_n) - floor_n); fills powers
    // and returns (total power, total interference). Total power is +inf when
    // some denominator is non-positive.
    std::pair<double, double> waterfill(double lambda, double mu) {
        double total_power = 0.0;
        double total_intf = 0.0;
        for (std::size_t n = 0; n < floors.size(); ++n) {
            const double denom = lambda + mu * (*coeffs)[n];
            double p = 0.0;
            if (denom <= 0.0) {
                powers[n] = kHuge;
                total_power = kHuge;
                continue;
            }
            p = std::max(0.0, 1.0 / denom - floors[n]);
            powers[n] = p;
            total_power += p;
            total_intf += p * (*coeffs)[n];
        }
        return {total_power, total_intf};
    }
};

// Smallest lambda >= 0 with total power <= budget at the given mu.
double solve_lambda(Workspace& ws, double mu, double budget, int& iterations) {
    auto total_power = [&](double lambda) { return ws.waterfill(lambda, mu).first; };

    if (total_power(0.0) <= budget) return 0.0;

    double hi = 1.0;
    int grow = 0;
    while (total_power(hi) > budget) {
        hi *= 2.0;
        if (++grow > kMaxGrowthIterations) {
            throw SolverError("solve_power_allocation: power multiplier growth did not terminate",
                              ws.powers);
        }
    }
    double lo = 0.0;
    for (int it = 0; it < kMaxBisectIterations; ++it) {
        ++iterations;
        const double mid = 0.5 * (lo + hi);
        const double tp = total_power(mid);
        if (tp > budget) {
            lo = mid;
        } else {
            hi = mid;
            if (std::abs(tp / budget - 1.0) <= kConstraintTol) break;
        }
        if (hi - lo <= hi * 4.0 * std::numeric_limits<double>::epsilon()) break;
    }
    total_power(hi);  // leave the feasible iterate in ws.powers
    return hi;
}

}  // namespace

void AllocationProblem::validate() const {
    const std::size_t n = channel_gains.size();
    if (n == 0) {
        throw ParameterRangeError("AllocationProblem: at least one subcarrier required");
    }
    if (interference_coeffs.size() != n) {
        throw ParameterRangeError("AllocationProblem: gain and coefficient vectors must match");
    }
    if (!incoming_interference_w.empty() && incoming_interference_w.size() != n) {
        throw ParameterRangeError("AllocationProblem: incoming interference vector length mismatch");
    }
    for (double g : channel_gains) {
        if (!(g > 0.0)) throw ParameterRangeError("AllocationProblem: gains must be > 0");
    }
    for (double i : interference_coeffs) {
        if (!(i >= 0.0)) throw ParameterRangeError("AllocationProblem: coefficients must be >= 0");
    }
    for (double j : incoming_interference_w) {
        if (!(j >= 0.0)) throw ParameterRangeError("AllocationProblem: incoming interference must be >= 0");
    }
    if (!(power_budget_w > 0.0)) {
        throw ParameterRangeError("AllocationProblem: power budget must be > 0");
    }
    if (!(interference_threshold_w > 0.0)) {
        throw ParameterRangeError("AllocationProblem: interference threshold must be > 0");
    }
    if (!(noise_density_w_per_hz > 0.0) || !(subcarrier_spacing_hz > 0.0)) {
        throw ParameterRangeError("AllocationProblem: noise density and spacing must be > 0");
    }
}

AllocationResult solve_power_allocation(const AllocationProblem& problem) {
    problem.validate();
    const std::size_t n = problem.size();
    const double noise_w = problem.noise_density_w_per_hz * problem.subcarrier_spacing_hz;

    Workspace ws;
    ws.floors.resize(n);
    ws.powers.assign(n, 0.0);
    ws.coeffs = &problem.interference_coeffs;
    for (std::size_t i = 0; i < n; ++i) {
        const double incoming =
            problem.incoming_interference_w.empty() ? 0.0 : problem.incoming_interference_w[i];
        ws.floors[i] = (noise_w + incoming) / problem.channel_gains[i];
    }

    const double budget = problem.power_budget_w;
    const double threshold = problem.interference_threshold_w;

    AllocationResult result;
    int iterations = 0;

    auto interference_at = [&](double mu) {
        const double lambda = solve_lambda(ws, mu, budget, iterations);
        double intf = 0.0;
        for (std::size_t i = 0; i < n; ++i) intf += ws.powers[i] * problem.interference_coeffs[i];
        return std::pair<double, double>{lambda, intf};
    };

    double mu = 0.0;
    auto [lambda, intf] = interference_at(0.0);
    if (intf > threshold * (1.0 + kConstraintTol)) {
        double mu_hi = 1.0;
        int grow = 0;
        while (interference_at(mu_hi).second > threshold) {
            mu_hi *= 2.0;
            if (++grow > kMaxGrowthIterations) {
                throw SolverError(
                    "solve_power_allocation: interference multiplier growth did not terminate",
                    ws.powers);
            }
        }
        double mu_lo = 0.0;
        for (int it = 0; it < kMaxBisectIterations; ++it) {
            const double mid = 0.5 * (mu_lo + mu_hi);
            const double mid_intf = interference_at(mid).second;
            if (mid_intf > threshold) {
                mu_lo = mid;
            } else {
                mu_hi = mid;
                if (std::abs(mid_intf / threshold - 1.0) <= kConstraintTol) break;
            }
            if (mu_hi - mu_lo <= mu_hi * 4.0 * std::numeric_limits<double>::epsilon()) break;
        }
        mu = mu_hi;
        std::tie(lambda, intf) = interference_at(mu);
    }

    result.powers_w = ws.powers;
    result.dual_power = lambda;
    result.dual_interference = mu;
    result.iterations = iterations;
    result.total_power_used_w = 0.0;
    for (double p : result.powers_w) result.total_power_used_w += p;
    result.total_interference_w = intf;
    result.throughput_bps = throughput(result.powers_w, problem);
    result.binding.power = result.total_power_used_w >= budget * (1.0 - 1e-6);
    result.binding.interference = result.total_interference_w >= threshold * (1.0 - 1e-6);

    if (!std::isfinite(result.total_power_used_w) ||
        result.total_power_used_w > budget * (1.0 + 1e-9) ||
        result.total_interference_w > threshold * (1.0 + 1e-9)) {
        throw SolverError("solve_power_allocation: converged iterate violates feasibility",
                          result.powers_w);
    }
    return result;
}

double throughput(std::span<const double> powers_w, const AllocationProblem& problem) {
    if (powers_w.size() != problem.size()) {
        throw ContractError("throughput: power vector length does not match problem");
    }
    const double noise_w = problem.noise_density_w_per_hz * problem.subcarrier_spacing_hz;
    double rate = 0.0;
    for (std::size_t i = 0; i < powers_w.size(); ++i) {
        const double incoming =
            problem.incoming_interference_w.empty() ? 0.0 : problem.incoming_interference_w[i];
        const double snr = powers_w[i] * problem.channel_gains[i] / (noise_w + incoming);
        rate += problem.subcarrier_spacing_hz * std::log1p(snr) / std::numbers::ln2;
    }
    return rate;
}

double power_loss_percent(double used_w, double budget_w) {
    if (!(budget_w > 0.0)) {
        throw ContractError("power_loss_percent: budget must be > 0");
    }
    if (!(used_w >= 0.0) || used_w > budget_w * (1.0 + 1e-9)) {
        throw ContractError("power_loss_percent: used power outside [0, budget]");
    }
    return std::clamp(100.0 - used_w / budget_w * 100.0, 0.0, 100.0);
}

double water_level_residual(const AllocationResult& result, const AllocationProblem& problem) {
    const double noise_w = problem.noise_density_w_per_hz * problem.subcarrier_spacing_hz;
    double worst = 0.0;
    for (std::size_t i = 0; i < result.powers_w.size(); ++i) {
        if (result.powers_w[i] <= 0.0) continue;
        const double level =
            1.0 / (result.dual_power +
                   result.dual_interference * problem.interference_coeffs[i]);
        const double rhs = result.powers_w[i] + noise_w / problem.channel_gains[i];
        worst = std::max(worst, std::abs(level - rhs) / rhs);
    }
    return worst;
}

}  // namespace wavecoex
