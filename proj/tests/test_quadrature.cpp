#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wavecoex/psd.hpp"
#include "wavecoex/quadrature.hpp"

using namespace wavecoex;

namespace {
const OfdmParams kOfdm = OfdmParams::from_spacing(15e3);
const FbmcParams kFbmc = FbmcParams::phydyas_default(15e3);
UfmcParams default_ufmc() {
    UfmcParams p;
    p.subcarrier_spacing_hz = 15e3;
    return p;
}
}  // namespace

TEST_CASE("constant and zero curves integrate exactly") {
    const Band support{-1e9, 2e9};
    const PsdCurve constant([](double) { return 3.25; }, support, 1e6);
    CHECK(integrate_psd(constant, Band{100.0, 4000.0}, 1e-9) ==
          doctest::Approx(3.25 * 4000.0).epsilon(1e-9));

    const PsdCurve zero([](double) { return 0.0; }, support, 1e6);
    CHECK(integrate_psd(zero, Band{100.0, 4000.0}, 1e-9) == 0.0);
}

TEST_CASE("bands outside the support integrate to zero") {
    const PsdCurve curve([](double) { return 1.0; }, Band{0.0, 1000.0}, 10.0);
    CHECK(integrate_psd(curve, Band{2000.0, 500.0}, 1e-9) == 0.0);
    // Partial overlap clips to the support edge.
    CHECK(integrate_psd(curve, Band{500.0, 1000.0}, 1e-9) == doctest::Approx(500.0));
}

TEST_CASE("rel_tol domain is enforced") {
    const PsdCurve curve([](double) { return 1.0; }, Band{0.0, 1.0}, 0.1);
    CHECK_THROWS_AS(integrate_psd(curve, Band{0.0, 1.0}, 1e-15), ParameterRangeError);
    CHECK_THROWS_AS(integrate_psd(curve, Band{0.0, 1.0}, 0.5), ParameterRangeError);
    CHECK_THROWS_AS(integrate_psd(curve, Band{0.0, -1.0}, 1e-9), GeometryError);
}

TEST_CASE("ofdm main lobe matches a dense midpoint Riemann oracle") {
    const PsdCurve curve = make_ofdm_subcarrier_curve(1.0, kOfdm);
    const Band band{-7.5e3, 15e3};
    const double adaptive = integrate_psd(curve, band, 1e-9);
    const double oracle = test::riemann_midpoint(curve, band, 1'000'000);
    CHECK(adaptive == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("quadrature agrees with the Riemann oracle on random bands") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> offset_df(-25.0, 25.0);
    std::uniform_real_distribution<double> width_df(0.5, 10.0);
    const double delta_f = 15e3;

    const PsdCurve curves[3] = {make_ofdm_subcarrier_curve(1.0, kOfdm),
                                make_fbmc_subcarrier_curve(1.0, kFbmc),
                                make_ufmc_subcarrier_curve(1.0, default_ufmc(), 0.0)};

    for (int trial = 0; trial < 10; ++trial) {
        const Band band{offset_df(rng) * delta_f, width_df(rng) * delta_f};
        for (const PsdCurve& curve : curves) {
            const double adaptive = integrate_psd(curve, band, 1e-9);
            const double oracle = test::riemann_midpoint(curve, band, 200'000);
            if (oracle > 1e-300) {
                CHECK(adaptive == doctest::Approx(oracle).epsilon(1e-6));
            } else {
                CHECK(adaptive <= 1e-300);
            }
        }
    }
}

TEST_CASE("integrable singularity exhausts the subdivision depth") {
    const PsdCurve nasty(
        [](double f) { return 1.0 / std::sqrt(std::abs(f - 0.377)); }, Band{0.0, 1.0}, 0.2);
    double partial = 0.0;
    try {
        integrate_psd(nasty, Band{0.0, 1.0}, 1e-9, 12);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& err) {
        partial = err.partial_estimate();
    }
    // The partial estimate is still close to the true integral
    // 2(sqrt(0.377) + sqrt(0.623)).
    const double truth = 2.0 * (std::sqrt(0.377) + std::sqrt(1.0 - 0.377));
    CHECK(std::abs(partial - truth) / truth < 0.05);
}
