#include <doctest.h>

#include <cmath>
#include <numeric>

#include "wavecoex/interference.hpp"

using namespace wavecoex;

namespace {
const double kDeltaF = 15e3;
const WaveformParams kOfdm{OfdmParams::from_spacing(kDeltaF)};
const WaveformParams kFbmc{FbmcParams::phydyas_default(kDeltaF)};
WaveformParams default_ufmc() {
    UfmcParams p;
    p.subcarrier_spacing_hz = kDeltaF;
    return WaveformParams{p};
}
}  // namespace

TEST_CASE("ofdm half-power symmetry at d = 1/2") {
    // Victim band [0, 100 df) starting at the subcarrier center captures half
    // the unit power up to the finite-band truncation.
    const double coeff = interference_coefficient(kOfdm, 0.5, 100.0 * kDeltaF, kDeltaF);
    CHECK(std::abs(coeff - 0.5) / 0.5 < 0.02);
}

TEST_CASE("fbmc ten spacings out is negligible") {
    const double coeff = interference_coefficient(kFbmc, 10.0, 20.0 * kDeltaF, kDeltaF);
    CHECK(coeff < 1e-6);
}

TEST_CASE("waveform ordering of coefficients") {
    const WaveformParams ufmc = default_ufmc();
    for (double d : {1.0, 2.0, 3.0, 5.0, 10.0}) {
        const double band = 12.0 * kDeltaF;
        const double c_ofdm = interference_coefficient(kOfdm, d, band, kDeltaF);
        const double c_fbmc = interference_coefficient(kFbmc, d, band, kDeltaF);
        const double c_ufmc = interference_coefficient(ufmc, d, band, kDeltaF);
        CHECK(c_fbmc <= c_ufmc);
        CHECK(c_ufmc <= c_ofdm);
    }
}

TEST_CASE("d_n below one half is rejected") {
    CHECK_THROWS_AS(interference_coefficient(kOfdm, 0.25, kDeltaF, kDeltaF), GeometryError);
}

TEST_CASE("single-subcarrier profile matches the coefficient op") {
    // Subcarrier 0, victim band three spacings above: d = 3.
    const Band victim{2.5 * kDeltaF, 12.0 * kDeltaF};
    const auto profile = interference_profile_serial(kOfdm, {0}, victim, kDeltaF);
    REQUIRE(profile.coefficients.size() == 1);
    CHECK(profile.spectral_distances[0] == doctest::Approx(3.0));
    const double direct = interference_coefficient(kOfdm, 3.0, 12.0 * kDeltaF, kDeltaF);
    CHECK(profile.coefficients[0] == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("aggregate interference is linear in power") {
    const Band victim{2.5 * kDeltaF, 12.0 * kDeltaF};
    const auto profile = interference_profile_serial(kOfdm, {0, -1}, victim, kDeltaF);
    const std::vector<double> ones{1.0, 1.0};
    const double base = profile.total_for(ones);
    CHECK(base == doctest::Approx(profile.coefficients[0] + profile.coefficients[1]));
    const std::vector<double> doubled{2.0, 2.0};
    CHECK(profile.total_for(doubled) == doctest::Approx(2.0 * base).epsilon(1e-15));
}

TEST_CASE("overlapping geometry is rejected") {
    const Band victim{2.5 * kDeltaF, 12.0 * kDeltaF};
    CHECK_THROWS_AS(interference_profile_serial(kOfdm, {5}, victim, kDeltaF), GeometryError);
}

TEST_CASE("translation consistency") {
    // Shifting the subcarrier and the band together leaves the coefficient
    // unchanged: compare subcarrier 0 against subcarrier 40 with the band
    // moved by the same 40 spacings.
    const Band near_band{4.5 * kDeltaF, 6.0 * kDeltaF};
    const Band far_band{44.5 * kDeltaF, 6.0 * kDeltaF};
    const auto at_zero = interference_profile_serial(kOfdm, {0}, near_band, kDeltaF);
    const auto at_forty = interference_profile_serial(kOfdm, {40}, far_band, kDeltaF);
    CHECK(std::abs(at_zero.coefficients[0] - at_forty.coefficients[0]) <
          1e-10 * at_zero.coefficients[0]);
}

TEST_CASE("parallel profile equals the serial reference") {
    const Band victim{599.5 * kDeltaF, 60.0 * kDeltaF};
    std::vector<int> own(48);
    std::iota(own.begin(), own.end(), 552);
    for (const WaveformParams& params : {kOfdm, kFbmc, default_ufmc()}) {
        const auto serial = interference_profile_serial(params, own, victim, kDeltaF, 12);
        const auto parallel = interference_profile(params, own, victim, kDeltaF, 12);
        REQUIRE(serial.coefficients.size() == parallel.coefficients.size());
        for (std::size_t i = 0; i < serial.coefficients.size(); ++i) {
            CHECK(parallel.coefficients[i] == serial.coefficients[i]);  // bit-identical
        }
    }
}

TEST_CASE("coefficients stay in [0, 1] and decay monotonically for ofdm/fbmc") {
    const Band victim{99.5 * kDeltaF, 120.0 * kDeltaF};
    std::vector<int> own(64);
    std::iota(own.begin(), own.end(), 36);
    for (const WaveformParams& params : {kOfdm, kFbmc}) {
        const auto profile = interference_profile(params, own, victim, kDeltaF, 12);
        for (std::size_t i = 0; i < profile.coefficients.size(); ++i) {
            CHECK(profile.coefficients[i] >= 0.0);
            CHECK(profile.coefficients[i] <= 1.0 + 1e-9);
        }
        // Own subcarriers ascend toward the band start, so coefficients rise
        // with the index; check the tail-monotone trend in distance order.
        for (std::size_t i = 1; i < profile.coefficients.size(); ++i) {
            CHECK(profile.spectral_distances[i] < profile.spectral_distances[i - 1]);
            CHECK(profile.coefficients[i] + 1e-9 >= profile.coefficients[i - 1]);
        }
    }
}

TEST_CASE("ufmc coefficients are converged at the default oversampling") {
    // The interpolated-spectrum error is bounded by the oversampling choice;
    // doubling it must not move the coefficients at the profile's accuracy.
    UfmcParams base;
    base.subcarrier_spacing_hz = kDeltaF;
    UfmcParams fine = base;
    fine.psd_oversampling = 32;
    for (double d : {1.0, 2.0, 5.0, 20.0}) {
        const double coarse =
            interference_coefficient(WaveformParams{base}, d, 12.0 * kDeltaF, kDeltaF);
        const double refined =
            interference_coefficient(WaveformParams{fine}, d, 12.0 * kDeltaF, kDeltaF);
        CHECK(coarse == doctest::Approx(refined).epsilon(1e-3));
    }
}

TEST_CASE("fbmc density does not depend on the fft size") {
    // The Hz-domain response only involves K and the spacing; the fft size
    // enters and cancels through the frequency normalization.
    FbmcParams small = FbmcParams::phydyas_default(kDeltaF, 256);
    FbmcParams large = FbmcParams::phydyas_default(kDeltaF, 4096);
    for (int i = 0; i <= 100; ++i) {
        const double f = (-4.0 + 0.08 * i) * kDeltaF;
        CHECK(psd_fbmc_subcarrier(f, 1.0, small) == psd_fbmc_subcarrier(f, 1.0, large));
    }
}

TEST_CASE("600-subcarrier fragment against the 9 MHz neighbor band") {
    // System A's full fragment (subcarriers 0..599) interfering into B's
    // band; coefficients must rise toward the boundary and span the dynamic
    // range that makes power redistribution possible.
    const Band victim{599.5 * kDeltaF, 600.0 * kDeltaF};
    const IndexRange range{0, 600};
    const auto profile =
        global_profile_cache().get_or_compute(kOfdm, range, victim, kDeltaF, 12);
    REQUIRE(profile->coefficients.size() == 600);
    for (std::size_t i = 1; i < 600; ++i) {
        CHECK(profile->coefficients[i] + 1e-9 >= profile->coefficients[i - 1]);
    }
    CHECK(profile->spectral_distances.front() == doctest::Approx(600.0));
    CHECK(profile->spectral_distances.back() == doctest::Approx(1.0));
    CHECK(profile->coefficients.back() > 0.05);   // nearest subcarrier spills hard
    CHECK(profile->coefficients.front() < 1e-3);  // far subcarriers barely at all
}

TEST_CASE("profile cache returns the identical object") {
    ProfileCache cache;
    const Band victim{29.5 * kDeltaF, 12.0 * kDeltaF};
    const IndexRange range{0, 8};
    const auto first = cache.get_or_compute(kOfdm, range, victim, kDeltaF, 12);
    const auto second = cache.get_or_compute(kOfdm, range, victim, kDeltaF, 12);
    CHECK(first.get() == second.get());
    const auto other = cache.get_or_compute(kFbmc, range, victim, kDeltaF, 12);
    CHECK(other.get() != first.get());
}

TEST_CASE("concurrent cache lookups agree regardless of interleaving") {
    ProfileCache cache;
    const Band victim{19.5 * kDeltaF, 24.0 * kDeltaF};
    const IndexRange range{0, 12};
    std::vector<std::shared_ptr<const InterferenceProfile>> seen(8);
#pragma omp parallel for
    for (int i = 0; i < 8; ++i) {
        seen[static_cast<std::size_t>(i)] =
            cache.get_or_compute(kOfdm, range, victim, kDeltaF, 12);
    }
    const auto reference = interference_profile_serial(kOfdm, range.indices(), victim, kDeltaF, 12);
    for (const auto& profile : seen) {
        REQUIRE(profile != nullptr);
        for (std::size_t i = 0; i < reference.coefficients.size(); ++i) {
            CHECK(profile->coefficients[i] == reference.coefficients[i]);
        }
    }
}
