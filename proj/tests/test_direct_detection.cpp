// Direct-detection rate model tests: PSD landmarks, spectral efficiency
// against an independent quadrature route, bound compliance, and the
// vanishing-dissipation convergence schedule.

#include "lowrf/direct_detection.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace lowrf;

namespace {

// Reference physics: 1 GHz band, -174.2 dBm/Hz noise plus 3 dB noise
// figure, 1 uW radiated carrier, 0 dB per-antenna SNR.
DirectDetectionScenario reference_scenario() {
    DirectDetectionScenario sc;
    sc.bandwidth_hz = 1e9;
    sc.noise_density_w_per_hz = std::pow(10.0, -174.2 / 10.0) * 1e-3 * std::pow(10.0, 0.3);
    sc.signal_power_w = sc.bandwidth_hz * sc.noise_density_w_per_hz;
    sc.lo_power_w = 1e-6;
    sc.lo_capture = 1e-4;
    sc.num_antennas = 100;
    sc.filter = {sc.bandwidth_hz, 0.05};
    return sc;
}

}  // namespace

TEST_CASE("received psd landmarks", "[dd]") {
    const DirectDetectionScenario sc = reference_scenario();
    const double b = sc.bandwidth_hz;

    const PsdSample outside = received_psd(0.51 * b, sc);
    CHECK(outside.continuous_w_per_hz == 0.0);
    CHECK(outside.tone_power_w == 0.0);

    const PsdSample dc = received_psd(0.0, sc);
    const double expected_dc =
        (sc.signal_power_w / b + sc.noise_density_w_per_hz) / (1.0 + 0.05 * 0.05);
    CHECK(dc.continuous_w_per_hz == Catch::Approx(expected_dc).epsilon(1e-12));
    CHECK(dc.tone_power_w == 0.0);

    const PsdSample edge = received_psd(0.5 * b, sc);
    CHECK(edge.tone_power_w ==
          Catch::Approx(sc.lo_capture * sc.lo_power_w / (0.05 * 0.05)).epsilon(1e-12));
    CHECK(edge.continuous_w_per_hz > 0.0);

    // the tone sits only at +B/2; the mirror frequency carries none
    CHECK(received_psd(-0.5 * b, sc).tone_power_w == 0.0);
}

TEST_CASE("scenario validation", "[dd]") {
    DirectDetectionScenario sc = reference_scenario();
    sc.lo_capture = 1.5;
    CHECK_THROWS_AS(upper_bound_rate(sc), std::invalid_argument);
    sc = reference_scenario();
    sc.filter.bandwidth_hz = 2e9;
    CHECK_THROWS_AS(upper_bound_rate(sc), std::invalid_argument);
    sc = reference_scenario();
    sc.num_antennas = 0;
    CHECK_THROWS_AS(upper_bound_rate(sc), std::invalid_argument);
}

TEST_CASE("spectral efficiency density at the band edge matches the quadrature route",
          "[dd]") {
    // scenario with N0 = 10^-17.12 W/Hz taken as a literal parameter
    DirectDetectionScenario sc;
    sc.bandwidth_hz = 1e9;
    sc.noise_density_w_per_hz = std::pow(10.0, -17.12);
    sc.signal_power_w = sc.bandwidth_hz * sc.noise_density_w_per_hz;
    sc.lo_power_w = 1e-6;
    sc.lo_capture = 1e-4;
    sc.num_antennas = 100;
    sc.filter = {sc.bandwidth_hz, 0.05};

    // frozen from the independent adaptive-quadrature evaluation of the
    // distortion convolution
    CHECK(spectral_efficiency_density(0.5 * sc.bandwidth_hz, sc) ==
          Catch::Approx(3.3464219924286707).epsilon(1e-9));

    // recompute through the quadrature convolution route, in-test
    const double b = sc.bandwidth_hz;
    const double f = 0.5 * b;
    const double conv = g2_self_convolution(f, sc.filter, ConvMethod::quadrature);
    const double edge_gain2 = 1.0 / (4.0 * f * f / (b * b) + 0.05 * 0.05);
    const double total = sc.noise_density_w_per_hz + sc.signal_power_w / b;
    const double dist =
        0.05 * 0.05 * conv / (sc.lo_capture * sc.lo_power_w * edge_gain2) * total * total;
    const double expected = std::log2(
        1.0 + sc.num_antennas * (sc.signal_power_w / b) / (sc.noise_density_w_per_hz + dist));
    CHECK(spectral_efficiency_density(f, sc) == Catch::Approx(expected).epsilon(1e-9));
}

TEST_CASE("spectral efficiency domain and bounds", "[dd]") {
    const DirectDetectionScenario sc = reference_scenario();
    const double b = sc.bandwidth_hz;
    CHECK_THROWS_AS(spectral_efficiency_density(0.0, sc), std::invalid_argument);
    CHECK_THROWS_AS(spectral_efficiency_density(-0.1 * b, sc), std::invalid_argument);
    CHECK_THROWS_AS(spectral_efficiency_density(1.01 * b, sc), std::invalid_argument);

    const double ceiling = std::log2(
        1.0 + sc.num_antennas * sc.signal_power_w / (b * sc.noise_density_w_per_hz));
    for (int i = 1; i <= 200; ++i) {
        const double f = b * i / 200.0;
        CHECK(spectral_efficiency_density(f, sc) <= ceiling + 1e-12);
    }
}

TEST_CASE("spectral efficiency approaches the ceiling as dissipation vanishes", "[dd]") {
    DirectDetectionScenario sc = reference_scenario();
    const double b = sc.bandwidth_hz;
    const double ceiling = std::log2(
        1.0 + sc.num_antennas * sc.signal_power_w / (b * sc.noise_density_w_per_hz));
    for (double f : {0.05 * b, 0.4 * b, 0.97 * b}) {
        sc.filter.dissipation = 1e-7;
        CHECK(spectral_efficiency_density(f, sc) == Catch::Approx(ceiling).epsilon(1e-6));
    }
}

TEST_CASE("spectral efficiency is nonincreasing in the dissipation factor", "[dd]") {
    DirectDetectionScenario sc = reference_scenario();
    const double b = sc.bandwidth_hz;
    for (double f : {0.01 * b, 0.25 * b, 0.5 * b, 0.99 * b}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double sigma : {0.005, 0.02, 0.05, 0.1, 0.3}) {
            sc.filter.dissipation = sigma;
            const double c = spectral_efficiency_density(f, sc);
            CHECK(c <= prev + 1e-12);
            prev = c;
        }
    }
}

TEST_CASE("upper bound closed form", "[dd]") {
    DirectDetectionScenario sc = reference_scenario();
    sc.num_antennas = 1;  // N rho = B N0 -> exactly one bit of spectral efficiency
    CHECK(upper_bound_rate(sc) == Catch::Approx(sc.bandwidth_hz).epsilon(1e-12));

    sc.num_antennas = 2000;
    CHECK(upper_bound_rate(sc) == Catch::Approx(10966505451.90574).epsilon(1e-12));

    // concavity: doubling N helps by less than B bits/s once N rho > B N0
    DirectDetectionScenario sc2 = sc;
    sc2.num_antennas = 4000;
    const double gain = upper_bound_rate(sc2) - upper_bound_rate(sc);
    CHECK(gain > 0.0);
    CHECK(gain < sc.bandwidth_hz);
}

TEST_CASE("achievable rate respects the data-processing bound", "[dd]") {
    DirectDetectionScenario sc = reference_scenario();
    for (int n : {10, 100, 2000}) {
        sc.num_antennas = n;
        sc.lo_capture = 1.0 / (static_cast<double>(n) * n);
        CHECK(achievable_rate_dd(sc) <= upper_bound_rate(sc));
    }
}

TEST_CASE("rate at two thousand antennas sits near the curve maximum", "[dd][slow]") {
    const DirectDetectionScenario sc = reference_scenario();
    std::vector<int> grid;
    for (int n = 16; n <= 65536; n *= 2) grid.push_back(n);
    const RateCurve curve = rate_vs_antennas_sweep(sc, grid);
    double peak = 0.0;
    for (const auto& p : curve) peak = std::max(peak, p.rate_bps);

    DirectDetectionScenario at2000 = sc;
    at2000.num_antennas = 2000;
    at2000.lo_capture = 1.0 / (2000.0 * 2000.0);
    CHECK(achievable_rate_dd(at2000) > 0.95 * peak);
}

TEST_CASE("rate converges to the bound along a sigma = eps^1.5 schedule", "[dd][slow]") {
    DirectDetectionScenario sc = reference_scenario();
    const double bound = upper_bound_rate(sc);
    double prev_ratio = 0.0;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5}) {
        sc.lo_capture = eps;
        sc.filter.dissipation = std::pow(eps, 1.5);
        const double ratio = achievable_rate_dd(sc, 1e-10) / bound;
        CHECK(ratio > prev_ratio);
        prev_ratio = ratio;
    }
    CHECK(prev_ratio > 0.99);
}

TEST_CASE("rate is nondecreasing in capture fraction and carrier power", "[dd]") {
    DirectDetectionScenario sc = reference_scenario();
    double prev = 0.0;
    for (double eps : {1e-6, 1e-5, 1e-4, 1e-3}) {
        sc.lo_capture = eps;
        const double r = achievable_rate_dd(sc);
        CHECK(r >= prev);
        prev = r;
    }
    sc = reference_scenario();
    prev = 0.0;
    for (double plo : {1e-8, 1e-7, 1e-6, 1e-5}) {
        sc.lo_power_w = plo;
        const double r = achievable_rate_dd(sc);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("antenna sweep applies the inverse-square capture rule", "[dd]") {
    const DirectDetectionScenario sc = reference_scenario();

    const int single[] = {100};
    const RateCurve one = rate_vs_antennas_sweep(sc, single);
    REQUIRE(one.size() == 1);
    DirectDetectionScenario manual = sc;
    manual.num_antennas = 100;
    manual.lo_capture = 1e-4;
    CHECK(one[0].rate_bps == Catch::Approx(achievable_rate_dd(manual)).epsilon(1e-10));
    CHECK(one[0].upper_bound_bps == Catch::Approx(upper_bound_rate(manual)).epsilon(1e-12));

    const int grid[] = {16, 64, 256, 1024};
    const RateCurve curve = rate_vs_antennas_sweep(sc, grid);
    REQUIRE(curve.size() == 4);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve[i].num_antennas == grid[i]);
        CHECK(curve[i].rate_bps <= curve[i].upper_bound_bps);
    }

    const int bad[] = {16, 16};
    CHECK_THROWS_AS(rate_vs_antennas_sweep(sc, bad), std::invalid_argument);
    CHECK_THROWS_AS(rate_vs_antennas_sweep(sc, std::span<const int>{}), std::invalid_argument);
}
