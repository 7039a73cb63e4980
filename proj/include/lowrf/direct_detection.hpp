// Achievable-rate analysis of a wirelessly synchronized direct-detection
// antenna array: each element square-law detects the sum of the information
// signal and a weak broadcast carrier tone, and the band-edge filter
// resonance lifts the tone above the signal-signal intermodulation floor.

#pragma once

#include "lowrf/filter.hpp"

#include <span>
#include <vector>

namespace lowrf {

// Physical operating point. All quantities in SI units (W, Hz, W/Hz);
// dB/dBm conversions happen at the CLI boundary and the noise figure is
// already folded into noise_density_w_per_hz.
struct DirectDetectionScenario {
    int num_antennas = 0;                // N, MRC with ||h||^2 = N
    double signal_power_w = 0.0;         // rho: per-antenna received information power
    double bandwidth_hz = 0.0;           // B (two-sided)
    double noise_density_w_per_hz = 0.0; // N0 including noise figure
    double lo_power_w = 0.0;             // P_LO radiated by the dummy antenna
    double lo_capture = 0.0;             // epsilon: tone power fraction captured per antenna
    FilterSpec filter;

    void validate() const;  // throws std::invalid_argument
};

// Filtered PSD sample. The carrier tone at f = +B/2 is a Dirac line and is
// reported as a separate power, not folded into the continuous density.
struct PsdSample {
    double continuous_w_per_hz = 0.0;
    double tone_power_w = 0.0;  // nonzero only at exactly f = +B/2
};

PsdSample received_psd(double f_hz, const DirectDetectionScenario& sc);

// Per-frequency spectral efficiency of the energy-detected and MRC-combined
// signal, distortion treated as Gaussian noise. Defined on (0, B]; DC is
// removed by the post-detection filter and rejected here.
double spectral_efficiency_density(double f_hz, const DirectDetectionScenario& sc);

// Ideal coherent Shannon limit B*log2(1 + N*rho/(B*N0)) in bits/s.
double upper_bound_rate(const DirectDetectionScenario& sc);

// Rate lower bound in bits/s: adaptive integration of the spectral
// efficiency over (B*1e-6, B]. Throws std::runtime_error if the requested
// relative tolerance cannot be met.
double achievable_rate_dd(const DirectDetectionScenario& sc, double rel_tol = 1e-8);

struct RatePoint {
    int num_antennas = 0;
    double rate_bps = 0.0;
    double upper_bound_bps = 0.0;
};
using RateCurve = std::vector<RatePoint>;

// Sweeps the antenna count with the free-space capture rule eps(N) = N^-2.
// n_list must be nonempty and strictly increasing. Integration failures are
// rethrown with the offending N attached.
RateCurve rate_vs_antennas_sweep(const DirectDetectionScenario& sc_template,
                                 std::span<const int> n_list);

}  // namespace lowrf
