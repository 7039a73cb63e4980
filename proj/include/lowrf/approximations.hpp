// Closed-form SINDR approximations for the one-bit uplink in the large-array
// regime: low-SNR first-order law, third-order correction with its finite
// saturation ceiling, and the antenna-count threshold below which linear
// processing stays near-optimal.

#pragma once

namespace lowrf {

struct SindrReport;

struct ApproxInputs {
    int num_antennas = 0;  // N
    int num_streams = 0;   // K users or parallel streams
    double snr = 0.0;      // rho, per-stream per-antenna SNR

    void validate() const;  // N >= 1, K >= 1, rho > 0
};

// N rho / (pi/2 + (pi/2 - 1) K rho): linear in N, low-SNR loss 2/pi.
double first_order_sindr(const ApproxInputs& in);

// First-order value times a correction for the coherently combining cubic
// distortion; strictly below first_order_sindr and increasing in N toward
// saturation_limit.
double third_order_sindr(const ApproxInputs& in);

// Large-N ceiling (4/K) ((1 + K rho)/rho)^2 of the linear processing SINDR.
double saturation_limit(int num_streams, double snr);

// Antenna count scale (pi/4) sqrt(K gamma^3) that N must greatly exceed for
// linear processing to stay near-optimal at target SINDR gamma.
double linear_dsp_threshold(int num_streams, double gamma);

// Same threshold for a target per-stream rate R in bits (gamma = 2^R - 1).
double linear_dsp_threshold_rate(int num_streams, double rate_bits);

// Fills the approximation slots of a per-user report.
void fill_approximations(SindrReport& report, const ApproxInputs& in);

}  // namespace lowrf
