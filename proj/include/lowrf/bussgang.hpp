// Exact analytic chain for the one-bit quantized uplink: arcsine-law output
// covariance, linearized (Bussgang) effective channel and noise, and the
// per-user SINDR behind the achievable-rate lower bound.

#pragma once

#include <armadillo>

namespace lowrf {

// Complex N x K user channel. Rows index receive antennas, columns users.
struct ChannelMatrix {
    arma::cx_mat entries;

    arma::uword num_antennas() const { return entries.n_rows; }
    arma::uword num_users() const { return entries.n_cols; }
    void validate() const;  // N >= 1, K >= 1
};

// Uplink operating point: per-user transmit power rho with the per-antenna
// noise normalized to unit variance, so rho is the per-antenna SNR.
struct MimoScenario {
    ChannelMatrix channel;
    double snr = 0.0;  // rho > 0

    void validate() const;
};

// Linearized model of r = Q(y), y = H x + z:  r = H' x + z'.
struct BussgangModel {
    arma::cx_mat effective_channel;    // H' = sqrt(2/pi) diag(C_y)^{-1/2} H
    arma::cx_mat output_cov;           // C_r, Hermitian, unit diagonal
    arma::cx_mat effective_noise_cov;  // C_z' = C_r - rho H' H'^H
    arma::vec bussgang_gain_diag;      // sqrt(2/pi) diag(C_y)^{-1/2}
};

// Output covariance of the per-real-dimension sign quantizer (scaled to
// unit modulus) for a Gaussian input with covariance cov_y:
//   C_r = (2/pi) arcsin(diag^{-1/2} C_y diag^{-1/2}),
// the arcsine applied element-wise to the real and imaginary parts.
// Requires cov_y Hermitian with positive diagonal; normalized correlation
// components must not exceed 1 by more than 1e-12 (clamped within that).
arma::cx_mat arcsine_cov(const arma::cx_mat& cov_y);

// Builds the full linearized model from C_y = rho H H^H + I.
BussgangModel build_bussgang_model(const MimoScenario& sc);

// Exact per-user SINDR: rho h'^H (C_r - rho h' h'^H)^{-1} h', via a
// Hermitian solve with one jitter retry if the system is ill-conditioned.
double exact_sindr(const BussgangModel& model, const MimoScenario& sc, arma::uword user);

// Same quantity through the matrix-inversion-lemma route
// rho/c_eps - 1, c_eps = rho - rho^2 h'^H C_r^{-1} h'. The two forms are
// algebraically identical; keeping both makes the identity checkable.
double exact_sindr_mil(const BussgangModel& model, const MimoScenario& sc, arma::uword user);

// Rate lower bound per channel use, log2(1 + gamma).
double rate_lower_bound(double gamma);

// Per-user exact results plus slots for the closed-form approximations
// (filled by fill_approximations in approximations.hpp).
struct SindrReport {
    arma::vec gamma;  // exact SINDR per user
    arma::vec rate;   // log2(1 + gamma) per user
    double first_order = 0.0;
    double third_order = 0.0;
    double saturation = 0.0;
};

SindrReport sindr_report(const BussgangModel& model, const MimoScenario& sc);

}  // namespace lowrf
