// Brute-force simulation oracle for the one-bit uplink: draws y = H x + z,
// sign-quantizes, and measures output moments, distortion correlation, and
// LMMSE error against the analytic model. Statistics carry batch-means
// standard errors and fixed 3/4-sigma gates.

#pragma once

#include "lowrf/bussgang.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lowrf {

struct McConfig {
    MimoScenario scenario;
    std::uint64_t num_trials = 0;
    std::uint64_t master_seed = 0;

    void validate() const;  // num_trials >= 1, valid scenario
};

struct McCheck {
    std::string name;
    double analytic = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    double gate_sigmas = 0.0;
    bool pass = false;
};

struct McReport {
    // sample moments (batch-mean averages)
    arma::cx_mat output_cov;        // E[r r^H]
    arma::cx_mat cross_cov;         // E[r y^H]
    arma::cx_mat input_error_corr;  // E[x e^H], K x N, e = r - D_analytic y
    arma::vec lmmse_error_var;      // per user
    arma::vec sindr;                // per-user gamma-hat = rho/c-hat - 1
    arma::vec sindr_std_error;

    // per-real-dimension standard errors of the matrix moments
    arma::mat output_cov_se_re, output_cov_se_im;
    arma::mat cross_cov_se_re, cross_cov_se_im;
    arma::mat input_error_se_re, input_error_se_im;

    std::vector<McCheck> checks;
    bool conclusive = false;  // false when too few trials for batch means
    std::uint64_t num_trials = 0;
    std::uint64_t master_seed = 0;

    bool all_pass() const;
};

// One-bit quantization (1/sqrt(2)) (sign(Re y) + j sign(Im y)), sign(0) = +1.
arma::cx_vec quantize_one_bit(const arma::cx_vec& y);

// Runs the full trial loop and evaluates every statistical gate:
// arcsine-law output covariance (3 sigma entrywise), Bussgang input/output
// cross-covariance (3 sigma), E[x e^H] = 0 (4 sigma), and per-user SINDR
// against the exact analytic value (3 sigma).
McReport run_trials(const McConfig& cfg);

// Empirical SINDR of user k from a fresh run (convenience wrapper).
double empirical_sindr(const McConfig& cfg, arma::uword user);

}  // namespace lowrf
