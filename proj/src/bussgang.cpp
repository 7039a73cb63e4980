#include "lowrf/bussgang.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lowrf {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void ChannelMatrix::validate() const {
    if (entries.n_rows < 1 || entries.n_cols < 1)
        throw std::invalid_argument("ChannelMatrix: need N >= 1 and K >= 1");
}

void MimoScenario::validate() const {
    channel.validate();
    if (!(snr > 0.0)) throw std::invalid_argument("MimoScenario: snr must be positive");
}

arma::cx_mat arcsine_cov(const arma::cx_mat& cov_y) {
    const arma::uword n = cov_y.n_rows;
    if (cov_y.n_cols != n) throw std::invalid_argument("arcsine_cov: matrix must be square");
    if (arma::norm(cov_y - cov_y.t(), "inf") > 1e-10 * arma::norm(cov_y, "inf"))
        throw std::invalid_argument("arcsine_cov: matrix must be Hermitian");
    const arma::vec d = arma::real(cov_y.diag());
    if (d.min() <= 0.0)
        throw std::invalid_argument("arcsine_cov: diagonal must be positive");

    arma::cx_mat out(n, n);
    for (arma::uword j = 0; j < n; ++j) {
        for (arma::uword i = 0; i < n; ++i) {
            if (i == j) {
                out(i, j) = 1.0;  // self-correlation, exact by construction
                continue;
            }
            // one square root of the variance product; two separate roots
            // lose an ulp that the arcsine amplifies near full correlation
            const double scale = 1.0 / std::sqrt(d(i) * d(j));
            double re = cov_y(i, j).real() * scale;
            double im = cov_y(i, j).imag() * scale;
            if (std::abs(re) > 1.0 + 1e-12 || std::abs(im) > 1.0 + 1e-12)
                throw std::invalid_argument("arcsine_cov: normalized correlation exceeds 1");
            re = std::clamp(re, -1.0, 1.0);
            im = std::clamp(im, -1.0, 1.0);
            out(i, j) = (2.0 / kPi) * std::complex<double>(std::asin(re), std::asin(im));
        }
    }
    return out;
}

BussgangModel build_bussgang_model(const MimoScenario& sc) {
    sc.validate();
    const arma::cx_mat& h = sc.channel.entries;
    const double rho = sc.snr;

    arma::cx_mat cov_y = rho * (h * h.t());
    cov_y.diag() += 1.0;

    BussgangModel m;
    m.bussgang_gain_diag = std::sqrt(2.0 / kPi) / arma::sqrt(arma::real(cov_y.diag()));
    m.effective_channel = h;
    m.effective_channel.each_col() %= arma::conv_to<arma::cx_vec>::from(m.bussgang_gain_diag);
    m.output_cov = arcsine_cov(cov_y);
    m.effective_noise_cov =
        m.output_cov - rho * (m.effective_channel * m.effective_channel.t());
    // enforce exact Hermitian symmetry lost to rounding in the outer product
    m.effective_noise_cov = 0.5 * (m.effective_noise_cov + m.effective_noise_cov.t());
    return m;
}

namespace {

// Hermitian solve A x = b with one diagonal-jitter retry; throws on failure.
arma::cx_vec hermitian_solve(arma::cx_mat a, const arma::cx_vec& b) {
    arma::cx_vec x;
    if (arma::solve(x, a, b, arma::solve_opts::likely_sympd + arma::solve_opts::no_approx))
        return x;
    const double jitter = 1e-12 * arma::sum(arma::real(a.diag())) / static_cast<double>(a.n_rows);
    a.diag() += jitter;
    if (arma::solve(x, a, b, arma::solve_opts::likely_sympd + arma::solve_opts::no_approx))
        return x;
    throw std::runtime_error("exact_sindr: singular interference-plus-noise covariance");
}

}  // namespace

double exact_sindr(const BussgangModel& model, const MimoScenario& sc, arma::uword user) {
    sc.validate();
    if (user >= sc.channel.num_users())
        throw std::invalid_argument("exact_sindr: user index out of range");
    const double rho = sc.snr;
    const arma::cx_vec h = model.effective_channel.col(user);
    arma::cx_mat a = model.output_cov - rho * (h * h.t());
    a = 0.5 * (a + a.t());
    const arma::cx_vec x = hermitian_solve(std::move(a), h);
    return rho * std::real(arma::cdot(h, x));
}

double exact_sindr_mil(const BussgangModel& model, const MimoScenario& sc, arma::uword user) {
    sc.validate();
    if (user >= sc.channel.num_users())
        throw std::invalid_argument("exact_sindr_mil: user index out of range");
    const double rho = sc.snr;
    const arma::cx_vec h = model.effective_channel.col(user);
    const arma::cx_vec x = hermitian_solve(model.output_cov, h);
    const double c_eps = rho - rho * rho * std::real(arma::cdot(h, x));
    return rho / c_eps - 1.0;
}

double rate_lower_bound(double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("rate_lower_bound: gamma must be >= 0");
    return std::log2(1.0 + gamma);
}

SindrReport sindr_report(const BussgangModel& model, const MimoScenario& sc) {
    sc.validate();
    const arma::uword k = sc.channel.num_users();
    SindrReport report;
    report.gamma.set_size(k);
    report.rate.set_size(k);
    for (arma::uword u = 0; u < k; ++u) {
        report.gamma(u) = exact_sindr(model, sc, u);
        report.rate(u) = rate_lower_bound(report.gamma(u));
    }
    return report;
}

}  // namespace lowrf
