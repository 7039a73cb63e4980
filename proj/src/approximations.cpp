#include "lowrf/approximations.hpp"

#include "lowrf/bussgang.hpp"

#include <cmath>
#include <stdexcept>

namespace lowrf {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void ApproxInputs::validate() const {
    if (num_antennas < 1 || num_streams < 1)
        throw std::invalid_argument("ApproxInputs: need N >= 1 and K >= 1");
    if (!(snr > 0.0)) throw std::invalid_argument("ApproxInputs: snr must be positive");
}

double first_order_sindr(const ApproxInputs& in) {
    in.validate();
    const double krho = in.num_streams * in.snr;
    return in.num_antennas * in.snr / (kPi / 2.0 + (kPi / 2.0 - 1.0) * krho);
}

double third_order_sindr(const ApproxInputs& in) {
    in.validate();
    const double n = in.num_antennas;
    const double k = in.num_streams;
    const double krho = k * in.snr;
    const double a = in.snr / (1.0 + krho);          // effective post-scaling SNR
    const double b = kPi / 2.0 - krho / (1.0 + krho);
    const double inv_a3 = 1.0 / (a * a * a);         // ((1 + K rho)/rho)^3
    const double correction = 1.0 - 1.5 * n * k / (6.0 * b * inv_a3 + 1.5 * n * k);
    return n * a / b * correction;
}

double saturation_limit(int num_streams, double snr) {
    if (num_streams < 1 || !(snr > 0.0))
        throw std::invalid_argument("saturation_limit: need K >= 1 and rho > 0");
    const double q = (1.0 + num_streams * snr) / snr;
    return 4.0 / num_streams * q * q;
}

double linear_dsp_threshold(int num_streams, double gamma) {
    if (num_streams < 1 || !(gamma >= 0.0))
        throw std::invalid_argument("linear_dsp_threshold: need K >= 1 and gamma >= 0");
    return kPi / 4.0 * std::sqrt(num_streams * gamma * gamma * gamma);
}

double linear_dsp_threshold_rate(int num_streams, double rate_bits) {
    if (!(rate_bits >= 0.0))
        throw std::invalid_argument("linear_dsp_threshold_rate: need R >= 0");
    return linear_dsp_threshold(num_streams, std::exp2(rate_bits) - 1.0);
}

void fill_approximations(SindrReport& report, const ApproxInputs& in) {
    report.first_order = first_order_sindr(in);
    report.third_order = third_order_sindr(in);
    report.saturation = saturation_limit(in.num_streams, in.snr);
}

}  // namespace lowrf
