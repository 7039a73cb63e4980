#include "lowrf/direct_detection.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace lowrf {

void DirectDetectionScenario::validate() const {
    filter.validate();
    if (num_antennas < 1)
        throw std::invalid_argument("DirectDetectionScenario: need at least one antenna");
    if (!(signal_power_w > 0.0) || !(noise_density_w_per_hz > 0.0) || !(lo_power_w > 0.0))
        throw std::invalid_argument("DirectDetectionScenario: powers and densities must be positive");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("DirectDetectionScenario: bandwidth must be positive");
    if (!(lo_capture > 0.0 && lo_capture < 1.0))
        throw std::invalid_argument("DirectDetectionScenario: lo_capture must lie in (0, 1)");
    if (filter.bandwidth_hz != bandwidth_hz)
        throw std::invalid_argument("DirectDetectionScenario: filter bandwidth mismatch");
}

PsdSample received_psd(double f_hz, const DirectDetectionScenario& sc) {
    sc.validate();
    const double B = sc.bandwidth_hz;
    PsdSample out;
    if (std::abs(f_hz) > 0.5 * B) return out;
    const double g2 = baseband_gain2(f_hz, sc.filter);
    out.continuous_w_per_hz = g2 * (sc.signal_power_w / B + sc.noise_density_w_per_hz);
    if (f_hz == 0.5 * B) out.tone_power_w = sc.lo_capture * sc.lo_power_w * g2;
    return out;
}

namespace {

// Distortion-to-tone spectral weight of the energy detector at f in (0, B]:
// sigma^2 * (|G|^2 self-convolution)(f) / (eps * P_LO * |G(B/2 - |f|)|^2),
// where |G(B/2 - |f|)|^2 = 1/(4 f^2/B^2 + sigma^2).
double distortion_weight(double f_hz, const DirectDetectionScenario& sc) {
    const double B = sc.bandwidth_hz;
    const double sigma = sc.filter.dissipation;
    // The closed form is indeterminate below B*1e-6; the integrand is only
    // ever evaluated at |f| >= B*1e-6 (DC exclusion), so use it throughout.
    const double conv = g2_self_convolution(f_hz, sc.filter, ConvMethod::closed_form);
    const double edge_gain2 = 1.0 / (4.0 * f_hz * f_hz / (B * B) + sigma * sigma);
    return sigma * sigma * conv / (sc.lo_capture * sc.lo_power_w * edge_gain2);
}

}  // namespace

double spectral_efficiency_density(double f_hz, const DirectDetectionScenario& sc) {
    sc.validate();
    const double B = sc.bandwidth_hz;
    if (!(f_hz > 0.0) || f_hz > B)
        throw std::invalid_argument("spectral_efficiency_density: f must lie in (0, B]");
    const double n0 = sc.noise_density_w_per_hz;
    const double sig_density = sc.signal_power_w / B;
    const double total = n0 + sig_density;
    const double noise = n0 + distortion_weight(f_hz, sc) * total * total;
    return std::log2(1.0 + sc.num_antennas * sig_density / noise);
}

double upper_bound_rate(const DirectDetectionScenario& sc) {
    sc.validate();
    const double snr = sc.num_antennas * sc.signal_power_w /
                       (sc.bandwidth_hz * sc.noise_density_w_per_hz);
    return sc.bandwidth_hz * std::log2(1.0 + snr);
}

double achievable_rate_dd(const DirectDetectionScenario& sc, double rel_tol) {
    sc.validate();
    const double B = sc.bandwidth_hz;
    const double f_min = 1e-6 * B;  // DC line removed after detection
    const double width = B - f_min;
    // Unit-interval substitution keeps the adaptive error control meaningful
    // for absolute frequency scales (see conv_quadrature in filter.cpp).
    auto integrand = [&](double t) {
        return width * spectral_efficiency_density(f_min + width * t, sc);
    };
    double err = 0.0;
    const double rate = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, 0.0, 1.0, 20, rel_tol, &err);
    if (!(std::isfinite(rate)) || (rate > 0.0 && err > 10.0 * rel_tol * rate))
        throw std::runtime_error("achievable_rate_dd: integration tolerance not met");
    return rate;
}

RateCurve rate_vs_antennas_sweep(const DirectDetectionScenario& sc_template,
                                 std::span<const int> n_list) {
    if (n_list.empty())
        throw std::invalid_argument("rate_vs_antennas_sweep: empty antenna list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("rate_vs_antennas_sweep: N list must be strictly increasing");
    RateCurve curve;
    curve.reserve(n_list.size());
    for (int n : n_list) {
        DirectDetectionScenario sc = sc_template;
        sc.num_antennas = n;
        sc.lo_capture = 1.0 / (static_cast<double>(n) * n);
        try {
            curve.push_back({n, achievable_rate_dd(sc), upper_bound_rate(sc)});
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("rate sweep failed at N=" + std::to_string(n) + ": " + e.what());
        }
    }
    return curve;
}

}  // namespace lowrf
