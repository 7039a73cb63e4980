#include "lowrf/filter.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace lowrf {

void FilterSpec::validate() const {
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("FilterSpec: bandwidth must be positive");
    if (!(dissipation > 0.0))
        throw std::invalid_argument("FilterSpec: dissipation must be positive");
}

std::complex<double> baseband_transfer(double f_hz, const FilterSpec& spec) {
    spec.validate();
    const double B = spec.bandwidth_hz;
    if (std::abs(f_hz) > 0.5 * B) return {0.0, 0.0};
    return 1.0 / std::complex<double>(spec.dissipation, 2.0 * f_hz / B - 1.0);
}

double baseband_gain2(double f_hz, const FilterSpec& spec) {
    spec.validate();
    const double B = spec.bandwidth_hz;
    if (std::abs(f_hz) > 0.5 * B) return 0.0;
    const double u = 2.0 * f_hz / B - 1.0;
    return 1.0 / (u * u + spec.dissipation * spec.dissipation);
}

double arctan_pi(double t) {
    const double a = std::atan(t);
    return a >= 0.0 ? a : a + 3.14159265358979323846;
}

namespace {

// Analytic self-convolution for fbar = 2|f/B| in (0, 2]. The first term's
// arctangent argument passes through +-infinity where its denominator
// changes sign; arctan_pi keeps the expression continuous there.
double conv_closed_form(double fbar, double B, double sigma) {
    const double s2 = sigma * sigma;
    const double num = 2.0 * (2.0 - fbar) * (s2 + fbar);
    const double den = sigma * (s2 - 4.0 + fbar * (6.0 - fbar));
    const double t1 = B * arctan_pi(num / den) / (2.0 * sigma * (4.0 * s2 + fbar * fbar));
    const double log_arg = s2 * (4.0 + s2) /
                           ((s2 + (fbar - 2.0) * (fbar - 2.0)) * (s2 + fbar * fbar));
    const double t2 = B * std::log(log_arg) / (2.0 * fbar * (4.0 * s2 + fbar * fbar));
    return t1 + t2;
}

double conv_quadrature(double f, double B, double sigma) {
    const double lo = std::max(-0.5 * B, -0.5 * B + f);
    const double hi = std::min(0.5 * B, 0.5 * B + f);
    if (lo >= hi) return 0.0;
    const double s2 = sigma * sigma;
    const double width = hi - lo;
    // Integrate on the unit interval: the adaptive refinement criterion
    // compares an unscaled per-node error estimate against tol*|integral|,
    // which under-refines when the interval is wide in absolute units (Hz).
    auto integrand = [&](double t) {
        const double fp = lo + width * t;
        const double u = 2.0 * fp / B - 1.0;
        const double v = 2.0 * (fp - f) / B - 1.0;
        return width / ((u * u + s2) * (v * v + s2));
    };
    // The integrand peaks near the band edge fp = B/2 for small sigma;
    // depth 18 resolves widths down to ~B*4e-6.
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, 0.0, 1.0, 18, 1e-9);
}

}  // namespace

double g2_self_convolution(double f_hz, const FilterSpec& spec, ConvMethod method) {
    spec.validate();
    const double B = spec.bandwidth_hz;
    const double af = std::abs(f_hz);
    if (method == ConvMethod::closed_form) {
        if (af > B)
            throw std::invalid_argument("g2_self_convolution: closed form requires |f| <= B");
        if (af < 1e-6 * B)
            throw std::invalid_argument(
                "g2_self_convolution: closed form is indeterminate near DC; use quadrature");
        return conv_closed_form(2.0 * af / B, B, spec.dissipation);
    }
    return conv_quadrature(f_hz, B, spec.dissipation);
}

void RlcParams::validate() const {
    const double vals[] = {r, l, c, r1, l1, c1, center_frequency_hz};
    for (double v : vals)
        if (!(v > 0.0))
            throw std::invalid_argument("RlcParams: all element values must be positive");
}

RlcParams RlcParams::from_band_ratios(double bandwidth_hz, double center_frequency_hz,
                                      double shunt_q, double series_dissipation,
                                      double series_scale_ohm, double shunt_scale_ohm) {
    if (!(bandwidth_hz > 0.0) || !(center_frequency_hz > 0.5 * bandwidth_hz))
        throw std::invalid_argument("RlcParams: need B > 0 and f0 > B/2");
    if (!(shunt_q > 0.0) || !(series_dissipation > 0.0) ||
        !(series_scale_ohm > 0.0) || !(shunt_scale_ohm > 0.0))
        throw std::invalid_argument("RlcParams: design ratios must be positive");
    const double two_pi = 2.0 * 3.14159265358979323846;
    const double w_series = two_pi * (center_frequency_hz - 0.5 * bandwidth_hz);
    const double w_tank = two_pi * (center_frequency_hz + 0.5 * bandwidth_hz);
    RlcParams p;
    p.l = series_scale_ohm / w_series;
    p.c = 1.0 / (series_scale_ohm * w_series);
    p.r = series_dissipation * series_scale_ohm;
    p.l1 = shunt_scale_ohm / w_tank;
    p.c1 = 1.0 / (shunt_scale_ohm * w_tank);
    p.r1 = shunt_scale_ohm / shunt_q;
    p.center_frequency_hz = center_frequency_hz;
    return p;
}

double rlc_ladder_response(const RlcParams& params, double f_hz) {
    params.validate();
    if (!(f_hz > 0.0)) return 0.0;
    const double w = 2.0 * 3.14159265358979323846 * f_hz;
    const std::complex<double> jw(0.0, w);
    const std::complex<double> z_series = params.r + jw * params.l + 1.0 / (jw * params.c);
    // Tank: c1 in parallel with the lossy inductor (r1 + jw l1).
    const std::complex<double> coil = params.r1 + jw * params.l1;
    const std::complex<double> z_tank = coil / (1.0 + jw * params.c1 * coil);
    const std::complex<double> h = z_tank / (z_series + z_tank);
    return std::norm(h);
}

}  // namespace lowrf
