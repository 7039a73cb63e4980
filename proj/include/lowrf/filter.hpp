// Asymmetric baseband bandpass filter model: complex transfer function with a
// 1/f passband slope, its RLC-ladder realization, and the |G|^2 self-convolution
// needed by the intermodulation-distortion spectrum.

#pragma once

#include <complex>

namespace lowrf {

// Baseband bandpass filter with a resonant rise at the upper band edge.
// bandwidth_hz is the two-sided bandwidth B; dissipation is the inverse
// Q-factor sigma controlling the height (1/sigma^2) of the edge resonance.
struct FilterSpec {
    double bandwidth_hz = 0.0;
    double dissipation = 0.0;

    // Throws std::invalid_argument unless B > 0 and sigma > 0.
    void validate() const;
};

// Complex baseband gain G(f): 1/(j(2f/B - 1) + sigma) inside |f| <= B/2,
// zero outside (stopband assumed ideal).
std::complex<double> baseband_transfer(double f_hz, const FilterSpec& spec);

// |G(f)|^2 convenience form.
double baseband_gain2(double f_hz, const FilterSpec& spec);

// Arctangent remapped onto the codomain [0, pi]. Continuous across the
// branch where the plain arctangent argument passes through +-infinity.
double arctan_pi(double t);

enum class ConvMethod {
    closed_form,  // analytic expression, valid for |f| <= B
    quadrature,   // adaptive Gauss-Kronrod on the support overlap
};

// Self-convolution (|G|^2 * |G(-.)|^2)(f) of the squared magnitude response.
// Even in f and supported on [-B, B]. The closed form rejects |f| > B and
// |f| < B*1e-6 (removable 0/0 at DC; DC is discarded downstream anyway).
// The quadrature method is the authority near DC and returns 0 outside [-B, B].
double g2_self_convolution(double f_hz, const FilterSpec& spec, ConvMethod method);

// Two-branch ladder: series R-L-C in the signal path feeding a shunt tank
// (c1 in parallel with r1 + l1), output taken across the tank. The tank is
// the high-Q branch; its resonance sits one bandwidth above the series one.
struct RlcParams {
    double r = 0.0, l = 0.0, c = 0.0;     // series branch [ohm, H, F]
    double r1 = 0.0, l1 = 0.0, c1 = 0.0;  // shunt tank branch
    double center_frequency_hz = 0.0;     // f0 of the intended passband

    void validate() const;

    // Builds element values from the dimensionless design ratios:
    //   sqrt(l1/c1)/r1 = shunt_q      (tank quality factor)
    //   r*sqrt(c/l)    = series_dissipation
    //   tank resonance - series resonance = bandwidth_hz,
    // centered so the tank resonates at f0 + B/2. The impedance scales are
    // free parameters; the defaults reproduce the intended passband shape.
    static RlcParams from_band_ratios(double bandwidth_hz, double center_frequency_hz,
                                      double shunt_q = 80.0, double series_dissipation = 4.0,
                                      double series_scale_ohm = 1.0, double shunt_scale_ohm = 0.01);
};

// Voltage-divider power transfer |H(f)|^2 of the ladder at RF frequency f.
double rlc_ladder_response(const RlcParams& params, double f_hz);

}  // namespace lowrf
