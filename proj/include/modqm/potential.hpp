#pragma once

// Potentials shared by the quantum (sampled on the grid) and classical
// (value + analytic derivative) sides. The plateau's flat sections have an
// exactly zero derivative, which the force-free classical scenarios rely on.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace modqm {

struct Potential {
    std::string name = "zero";
    std::function<double(double)> value = [](double) { return 0.0; };
    std::function<double(double)> derivative = [](double) { return 0.0; };

    double operator()(double x) const { return value(x); }
};

inline Potential zero_potential() { return {}; }

inline Potential harmonic_potential(double k = 1.0, double center = 0.0) {
    Potential v;
    v.name = "harmonic";
    v.value = [k, center](double x) { return 0.5 * k * (x - center) * (x - center); };
    v.derivative = [k, center](double x) { return k * (x - center); };
    return v;
}

inline Potential linear_potential(double force) {
    Potential v;
    v.name = "linear";
    v.value = [force](double x) { return force * x; };
    v.derivative = [force](double) { return force; };
    return v;
}

namespace detail {

// C-infinity step: exactly 0 for u<=0, exactly 1 for u>=1
inline double smoothstep_exp(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

inline double smoothstep_exp_deriv(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    const double ap = a / (u * u);
    const double bp = -b / ((1.0 - u) * (1.0 - u));
    return (ap * (a + b) - a * (ap + bp)) / ((a + b) * (a + b));
}

}  // namespace detail

// height v0 on [flat_lo, flat_hi] exactly, smooth C-infinity ramps of the
// given width on both sides, exactly zero beyond them
inline Potential plateau_potential(double flat_lo, double flat_hi, double ramp, double v0) {
    if (!(flat_hi > flat_lo) || !(ramp > 0.0))
        throw std::invalid_argument("plateau_potential: bad geometry");
    Potential v;
    v.name = "plateau";
    v.value = [=](double x) {
        if (x < flat_lo)
            return v0 * detail::smoothstep_exp((x - (flat_lo - ramp)) / ramp);
        if (x > flat_hi)
            return v0 * detail::smoothstep_exp(((flat_hi + ramp) - x) / ramp);
        return v0;
    };
    v.derivative = [=](double x) {
        if (x < flat_lo)
            return v0 * detail::smoothstep_exp_deriv((x - (flat_lo - ramp)) / ramp) / ramp;
        if (x > flat_hi)
            return -v0 * detail::smoothstep_exp_deriv(((flat_hi + ramp) - x) / ramp) / ramp;
        return 0.0;
    };
    return v;
}

// smooth barrier centered on [lo, hi] (alias over plateau for readability)
inline Potential barrier_potential(double lo, double hi, double ramp, double height) {
    Potential v = plateau_potential(lo, hi, ramp, height);
    v.name = "barrier";
    return v;
}

}  // namespace modqm
