// cpwcalc.hpp
// Coplanar waveguide on an infinitely thick substrate with zero-thickness
// metal (quasi-static conformal mapping).

#pragma once

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace wgqed::cpw {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

// Complete elliptic integral of the first kind, K(k) = pi / (2 AGM(1, k')).
inline double ellint_k(double k) {
    if (!(k >= 0.0 && k < 1.0)) throw invalid_input("ellint_k: modulus must lie in [0, 1)");
    double a = 1.0;
    double g = std::sqrt((1.0 - k) * (1.0 + k));
    for (int it = 0; it < 64 && std::abs(a - g) > 1e-15 * a; ++it) {
        const double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return std::numbers::pi / (a + g);
}

struct Geometry {
    double center_width = 20.0;  // um
    double gap_width = 8.0;      // um
    double eps_r = 9.8;

    void validate() const {
        if (!(center_width > 0.0) || !(gap_width > 0.0)) throw invalid_input("cpw: widths must be positive");
        if (!(eps_r >= 1.0)) throw invalid_input("cpw: eps_r must be >= 1");
    }
};

struct Derived {
    double z0 = 0.0;       // ohm
    double v_ph = 0.0;     // m/s
    double eps_eff = 0.0;
    double k = 0.0;        // w / (w + 2 s)
};

inline Derived derive(const Geometry& g) {
    g.validate();
    Derived d;
    d.k = g.center_width / (g.center_width + 2.0 * g.gap_width);
    const double kp = std::sqrt(1.0 - d.k * d.k);
    if (!(d.k > 0.0 && d.k < 1.0) || !(kp > 0.0)) throw invalid_input("cpw: degenerate modulus");
    d.eps_eff = (g.eps_r + 1.0) / 2.0;
    d.z0 = 30.0 * std::numbers::pi * ellint_k(kp) / (std::sqrt(d.eps_eff) * ellint_k(d.k));
    d.v_ph = kSpeedOfLight / std::sqrt(d.eps_eff);
    return d;
}

// lambda = 2 pi v_ph / omega, metres; omega in rad/s
inline double wavelength(double omega, double v_ph) {
    if (!(omega > 0.0)) throw invalid_input("wavelength: omega must be positive");
    return 2.0 * std::numbers::pi * v_ph / omega;
}

// lambda / x2 at qubit frequency `freq_ghz`; x2 in mm
inline double lambda_ratio_for_freq(double freq_ghz, const Geometry& g, double x2_mm) {
    if (!(freq_ghz > 0.0) || !(x2_mm > 0.0)) throw invalid_input("lambda_ratio_for_freq: inputs must be positive");
    const double lam = wavelength(2.0 * std::numbers::pi * freq_ghz * 1e9, derive(g).v_ph);
    return lam / (x2_mm * 1e-3);
}

// Mirror-to-first-qubit distance for a given spacing (x2 = 2 x1).
inline constexpr double x1_for(double x2) { return x2 / 2.0; }

}  // namespace wgqed::cpw
