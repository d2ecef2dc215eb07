// model.hpp
// Two qubits in front of a shorted transmission line: wavelength-dependent
// decay rates, induced couplings, the Hamiltonian and the Lindblad generator.
//
// Units: rates and frequencies are angular, in rad/us; time is in us.
// Qubit a is the left tensor factor of the two-qubit space.

#pragma once

#include <cmath>
#include <numbers>

#include "lindblad.hpp"
#include "qcore.hpp"

namespace wgqed {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Linear frequency in MHz -> angular rate in rad/us.
constexpr double from_mhz(double nu_mhz) { return kTwoPi * nu_mhz; }
constexpr double to_mhz(double rad_per_us) { return rad_per_us / kTwoPi; }

struct WaveguideParams {
    double gamma = from_mhz(5.0);      // bare qubit-waveguide coupling
    double gamma_nr = from_mhz(0.03);  // intrinsic non-radiative relaxation
    double lambda_ratio = 2.0;         // lambda / x2
    double detuning = 0.0;             // bare omega_a - omega_b
    double coupling = 0.0;             // switchable direct exchange g

    void validate() const {
        if (!(gamma >= 0.0)) throw invalid_input("gamma must be non-negative");
        if (!(gamma_nr >= 0.0)) throw invalid_input("gamma_nr must be non-negative");
        if (!(lambda_ratio > 0.0) || !std::isfinite(lambda_ratio))
            throw invalid_input("lambda_ratio must be positive");
    }
};

struct DerivedRates {
    double phi = 0.0;        // 2 pi x2 / lambda
    double gamma_a = 0.0;    // individual relaxation of qubit a
    double gamma_b = 0.0;    // individual relaxation of qubit b
    double gamma_col = 0.0;  // collective relaxation, signed
    double g_x = 0.0;        // waveguide-induced exchange, signed
    double shift_a = 0.0;    // frequency shift of qubit a
    double shift_b = 0.0;    // frequency shift of qubit b
};

inline DerivedRates derive_rates(const WaveguideParams& p) {
    p.validate();
    const double phi = kTwoPi / p.lambda_ratio;
    const double g = p.gamma;
    DerivedRates r;
    r.phi = phi;
    r.gamma_a = g * (1.0 + std::cos(phi)) + p.gamma_nr;
    r.gamma_b = g * (1.0 + std::cos(3.0 * phi)) + p.gamma_nr;
    r.gamma_col = g * (std::cos(phi) + std::cos(2.0 * phi));
    r.g_x = g * (std::sin(phi) + std::sin(2.0 * phi)) / 2.0;
    r.shift_a = g / 2.0 * std::sin(phi);
    r.shift_b = g / 2.0 * std::sin(3.0 * phi);
    return r;
}

// Smallest eigenvalue of the 2x2 dissipation matrix [[G_a, G_col], [G_col, G_b]].
// Negative values would mean the generator is not completely positive.
inline double dissipation_min_eigenvalue(const DerivedRates& r) {
    const double mean = 0.5 * (r.gamma_a + r.gamma_b);
    const double half_diff = 0.5 * (r.gamma_a - r.gamma_b);
    return mean - std::hypot(half_diff, r.gamma_col);
}

namespace two_qubit {

inline Matrix<4> lower_a() { return tensor(ops::sigma_minus(), Matrix<2>::identity()); }
inline Matrix<4> lower_b() { return tensor(Matrix<2>::identity(), ops::sigma_minus()); }
inline Matrix<4> z_a() { return tensor(ops::sigma_z(), Matrix<2>::identity()); }
inline Matrix<4> z_b() { return tensor(Matrix<2>::identity(), ops::sigma_z()); }

}  // namespace two_qubit

// Frame rotating at a common reference frequency; only detunings survive.
inline Matrix<4> build_hamiltonian(const DerivedRates& r, const WaveguideParams& p) {
    const double d_a = r.shift_a + p.detuning / 2.0;
    const double d_b = r.shift_b - p.detuning / 2.0;
    Matrix<4> h = (0.5 * d_a) * two_qubit::z_a();
    h += (0.5 * d_b) * two_qubit::z_b();
    h += (r.g_x + p.coupling) * ops::exchange_xy();
    return h;
}

inline LindbladEquation<4> build_master_equation(const DerivedRates& r, const WaveguideParams& p) {
    LindbladEquation<4> eq;
    eq.hamiltonian = build_hamiltonian(r, p);
    const auto sa = two_qubit::lower_a();
    const auto sb = two_qubit::lower_b();
    eq.add_decay(r.gamma_a, sa);
    eq.add_decay(r.gamma_b, sb);
    eq.add_cross(r.gamma_col, sa, sb);
    eq.add_cross(r.gamma_col, sb, sa);
    return eq;
}

// 16x16 matrix acting on row-major vec(rho).
using Superoperator = Matrix<16>;

inline Superoperator build_generator(const DerivedRates& r, const WaveguideParams& p) {
    return to_superoperator(build_master_equation(r, p));
}

}  // namespace wgqed
