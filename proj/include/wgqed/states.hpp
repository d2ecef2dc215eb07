// states.hpp
// Werner and pseudo-Werner initial states, the three-qubit preparation
// sequence for the pseudo-Werner state, and single-qubit mixing by a long
// Rabi pulse followed by free decay.

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "lindblad.hpp"
#include "model.hpp"
#include "qcore.hpp"
#include "xstate.hpp"

namespace wgqed {

// (1-f)/3 I + (4f-1)/3 |Psi-><Psi-|, |Psi-> = (|01> - |10>)/sqrt 2
inline XState werner_x(double f) {
    if (!(f >= 0.25 && f <= 1.0)) throw invalid_input("werner: f must lie in [0.25, 1]");
    XState x;
    x.a = x.d = (1.0 - f) / 3.0;
    x.b = x.c = (1.0 + 2.0 * f) / 6.0;
    x.z = (1.0 - 4.0 * f) / 6.0;
    return x;
}

inline DensityMatrix<4> werner(double f) { return DensityMatrix<4>(werner_x(f).to_matrix()); }

inline XState pseudo_werner_x(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw invalid_input("pseudo_werner: f must lie in [0, 1]");
    XState x;
    x.a = f / 8.0;
    x.b = (1.0 + f) / 4.0;
    x.c = 3.0 * f / 8.0;
    x.d = 3.0 * (1.0 - f) / 4.0;
    x.z = cplx{0.0, std::sqrt(3.0) * f / 4.0};
    return x;
}

inline DensityMatrix<4> pseudo_werner(double f) { return DensityMatrix<4>(pseudo_werner_x(f).to_matrix()); }

// ---------------------------------------------------------------------------
// Pseudo-Werner preparation.
//
// Three qubits ordered c (x) b (x) a, c being the auxiliary. a starts mixed
// as diag(f, 1-f), b excited, c in the ground state. An exchange pulse of
// angle pi/4 on (b, a) is followed by one of angle pi/6 on (c, b); tracing
// out c leaves (b, a) in the pseudo-Werner state.

struct PrepConfig {
    double f = 0.8;
    bool with_dissipation = false;
    double g_strength = from_mhz(10.0);     // a-b exchange, dissipative mode only
    double g_bc_strength = from_mhz(10.0);  // b-c exchange, dissipative mode only
    double gamma_nr = from_mhz(0.03);       // decay of every qubit, dissipative mode only
    double rtol = 1e-10;
};

struct PrepResult {
    DensityMatrix<8> rho1;
    DensityMatrix<8> rho2;
    DensityMatrix<8> rho3;
    DensityMatrix<4> rho_out;
    double fidelity = 0.0;  // Uhlmann fidelity of rho_out to pseudo_werner(f)
    double t1 = 0.0;        // us, first exchange (dissipative mode)
    double t2 = 0.0;        // us, second exchange (dissipative mode)
};

inline constexpr double kFirstExchangeAngle = std::numbers::pi / 4.0;
inline constexpr double kSecondExchangeAngle = std::numbers::pi / 6.0;

inline Matrix<8> prep_initial_state(double f) {
    const Matrix<2> rho_a = Matrix<2>::diagonal({f, 1.0 - f});
    const Matrix<2> rho_b = Matrix<2>::diagonal({0.0, 1.0});
    const Matrix<2> rho_c = Matrix<2>::diagonal({1.0, 0.0});
    return tensor(tensor(rho_c, rho_b), rho_a);
}

inline Matrix<8> xy_on_ba() { return tensor(Matrix<2>::identity(), ops::exchange_xy()); }
inline Matrix<8> xy_on_cb() { return tensor(ops::exchange_xy(), Matrix<2>::identity()); }

namespace detail {

inline Matrix<8> conjugate(const Matrix<8>& u, const Matrix<8>& rho) { return u * rho * u.adjoint(); }

// Exchange under rate-gamma_nr decay of all three qubits. The Hamiltonian
// carries -strength so that e^{-iHt} equals the exact e^{+i theta XY}.
inline Matrix<8> dissipative_exchange(const Matrix<8>& rho, const Matrix<8>& xy, double strength, double duration,
                                      double gamma_nr, double rtol) {
    LindbladEquation<8> eq;
    eq.hamiltonian = -strength * xy;
    const Matrix<2> id = Matrix<2>::identity();
    const Matrix<2> lo = ops::sigma_minus();
    eq.add_decay(gamma_nr, tensor(tensor(lo, id), id));
    eq.add_decay(gamma_nr, tensor(tensor(id, lo), id));
    eq.add_decay(gamma_nr, tensor(tensor(id, id), lo));
    OdeOptions opt;
    opt.rtol = rtol;
    const std::vector<double> times{0.0, duration};
    return integrate_lindblad(eq, rho, times, opt).back();
}

}  // namespace detail

inline PrepResult prepare_pw(const PrepConfig& cfg) {
    if (!(cfg.f >= 0.0 && cfg.f <= 1.0)) throw invalid_input("prepare_pw: f must lie in [0, 1]");
    const Matrix<8> rho1 = prep_initial_state(cfg.f);
    Matrix<8> rho2, rho3;
    double t1 = 0.0, t2 = 0.0;
    double tol = kStructuralTol;

    if (!cfg.with_dissipation) {
        rho2 = detail::conjugate(expm_skew(xy_on_ba(), kFirstExchangeAngle, +1), rho1);
        rho3 = detail::conjugate(expm_skew(xy_on_cb(), kSecondExchangeAngle, +1), rho2);
    } else {
        if (!(cfg.g_strength > 0.0) || !(cfg.g_bc_strength > 0.0))
            throw invalid_input("prepare_pw: dissipative mode needs positive exchange strengths");
        if (!(cfg.gamma_nr >= 0.0)) throw invalid_input("prepare_pw: gamma_nr must be non-negative");
        t1 = kFirstExchangeAngle / cfg.g_strength;
        t2 = kSecondExchangeAngle / cfg.g_bc_strength;
        rho2 = detail::dissipative_exchange(rho1, xy_on_ba(), cfg.g_strength, t1, cfg.gamma_nr, cfg.rtol);
        rho3 = detail::dissipative_exchange(rho2, xy_on_cb(), cfg.g_bc_strength, t2, cfg.gamma_nr, cfg.rtol);
        tol = std::max(tol, 100.0 * cfg.rtol);
    }

    const Matrix<4> out = partial_trace(rho3, Subsystem::first);
    PrepResult r{DensityMatrix<8>(rho1), DensityMatrix<8>(rho2, tol), DensityMatrix<8>(rho3, tol),
                 DensityMatrix<4>(out, tol), 0.0, t1, t2};
    r.fidelity = fidelity(out, pseudo_werner_x(cfg.f).to_matrix());
    return r;
}

// ---------------------------------------------------------------------------
// Single-qubit mixing: a resonant square Rabi pulse (H = Omega/2 sigma_x in
// the qubit frame) under amplitude damping, then free decay.

struct RabiConfig {
    double omega = from_mhz(30.0);
    double gamma_nr = from_mhz(0.03);
    double pulse_duration = 35.0;  // us
    double wait_duration = 0.0;    // us
    double sample_dt = 0.01;       // us
    bool flip = false;             // final exact pi pulse, maps f -> 1 - f
    double rtol = 1e-10;
};

struct MixResult {
    std::vector<double> times;  // us
    std::vector<double> rho_gg;
    std::vector<double> rho_ee;
    std::vector<double> abs_rho_eg;
    DensityMatrix<2> rho_final{Matrix<2>::diagonal({1.0, 0.0})};
    double f_achieved = 1.0;
    std::vector<std::string> warnings;
};

inline MixResult mixed_qubit(const RabiConfig& cfg) {
    if (!(cfg.omega >= 0.0) || !(cfg.gamma_nr >= 0.0) || !(cfg.pulse_duration >= 0.0) ||
        !(cfg.wait_duration >= 0.0) || !(cfg.sample_dt > 0.0))
        throw invalid_input("mixed_qubit: parameters must be non-negative and sample_dt positive");

    MixResult res;
    if (cfg.pulse_duration > 0.0 && cfg.gamma_nr > 0.0 && cfg.pulse_duration < 5.0 / cfg.gamma_nr)
        res.warnings.push_back("pulse is not much longer than 1/gamma_nr; the state may not be an even mixture");

    OdeOptions opt;
    opt.rtol = cfg.rtol;
    Matrix<2> rho = Matrix<2>::diagonal({1.0, 0.0});
    auto record = [&res](double t, const Matrix<2>& m) {
        res.times.push_back(t);
        res.rho_gg.push_back(m(0, 0).real());
        res.rho_ee.push_back(m(1, 1).real());
        res.abs_rho_eg.push_back(std::abs(m(1, 0)));
    };
    record(0.0, rho);

    auto run = [&](double t0, double duration, double omega) {
        if (duration <= 0.0) return;
        LindbladEquation<2> eq;
        eq.hamiltonian = (0.5 * omega) * ops::sigma_x();
        eq.add_decay(cfg.gamma_nr, ops::sigma_minus());
        const auto times = sample_grid(duration, std::min(cfg.sample_dt, duration));
        const auto states = integrate_lindblad(eq, rho, times, opt);
        for (std::size_t k = 1; k < times.size(); ++k) record(t0 + times[k], states[k]);
        rho = states.back();
    };
    run(0.0, cfg.pulse_duration, cfg.omega);
    run(cfg.pulse_duration, cfg.wait_duration, 0.0);

    if (cfg.flip) rho = ops::sigma_x() * rho * ops::sigma_x();
    res.rho_final = DensityMatrix<2>(rho, std::max(kStructuralTol, 100.0 * cfg.rtol));
    res.f_achieved = rho(0, 0).real();
    return res;
}

inline constexpr double kMaxWaitTime = 1e4;  // us

// Wait after an ideal even mixture until the ground population reaches f:
// rho_ee(t) = e^{-gamma_nr t} / 2.
inline double wait_time_for_f(double f, double gamma_nr) {
    if (!(f >= 0.5 && f < 1.0)) throw invalid_input("wait_time_for_f: f must lie in [0.5, 1)");
    if (!(gamma_nr > 0.0)) throw invalid_input("wait_time_for_f: gamma_nr must be positive");
    const double t = std::log(1.0 / (2.0 * (1.0 - f))) / gamma_nr;
    if (t > kMaxWaitTime) throw invalid_input("wait_time_for_f: required wait exceeds 1e4 us");
    return t;
}

}  // namespace wgqed
