// dynamics.hpp
// Time integration of the two-qubit master equation: a full density-matrix
// path and a reduced path on the eight real coordinates of an X state.

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "concurrence.hpp"
#include "model.hpp"
#include "ode.hpp"
#include "xstate.hpp"

namespace wgqed {

template <class State>
struct Trajectory {
    std::vector<double> times;  // us, strictly ascending
    std::vector<State> states;
    std::vector<double> concurrence;
    DerivedRates rates;

    std::size_t size() const { return times.size(); }
};

struct EvolveOptions {
    double t_max = 0.0;      // us; <= 0 selects default_t_max()
    double sample_dt = 0.0;  // us; <= 0 selects t_max / 1000
    double rtol = 1e-10;
    double atol = 1e-12;
};

// Several collective lifetimes at the bare coupling rate.
inline double default_t_max(const WaveguideParams& p) {
    if (p.gamma > 0.0) return 8.0 / p.gamma;
    if (p.gamma_nr > 0.0) return 8.0 / p.gamma_nr;
    return 1.0;
}

namespace detail {

inline std::vector<double> resolve_grid(const EvolveOptions& opt, const WaveguideParams& p) {
    const double t_max = opt.t_max > 0.0 ? opt.t_max : default_t_max(p);
    const double dt = opt.sample_dt > 0.0 ? opt.sample_dt : t_max / 1000.0;
    return sample_grid(t_max, dt);
}

inline OdeOptions ode_options(const EvolveOptions& opt) {
    OdeOptions o;
    o.rtol = opt.rtol;
    o.atol = opt.atol;
    return o;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Reduced X-state model.
//
// The 8x8 real generator is obtained by pushing each embedded basis X matrix
// through the full Lindblad generator and reading back the X entries. Every
// term of the master equation maps X matrices to X matrices, so the
// restriction is exact; `leakage` records the largest off-X image entry seen
// while building it and should be at rounding level.

class XStateModel {
public:
    XStateModel(const DerivedRates& r, const WaveguideParams& p) : rates_(r) {
        const Superoperator gen = build_generator(r, p);
        for (std::size_t k = 0; k < 8; ++k) {
            std::array<double, 8> e{};
            e[k] = 1.0;
            const Matrix<4> image = apply_superoperator<4>(gen, XState::unpack(e).to_matrix());
            leakage_ = std::max(leakage_, x_leakage(image));
            const auto col = XState::from_matrix(image).pack();
            for (std::size_t i = 0; i < 8; ++i) m_[i][k] = col[i];
        }
    }

    std::array<double, 8> rhs(const std::array<double, 8>& y) const {
        std::array<double, 8> dy{};
        for (std::size_t i = 0; i < 8; ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k < 8; ++k) acc += m_[i][k] * y[k];
            dy[i] = acc;
        }
        return dy;
    }

    XState rhs(const XState& x) const { return XState::unpack(rhs(x.pack())); }

    const std::array<std::array<double, 8>, 8>& matrix() const { return m_; }
    const DerivedRates& rates() const { return rates_; }
    double leakage() const { return leakage_; }

private:
    DerivedRates rates_;
    std::array<std::array<double, 8>, 8> m_{};
    double leakage_ = 0.0;
};

// Time derivative of the X entries; the result's fields hold (a', b', c', d', z', w').
inline XState xstate_rhs(const XState& x, const DerivedRates& r, const WaveguideParams& p) {
    return XStateModel(r, p).rhs(x);
}

// The same kinetic equations written out by hand in terms of gamma, gamma_nr
// and phi, with the bare frequencies entering only through the detuning
// omega_a - omega_b (the frame rotates at their mean). The direct coupling g
// has no term here. Kept as a cross-check against the machine-derived form.
inline XState tabulated_kinetic_rhs(const XState& x, const WaveguideParams& p) {
    const double g = p.gamma, gnr = p.gamma_nr;
    const double phi = kTwoPi / p.lambda_ratio;
    const double c1 = std::cos(phi), c2 = std::cos(2 * phi), c3 = std::cos(3 * phi);
    const double s1 = std::sin(phi), s2 = std::sin(2 * phi), s3 = std::sin(3 * phi);
    const cplx i{0.0, 1.0};
    const double sum_w = 0.0;           // omega_a + omega_b in the rotating frame
    const double diff_w = p.detuning;   // omega_a - omega_b
    const auto [a, b, c, d, z, w] = x;
    const cplx zz = z + std::conj(z);
    const cplx zm = z - std::conj(z);

    XState r;
    r.w = -0.5 * w * (2.0 * (g + gnr) + 2.0 * i * sum_w + g * (c1 + c3) + i * g * (s1 + s3));
    r.z = 0.5 * (-2.0 * z * (g + gnr) - 2.0 * i * z * diff_w + (2.0 * d - b - z - c) * g * c1 +
                 (2.0 * d - b - c) * g * c2 - z * g * c3 + i * (b - c - z) * g * s1 + i * (b - c) * g * s2 +
                 i * z * g * s3);
    r.a = ((b + c) * (g + gnr) + (c + zz) * g * c1 + zz * g * c2 + b * g * c3).real();
    r.b = ((g + gnr) * (d - b) + (d - 0.5 * zz) * g * c1 - 0.5 * zz * g * c2 - b * g * c3 +
           0.5 * i * g * zm * (s1 + s2))
              .real();
    r.c = ((g + gnr) * (d - c) - (c + 0.5 * zz) * g * c1 - 0.5 * zz * g * c2 + d * g * c3 -
           0.5 * i * g * zm * (s1 + s2))
              .real();
    r.d = -d * (2.0 * (g + gnr) + g * (c1 + c3));
    return r;
}

struct KineticComparison {
    // |derived - tabulated| per component, in the order a, b, c, d, z, w
    std::array<double, 6> mismatch{};

    double max() const { return *std::max_element(mismatch.begin(), mismatch.end()); }

    std::string summary(double tol) const {
        static constexpr std::array<const char*, 6> names{"a", "b", "c", "d", "z", "w"};
        std::string s;
        for (std::size_t k = 0; k < 6; ++k)
            if (mismatch[k] > tol) s += std::string(s.empty() ? "" : ", ") + names[k] + " differs by " +
                                        detail::format_double(mismatch[k]);
        return s.empty() ? "all kinetic equations agree" : s;
    }
};

inline KineticComparison compare_kinetic_equations(const XState& x, const DerivedRates& r,
                                                   const WaveguideParams& p) {
    const XState lhs = xstate_rhs(x, r, p);
    const XState rhs = tabulated_kinetic_rhs(x, p);
    KineticComparison out;
    out.mismatch = {std::abs(lhs.a - rhs.a), std::abs(lhs.b - rhs.b), std::abs(lhs.c - rhs.c),
                    std::abs(lhs.d - rhs.d), std::abs(lhs.z - rhs.z), std::abs(lhs.w - rhs.w)};
    return out;
}

// ---------------------------------------------------------------------------
// Integration.

inline Trajectory<Matrix<4>> evolve_full(const DensityMatrix<4>& rho0, const Superoperator& gen,
                                         const std::vector<double>& times, const EvolveOptions& opt) {
    using V = StateVec<32>;
    V y0{};
    for (std::size_t k = 0; k < 16; ++k) {
        y0[2 * k] = rho0.matrix().data()[k].real();
        y0[2 * k + 1] = rho0.matrix().data()[k].imag();
    }
    auto f = [&gen](double, const V& y, V& dy) {
        for (std::size_t r = 0; r < 16; ++r) {
            double re = 0.0, im = 0.0;
            for (std::size_t c = 0; c < 16; ++c) {
                const cplx g = gen(r, c);
                re += g.real() * y[2 * c] - g.imag() * y[2 * c + 1];
                im += g.real() * y[2 * c + 1] + g.imag() * y[2 * c];
            }
            dy[2 * r] = re;
            dy[2 * r + 1] = im;
        }
    };
    const auto ys = integrate_dopri5<32>(f, y0, times, detail::ode_options(opt));

    Trajectory<Matrix<4>> traj;
    traj.times = times;
    traj.states.reserve(ys.size());
    traj.concurrence.reserve(ys.size());
    for (const auto& y : ys) {
        Matrix<4> m;
        for (std::size_t k = 0; k < 16; ++k) m.data()[k] = cplx{y[2 * k], y[2 * k + 1]};
        traj.states.push_back(m);
        traj.concurrence.push_back(concurrence_wootters(m));
    }
    return traj;
}

inline Trajectory<Matrix<4>> evolve_full(const DensityMatrix<4>& rho0, const WaveguideParams& p,
                                         const EvolveOptions& opt = {}) {
    const DerivedRates r = derive_rates(p);
    auto traj = evolve_full(rho0, build_generator(r, p), detail::resolve_grid(opt, p), opt);
    traj.rates = r;
    return traj;
}

inline Trajectory<XState> evolve_xstate(const XState& x0, const XStateModel& model,
                                        const std::vector<double>& times, const EvolveOptions& opt) {
    if (!x0.is_valid()) throw invalid_input("evolve_xstate: initial state is not a valid X state");
    using V = StateVec<8>;
    auto f = [&model](double, const V& y, V& dy) { dy = model.rhs(y); };
    const auto ys = integrate_dopri5<8>(f, x0.pack(), times, detail::ode_options(opt));

    Trajectory<XState> traj;
    traj.times = times;
    traj.rates = model.rates();
    traj.states.reserve(ys.size());
    traj.concurrence.reserve(ys.size());
    for (const auto& y : ys) {
        const XState x = XState::unpack(y);
        traj.states.push_back(x);
        traj.concurrence.push_back(concurrence_x(x));
    }
    return traj;
}

inline Trajectory<XState> evolve_xstate(const XState& x0, const WaveguideParams& p, const EvolveOptions& opt = {}) {
    const DerivedRates r = derive_rates(p);
    return evolve_xstate(x0, XStateModel(r, p), detail::resolve_grid(opt, p), opt);
}

// ---------------------------------------------------------------------------
// Structural checks along a trajectory. Violations are reported, not repaired.

struct TrajectoryHealth {
    double max_trace_drift = 0.0;
    double max_asymmetry = 0.0;
    double min_eigenvalue = 0.0;
    double max_x_leakage = 0.0;

    bool ok(double trace_tol, double eig_tol) const {
        return max_trace_drift <= trace_tol && max_asymmetry <= trace_tol && min_eigenvalue >= -eig_tol;
    }
};

inline TrajectoryHealth check_trajectory(const Trajectory<Matrix<4>>& traj) {
    TrajectoryHealth h;
    bool first = true;
    for (const auto& m : traj.states) {
        const auto r = check_density(m);
        h.max_trace_drift = std::max(h.max_trace_drift, r.trace_error);
        h.max_asymmetry = std::max(h.max_asymmetry, r.hermiticity_error);
        h.min_eigenvalue = first ? r.min_eigenvalue : std::min(h.min_eigenvalue, r.min_eigenvalue);
        h.max_x_leakage = std::max(h.max_x_leakage, x_leakage(m));
        first = false;
    }
    return h;
}

inline TrajectoryHealth check_trajectory(const Trajectory<XState>& traj) {
    TrajectoryHealth h;
    bool first = true;
    for (const auto& x : traj.states) {
        const auto r = check_density(x.to_matrix());
        h.max_trace_drift = std::max(h.max_trace_drift, r.trace_error);
        h.min_eigenvalue = first ? r.min_eigenvalue : std::min(h.min_eigenvalue, r.min_eigenvalue);
        first = false;
    }
    return h;
}

}  // namespace wgqed

namespace wgqed {

// Density-matrix integration of an arbitrary small Lindblad equation.
template <std::size_t N>
std::vector<Matrix<N>> integrate_lindblad(const LindbladEquation<N>& eq, const Matrix<N>& rho0,
                                          const std::vector<double>& times, const OdeOptions& opt = {}) {
    using V = StateVec<2 * N * N>;
    V y0{};
    for (std::size_t k = 0; k < N * N; ++k) {
        y0[2 * k] = rho0.data()[k].real();
        y0[2 * k + 1] = rho0.data()[k].imag();
    }
    auto f = [&eq](double, const V& y, V& dy) {
        Matrix<N> m;
        for (std::size_t k = 0; k < N * N; ++k) m.data()[k] = cplx{y[2 * k], y[2 * k + 1]};
        const Matrix<N> r = eq.apply(m);
        for (std::size_t k = 0; k < N * N; ++k) {
            dy[2 * k] = r.data()[k].real();
            dy[2 * k + 1] = r.data()[k].imag();
        }
    };
    const auto ys = integrate_dopri5<2 * N * N>(f, y0, times, opt);
    std::vector<Matrix<N>> out;
    out.reserve(ys.size());
    for (const auto& y : ys) {
        Matrix<N> m;
        for (std::size_t k = 0; k < N * N; ++k) m.data()[k] = cplx{y[2 * k], y[2 * k + 1]};
        out.push_back(m);
    }
    return out;
}

}  // namespace wgqed
