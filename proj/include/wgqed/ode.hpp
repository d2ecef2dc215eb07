// ode.hpp
// Dormand-Prince 5(4) with step-size control and 4th-order dense output.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace wgqed {

template <std::size_t N>
using StateVec = std::array<double, N>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 selects a step automatically
    double max_step = 0.0;      // 0 means unbounded
    std::size_t max_steps = 50'000'000;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

namespace dopri {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

}  // namespace dopri

// Integrate y' = f(t, y) and return y at each requested time. `times` must be
// strictly ascending; times[0] is the initial time and maps to y0.
// The right-hand side is called as f(t, y, dydt).
template <std::size_t N, class Rhs>
std::vector<StateVec<N>> integrate_dopri5(Rhs&& f, const StateVec<N>& y0, std::span<const double> times,
                                          const OdeOptions& opt = {}, OdeStats* stats = nullptr) {
    using namespace dopri;
    using V = StateVec<N>;

    std::vector<V> out;
    if (!(opt.rtol > 0.0) || !(opt.atol >= 0.0))
        throw invalid_input("tolerances must satisfy rtol > 0 and atol >= 0");
    if (times.empty()) return out;
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw invalid_input("sample times must be strictly ascending");
    out.reserve(times.size());
    out.push_back(y0);
    if (times.size() == 1) return out;

    OdeStats st;
    const double t_end = times.back();
    double t = times.front();
    V y = y0;
    V k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;

    auto eval = [&](double tt, const V& yy, V& dy) {
        f(tt, yy, dy);
        ++st.rhs_evals;
    };
    auto scaled_norm = [&](const V& v, const V& ya, const V& yb) {
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = opt.atol + opt.rtol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            acc += (v[i] / sk) * (v[i] / sk);
        }
        return std::sqrt(acc / static_cast<double>(N));
    };

    eval(t, y, k1);

    double h = opt.initial_step;
    if (h <= 0.0) {
        // Hairer & Wanner's starting-step heuristic.
        const double d0 = scaled_norm(y, y, y);
        const double dd1 = scaled_norm(k1, y, y);
        double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
        h0 = std::min(h0, t_end - t);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h0 * k1[i];
        eval(t + h0, ytmp, k2);
        V diff;
        for (std::size_t i = 0; i < N; ++i) diff[i] = (k2[i] - k1[i]) / h0;
        const double dd2 = scaled_norm(diff, y, y);
        const double h1 = (std::max(dd1, dd2) <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                         : std::pow(0.01 / std::max(dd1, dd2), 1.0 / 5.0);
        h = std::min(100.0 * h0, h1);
    }
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

    std::size_t next = 1;
    bool last_rejected = false;

    while (next < times.size()) {
        if (st.accepted + st.rejected >= opt.max_steps)
            throw integration_failure("maximum number of steps exceeded", t);
        const double min_h = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        if (h < min_h || !std::isfinite(h))
            throw integration_failure("step size underflow at t = " + std::to_string(t), t);
        h = std::min(h, t_end - t);

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        eval(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        eval(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        eval(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        eval(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        eval(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        eval(t + h, ynew, k7);

        V err;
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double en = scaled_norm(err, y, ynew);
        if (!std::isfinite(en)) throw integration_failure("non-finite state encountered", t);

        if (en <= 1.0) {
            ++st.accepted;
            const double t_new = (t_end - (t + h) <= 1e-14 * std::max(1.0, std::abs(t_end))) ? t_end : t + h;

            // emit samples that fall inside (t, t_new]
            while (next < times.size() && times[next] <= t_new) {
                if (times[next] == t_new) {
                    out.push_back(ynew);
                } else {
                    const double theta = (times[next] - t) / h;
                    const double theta1 = 1.0 - theta;
                    V yi;
                    for (std::size_t i = 0; i < N; ++i) {
                        const double ydiff = ynew[i] - y[i];
                        const double bspl = h * k1[i] - ydiff;
                        const double r4 = ydiff - h * k7[i] - bspl;
                        const double r5 =
                            h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
                        yi[i] = y[i] + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
                    }
                    out.push_back(yi);
                }
                ++next;
            }

            t = t_new;
            y = ynew;
            k1 = k7;
            double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.2);
            fac = std::clamp(fac, 0.2, 10.0);
            if (last_rejected) fac = std::min(fac, 1.0);
            h *= fac;
            if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
            last_rejected = false;
        } else {
            ++st.rejected;
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            last_rejected = true;
        }
    }
    if (stats) *stats = st;
    return out;
}

// 0, dt, 2 dt, ... with t_max always the last entry.
inline std::vector<double> sample_grid(double t_max, double sample_dt) {
    if (!(t_max > 0.0)) throw invalid_input("t_max must be positive");
    if (!(sample_dt > 0.0) || sample_dt > t_max * (1.0 + 1e-12))
        throw invalid_input("sample_dt must satisfy 0 < sample_dt <= t_max");
    const auto n = static_cast<std::size_t>(std::ceil(t_max / sample_dt - 1e-9));
    std::vector<double> times;
    times.reserve(n + 1);
    for (std::size_t k = 0; k < n; ++k) times.push_back(static_cast<double>(k) * sample_dt);
    times.push_back(t_max);
    return times;
}

}  // namespace wgqed
