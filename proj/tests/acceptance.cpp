// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <wgqed/concurrence.hpp>
#include <wgqed/cpwcalc.hpp>
#include <wgqed/entangle.hpp>
#include <wgqed/states.hpp>

using namespace wgqed;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

// Worst structural health seen on any trajectory produced by the criteria.
struct HealthLog {
    double trace_drift = 0.0;
    double min_eig = 0.0;
    double x_leakage = 0.0;
    std::size_t trajectories = 0;

    void add(const TrajectoryHealth& h) {
        trace_drift = std::max(trace_drift, h.max_trace_drift);
        min_eig = std::min(min_eig, h.min_eigenvalue);
        x_leakage = std::max(x_leakage, h.max_x_leakage);
        ++trajectories;
    }
} g_health;

template <class State>
Trajectory<State> logged(Trajectory<State> t) {
    g_health.add(check_trajectory(t));
    return t;
}

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

WaveguideParams params(double lr) {
    WaveguideParams p;
    p.lambda_ratio = lr;
    return p;
}

XState random_xstate(std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0), ph(-M_PI, M_PI);
    double p[4], s = 0.0;
    for (double& v : p) s += (v = e(rng));
    XState x{p[0] / s, p[1] / s, p[2] / s, p[3] / s, {}, {}};
    x.z = std::polar(u(rng) * std::sqrt(x.b * x.c), ph(rng));
    x.w = std::polar(u(rng) * std::sqrt(x.a * x.d), ph(rng));
    return x;
}

Outcome ac1_rates() {
    struct Row {
        double lr, ga, gb, gc, gx;
    };
    const Row rows[] = {{2.0, 0.03, 0.03, 0.0, 0.0},
                        {1.5, 2.53, 10.03, -5.0, 0.0},
                        {1.2, 7.53, 0.03, 0.0, -4.33},
                        {1.3, 5.63, 3.26, -4.25, -3.08}};
    double worst = 0.0;
    for (const auto& row : rows) {
        const auto r = derive_rates(params(row.lr));
        for (auto [got, want] : {std::pair{r.gamma_a, row.ga}, {r.gamma_b, row.gb}, {r.gamma_col, row.gc},
                                 {r.g_x, row.gx}})
            worst = std::max(worst, std::abs(to_mhz(got) - want));
    }
    return {worst <= 0.01, "max |error| " + num(worst) + " x 2pi MHz (tol 0.01)"};
}

Outcome ac2_werner_threshold() {
    const double f = esd_threshold(params(2.0), StateFamily::werner, 1e-4);
    return {std::abs(f - 0.714) <= 0.005, "threshold f = " + num(f) + " (want 0.714 +- 0.005)"};
}

Outcome ac3_pw_closed_form() {
    const double at1 = std::abs(pw_concurrence_closed(1.0) - std::sqrt(3.0) / 2.0);
    double below = 0.0;
    for (int k = 0; k < 100; ++k) below = std::max(below, pw_concurrence_closed((1.0 / 3.0) * k / 99.0));
    double agree = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double f = k / 1000.0;
        agree = std::max(agree, std::abs(pw_concurrence_closed(f) - concurrence_x(pseudo_werner_x(f))));
    }
    return {at1 <= 1e-12 && below == 0.0 && agree <= 1e-12,
            "|C(1) - sqrt3/2| " + num(at1) + ", max C(f<=1/3) " + num(below) + ", max |closed - X| " + num(agree)};
}

Outcome ac4_preparation() {
    const cplx i{0, 1};
    const double f = 0.8, s3 = std::sqrt(3.0);
    Matrix<8> r2, r3;
    r2(1, 1) = r2(2, 2) = f / 2;
    r2(1, 2) = i * f / 2.0;
    r2(2, 1) = -i * f / 2.0;
    r2(3, 3) = 1 - f;
    r3(1, 1) = f / 2;
    r3(1, 2) = i * s3 * f / 4.0;
    r3(1, 4) = f / 4;
    r3(2, 1) = -i * s3 * f / 4.0;
    r3(2, 2) = 3 * f / 8;
    r3(2, 4) = -i * s3 * f / 8.0;
    r3(3, 3) = 0.75 * (1 - f);
    r3(3, 5) = i * s3 * (f - 1) / 4.0;
    r3(4, 1) = f / 4;
    r3(4, 2) = i * s3 * f / 8.0;
    r3(4, 4) = f / 8;
    r3(5, 3) = -i * s3 * (f - 1) / 4.0;
    r3(5, 5) = (1 - f) / 4;

    PrepConfig cfg;
    cfg.f = f;
    const auto res = prepare_pw(cfg);
    const double e2 = max_abs_diff(res.rho2.matrix(), r2);
    const double e3 = max_abs_diff(res.rho3.matrix(), r3);
    double eout = 0.0;
    for (int k = 0; k < 50; ++k) {
        cfg.f = k / 49.0;
        eout = std::max(eout, max_abs_diff(prepare_pw(cfg).rho_out.matrix(), pseudo_werner_x(cfg.f).to_matrix()));
    }
    return {e2 <= 1e-12 && e3 <= 1e-12 && eout <= 1e-10,
            "rho2 err " + num(e2) + ", rho3 err " + num(e3) + ", rho_out err over 50 f " + num(eout)};
}

Outcome ac5_fast_path() {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (double lr : {2.0, 1.5, 1.2, 1.3}) {
        const auto p = params(lr);
        for (int k = 0; k < 20; ++k) {
            const XState x0 = random_xstate(rng);
            const auto fast = logged(evolve_xstate(x0, p));
            const auto full = logged(evolve_full(DensityMatrix<4>(x0.to_matrix()), p));
            for (std::size_t s = 0; s < fast.size(); ++s)
                worst = std::max(worst, max_abs_diff(fast.states[s].to_matrix(), full.states[s]));
        }
    }
    return {worst <= 1e-8, "max |X path - full| " + num(worst) + " over 80 trajectories (tol 1e-8)"};
}

Outcome ac6_esd_pattern() {
    bool ok = true;
    std::string detail;

    EvolveOptions long_run;
    long_run.t_max = 50.0;
    int revivals = 0;
    for (int k = 0; k <= 70; ++k) {
        const double f = 0.3 + 0.01 * k;
        if (detect_events(logged(evolve_xstate(werner_x(f), params(2.0), long_run))).revived()) ++revivals;
    }
    ok &= revivals == 0;
    detail += "lambda/x2=2: " + std::to_string(revivals) + " revivals on f 0.3..1.0";

    for (double lr : {1.5, 1.3}) {
        const auto t = logged(evolve_xstate(werner_x(0.9), params(lr)));
        const auto rep = detect_events(t);
        const bool pattern = rep.died() && rep.revived() && rep.revival_times[0] > rep.death_times[0];
        ok &= pattern;
        detail += "; lambda/x2=" + num(lr) + " f=0.9: " + (pattern ? "death then revival" : "no death/revival") +
                  " (min C " + num(*std::min_element(t.concurrence.begin(), t.concurrence.end())) + ")";
    }

    const auto t = logged(evolve_xstate(werner_x(0.9), params(1.2)));
    const auto rep = detect_events(t);
    bool fast_decay = false;
    double revived_peak = 0.0;
    if (rep.died() && rep.revived()) {
        // the revived concurrence must die again within the window
        for (std::size_t s = 0; s < t.size(); ++s)
            if (t.times[s] > rep.revival_times[0]) revived_peak = std::max(revived_peak, t.concurrence[s]);
        fast_decay = rep.death_times.size() >= 2;
    }
    ok &= fast_decay;
    detail += "; lambda/x2=1.2 f=0.9: " +
              std::string(fast_decay ? "death, revival (peak " + num(revived_peak) + "), death again"
                                     : "pattern missing");
    return {ok, detail};
}

Outcome ac7_concurrence_oracles() {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const XState x = random_xstate(rng);
        worst = std::max(worst, std::abs(concurrence_x(x) - concurrence_wootters(x.to_matrix())));
    }
    return {worst <= 1e-10, "max |closed form - Wootters| " + num(worst) + " over 1000 states"};
}

Outcome ac8_mixing() {
    RabiConfig cfg;
    const auto pulse = mixed_qubit(cfg);
    const double dgg = std::abs(pulse.rho_gg.back() - 0.5);
    const double eg = pulse.abs_rho_eg.back();
    const double wait = wait_time_for_f(0.8, cfg.gamma_nr);
    cfg.wait_duration = wait;
    const double fa = mixed_qubit(cfg).f_achieved;
    return {dgg <= 0.01 && eg <= 0.01 && std::abs(wait - 4.86) <= 0.01 && std::abs(fa - 0.8) <= 0.005,
            "|rho_gg - 1/2| " + num(dgg) + ", |rho_eg| " + num(eg) + ", wait " + num(wait) + " us, f_achieved " +
                num(fa)};
}

Outcome ac9_cpw() {
    const cpw::Geometry g;
    const auto d = cpw::derive(g);
    const double v_err = std::abs(d.v_ph / 1.29017e8 - 1.0);
    const double lam7 = cpw::wavelength(2 * M_PI * 7e9, d.v_ph) * 1e3;
    const double r23 = cpw::lambda_ratio_for_freq(2.3, g, 18.4);
    const double r30 = cpw::lambda_ratio_for_freq(3.0, g, 18.4);
    const double z_err = std::abs(d.z0 / 50.0 - 1.0);
    const bool ok = v_err <= 1e-3 && std::abs(lam7 - 18.4) <= 0.1 && std::abs(r23 / 3.0 - 1.0) <= 0.02 &&
                    std::abs(r30 / 2.4 - 1.0) <= 0.02 && z_err <= 0.05;
    return {ok, "v_ph " + num(d.v_ph) + " m/s, lambda(7 GHz) " + num(lam7) + " mm, ratio(2.3 GHz) " + num(r23) +
                    ", ratio(3.0 GHz) " + num(r30) + " (want 2.4 +- 2%), Z0 " + num(d.z0) + " ohm"};
}

Outcome ac10_invariants() {
    const bool ok = g_health.trace_drift <= 1e-9 && g_health.min_eig >= -1e-8 && g_health.x_leakage <= 1e-10;
    return {ok, std::to_string(g_health.trajectories) + " trajectories: max trace drift " + num(g_health.trace_drift) +
                    ", min eigenvalue " + num(g_health.min_eig) + ", max off-X leakage " + num(g_health.x_leakage)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"AC1 rate table", ac1_rates},
        {"AC2 Werner ESD threshold", ac2_werner_threshold},
        {"AC3 pseudo-Werner concurrence", ac3_pw_closed_form},
        {"AC4 preparation chain", ac4_preparation},
        {"AC5 fast-path equivalence", ac5_fast_path},
        {"AC6 ESD/revival pattern", ac6_esd_pattern},
        {"AC7 concurrence oracles", ac7_concurrence_oracles},
        {"AC8 mixed-state preparation", ac8_mixing},
        {"AC9 CPW numbers", ac9_cpw},
        {"AC10 structural invariants", ac10_invariants},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
