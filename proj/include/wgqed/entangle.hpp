// entangle.hpp
// Sudden-death / revival detection over concurrence trajectories and the
// fidelity threshold below which a state family loses its entanglement.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "concurrence.hpp"
#include "dynamics.hpp"
#include "states.hpp"

namespace wgqed {

struct EsdReport {
    std::vector<double> death_times;    // us, alternate with revival_times
    std::vector<double> revival_times;  // us
    double final_concurrence = 0.0;
    bool starts_separable = false;  // C(0) <= epsilon

    bool died() const { return !death_times.empty(); }
    bool revived() const { return !revival_times.empty(); }
};

struct EventOptions {
    double epsilon = 1e-6;  // concurrence at or below this counts as zero
    std::size_t hold = 5;   // consecutive zero samples that make a death
};

inline EsdReport detect_events(std::span<const double> times, std::span<const double> concurrence,
                               const EventOptions& opt = {}) {
    if (times.size() != concurrence.size())
        throw invalid_input("detect_events: times and concurrence differ in length");
    EsdReport rep;
    const std::size_t n = times.size();
    if (n == 0) return rep;
    rep.final_concurrence = concurrence.back();
    rep.starts_separable = concurrence.front() <= opt.epsilon;
    if (n < 2) return rep;

    const double eps = opt.epsilon;
    const std::size_t hold = std::max<std::size_t>(opt.hold, 1);
    // time where the linear interpolant between samples i-1 and i crosses eps
    auto crossing = [&](std::size_t i) {
        const double c0 = concurrence[i - 1], c1 = concurrence[i];
        if (c1 == c0) return times[i];
        const double s = std::clamp((c0 - eps) / (c0 - c1), 0.0, 1.0);
        return times[i - 1] + s * (times[i] - times[i - 1]);
    };

    bool alive = concurrence[0] > eps;
    bool dead = false;  // inside a recorded death interval
    for (std::size_t i = 1; i < n; ++i) {
        const bool zero = concurrence[i] <= eps;
        if (alive && zero) {
            std::size_t run = 0;
            while (i + run < n && concurrence[i + run] <= eps) ++run;
            if (run >= hold) {
                rep.death_times.push_back(crossing(i));
                alive = false;
                dead = true;
                i += run - 1;
            }
        } else if (!alive && !zero) {
            if (dead) {
                rep.revival_times.push_back(crossing(i));
                dead = false;
            }
            alive = true;
        }
    }
    return rep;
}

template <class State>
EsdReport detect_events(const Trajectory<State>& traj, const EventOptions& opt = {}) {
    return detect_events(traj.times, traj.concurrence, opt);
}

// ---------------------------------------------------------------------------
// Threshold search.

enum class StateFamily { werner, pseudo_werner };

inline XState family_state(StateFamily family, double f) {
    return family == StateFamily::werner ? werner_x(f) : pseudo_werner_x(f);
}

struct ThresholdOptions {
    double lower = -1.0;      // bracket; < 0 selects the family default
    double upper = 1.0;
    double horizon = 0.0;     // us; <= 0 selects 8 / min(Gamma_a, Gamma_b)
    std::size_t samples = 2000;
    std::size_t probe_points = 9;  // monotonicity probes across the bracket
    EventOptions events;
    double rtol = 1e-10;
};

class NonMonotoneError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Entanglement is lost within the horizon: the state starts separable or a
// sudden death is recorded. This predicate is true for f below the threshold.
inline bool loses_entanglement(StateFamily family, double f, const XStateModel& model,
                               const std::vector<double>& times, const ThresholdOptions& opt) {
    EvolveOptions eo;
    eo.rtol = opt.rtol;
    const auto traj = evolve_xstate(family_state(family, f), model, times, eo);
    const auto rep = detect_events(traj, opt.events);
    return rep.starts_separable || rep.died();
}

// Largest f (to within tol) for which the family loses its entanglement.
// Returns the upper bracket end when every probe loses entanglement.
inline double esd_threshold(const WaveguideParams& p, StateFamily family, double tol,
                            const ThresholdOptions& opt = {}) {
    if (!(tol > 0.0)) throw invalid_input("esd_threshold: tol must be positive");
    const double lo_default = family == StateFamily::werner ? 0.25 : 1.0 / 3.0;
    const double lo = opt.lower >= 0.0 ? opt.lower : lo_default;
    const double hi = opt.upper;
    if (!(hi > lo)) throw invalid_input("esd_threshold: empty bracket");

    const DerivedRates r = derive_rates(p);
    const XStateModel model(r, p);
    double horizon = opt.horizon;
    if (horizon <= 0.0) {
        const double slow = std::min(r.gamma_a, r.gamma_b);
        if (!(slow > 0.0)) throw invalid_input("esd_threshold: no decay channel; pass an explicit horizon");
        horizon = 8.0 / slow;
    }
    const auto times = sample_grid(horizon, horizon / static_cast<double>(std::max<std::size_t>(opt.samples, 2)));
    auto pred = [&](double f) { return loses_entanglement(family, f, model, times, opt); };

    const std::size_t m = std::max<std::size_t>(opt.probe_points, 2);
    std::vector<double> fs(m);
    std::vector<bool> vals(m);
    for (std::size_t k = 0; k < m; ++k) {
        fs[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(m - 1);
        vals[k] = pred(fs[k]);
    }
    std::size_t first_false = m;
    for (std::size_t k = 0; k < m; ++k)
        if (!vals[k]) {
            first_false = k;
            break;
        }
    for (std::size_t k = first_false; k < m; ++k) {
        if (vals[k]) {
            std::string pattern;
            for (std::size_t j = 0; j < m; ++j) pattern += vals[j] ? '1' : '0';
            throw NonMonotoneError("esd_threshold: predicate not monotone over the bracket (probe pattern " +
                                   pattern + ")");
        }
    }
    if (first_false == m) return hi;
    if (first_false == 0) return lo;

    double a = fs[first_false - 1], b = fs[first_false];  // pred(a) true, pred(b) false
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        (pred(mid) ? a : b) = mid;
    }
    return 0.5 * (a + b);
}

}  // namespace wgqed
