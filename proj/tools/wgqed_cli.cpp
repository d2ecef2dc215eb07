#include "wgqed_cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include <wgqed/cpwcalc.hpp>
#include <wgqed/entangle.hpp>
#include <wgqed/states.hpp>

namespace wgqed::cli {

using json = nlohmann::ordered_json;

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> vals;
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos) return vals;
    const std::string s = text.substr(first, text.find_last_not_of(" \t") - first + 1);

    auto number = [&](const std::string& tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw invalid_input("malformed number '" + tok + "' in '" + text + "'");
        }
        if (used != tok.size() || !std::isfinite(v)) throw invalid_input("malformed number '" + tok + "' in '" + text + "'");
        return v;
    };

    if (s.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw invalid_input("range must be start:stop:step, got '" + text + "'");
        const double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
        if (!(step > 0.0) || stop < start) throw invalid_input("range needs step > 0 and stop >= start: '" + text + "'");
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-6));
        for (long k = 0; k <= n; ++k) vals.push_back(start + static_cast<double>(k) * step);
        return vals;
    }
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) vals.push_back(number(p));
    return vals;
}

namespace {

struct Physics {
    double gamma_mhz = 5.0;
    double gamma_nr_mhz = 0.03;
    double detuning_mhz = 0.0;
    double coupling_mhz = 0.0;

    WaveguideParams params(double lambda_ratio) const {
        WaveguideParams p;
        p.gamma = from_mhz(gamma_mhz);
        p.gamma_nr = from_mhz(gamma_nr_mhz);
        p.detuning = from_mhz(detuning_mhz);
        p.coupling = from_mhz(coupling_mhz);
        p.lambda_ratio = lambda_ratio;
        p.validate();
        return p;
    }
};

struct Output {
    std::string path;
    std::string format = "csv";
};

void add_physics(CLI::App* sub, Physics& ph) {
    sub->add_option("--gamma", ph.gamma_mhz, "bare waveguide coupling, MHz (x 2pi)")->capture_default_str();
    sub->add_option("--gamma-nr", ph.gamma_nr_mhz, "intrinsic relaxation, MHz (x 2pi)")->capture_default_str();
    sub->add_option("--detuning", ph.detuning_mhz, "bare detuning omega_a - omega_b, MHz (x 2pi)")->capture_default_str();
    sub->add_option("--coupling", ph.coupling_mhz, "direct exchange g, MHz (x 2pi)")->capture_default_str();
}

void add_output(CLI::App* sub, Output& o, const std::string& default_format) {
    o.format = default_format;
    sub->add_option("--out", o.path, "output file (default: stdout)");
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

// Data is only written once the whole document exists, so a failed run never
// leaves a partial file behind.
void emit(const Output& o, const std::string& doc, std::ostream& out) {
    if (o.path.empty()) {
        out << doc;
        return;
    }
    std::ofstream f(o.path, std::ios::binary | std::ios::trunc);
    if (!f) throw invalid_input("cannot open output file '" + o.path + "'");
    f << doc;
    if (!f) throw std::runtime_error("failed writing '" + o.path + "'");
}

json rates_json(const DerivedRates& r) {
    json j;
    j["phi"] = r.phi;
    j["Gamma_a_MHz"] = to_mhz(r.gamma_a);
    j["Gamma_b_MHz"] = to_mhz(r.gamma_b);
    j["Gamma_col_MHz"] = to_mhz(r.gamma_col);
    j["g_x_MHz"] = to_mhz(r.g_x);
    j["delta_omega1_MHz"] = to_mhz(r.shift_a);
    j["delta_omega2_MHz"] = to_mhz(r.shift_b);
    j["raw"] = {{"units", "rad/us"},
                {"Gamma_a", r.gamma_a},
                {"Gamma_b", r.gamma_b},
                {"Gamma_col", r.gamma_col},
                {"g_x", r.g_x},
                {"delta_omega1", r.shift_a},
                {"delta_omega2", r.shift_b}};
    return j;
}

json matrix_json(const auto& m) {
    const std::size_t n = std::remove_cvref_t<decltype(m)>::dim;
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json rr = json::array(), ii = json::array();
        for (std::size_t j = 0; j < n; ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"re", re}, {"im", im}};
}

StateFamily parse_family(const std::string& s) { return s == "werner" ? StateFamily::werner : StateFamily::pseudo_werner; }

// ---------------------------------------------------------------------------

struct RatesCmd {
    Physics ph;
    std::string lambda = "1:3:0.01";
    Output out;
};

int cmd_rates(const RatesCmd& c, std::ostream& os) {
    const auto ratios = parse_values(c.lambda);
    std::ostringstream doc;
    if (c.out.format == "csv") {
        doc << "lambda_ratio,phi,Gamma_a_MHz,Gamma_b_MHz,Gamma_col_MHz,g_x_MHz,delta_omega1_MHz,delta_omega2_MHz\n";
        for (double lr : ratios) {
            const auto r = derive_rates(c.ph.params(lr));
            doc << fmt(lr) << ',' << fmt(r.phi) << ',' << fmt(to_mhz(r.gamma_a)) << ',' << fmt(to_mhz(r.gamma_b)) << ','
                << fmt(to_mhz(r.gamma_col)) << ',' << fmt(to_mhz(r.g_x)) << ',' << fmt(to_mhz(r.shift_a)) << ','
                << fmt(to_mhz(r.shift_b)) << '\n';
        }
    } else {
        json j;
        j["generated_by"] = kGeneratedBy;
        j["units"] = "rates as linear frequency in MHz (angular rate / 2pi)";
        json rows = json::array();
        for (double lr : ratios) {
            json row = rates_json(derive_rates(c.ph.params(lr)));
            row["lambda_ratio"] = lr;
            rows.push_back(row);
        }
        j["rows"] = rows;
        doc << j.dump(2) << '\n';
    }
    emit(c.out, doc.str(), os);
    return kOk;
}

struct EvolveCmd {
    Physics ph;
    std::string state = "werner";
    double f = 0.9;
    double lambda_ratio = 1.5;
    double t_max = 0.0;
    double sample_dt = 0.0;
    double rtol = 1e-10;
    bool full = false;
    double epsilon = 1e-6;
    std::size_t hold = 5;
    Output out;
};

struct RunResult {
    Trajectory<XState> traj;
    EsdReport report;
    TrajectoryHealth health;
    bool healthy = true;
};

RunResult run_scenario(const EvolveCmd& c, double f, double lambda_ratio) {
    const WaveguideParams p = c.ph.params(lambda_ratio);
    const XState x0 = family_state(parse_family(c.state), f);
    EvolveOptions eo;
    eo.t_max = c.t_max;
    eo.sample_dt = c.sample_dt;
    eo.rtol = c.rtol;

    RunResult res;
    const double tol = std::max(kStructuralTol, 10.0 * c.rtol);
    if (c.full) {
        const auto full = evolve_full(DensityMatrix<4>(x0.to_matrix()), p, eo);
        res.health = check_trajectory(full);
        res.traj.times = full.times;
        res.traj.concurrence = full.concurrence;
        res.traj.rates = full.rates;
        for (const auto& m : full.states) res.traj.states.push_back(XState::from_matrix(m));
        res.healthy = res.health.ok(tol, 1e-8) && res.health.max_x_leakage <= 1e-10;
    } else {
        res.traj = evolve_xstate(x0, p, eo);
        res.health = check_trajectory(res.traj);
        res.healthy = res.health.ok(tol, 1e-8);
    }
    res.report = detect_events(res.traj, EventOptions{c.epsilon, c.hold});
    return res;
}

json evolve_config_json(const EvolveCmd& c) {
    return {{"state", c.state},         {"f", c.f},
            {"lambda_ratio", c.lambda_ratio}, {"gamma_MHz", c.ph.gamma_mhz},
            {"gamma_nr_MHz", c.ph.gamma_nr_mhz}, {"detuning_MHz", c.ph.detuning_mhz},
            {"coupling_MHz", c.ph.coupling_mhz}, {"t_max_us", c.t_max},
            {"sample_dt_us", c.sample_dt}, {"rtol", c.rtol},
            {"full", c.full},           {"epsilon", c.epsilon},
            {"hold", c.hold}};
}

int cmd_evolve(const EvolveCmd& c, std::ostream& os, std::ostream& es) {
    const RunResult res = run_scenario(c, c.f, c.lambda_ratio);
    const auto& t = res.traj;
    std::ostringstream doc;
    if (c.out.format == "csv") {
        doc << "t_us,C,a,b,c,d,re_z,im_z,re_w,im_w\n";
        for (std::size_t k = 0; k < t.size(); ++k) {
            const XState& x = t.states[k];
            doc << fmt(t.times[k]) << ',' << fmt(t.concurrence[k]) << ',' << fmt(x.a) << ',' << fmt(x.b) << ','
                << fmt(x.c) << ',' << fmt(x.d) << ',' << fmt(x.z.real()) << ',' << fmt(x.z.imag()) << ','
                << fmt(x.w.real()) << ',' << fmt(x.w.imag()) << '\n';
        }
    } else {
        json j;
        j["generated_by"] = kGeneratedBy;
        j["config"] = evolve_config_json(c);
        j["rates"] = rates_json(t.rates);
        j["esd"] = {{"death_times", res.report.death_times},
                    {"revival_times", res.report.revival_times},
                    {"final_concurrence", res.report.final_concurrence},
                    {"starts_separable", res.report.starts_separable}};
        j["health"] = {{"max_trace_drift", res.health.max_trace_drift},
                       {"min_eigenvalue", res.health.min_eigenvalue},
                       {"max_x_leakage", res.health.max_x_leakage}};
        json samples;
        std::vector<double> a, b, cc, d, rz, iz, rw, iw;
        for (const auto& x : t.states) {
            a.push_back(x.a);
            b.push_back(x.b);
            cc.push_back(x.c);
            d.push_back(x.d);
            rz.push_back(x.z.real());
            iz.push_back(x.z.imag());
            rw.push_back(x.w.real());
            iw.push_back(x.w.imag());
        }
        samples["t_us"] = t.times;
        samples["C"] = t.concurrence;
        samples["a"] = a;
        samples["b"] = b;
        samples["c"] = cc;
        samples["d"] = d;
        samples["re_z"] = rz;
        samples["im_z"] = iz;
        samples["re_w"] = rw;
        samples["im_w"] = iw;
        j["samples"] = samples;
        doc << j.dump(2) << '\n';
    }
    emit(c.out, doc.str(), os);
    if (!res.healthy) {
        es << "invariant violation: trace drift " << fmt(res.health.max_trace_drift) << ", min eigenvalue "
           << fmt(res.health.min_eigenvalue) << '\n';
        return kInvariant;
    }
    return kOk;
}

struct ScanCmd {
    EvolveCmd base;
    std::string f_values = "0.6,0.714,0.8";
    std::string lambda_values = "2";
    unsigned jobs = 1;
};

int cmd_scan(const ScanCmd& c, std::ostream& os, std::ostream& es) {
    const auto fs = parse_values(c.f_values);
    const auto lrs = parse_values(c.lambda_values);
    struct Cell {
        double f = 0.0, lr = 0.0;
        std::optional<RunResult> result;
        std::string error;
        int code = kOk;
    };
    std::vector<Cell> cells;
    for (double f : fs)
        for (double lr : lrs) cells.push_back({f, lr, std::nullopt, {}, kOk});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            Cell& cell = cells[i];
            try {
                cell.result = run_scenario(c.base, cell.f, cell.lr);
                if (!cell.result->healthy) cell.code = kInvariant;
            } catch (const integration_failure& e) {
                cell.error = e.what();
                cell.code = kNumerical;
            } catch (const std::exception& e) {
                cell.error = e.what();
                cell.code = kUsage;
            }
        }
    };
    const unsigned jobs = std::max(1u, c.jobs);
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::ostringstream doc;
    doc << "f,lambda_ratio,C0,died,revived,t_death,t_revival,C_final,status\n";
    int code = kOk;
    for (const auto& cell : cells) {
        doc << fmt(cell.f) << ',' << fmt(cell.lr) << ',';
        if (cell.result) {
            const auto& rep = cell.result->report;
            doc << fmt(cell.result->traj.concurrence.front()) << ',' << (rep.died() ? 1 : 0) << ','
                << (rep.revived() ? 1 : 0) << ',' << fmt(rep.died() ? rep.death_times.front() : nan) << ','
                << fmt(rep.revived() ? rep.revival_times.front() : nan) << ',' << fmt(rep.final_concurrence) << ','
                << (cell.code == kOk ? "ok" : "invariant_violation") << '\n';
        } else {
            doc << "nan,,,nan,nan,nan,failed\n";
            es << "cell f=" << fmt(cell.f) << " lambda_ratio=" << fmt(cell.lr) << " failed: " << cell.error << '\n';
        }
        code = std::max(code, cell.code);
    }
    emit(c.base.out, doc.str(), os);
    return code;
}

struct PrepareCmd {
    double f = 0.8;
    bool dissipative = false;
    double g_mhz = 10.0;
    double g_bc_mhz = 10.0;
    double gamma_nr_mhz = 0.03;
    Output out;
};

int cmd_prepare(const PrepareCmd& c, std::ostream& os) {
    PrepConfig cfg;
    cfg.f = c.f;
    cfg.with_dissipation = c.dissipative;
    cfg.g_strength = from_mhz(c.g_mhz);
    cfg.g_bc_strength = from_mhz(c.g_bc_mhz);
    cfg.gamma_nr = from_mhz(c.gamma_nr_mhz);
    const PrepResult r = prepare_pw(cfg);

    json j;
    j["generated_by"] = kGeneratedBy;
    j["config"] = {{"f", c.f},
                   {"mode", c.dissipative ? "dissipative" : "exact"},
                   {"g_MHz", c.g_mhz},
                   {"g_bc_MHz", c.g_bc_mhz},
                   {"gamma_nr_MHz", c.gamma_nr_mhz}};
    j["rho1"] = matrix_json(r.rho1);
    j["rho2"] = matrix_json(r.rho2);
    j["rho3"] = matrix_json(r.rho3);
    j["rho_out"] = matrix_json(r.rho_out);
    j["fidelity"] = r.fidelity;
    if (c.dissipative) j["gate_durations_us"] = {{"t1", r.t1}, {"t2", r.t2}};
    emit(c.out, j.dump(2) + "\n", os);
    return kOk;
}

struct MixCmd {
    double omega_mhz = 30.0;
    double gamma_nr_mhz = 0.03;
    double pulse = 35.0;
    double wait = 0.0;
    std::optional<double> target_f;
    bool flip = false;
    double sample_dt = 0.01;
    Output out;
};

int cmd_mix(const MixCmd& c, std::ostream& os, std::ostream& es) {
    RabiConfig cfg;
    cfg.omega = from_mhz(c.omega_mhz);
    cfg.gamma_nr = from_mhz(c.gamma_nr_mhz);
    cfg.pulse_duration = c.pulse;
    cfg.wait_duration = c.target_f ? wait_time_for_f(*c.target_f, cfg.gamma_nr) : c.wait;
    cfg.flip = c.flip;
    cfg.sample_dt = c.sample_dt;
    const MixResult r = mixed_qubit(cfg);
    for (const auto& w : r.warnings) es << "warning: " << w << '\n';

    std::ostringstream doc;
    if (c.out.format == "csv") {
        doc << "t_us,rho_gg,rho_ee,abs_rho_eg\n";
        for (std::size_t k = 0; k < r.times.size(); ++k)
            doc << fmt(r.times[k]) << ',' << fmt(r.rho_gg[k]) << ',' << fmt(r.rho_ee[k]) << ','
                << fmt(r.abs_rho_eg[k]) << '\n';
        emit(c.out, doc.str(), os);
        if (!c.out.path.empty()) os << "f_achieved=" << fmt(r.f_achieved) << '\n';
        else es << "f_achieved=" << fmt(r.f_achieved) << '\n';
    } else {
        json j;
        j["generated_by"] = kGeneratedBy;
        j["config"] = {{"omega_MHz", c.omega_mhz}, {"gamma_nr_MHz", c.gamma_nr_mhz}, {"pulse_us", c.pulse},
                       {"wait_us", cfg.wait_duration}, {"flip", c.flip}, {"sample_dt_us", c.sample_dt}};
        j["f_achieved"] = r.f_achieved;
        j["rho_final"] = matrix_json(r.rho_final);
        j["samples"] = {{"t_us", r.times}, {"rho_gg", r.rho_gg}, {"rho_ee", r.rho_ee}, {"abs_rho_eg", r.abs_rho_eg}};
        emit(c.out, j.dump(2) + "\n", os);
    }
    return kOk;
}

struct CpwCmd {
    cpw::Geometry geom;
    std::optional<double> freq_ghz;
    double x2_mm = 18.4;
    Output out;
};

int cmd_cpw(const CpwCmd& c, std::ostream& os) {
    const auto d = cpw::derive(c.geom);
    std::optional<double> lam_mm, ratio;
    if (c.freq_ghz) {
        lam_mm = cpw::wavelength(kTwoPi * *c.freq_ghz * 1e9, d.v_ph) * 1e3;
        ratio = cpw::lambda_ratio_for_freq(*c.freq_ghz, c.geom, c.x2_mm);
    }
    std::ostringstream doc;
    if (c.out.format == "csv") {
        doc << "center_width_um,gap_width_um,eps_r,z0_ohm,eps_eff,v_ph_m_per_s";
        if (c.freq_ghz) doc << ",freq_GHz,lambda_mm,x2_mm,lambda_ratio";
        doc << '\n'
            << fmt(c.geom.center_width) << ',' << fmt(c.geom.gap_width) << ',' << fmt(c.geom.eps_r) << ','
            << fmt(d.z0) << ',' << fmt(d.eps_eff) << ',' << fmt(d.v_ph);
        if (c.freq_ghz) doc << ',' << fmt(*c.freq_ghz) << ',' << fmt(*lam_mm) << ',' << fmt(c.x2_mm) << ',' << fmt(*ratio);
        doc << '\n';
    } else {
        json j;
        j["generated_by"] = kGeneratedBy;
        j["geometry"] = {{"center_width_um", c.geom.center_width},
                         {"gap_width_um", c.geom.gap_width},
                         {"eps_r", c.geom.eps_r}};
        j["z0_ohm"] = d.z0;
        j["eps_eff"] = d.eps_eff;
        j["v_ph_m_per_s"] = d.v_ph;
        if (c.freq_ghz) {
            j["freq_GHz"] = *c.freq_ghz;
            j["lambda_mm"] = *lam_mm;
            j["x2_mm"] = c.x2_mm;
            j["x1_mm"] = cpw::x1_for(c.x2_mm);
            j["lambda_ratio"] = *ratio;
        }
        doc << j.dump(2) << '\n';
    }
    emit(c.out, doc.str(), os);
    return kOk;
}

void add_evolve_options(CLI::App* sub, EvolveCmd& c) {
    add_physics(sub, c.ph);
    sub->add_option("--state", c.state, "initial state family")
        ->check(CLI::IsMember({"werner", "pw"}))
        ->capture_default_str();
    sub->add_option("--t-max", c.t_max, "integration horizon, us (default 8/gamma)");
    sub->add_option("--sample-dt", c.sample_dt, "sampling interval, us (default t_max/1000)");
    sub->add_option("--rtol", c.rtol, "relative tolerance")->capture_default_str();
    sub->add_flag("--full", c.full, "integrate the full 4x4 density matrix");
    sub->add_option("--epsilon", c.epsilon, "zero threshold for concurrence")->capture_default_str();
    sub->add_option("--hold", c.hold, "samples at zero that make a death")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement dynamics of two qubits in front of a mirror", "wgqed"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI configuration file; [section] names match subcommands");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_version_flag("--version", kGeneratedBy);

    RatesCmd rates;
    auto* s_rates = app.add_subcommand("rates", "tabulate decay rates and couplings versus lambda/x2");
    add_physics(s_rates, rates.ph);
    s_rates->add_option("--lambda-ratio", rates.lambda, "value, list, or start:stop:step")->capture_default_str();
    add_output(s_rates, rates.out, "csv");

    EvolveCmd evolve;
    auto* s_evolve = app.add_subcommand("evolve", "integrate one scenario");
    add_evolve_options(s_evolve, evolve);
    s_evolve->add_option("--f", evolve.f, "fidelity factor")->capture_default_str();
    s_evolve->add_option("--lambda-ratio", evolve.lambda_ratio, "lambda/x2")->capture_default_str();
    add_output(s_evolve, evolve.out, "csv");

    ScanCmd scan;
    auto* s_scan = app.add_subcommand("scan", "grid of scenarios over f and lambda/x2");
    add_evolve_options(s_scan, scan.base);
    s_scan->add_option("--f", scan.f_values, "f values: list or start:stop:step")->capture_default_str();
    s_scan->add_option("--lambda-ratio", scan.lambda_values, "lambda/x2 values")->capture_default_str();
    s_scan->add_option("--jobs", scan.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    add_output(s_scan, scan.base.out, "csv");
    s_scan->get_option("--format")->check(CLI::IsMember({"csv"}));

    PrepareCmd prep;
    auto* s_prep = app.add_subcommand("prepare", "three-qubit pseudo-Werner preparation");
    s_prep->add_option("--f", prep.f, "fidelity factor")->capture_default_str();
    s_prep->add_flag("--dissipative", prep.dissipative, "integrate the exchanges with intrinsic decay");
    s_prep->add_option("--g", prep.g_mhz, "a-b exchange strength, MHz (x 2pi)")->capture_default_str();
    s_prep->add_option("--g-bc", prep.g_bc_mhz, "b-c exchange strength, MHz (x 2pi)")->capture_default_str();
    s_prep->add_option("--gamma-nr", prep.gamma_nr_mhz, "intrinsic relaxation, MHz (x 2pi)")->capture_default_str();
    add_output(s_prep, prep.out, "json");
    s_prep->get_option("--format")->check(CLI::IsMember({"json"}));

    MixCmd mix;
    auto* s_mix = app.add_subcommand("mix", "mixed single-qubit state from a long Rabi pulse");
    s_mix->add_option("--omega", mix.omega_mhz, "Rabi frequency, MHz (x 2pi)")->capture_default_str();
    s_mix->add_option("--gamma-nr", mix.gamma_nr_mhz, "intrinsic relaxation, MHz (x 2pi)")->capture_default_str();
    s_mix->add_option("--pulse", mix.pulse, "pulse length, us")->capture_default_str();
    auto* wait_opt = s_mix->add_option("--wait", mix.wait, "wait after the pulse, us")->capture_default_str();
    s_mix->add_option("--target-f", mix.target_f, "choose the wait that yields this f")->excludes(wait_opt);
    s_mix->add_flag("--flip", mix.flip, "final pi pulse (f -> 1 - f)");
    s_mix->add_option("--sample-dt", mix.sample_dt, "sampling interval, us")->capture_default_str();
    add_output(s_mix, mix.out, "csv");

    CpwCmd cpwc;
    auto* s_cpw = app.add_subcommand("cpw", "coplanar waveguide impedance and phase velocity");
    s_cpw->add_option("width", cpwc.geom.center_width, "centre conductor width, um")->capture_default_str();
    s_cpw->add_option("gap", cpwc.geom.gap_width, "gap width, um")->capture_default_str();
    s_cpw->add_option("eps_r", cpwc.geom.eps_r, "substrate relative permittivity")->capture_default_str();
    s_cpw->add_option("--freq", cpwc.freq_ghz, "qubit frequency, GHz");
    s_cpw->add_option("--x2", cpwc.x2_mm, "qubit spacing, mm")->capture_default_str();
    add_output(s_cpw, cpwc.out, "json");

    std::vector<const char*> argv{"wgqed"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*s_rates) return cmd_rates(rates, out);
        if (*s_evolve) return cmd_evolve(evolve, out, err);
        if (*s_scan) return cmd_scan(scan, out, err);
        if (*s_prep) return cmd_prepare(prep, out);
        if (*s_mix) return cmd_mix(mix, out, err);
        if (*s_cpw) return cmd_cpw(cpwc, out);
    } catch (const integration_failure& e) {
        err << "integration failure: " << e.what() << " (last good t = " << fmt(e.last_good_time()) << " us)\n";
        return kNumerical;
    } catch (const invariant_violation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kInvariant;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace wgqed::cli
