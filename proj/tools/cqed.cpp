// cqed.cpp — command-line front end: mode tables, resonances, Green's
// function scans, dispersive series, pole sweeps, MSPT corrections and the
// Wigner-Weisskopf solver, emitted as reproducible CSV/JSON tables.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cqed/cc_modes.hpp"
#include "cqed/cf_modes.hpp"
#include "cqed/charfn.hpp"
#include "cqed/dispersive.hpp"
#include "cqed/greens.hpp"
#include "cqed/hybridize.hpp"
#include "cqed/io.hpp"
#include "cqed/params.hpp"
#include "cqed/validate.hpp"
#include "cqed/ww.hpp"

namespace {

using cqed::CircuitParams;
using cqed::io::Format;
using cqed::io::RunConfig;
using cqed::io::Table;

std::string output_with_suffix(const std::string& base, const std::string& suffix)
{
    if (base.empty()) return base;
    const auto dot = base.find_last_of('.');
    if (dot == std::string::npos) return base + suffix;
    return base.substr(0, dot) + suffix + base.substr(dot);
}

int run_modes(const RunConfig& cfg)
{
    Table t({"n", "omega_n", "phi_at_x0", "g_n"});
    cqed::io::echo_params(t, cfg.params);
    t.add_header("task", "modes");
    t.add_header("N", static_cast<double>(cfg.truncation));
    for (const auto& m : cqed::cc::modes(cfg.params, cfg.truncation))
        t.add_row({static_cast<double>(m.n), m.omega_n, m.phi_at_x0, m.g_n});
    t.write(cfg.output, cfg.format);
    return 0;
}

int run_resonances(const RunConfig& cfg)
{
    Table t({"n", "nu_n", "kappa_n", "residual"});
    cqed::io::echo_params(t, cfg.params);
    t.add_header("task", "resonances");
    t.add_header("N", static_cast<double>(cfg.truncation));
    for (const auto& r : cqed::cf::resonances(cfg.params, cfg.truncation))
        t.add_row({static_cast<double>(r.n), r.nu_n, r.kappa_n, r.residual});
    t.write(cfg.output, cfg.format);
    return 0;
}

int run_green(const RunConfig& cfg)
{
    Table t({"omega", "re_G", "im_G"});
    cqed::io::echo_params(t, cfg.params);
    t.add_header("task", "green");
    t.add_header("x", cfg.x);
    t.add_header("x_prime", cfg.x_prime);
    for (double w : cfg.omega_grid) {
        const auto g = cqed::greens::green_direct(cfg.params, cfg.x, cfg.x_prime, w);
        t.add_row({w, g.real(), g.imag()});
    }
    t.write(cfg.output, cfg.format);
    return 0;
}

int run_transmission(const RunConfig& cfg)
{
    Table t({"omega", "T2"});
    cqed::io::echo_params(t, cfg.params);
    t.add_header("task", "transmission");
    for (double w : cfg.omega_grid)
        t.add_row({w, cqed::greens::transmission(cfg.params, w)});
    t.write(cfg.output, cfg.format);
    return 0;
}

int run_dispersive(const RunConfig& cfg)
{
    auto emit = [&](const CircuitParams& p, const std::string& out_path) {
        cqed::dispersive::Options opt;
        opt.use_closed_frequencies = cfg.use_closed_frequencies;
        const auto series = cqed::dispersive::purcell_dispersive(p, cfg.truncation, opt);
        Table t({"n", "g_n", "delta_n", "kappa_n", "purcell_term", "lamb_term",
                 "purcell_partial", "lamb_partial"});
        cqed::io::echo_params(t, p);
        t.add_header("task", "dispersive");
        t.add_header("N", static_cast<double>(cfg.truncation));
        t.add_header("tail_exponent", series.tail_exponent);
        t.add_header("verdict", series.convergent ? "convergent" : "divergent");
        for (std::size_t i = 0; i < series.terms.size(); ++i) {
            const auto& tm = series.terms[i];
            t.add_row({static_cast<double>(tm.n), tm.g_n, tm.delta_n, tm.kappa_n,
                       tm.purcell_term, tm.lamb_term, series.purcell_partial[i],
                       series.lamb_partial[i]});
        }
        t.write(out_path, cfg.format);
    };

    if (cfg.chi_s_list.empty()) {
        emit(cfg.params, cfg.output);
        return 0;
    }
    for (double cs : cfg.chi_s_list) {
        CircuitParams p = cfg.params;
        p.chi_s_override = cs;
        emit(p, output_with_suffix(cfg.output, "_chis" + cqed::io::format_double(cs)));
    }
    return 0;
}

int run_poles(const RunConfig& cfg)
{
    cqed::charfn::PoleOptions opt;
    opt.max_truncation = std::max(cfg.truncation, 20000);
    const auto pole = cqed::charfn::qubit_pole(cfg.params, opt);
    Table t({"omega_j", "alpha_j", "beta_j", "lamb_shift", "N_used", "residual"});
    cqed::io::echo_params(t, cfg.params);
    t.add_header("task", "poles");
    t.add_row({cfg.params.omega_j, pole.alpha_j, pole.beta_j, pole.lamb_shift,
               static_cast<double>(pole.n_used), pole.residual});
    t.write(cfg.output, cfg.format);
    return 0;
}

int run_sweep(const RunConfig& cfg)
{
    const auto rows = cqed::charfn::sweep_qubit_frequency(
        cfg.params, cfg.omega_j_grid, cfg.truncation, cfg.jobs);
    Table t({"omega_j", "alpha_j", "beta_j", "lamb_shift", "N_used", "residual"});
    cqed::io::echo_params(t, cfg.params);
    t.add_header("task", "sweep");
    t.add_header("N", static_cast<double>(cfg.truncation));
    std::size_t failures = 0;
    std::string error_log;
    for (const auto& r : rows) {
        if (!r.ok) {
            ++failures;
            error_log += "omega_j=" + cqed::io::format_double(r.omega_j) + ": " + r.error + "\n";
            continue;
        }
        t.add_row({r.omega_j, r.alpha_j, r.beta_j, r.lamb_shift,
                   static_cast<double>(r.n_used), r.residual});
    }
    t.write(cfg.output, cfg.format);
    if (!error_log.empty() && !cfg.output.empty()) {
        std::ofstream log(cfg.output + ".errors.log");
        log << error_log;
    }
    return failures == rows.size() ? 1 : 0;
}

int run_mspt(const RunConfig& cfg)
{
    Table t({"omega_j", "beta_j", "beta_j_corrected"});
    cqed::io::echo_params(t, cfg.params);
    t.add_header("task", "mspt");
    t.add_header("N", static_cast<double>(cfg.truncation));
    t.add_header("include_mode_sum", cfg.mspt_include_mode_sum ? "true" : "false");
    std::vector<double> grid = cfg.omega_j_grid;
    if (grid.empty()) grid = {cfg.params.omega_j};
    for (double wj : grid) {
        CircuitParams p = cfg.params;
        p.omega_j = wj;
        const auto spec = cqed::hybrid::diagonalize(p, cfg.truncation);
        const auto corr = cqed::hybrid::mspt_correction(
            spec, p, cqed::hybrid::StateMoments::plus_state_vacuum(), cfg.mspt_include_mode_sum);
        t.add_row({wj, corr.beta_j, corr.beta_j_corrected});
    }
    t.write(cfg.output, cfg.format);
    return 0;
}

int run_ww(const RunConfig& cfg)
{
    using cqed::ww::CouplingProfile;
    const auto profile = cfg.ww_flat ? CouplingProfile::flat : CouplingProfile::suppressed;
    auto spec = cqed::ww::WwKernelSpec::from_params(cfg.params, profile, cfg.ww_omega_max);

    if (cfg.ww_flat) {
        // divergence report instead of a decay table
        const double k0 = cqed::ww::kernel_k0(spec);
        auto spec2 = spec;
        spec2.omega_max = 2.0 * spec.omega_max;
        const double k0_doubled = cqed::ww::kernel_k0(spec2);
        std::string report = "{\n"
            "  \"profile\": \"flat\",\n"
            "  \"diagnosis\": \"kernel integral grows without bound as omega_max increases\",\n"
            "  \"omega_max\": " + cqed::io::format_double(spec.omega_max) + ",\n"
            "  \"K0\": " + cqed::io::format_double(k0) + ",\n"
            "  \"K0_at_doubled_omega_max\": " + cqed::io::format_double(k0_doubled) + ",\n"
            "  \"growth_ratio\": " + cqed::io::format_double(k0_doubled / k0) + ",\n"
            "  \"markov_rate\": " + cqed::io::format_double(cqed::ww::markov_rate(spec)) + "\n"
            "}\n";
        if (cfg.output.empty()) {
            std::cout << report;
        } else {
            std::ofstream out(cfg.output);
            out << report;
        }
        return 0;
    }

    const auto grid = cqed::io::linspace(0.0, cfg.t_max, cfg.t_points);
    const auto decay = cqed::ww::decay_amplitude(spec, grid);
    Table t({"t", "re_ce", "im_ce", "ce2"});
    cqed::io::echo_params(t, cfg.params);
    t.add_header("task", "ww");
    t.add_header("profile", "suppressed");
    t.add_header("omega_max", spec.omega_max);
    t.add_header("step_check", decay.step_check);
    if (!decay.warning.empty()) t.add_header("warning", decay.warning);
    for (std::size_t i = 0; i < decay.t.size(); ++i)
        t.add_row({decay.t[i], decay.c[i].real(), decay.c[i].imag(), std::norm(decay.c[i])});
    t.write(cfg.output, cfg.format);
    return 0;
}

int run_validate(const RunConfig& cfg)
{
    const auto checks = cqed::validate::run_validation(cfg.params);
    bool all_pass = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
                  << "  value=" << cqed::io::format_double(c.value)
                  << " bound=" << cqed::io::format_double(c.bound);
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
        all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : 1;
}

int dispatch(const RunConfig& cfg)
{
    using cqed::io::Task;
    switch (cfg.task) {
        case Task::modes: return run_modes(cfg);
        case Task::resonances: return run_resonances(cfg);
        case Task::green: return run_green(cfg);
        case Task::transmission: return run_transmission(cfg);
        case Task::dispersive: return run_dispersive(cfg);
        case Task::poles: return run_poles(cfg);
        case Task::sweep: return run_sweep(cfg);
        case Task::mspt: return run_mspt(cfg);
        case Task::ww: return run_ww(cfg);
        case Task::validate: return run_validate(cfg);
    }
    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cqed — spectral engine for a transmon coupled to an open 1D resonator"};
    app.require_subcommand(1);

    RunConfig cfg;
    // precedence: built-in defaults < CQED_CONFIG < --config FILE < explicit flags;
    // the file paths are resolved before CLI11 writes flag values into cfg
    try {
        std::string config_path;
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
        if (config_path.empty()) {
            if (const char* env = std::getenv("CQED_CONFIG")) config_path = env;
        }
        if (!config_path.empty()) cfg = cqed::io::load_config_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error loading config: " << e.what() << "\n";
        return 1;
    }

    std::string config_path_opt;
    double wj_min = 0.0, wj_max = 0.0;
    int wj_points = 0;
    double w_min = 0.0, w_max = 0.0;
    int w_points = 0;
    std::vector<double> chi_s_list;
    std::string format_str;
    bool no_mode_sum = false;
    std::string profile = "suppressed";
    bool x_given = false, xp_given = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path_opt, "JSON run-config file");
        sub->add_option("--chi-R", cfg.params.chi_R, "right coupling capacitance");
        sub->add_option("--chi-L", cfg.params.chi_L, "left coupling capacitance");
        sub->add_option("--chi-j", cfg.params.chi_j, "transmon capacitance");
        sub->add_option("--chi-g", cfg.params.chi_g, "qubit coupling capacitance");
        sub->add_option_function<double>(
            "--chi-s", [&cfg](double v) { cfg.params.chi_s_override = v; },
            "override the spectral series capacitance");
        sub->add_option("--x0", cfg.params.x0, "qubit position in [0,1)");
        sub->add_option("--omega-j", cfg.params.omega_j, "transmon frequency");
        sub->add_option("--epsilon", cfg.params.epsilon, "nonlinearity sqrt(Ec/Ej)");
        sub->add_option("-N,--modes", cfg.truncation, "mode truncation");
        sub->add_option("-o,--output", cfg.output, "output file (stdout when empty)");
        sub->add_option("--format", format_str, "csv or json");
        sub->add_option("--jobs", cfg.jobs, "parallel sweep workers");
    };

    auto* modes = app.add_subcommand("modes", "CC eigenfrequencies, amplitudes, couplings");
    add_common(modes);
    auto* resonances = app.add_subcommand("resonances", "quasi-bound complex resonances");
    add_common(resonances);
    auto* green = app.add_subcommand("green", "Green's function on a frequency grid");
    add_common(green);
    green->add_option("--x", cfg.x, "field position")->each([&](const std::string&) { x_given = true; });
    green->add_option("--xp", cfg.x_prime, "source position")->each([&](const std::string&) { xp_given = true; });
    green->add_option("--w-min", w_min);
    green->add_option("--w-max", w_max);
    green->add_option("--w-points", w_points);
    auto* transmission = app.add_subcommand("transmission", "|T|^2 on a frequency grid");
    add_common(transmission);
    transmission->add_option("--w-min", w_min);
    transmission->add_option("--w-max", w_max);
    transmission->add_option("--w-points", w_points);
    auto* dispersive = app.add_subcommand("dispersive", "multimode Purcell/Lamb series");
    add_common(dispersive);
    dispersive->add_option("--chi-s-list", chi_s_list, "emit one table per chi_s value");
    dispersive->add_flag("--closed-frequencies", cfg.use_closed_frequencies,
                         "use CC omega_n instead of CF nu_n in the detunings");
    auto* poles = app.add_subcommand("poles", "qubit-like pole of D_j(s)");
    add_common(poles);
    auto* sweep = app.add_subcommand("sweep", "pole sweep over omega_j");
    add_common(sweep);
    sweep->add_option("--wj-min", wj_min);
    sweep->add_option("--wj-max", wj_max);
    sweep->add_option("--wj-points", wj_points);
    auto* mspt = app.add_subcommand("mspt", "hybridized frequencies + MSPT correction");
    add_common(mspt);
    mspt->add_option("--wj-min", wj_min);
    mspt->add_option("--wj-max", wj_max);
    mspt->add_option("--wj-points", wj_points);
    mspt->add_flag("--no-mode-sum", no_mode_sum, "drop the resonator-sector vacuum sum");
    auto* ww = app.add_subcommand("ww", "Wigner-Weisskopf decay");
    add_common(ww);
    ww->add_option("--profile", profile, "suppressed or flat");
    ww->add_option("--omega-max", cfg.ww_omega_max, "kernel quadrature cutoff");
    ww->add_option("--t-max", cfg.t_max, "time grid end");
    ww->add_option("--t-points", cfg.t_points, "time grid size");
    auto* validate = app.add_subcommand("validate", "cross-module consistency suite");
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    try {
        auto* sub = app.get_subcommands().front();
        cfg.task = cqed::io::task_from_string(sub->get_name());
        if (!format_str.empty()) cfg.format = cqed::io::format_from_string(format_str);
        if (wj_points > 0) cfg.omega_j_grid = cqed::io::linspace(wj_min, wj_max, wj_points);
        if (w_points > 0) cfg.omega_grid = cqed::io::linspace(w_min, w_max, w_points);
        if (!chi_s_list.empty()) cfg.chi_s_list = chi_s_list;
        if (no_mode_sum) cfg.mspt_include_mode_sum = false;
        if (profile == "flat") cfg.ww_flat = true;
        else if (profile != "suppressed") throw std::invalid_argument("unknown profile: " + profile);
        if (cfg.task == cqed::io::Task::green) {
            if (!x_given) cfg.x = cfg.params.x0;
            if (!xp_given) cfg.x_prime = cfg.params.x0;
        }
        if ((cfg.task == cqed::io::Task::green || cfg.task == cqed::io::Task::transmission)
            && cfg.omega_grid.empty())
            cfg.omega_grid = cqed::io::linspace(0.5, 12.0, 512);
        if (cfg.task == cqed::io::Task::sweep && cfg.omega_j_grid.empty())
            throw std::invalid_argument("sweep: provide --wj-min/--wj-max/--wj-points or a config grid");
        cfg.validate();
        return dispatch(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
