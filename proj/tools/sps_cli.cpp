// Command-line front end: figure presets, custom sweeps, the jittered-gate
// fidelity curve, the pulsed-HBT trace, and the analytic-oracle check suite.
//
// Exit codes: 0 success, 1 config/usage error, 2 numerical failure.
#include "sps/config.hpp"
#include "sps/dynamics.hpp"
#include "sps/gate.hpp"
#include "sps/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using nlohmann::json;

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw sps::ConfigError("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw sps::ConfigError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    if (!j.is_object()) throw sps::ConfigError("config must be a JSON object");
    return j;
}

void apply_workers(const json& j)
{
    // SPS_WORKERS in the environment wins over the config key.
    if (std::getenv("SPS_WORKERS") != nullptr) return;
    const int w = sps::workers_from_json(j);
    if (w > 0) sps::set_worker_count(w);
}

void reject_unknown(const json& j, const std::set<std::string>& known)
{
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw sps::ConfigError("unknown config key '" + key + "'");
    }
}

int run_figure_or_sweep(const std::string& preset_name, const std::string& config_path,
                        const std::string& out_dir, const std::string& out_name)
{
    sps::SweepSpec spec;
    if (!config_path.empty()) {
        const json j = load_json(config_path);
        apply_workers(j);
        spec = sps::sweep_spec_from_json(j);
    } else {
        spec = sps::figure_sweep_spec(sps::figure_preset_from_name(preset_name));
    }
    const auto result = sps::run_sweep(spec);
    const auto path = (std::filesystem::path(out_dir) / (out_name + ".csv")).string();
    sps::write_csv_file(sps::sweep_result_table(result), path);
    std::cout << path << "\n";
    return 0;
}

int run_gate(const std::string& config_path, const std::string& out_dir)
{
    std::vector<double> grid = sps::default_epsilon0_grid();
    int quad_points = 48;
    if (!config_path.empty()) {
        const json j = load_json(config_path);
        reject_unknown(j, {"comment", "eps0_grid", "quad_points", "workers"});
        apply_workers(j);
        if (j.contains("eps0_grid")) {
            grid.clear();
            for (const auto& v : j.at("eps0_grid")) {
                const double x = v.get<double>();
                if (x < 0.0) throw sps::ConfigError("eps0_grid values must be >= 0");
                grid.push_back(x);
            }
        }
        if (j.contains("quad_points")) {
            quad_points = j.at("quad_points").get<int>();
            if (quad_points < 32) throw sps::ConfigError("quad_points must be >= 32");
        }
    }
    const auto inputs = sps::gate_input_search_set();
    const auto curve = sps::min_fidelity_curve(grid, inputs, quad_points);

    sps::CsvTable t;
    t.header = {"epsilon0_over_tau", "min_fidelity", "visibility"};
    for (const auto& pt : curve) {
        t.rows.push_back({pt.epsilon0, pt.min_fidelity, pt.visibility});
    }
    const auto path = (std::filesystem::path(out_dir) / "gate.csv").string();
    sps::write_csv_file(t, path);

    const auto fit = sps::fit_fidelity_vs_visibility(curve);
    std::cout << path << "\n"
              << "rational fit F(V): c = (" << fit.c0 << ", " << fit.c1 << ", " << fit.c2
              << "), d = (1, " << fit.d1 << ", " << fit.d2
              << "), max residual = " << fit.max_residual << "\n";
    return 0;
}

int run_hbt(const std::string& config_path, const std::string& out_dir)
{
    // Defaults: the pulsed incoherent source with visible multi-pulse
    // correlation peaks (F_P = 0, Gamma_relax = 100, gamma_deph = 1,
    // width 0.05, peak Rabi 35, 6 pulses).
    double purcell = 0.0, gamma_relax = 100.0, gamma_deph = 1.0;
    double pulse_width = 0.05, pulse_peak = 35.0, tol = 1e-8;
    int n_pulses = 6;
    if (!config_path.empty()) {
        const json j = load_json(config_path);
        reject_unknown(j, {"comment", "purcell", "gamma_relax", "gamma_deph", "pulse_width",
                           "pulse_peak", "n_pulses", "tol", "workers"});
        apply_workers(j);
        auto get = [&](const char* key, double& slot) {
            if (j.contains(key)) {
                slot = j.at(key).get<double>();
                if (slot < 0.0) throw sps::ConfigError(std::string(key) + " must be >= 0");
            }
        };
        get("purcell", purcell);
        get("gamma_relax", gamma_relax);
        get("gamma_deph", gamma_deph);
        get("pulse_width", pulse_width);
        get("pulse_peak", pulse_peak);
        get("tol", tol);
        if (j.contains("n_pulses")) n_pulses = j.at("n_pulses").get<int>();
        if (n_pulses < 2) throw sps::ConfigError("n_pulses must be >= 2");
    }
    const auto model = sps::build_incoherent_model(
        1.0, purcell, gamma_relax, gamma_deph,
        sps::GaussianPulse{pulse_peak, 5.0 * pulse_width, pulse_width});
    const auto trace = sps::hbt_trace(model, n_pulses, {}, sps::HbtOptions{tol});

    sps::CsvTable t;
    t.header = {"tau", "G2_34"};
    for (std::size_t i = 0; i < trace.tau_grid.size(); ++i) {
        t.rows.push_back({trace.tau_grid[i], trace.values[i]});
    }
    const auto path = (std::filesystem::path(out_dir) / "hbt.csv").string();
    sps::write_csv_file(t, path);
    std::cout << path << "\n";
    return 0;
}

bool report(const char* name, bool ok)
{
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    return ok;
}

int run_validate()
{
    bool all = true;

    {  // adaptive integrator against exponential decay
        const sps::OdeRhs rhs = [](double, const sps::Vector& y) { return sps::Vector(-y); };
        sps::Vector y0(1);
        y0 << 1.0;
        const auto sol = sps::integrate(rhs, y0, 0.0, 5.0, 1e-10);
        all &= report("integrator_exponential_decay",
                      std::abs(sol.y_end()(0).real() - std::exp(-5.0)) < 1e-9);
    }

    {  // two-level emitter: steady-state-free decay of the upper level
        const auto model = sps::build_two_level_model(1.0, 0.0, 0.0);
        sps::Matrix rho0 = sps::Matrix::Zero(2, 2);
        rho0(1, 1) = 1.0;
        const auto traj = sps::evolve(model, rho0, 4.0, 1e-10);
        all &= report("lindblad_two_level_decay",
                      std::abs(traj.population(1, 4.0) - std::exp(-4.0)) < 1e-8);
    }

    {  // cw coherence decay from the regression correlator
        const double gamma_deph = 0.5;
        const double gamma = 0.5 * 1.0 + gamma_deph;  // e-g coherence decay rate
        auto model = sps::build_incoherent_model(1.0, 0.0, 100.0, gamma_deph,
                                                 sps::GaussianPulse{0.0, 0.0, 1.0});
        model.cw_rabi = 0.1;
        const auto traj = sps::evolve(model, sps::default_initial_state(model), 42.0, 1e-9);
        const std::vector<double> t_grid = {40.0};
        const auto tau_grid = sps::linspace(0.0, 2.0, 9);
        const auto g1 = sps::regression_correlator(model, traj, model.raising_op(),
                                                   model.lowering_op(), t_grid, tau_grid, 1e-9);
        const auto surface = sps::g2_34_surface(traj, g1);
        const double pss = traj.population(1, 40.0);
        bool ok = true;
        for (std::size_t k = 0; k < tau_grid.size(); ++k) {
            const double expect = pss * pss * sps::cw_g2(gamma, tau_grid[k]);
            ok &= std::abs(surface.values(0, k).real() - expect) < 1e-3 * pss * pss;
        }
        all &= report("cw_g2_analytic_oracle", ok);
    }

    {  // ideal gate success probability and sign flip
        std::mt19937 rng(7);
        std::normal_distribution<double> gauss;
        bool ok = true;
        for (int r = 0; r < 5; ++r) {
            std::array<sps::Complex, 4> a;
            double n2 = 0.0;
            for (auto& c : a) {
                c = sps::Complex(gauss(rng), gauss(rng));
                n2 += std::norm(c);
            }
            for (auto& c : a) c /= std::sqrt(n2);
            const sps::GateInput in{a[0], a[1], a[2], a[3]};
            const auto ps = sps::postselect_11(
                sps::apply_network(sps::gate_input_state(in), sps::cs_gate_network()));
            ok &= std::abs(ps.success_probability - 2.0 / 27.0) < 1e-9;
            ok &= std::abs(sps::jittered_gate_fidelity(in, 0.0) - 1.0) < 1e-9;
        }
        all &= report("ideal_gate_success_probability", ok);
    }

    {  // visibility against direct quadrature of the pairwise overlap
        const auto q = sps::gauss_legendre(64);
        bool ok = true;
        for (const double e0 : {0.3, 1.0, 2.5}) {
            double acc = 0.0;
            for (int i = 0; i < 64; ++i) {
                const double eps = 0.5 * e0 * (q.nodes[i] + 1.0);
                acc += 0.5 * q.weights[i] * std::norm(sps::JitterModel{1.0}.overlap(eps));
            }
            ok &= std::abs(acc - sps::visibility(e0, 1.0)) < 1e-6;
        }
        all &= report("visibility_overlap_average", ok);
    }

    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"single-photon-source figures and linear-optics gate curves"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", preset_name;

    auto* figure = app.add_subcommand("figure", "run a named figure preset");
    figure->add_option("preset", preset_name, "preset name (fig4, fig5, fig7, ...)")
        ->required();
    figure->add_option("--out", out_dir, "output directory");

    auto* sweep = app.add_subcommand("sweep", "run a sweep from a JSON config");
    sweep->add_option("--config", config_path, "JSON config path")->required();
    sweep->add_option("--out", out_dir, "output directory");

    auto* gate = app.add_subcommand("gate", "jittered controlled-sign gate fidelity curve");
    gate->add_option("--config", config_path, "JSON config path");
    gate->add_option("--out", out_dir, "output directory");

    auto* hbt = app.add_subcommand("hbt", "pulsed Hanbury Brown-Twiss correlation trace");
    hbt->add_option("--config", config_path, "JSON config path");
    hbt->add_option("--out", out_dir, "output directory");

    auto* validate = app.add_subcommand("validate", "run the analytic-oracle checks");
    (void)validate;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (figure->parsed()) return run_figure_or_sweep(preset_name, "", out_dir, preset_name);
        if (sweep->parsed()) return run_figure_or_sweep("", config_path, out_dir, "sweep");
        if (gate->parsed()) return run_gate(config_path, out_dir);
        if (hbt->parsed()) return run_hbt(config_path, out_dir);
        return run_validate();
    } catch (const sps::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const sps::ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
