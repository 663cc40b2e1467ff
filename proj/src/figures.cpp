#include "sps/figures.hpp"

#include "sps/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace sps {

double collection_efficiency_incoherent(double purcell)
{
    if (purcell < 0.0) throw ParameterError("collection efficiency: F_P >= 0");
    return purcell / (purcell + 1.0);
}

namespace {

double cavity_kappa(const EmitterModel& model)
{
    if (model.dim != 4) throw ParameterError("expected a 4-level Raman model");
    const Matrix leak = projector(4, 3, 1);  // sigma_42
    for (const auto& d : model.dissipators) {
        if ((d.jump - leak).cwiseAbs().maxCoeff() < 1e-12) return 0.5 * d.rate;
    }
    return 0.0;
}

}  // namespace

double emitted_photons_raman(const EmitterModel& model, const Trajectory& trajectory)
{
    const double kappa = cavity_kappa(model);
    const double t_end = trajectory.t_end();
    const int n = 4096;
    const double h = t_end / n;
    double integral = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        integral += w * trajectory.population(1, i * h);
    }
    integral *= h;
    const double photons = 2.0 * kappa * integral;

    const Matrix rho_end = trajectory.state(t_end);
    const double residual = std::real(rho_end(1, 1)) + std::real(rho_end(2, 2));
    if (photons > 0.0 && residual > 1e-4 * photons) {
        throw WindowError("emitted_photons_raman: emission truncated by the window");
    }
    return photons;
}

double raman_photon_number(const EmitterModel& model, double tol)
{
    Matrix rho0 = Matrix::Zero(4, 4);
    rho0(0, 0) = 1.0;
    const double window = emission_window(model, rho0, 1e-7, tol);
    return emitted_photons_raman(model, evolve(model, rho0, window, tol));
}

namespace {

// Excited population left right after the pulse; incoherent pi-pulse figure.
double post_pulse_excitation(const EmitterModel& model, double tol)
{
    Matrix rho0 = Matrix::Zero(model.dim, model.dim);
    rho0(0, 0) = 1.0;
    const double t_end = pulse_end_time(model);
    const Trajectory traj = evolve(model, rho0, t_end, tol);
    double p = traj.population(1, t_end);
    if (model.dim >= 3) p += traj.population(2, t_end);
    return p;
}

}  // namespace

double calibrate_peak_rabi(const std::function<EmitterModel(double)>& make_model,
                           double rabi_lo, double rabi_hi,
                           const CalibrationOptions& opts)
{
    if (rabi_lo < 0.0 || rabi_hi < rabi_lo) {
        throw ParameterError("calibrate_peak_rabi: bad search range");
    }
    if (rabi_hi == rabi_lo) return rabi_lo;  // degenerate range: trust the caller

    if (opts.kind == CalibrationKind::saturation) {
        auto photons = [&](double rabi) {
            return raman_photon_number(make_model(rabi), opts.ode_tol);
        };
        const double plateau = photons(rabi_hi);
        const double near_top = photons(0.85 * rabi_hi);
        if (plateau <= 0.0 || std::abs(near_top - plateau) > 0.01 * plateau) {
            throw CalibrationError("calibrate_peak_rabi: no saturation plateau in range",
                                   {0.85 * rabi_hi, rabi_hi}, {near_top, plateau});
        }
        const double target = opts.saturation_threshold * plateau;
        if (photons(rabi_lo) >= target) return rabi_lo;
        double lo = rabi_lo, hi = rabi_hi;
        while (hi - lo > opts.rel_tol * rabi_hi) {
            const double mid = 0.5 * (lo + hi);
            (photons(mid) >= target ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // Golden-section maximization of the post-pulse excited population.
    auto f = [&](double rabi) {
        return post_pulse_excitation(make_model(rabi), opts.ode_tol);
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = rabi_lo, b = rabi_hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > opts.rel_tol * rabi_hi) {
        if (f1 < f2) {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = f(x2);
        } else {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

FigurePreset figure_preset_from_name(const std::string& name)
{
    if (name == "fig4") return FigurePreset::fig4;
    if (name == "fig5") return FigurePreset::fig5;
    if (name == "fig7") return FigurePreset::fig7;
    if (name == "fig7inset") return FigurePreset::fig7inset;
    if (name == "fig8") return FigurePreset::fig8;
    if (name == "fig9") return FigurePreset::fig9;
    if (name == "fig10") return FigurePreset::fig10;
    throw ParameterError("unknown figure preset: " + name);
}

std::string figure_preset_name(FigurePreset preset)
{
    switch (preset) {
        case FigurePreset::fig4: return "fig4";
        case FigurePreset::fig5: return "fig5";
        case FigurePreset::fig7: return "fig7";
        case FigurePreset::fig7inset: return "fig7inset";
        case FigurePreset::fig8: return "fig8";
        case FigurePreset::fig9: return "fig9";
        case FigurePreset::fig10: return "fig10";
    }
    throw ParameterError("unknown figure preset");
}

SweepSpec figure_sweep_spec(FigurePreset preset)
{
    SweepSpec s;
    switch (preset) {
        case FigurePreset::fig4:
            // Incoherent source vs cavity-enhanced decay rate; pi-pulse per point.
            s.kind = SweepSpec::ModelKind::incoherent;
            s.parameter_name = "F_P";
            s.values = {0, 1, 2, 4, 7, 10, 15, 20, 30, 50, 75, 100};
            s.gamma_relax = 100.0;
            s.pulse_width = 0.01;
            s.calibrate = true;
            s.calibration_kind = CalibrationKind::pi_pulse;
            s.calib_lo = 40.0;
            s.calib_hi = 200.0;
            break;
        case FigurePreset::fig5:
            s.kind = SweepSpec::ModelKind::incoherent;
            s.parameter_name = "gamma_deph";
            s.values = linspace(0.0, 2.0, 13);
            s.purcell = 9.0;
            s.gamma_relax = 100.0;
            s.pulse_width = 0.01;
            s.pulse_peak = 103.0;
            break;
        case FigurePreset::fig7:
            s.kind = SweepSpec::ModelKind::raman;
            s.parameter_name = "F_P";
            s.values = {1, 2, 4, 6, 8, 10, 14, 20, 25, 30, 35, 40};
            s.kappa_cav = 10.0;
            s.pulse_width = 10.0;
            s.calibrate = true;
            s.calib_lo = 0.3;
            s.calib_hi = 4.0;
            break;
        case FigurePreset::fig7inset:
            s.kind = SweepSpec::ModelKind::raman;
            s.parameter_name = "kappa_cav";
            s.values = {5, 10, 20};
            s.purcell = 20.0;
            s.pulse_width = 10.0;
            s.calibrate = true;
            s.calib_lo = 0.5;
            s.calib_hi = 4.5;
            break;
        case FigurePreset::fig8:
            s.kind = SweepSpec::ModelKind::raman;
            s.parameter_name = "pulse_width";
            s.values = {0.3, 0.4, 0.55, 0.75, 1.0, 1.4, 2.0, 3.0, 4.5, 6.5, 10.0};
            s.purcell = 20.0;
            s.kappa_cav = 10.0;
            s.calibrate = true;
            s.calib_lo = 1.0;
            s.calib_hi = 14.0;
            break;
        case FigurePreset::fig9:
            s.kind = SweepSpec::ModelKind::raman;
            s.parameter_name = "theta";
            s.values = linspace(0.0, M_PI_2, 13);
            s.purcell = 20.0;
            s.kappa_cav = 10.0;
            s.pulse_width = 1.0;
            s.pulse_peak = 6.2;
            break;
        case FigurePreset::fig10:
            s.kind = SweepSpec::ModelKind::raman;
            s.parameter_name = "gamma_deph";
            s.values = linspace(0.0, 1.5, 13);
            s.purcell = 20.0;
            s.kappa_cav = 10.0;
            s.pulse_width = 1.0;
            s.pulse_peak = 6.2;
            break;
    }
    return s;
}

namespace {

struct PointParams {
    double purcell, gamma_deph, kappa_cav, theta, pulse_width;
};

PointParams apply_parameter(const SweepSpec& spec, double value)
{
    PointParams p{spec.purcell, spec.gamma_deph, spec.kappa_cav, spec.theta,
                  spec.pulse_width};
    if (spec.parameter_name == "purcell" || spec.parameter_name == "F_P") p.purcell = value;
    else if (spec.parameter_name == "gamma_deph") p.gamma_deph = value;
    else if (spec.parameter_name == "kappa_cav") p.kappa_cav = value;
    else if (spec.parameter_name == "theta") p.theta = value;
    else if (spec.parameter_name == "pulse_width") p.pulse_width = value;
    else throw ParameterError("unknown sweep parameter: " + spec.parameter_name);
    return p;
}

}  // namespace

EmitterModel sweep_point_model(const SweepSpec& spec, double parameter_value,
                               double peak_rabi)
{
    const PointParams p = apply_parameter(spec, parameter_value);
    // pulse_width is the 1/e half-width of the envelope exp(-t^2/w^2), so
    // the Gaussian sigma is w/sqrt(2).
    const double sigma = p.pulse_width / std::sqrt(2.0);
    GaussianPulse pulse{peak_rabi, spec.pulse_center_widths * p.pulse_width, sigma};
    if (spec.kind == SweepSpec::ModelKind::incoherent) {
        return build_incoherent_model(spec.gamma_spon, p.purcell, spec.gamma_relax,
                                      p.gamma_deph, pulse);
    }
    const double g = coupling_for_purcell(p.purcell, p.kappa_cav, spec.gamma_spon);
    return build_raman_model(spec.gamma_spon, g, p.kappa_cav, p.theta,
                             p.gamma_deph, pulse);
}

FigureOfMerit evaluate_sweep_point(const SweepSpec& spec, double parameter_value)
{
    FigureOfMerit fom;
    double peak = spec.pulse_peak;
    if (spec.calibrate) {
        CalibrationOptions copts;
        copts.kind = spec.calibration_kind;
        copts.ode_tol = spec.tol;
        peak = calibrate_peak_rabi(
            [&](double rabi) { return sweep_point_model(spec, parameter_value, rabi); },
            spec.calib_lo, spec.calib_hi, copts);
    }
    fom.calibrated_peak_rabi = peak;

    const EmitterModel model = sweep_point_model(spec, parameter_value, peak);
    P34Options popts = spec.p34_options;
    popts.tol = spec.tol;
    fom.indistinguishability = p34(model, popts).indistinguishability;

    if (spec.kind == SweepSpec::ModelKind::incoherent) {
        const double purcell = apply_parameter(spec, parameter_value).purcell;
        fom.collection_efficiency = collection_efficiency_incoherent(purcell);
        fom.n_photons = 0.0;
    } else {
        fom.n_photons = raman_photon_number(model, spec.tol);
        fom.collection_efficiency = fom.n_photons;
    }
    return fom;
}

SweepResult run_sweep(const SweepSpec& spec)
{
    SweepResult result;
    result.parameter_name = spec.parameter_name;
    result.parameter_values = spec.values;
    result.points.resize(spec.values.size());
    if (spec.kind == SweepSpec::ModelKind::raman) {
        result.aux_name = "g";
        result.aux_values.resize(spec.values.size());
    }
    parallel_for(spec.values.size(), [&](std::size_t i) {
        result.points[i] = evaluate_sweep_point(spec, spec.values[i]);
        if (!result.aux_name.empty()) {
            const PointParams p = apply_parameter(spec, spec.values[i]);
            result.aux_values[i] =
                coupling_for_purcell(p.purcell, p.kappa_cav, spec.gamma_spon);
        }
    });
    return result;
}

}  // namespace sps
