// Figures of merit (collection efficiency, emitted photon number), peak-Rabi
// calibration, and the parameter sweeps behind the figure presets.
#ifndef SPS_FIGURES_HPP
#define SPS_FIGURES_HPP

#include "sps/interference.hpp"

#include <string>

namespace sps {

struct CalibrationError : std::runtime_error {
    std::vector<double> probed_rabi;
    std::vector<double> probed_value;
    CalibrationError(const std::string& what, std::vector<double> rabi,
                     std::vector<double> value)
        : std::runtime_error(what),
          probed_rabi(std::move(rabi)),
          probed_value(std::move(value)) {}
};

struct FigureOfMerit {
    double indistinguishability = 0.0;
    double collection_efficiency = 0.0;
    double n_photons = 0.0;
    double calibrated_peak_rabi = 0.0;
};

struct SweepResult {
    std::string parameter_name;
    std::vector<double> parameter_values;
    std::vector<FigureOfMerit> points;
    std::string aux_name;          // extra per-point column (e.g. g for F_P sweeps)
    std::vector<double> aux_values;
};

// beta = F_P / (F_P + 1) for the incoherently pumped source.
double collection_efficiency_incoherent(double purcell);

// n = 2 kappa_cav * integral of <sigma_22>(t) dt over the full emission.
double emitted_photons_raman(const EmitterModel& model, const Trajectory& trajectory);

// Photon number of a Raman model run from |1> over its emission window.
double raman_photon_number(const EmitterModel& model, double tol = 1e-8);

enum class CalibrationKind {
    pi_pulse,    // maximize the post-pulse excited population (incoherent)
    saturation,  // smallest Rabi reaching >= threshold of the photon-number plateau
};

struct CalibrationOptions {
    CalibrationKind kind = CalibrationKind::saturation;
    double saturation_threshold = 0.999;
    double rel_tol = 1e-3;
    double ode_tol = 1e-8;
};

// Calibrate the peak Rabi frequency in [rabi_lo, rabi_hi] for the model family
// produced by `make_model(peak_rabi)`.
double calibrate_peak_rabi(const std::function<EmitterModel(double)>& make_model,
                           double rabi_lo, double rabi_hi,
                           const CalibrationOptions& opts = {});

enum class FigurePreset { fig4, fig5, fig7, fig7inset, fig8, fig9, fig10 };

FigurePreset figure_preset_from_name(const std::string& name);
std::string figure_preset_name(FigurePreset preset);

struct SweepSpec {
    enum class ModelKind { incoherent, raman };
    ModelKind kind = ModelKind::raman;
    std::string parameter_name;  // purcell | gamma_deph | kappa_cav | pulse_width | theta
    std::vector<double> values;

    double gamma_spon = 1.0;
    double gamma_relax = 0.0;   // incoherent only
    double gamma_deph = 0.0;
    double purcell = 0.0;       // incoherent emission enhancement / raman F_P
    double kappa_cav = 0.0;     // raman only
    double theta = M_PI / 4.0;  // raman branching angle

    double pulse_width = 1.0;
    double pulse_center_widths = 5.0;  // pulse center, in units of the width
    double pulse_peak = 0.0;           // used when calibrate == false

    bool calibrate = false;
    CalibrationKind calibration_kind = CalibrationKind::saturation;
    double calib_lo = 0.0;
    double calib_hi = 0.0;

    double tol = 1e-8;
    P34Options p34_options{};
};

// The compiled-in sweep behind each figure preset; presets/<name>.json carries
// the same values for the CLI sweep subcommand.
SweepSpec figure_sweep_spec(FigurePreset preset);

// Model for one sweep point (parameter applied, pulse peak as given).
EmitterModel sweep_point_model(const SweepSpec& spec, double parameter_value,
                               double peak_rabi);

FigureOfMerit evaluate_sweep_point(const SweepSpec& spec, double parameter_value);

// Calibrate (if requested) and evaluate every sweep point. Points are
// independent; aggregation is index-ordered and worker-count independent.
SweepResult run_sweep(const SweepSpec& spec);

}  // namespace sps

#endif
