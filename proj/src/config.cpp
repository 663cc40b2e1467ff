#include "sps/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace sps {

namespace {

using nlohmann::json;

const std::set<std::string> kSweepKeys = {
    "comment",     "preset",       "kind",
    "parameter",   "values",       "gamma_spon",
    "gamma_relax", "gamma_deph",   "purcell",
    "kappa_cav",   "theta",        "pulse_width",
    "pulse_center_widths",         "pulse_peak",
    "calibrate",   "calibration",  "calib_lo",
    "calib_hi",    "tol",          "workers",
};

double require_nonneg(const json& v, const std::string& key)
{
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    const double x = v.get<double>();
    if (x < 0.0) throw ConfigError("config key '" + key + "' must be >= 0");
    return x;
}

}  // namespace

SweepSpec sweep_spec_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!kSweepKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }

    SweepSpec spec;
    if (j.contains("preset")) {
        spec = figure_sweep_spec(figure_preset_from_name(j.at("preset").get<std::string>()));
    }

    if (j.contains("kind")) {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "incoherent") spec.kind = SweepSpec::ModelKind::incoherent;
        else if (kind == "raman") spec.kind = SweepSpec::ModelKind::raman;
        else throw ConfigError("unknown model kind '" + kind + "'");
    }
    if (j.contains("parameter")) spec.parameter_name = j.at("parameter").get<std::string>();
    if (j.contains("values")) {
        spec.values.clear();
        for (const auto& v : j.at("values")) spec.values.push_back(v.get<double>());
    }

    double gamma_spon = 1.0;
    if (j.contains("gamma_spon")) gamma_spon = require_nonneg(j.at("gamma_spon"), "gamma_spon");
    if (gamma_spon <= 0.0) throw ConfigError("gamma_spon must be > 0");

    auto rate = [&](const char* key, double fallback) {
        return j.contains(key) ? require_nonneg(j.at(key), key) / gamma_spon
                               : fallback;
    };
    spec.gamma_relax = rate("gamma_relax", spec.gamma_relax);
    spec.gamma_deph = rate("gamma_deph", spec.gamma_deph);
    spec.kappa_cav = rate("kappa_cav", spec.kappa_cav);
    spec.pulse_peak = rate("pulse_peak", spec.pulse_peak);
    spec.calib_lo = rate("calib_lo", spec.calib_lo);
    spec.calib_hi = rate("calib_hi", spec.calib_hi);
    if (j.contains("purcell")) spec.purcell = require_nonneg(j.at("purcell"), "purcell");
    if (j.contains("theta")) spec.theta = require_nonneg(j.at("theta"), "theta");
    if (j.contains("pulse_width")) {
        spec.pulse_width = require_nonneg(j.at("pulse_width"), "pulse_width") * gamma_spon;
    }
    if (j.contains("pulse_center_widths")) {
        spec.pulse_center_widths = require_nonneg(j.at("pulse_center_widths"),
                                                  "pulse_center_widths");
    }
    if (j.contains("calibrate")) spec.calibrate = j.at("calibrate").get<bool>();
    if (j.contains("calibration")) {
        const auto kind = j.at("calibration").get<std::string>();
        if (kind == "pi_pulse") spec.calibration_kind = CalibrationKind::pi_pulse;
        else if (kind == "saturation") spec.calibration_kind = CalibrationKind::saturation;
        else throw ConfigError("unknown calibration kind '" + kind + "'");
    }
    if (j.contains("tol")) {
        spec.tol = require_nonneg(j.at("tol"), "tol");
        if (spec.tol <= 0.0) throw ConfigError("tol must be > 0");
    }
    // Sweep values along rate-valued axes normalize like the fixed rates.
    if (gamma_spon != 1.0 &&
        (spec.parameter_name == "gamma_deph" || spec.parameter_name == "kappa_cav")) {
        for (auto& v : spec.values) v /= gamma_spon;
    }
    if (gamma_spon != 1.0 && spec.parameter_name == "pulse_width") {
        for (auto& v : spec.values) v *= gamma_spon;
    }
    spec.gamma_spon = 1.0;
    return spec;
}

SweepSpec load_sweep_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    return sweep_spec_from_json(j);
}

int workers_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("workers")) return 0;
    const int w = j.at("workers").get<int>();
    if (w < 0) throw ConfigError("workers must be >= 0");
    return w;
}

std::string format_csv(const CsvTable& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    char buf[40];
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw ParameterError("format_csv: ragged row");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof buf, "%.9g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_csv_file(const CsvTable& table, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write: " + path);
    out << format_csv(table);
}

CsvTable sweep_result_table(const SweepResult& result)
{
    CsvTable t;
    t.header = {result.parameter_name, "indistinguishability", "collection_efficiency",
                "n_photons", "calibrated_peak_rabi"};
    const bool aux = !result.aux_values.empty();
    if (aux) t.header.push_back(result.aux_name);
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const auto& p = result.points[i];
        std::vector<double> row = {result.parameter_values[i], p.indistinguishability,
                                   p.collection_efficiency, p.n_photons,
                                   p.calibrated_peak_rabi};
        if (aux) row.push_back(result.aux_values[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace sps
