// JSON run configs <-> sweep specs, and CSV emission. Rates in configs are
// divided by gamma_spon and times multiplied by it on entry, so SI-valued
// presets normalize to gamma_spon = 1 internally.
#ifndef SPS_CONFIG_HPP
#define SPS_CONFIG_HPP

#include "sps/figures.hpp"

#include <json.hpp>

#include <iosfwd>

namespace sps {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a sweep config. A "preset" key seeds the named figure's spec; any
// further keys override it. Unknown keys and negative physical parameters are
// rejected.
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

SweepSpec load_sweep_config(const std::string& path);

// Optional "workers" key; 0 means unset. The SPS_WORKERS environment variable
// wins over this.
int workers_from_json(const nlohmann::json& j);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;  // rectangular
};

// 9 significant digits per value; '\n' line ends.
std::string format_csv(const CsvTable& table);
void write_csv_file(const CsvTable& table, const std::string& path);

CsvTable sweep_result_table(const SweepResult& result);

}  // namespace sps

#endif
