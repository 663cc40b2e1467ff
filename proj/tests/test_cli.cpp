#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sps/config.hpp"
#include "sps/parallel.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>

using namespace sps;
using nlohmann::json;

namespace {

json load(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

void check_close(double a, double b)
{
    CHECK(std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}));
}

void check_specs_equal(const SweepSpec& a, const SweepSpec& b)
{
    CHECK(a.kind == b.kind);
    CHECK(a.parameter_name == b.parameter_name);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) check_close(a.values[i], b.values[i]);
    check_close(a.gamma_spon, b.gamma_spon);
    check_close(a.gamma_relax, b.gamma_relax);
    check_close(a.gamma_deph, b.gamma_deph);
    check_close(a.purcell, b.purcell);
    check_close(a.kappa_cav, b.kappa_cav);
    check_close(a.theta, b.theta);
    check_close(a.pulse_width, b.pulse_width);
    check_close(a.pulse_center_widths, b.pulse_center_widths);
    check_close(a.pulse_peak, b.pulse_peak);
    CHECK(a.calibrate == b.calibrate);
    CHECK(a.calibration_kind == b.calibration_kind);
    check_close(a.calib_lo, b.calib_lo);
    check_close(a.calib_hi, b.calib_hi);
    check_close(a.tol, b.tol);
}

}  // namespace

TEST_CASE("shipped preset files reproduce the compiled sweeps")
{
    for (const char* name : {"fig4", "fig5", "fig7", "fig7inset", "fig8", "fig9", "fig10"}) {
        CAPTURE(name);
        const auto compiled = figure_sweep_spec(figure_preset_from_name(name));
        const auto from_file =
            load_sweep_config(std::string(SPS_SOURCE_DIR) + "/presets/" + name + ".json");
        check_specs_equal(compiled, from_file);
        // preset-only config is equivalent to the fully spelled file
        const auto seeded = sweep_spec_from_json(json{{"preset", name}});
        check_specs_equal(seeded, from_file);
    }
}

TEST_CASE("rate normalization at the config boundary")
{
    json j = {{"kind", "raman"},      {"parameter", "gamma_deph"},
              {"values", {0.0, 5e8}}, {"gamma_spon", 1e9},
              {"kappa_cav", 1e10},    {"purcell", 20.0},
              {"pulse_width", 1e-9},  {"pulse_peak", 6.2e9}};
    const auto spec = sweep_spec_from_json(j);
    CHECK(spec.gamma_spon == 1.0);
    check_close(spec.kappa_cav, 10.0);
    check_close(spec.pulse_width, 1.0);
    check_close(spec.pulse_peak, 6.2);
    check_close(spec.values[1], 0.5);  // swept rate axis rescales too
}

TEST_CASE("config rejection")
{
    CHECK_THROWS_AS(sweep_spec_from_json(json{{"bogus", 1}}), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_json(json{{"gamma_deph", -0.1}}), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_json(json{{"gamma_spon", 0.0}}), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_json(json{{"kind", "semiclassical"}}), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_json(json::array()), ConfigError);
    CHECK_THROWS_AS(load_sweep_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("worker key parsing")
{
    CHECK(workers_from_json(json{{"workers", 3}}) == 3);
    CHECK(workers_from_json(json{{"preset", "fig9"}}) == 0);
    CHECK_THROWS_AS(workers_from_json(json{{"workers", -1}}), ConfigError);
}

TEST_CASE("csv formatting")
{
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{1.0, 0.123456789123}, {2.0, 3.0e-11}};
    const std::string csv = format_csv(t);
    CHECK(csv == "a,b\n1,0.123456789\n2,3e-11\n");
    t.rows.push_back({1.0});
    CHECK_THROWS_AS(format_csv(t), ParameterError);
}

TEST_CASE("sweep csv is byte-identical across worker counts")
{
    SweepSpec spec = figure_sweep_spec(FigurePreset::fig10);
    spec.values = {0.0, 1.5};
    set_worker_count(1);
    const std::string one = format_csv(sweep_result_table(run_sweep(spec)));
    set_worker_count(6);
    const std::string six = format_csv(sweep_result_table(run_sweep(spec)));
    set_worker_count(0);
    CHECK(one == six);
    CHECK(one.substr(0, one.find('\n')) ==
          "gamma_deph,indistinguishability,collection_efficiency,n_photons,"
          "calibrated_peak_rabi,g");
}

TEST_CASE("binary exit codes")
{
    const std::string cli = SPS_CLI_PATH;
    const std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
    auto run = [&](const std::string& args) {
        const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    CHECK(run("validate") == 0);
    CHECK(run("figure no_such_preset --out " + tmp) == 1);
    CHECK(run("sweep --config /nonexistent.json") == 1);
    CHECK(run("frobnicate") == 1);
    const std::string bad = tmp + "/bad_config.json";
    std::ofstream(bad) << "{\"bogus\": true}";
    CHECK(run("sweep --config " + bad) == 1);
    CHECK(run("--help") == 0);
}
