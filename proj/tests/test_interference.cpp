#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sps/interference.hpp"

using namespace sps;

TEST_CASE("beam splitter unitarity")
{
    for (double xi : {0.1, M_PI / 4, 1.2}) {
        for (double phi : {0.0, 0.7, 2.9}) {
            BeamSplitter bs{xi, phi};
            Eigen::Matrix2cd u = bs.unitary();
            CHECK((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("cw analytic coincidence")
{
    CHECK(cw_g2(1.0, 0.0) == doctest::Approx(0.0));
    CHECK(cw_g2(1.0, 1.0) == doctest::Approx(0.5 * (1.0 - std::exp(-2.0))));
    CHECK(cw_g2(2.0, 10.0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("g2 surface reduction from population and g1")
{
    // synthetic population and coherence on a small grid
    auto pop = [](double t) { return std::exp(-t); };
    CorrelationSurface g1;
    g1.t_grid = linspace(0.1, 1.0, 4);
    g1.tau_grid = linspace(0.0, 2.0, 5);
    g1.values.resize(4, 5);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 5; ++j) {
            g1.values(i, j) = 0.4 * std::exp(-0.8 * (g1.t_grid[i] + g1.tau_grid[j]));
        }
    }
    auto g2 = g2_34_surface(pop, g1);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double t = g1.t_grid[i], tau = g1.tau_grid[j];
            const double expect =
                std::max(0.0, 0.5 * (pop(t) * pop(t + tau) - std::norm(g1.values(i, j))));
            CHECK(std::real(g2.values(i, j)) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("fully coherent single emitter gives vanishing p34")
{
    // excited-state-prepared two-level emitter, no dephasing: consecutive
    // photons identical (zero-amplitude pulse marks the repetition clock)
    auto model = build_two_level_model(1.0, 0.0, 0.0);
    model.pulses.push_back(GaussianPulse{0.0, 0.0, 0.05});
    auto report = p34(model);
    CHECK(report.p34 == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(report.indistinguishability == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("dephasing degrades indistinguishability monotonically")
{
    double prev = 1.0;
    for (double gd : {0.2, 0.6, 1.2}) {
        auto model = build_two_level_model(1.0, gd, 0.0);
        model.pulses.push_back(GaussianPulse{0.0, 0.0, 0.05});
        auto report = p34(model);
        const double ind = report.indistinguishability;
        CHECK(ind < prev);
        // lifetime-limited oracle: I = (Gamma/2) / (Gamma/2 + gamma_deph)
        CHECK(ind == doctest::Approx(0.5 / (0.5 + gd)).epsilon(1e-3));
        prev = ind;
    }
}

TEST_CASE("emission window outlasts the decay")
{
    auto model = build_two_level_model(1.0, 0.0, 0.0);
    Matrix rho0 = Matrix::Zero(2, 2);
    rho0(1, 1) = 1.0;
    const double w = emission_window(model, rho0);
    CHECK(w >= 10.0);  // at least ten lifetimes
    auto traj = evolve(model, rho0, w, 1e-9);
    CHECK(traj.population(1, w) < 1e-6);
}

TEST_CASE("hbt trace peak structure")
{
    auto model = build_incoherent_model(1.0, 0.0, 100.0, 0.4, GaussianPulse{35.0, 0.25, 0.05});
    HbtOptions opts;
    opts.t_points_per_period = 120;
    opts.tau_points_per_period = 120;
    auto trace = hbt_trace(model, 6, {}, opts);
    REQUIRE(trace.n_pulses == 6);
    const double side1 = trace.peak_area(1);
    const double side2 = trace.peak_area(2);
    CHECK(side1 > 0.0);
    CHECK(side2 == doctest::Approx(side1).epsilon(0.05));
    // central antibunching dip: suppressed relative to the side peaks
    CHECK(trace.peak_area(0) < side1);
    const double ratio = trace.peak_area(0) / side1;
    auto report = p34(model);
    CHECK(ratio == doctest::Approx(report.p34).epsilon(0.1));
}
