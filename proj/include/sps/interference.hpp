// Beam-splitter algebra and the two-photon interference figures: the
// coincidence surface G2_34(t,tau), its single-pulse normalization p34, the
// multi-pulse HBT trace, and the cw analytic result.
#ifndef SPS_INTERFERENCE_HPP
#define SPS_INTERFERENCE_HPP

#include "sps/dynamics.hpp"

#include <functional>
#include <optional>

namespace sps {

struct BeamSplitter {
    double xi = M_PI / 4.0;
    double phi = 0.0;

    Eigen::Matrix2cd unitary() const
    {
        const double c = std::cos(xi), s = std::sin(xi);
        Eigen::Matrix2cd u;
        u << c, -std::exp(-I * phi) * s, std::exp(I * phi) * s, c;
        return u;
    }
};

struct DegenerateInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// cw-driven result: g2_34(tau) = (1 - exp(-2 gamma tau)) / 2.
double cw_g2(double gamma, double tau);

// Balanced-splitter coincidence surface
//   G2(t,tau) = ((P(t) P(t+tau) - |G1(t,tau)|^2) / 2, clipped at zero,
// with P the upper-level population evaluated on the g1 grids.
CorrelationSurface g2_34_surface(const std::function<double(double)>& population,
                                 const CorrelationSurface& g1);
CorrelationSurface g2_34_surface(const Trajectory& trajectory,
                                 const CorrelationSurface& g1);

struct InterferenceReport {
    double p34 = 0.0;
    double indistinguishability = 0.0;
    double numerator_integral = 0.0;
    double denominator_integral = 0.0;
    int t_points = 0;
    int tau_points = 0;
};

struct P34Options {
    double tol = 1e-8;
    int initial_points = 200;       // per axis; doubled until converged
    double grid_rel_change = 1e-3;  // convergence threshold on p34
    int max_points = 1600;
    std::optional<Matrix> rho0;     // default: ground state (|e> for 2 levels)
};

// Emission window for a single-pulse run: large enough that the residual
// excited-manifold population is below `residual`, and at least ten emission
// lifetimes past the pulse.
double emission_window(const EmitterModel& model, const Matrix& rho0,
                       double residual = 1e-7, double tol = 1e-8);

Matrix default_initial_state(const EmitterModel& model);

// Normalized single-pulse coincidence probability. Numerator integrates the
// G2 surface over t in one pulse period and tau over the 0th peak;
// denominator integrates the population product over the same window.
InterferenceReport p34(const EmitterModel& model, const P34Options& opts = {});

struct HbtTrace {
    std::vector<double> tau_grid;
    std::vector<double> values;  // integral over t of G2(t, tau)
    double pulse_period = 0.0;
    int n_pulses = 0;

    // Area of the k-th peak; the 0th peak is one-sided in tau and scaled by
    // two so the 0th/side ratio equals p34.
    double peak_area(int k) const;
};

struct HbtOptions {
    double tol = 1e-8;
    int t_points_per_period = 160;
    int tau_points_per_period = 160;
    std::optional<Matrix> rho0;
};

// Pulse-train Hanbury Brown-Twiss trace. The single-pulse model is repeated
// n_pulses times with the emission-window period; tau_grid defaults to
// [0, 3.5 periods].
HbtTrace hbt_trace(const EmitterModel& model, int n_pulses,
                   std::vector<double> tau_grid = {},
                   const HbtOptions& opts = {});

}  // namespace sps

#endif
