#include "sps/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sps {

double cw_g2(double gamma, double tau)
{
    if (gamma < 0.0 || tau < 0.0) throw ParameterError("cw_g2: gamma, tau >= 0");
    return 0.5 * (1.0 - std::exp(-2.0 * gamma * tau));
}

CorrelationSurface g2_34_surface(const std::function<double(double)>& population,
                                 const CorrelationSurface& g1)
{
    CorrelationSurface surf;
    surf.t_grid = g1.t_grid;
    surf.tau_grid = g1.tau_grid;
    surf.kind = CorrelationSurface::Kind::g2_surface;
    surf.values.resize(g1.values.rows(), g1.values.cols());

    std::vector<double> pop_t(g1.t_grid.size());
    for (std::size_t i = 0; i < g1.t_grid.size(); ++i) pop_t[i] = population(g1.t_grid[i]);

    for (std::size_t i = 0; i < g1.t_grid.size(); ++i) {
        for (std::size_t j = 0; j < g1.tau_grid.size(); ++j) {
            const double pp = pop_t[i] * population(g1.t_grid[i] + g1.tau_grid[j]);
            const double v = 0.5 * (pp - std::norm(g1.values(i, j)));
            surf.values(i, j) = std::max(v, 0.0);
        }
    }
    return surf;
}

CorrelationSurface g2_34_surface(const Trajectory& trajectory,
                                 const CorrelationSurface& g1)
{
    const int upper = trajectory.model().emission_upper;
    return g2_34_surface(
        [&](double t) { return trajectory.population(upper, t); }, g1);
}

Matrix default_initial_state(const EmitterModel& model)
{
    Matrix rho = Matrix::Zero(model.dim, model.dim);
    // Two-level runs start excited; the pumped models start in the ground
    // (or |1>) state and are excited by the pulse.
    rho(model.dim == 2 ? 1 : 0, model.dim == 2 ? 1 : 0) = 1.0;
    return rho;
}

namespace {

// Population still able to emit once the pulse is over.
double residual_excitation(const EmitterModel& model, const Matrix& rho)
{
    double r = std::real(rho(1, 1));
    if (model.dim >= 3) r += std::real(rho(2, 2));
    return r;
}

double emission_rate(const EmitterModel& model)
{
    const Matrix lower = model.lowering_op();
    for (const auto& d : model.dissipators) {
        if (d.jump.rows() == lower.rows() &&
            (d.jump - lower).cwiseAbs().maxCoeff() < 1e-12) {
            return d.rate;
        }
    }
    return 0.0;
}

double trapezoid_2d(const Eigen::MatrixXd& f, double ht, double htau)
{
    const auto n = f.rows();
    const auto m = f.cols();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            const double wj = (j == 0 || j == m - 1) ? 0.5 : 1.0;
            sum += wi * wj * f(i, j);
        }
    }
    return sum * ht * htau;
}

}  // namespace

double emission_window(const EmitterModel& model, const Matrix& rho0,
                       double residual, double tol)
{
    const double rate = emission_rate(model);
    const double lifetime = rate > 0.0 ? 1.0 / rate : 1.0;
    double window = pulse_end_time(model) + 10.0 * lifetime;
    const double cap = window * 1e4;
    for (;;) {
        const Trajectory traj = evolve(model, rho0, window, tol);
        if (residual_excitation(model, traj.state(window)) < residual) return window;
        window *= 1.5;
        if (window > cap) {
            throw WindowError("emission_window: excitation does not decay");
        }
    }
}

InterferenceReport p34(const EmitterModel& model, const P34Options& opts)
{
    if (model.pulses.empty()) throw ParameterError("p34: model has no pulse");
    const Matrix rho0 = opts.rho0 ? *opts.rho0 : default_initial_state(model);

    const double window = emission_window(model, rho0, 1e-7, opts.tol);
    const Trajectory traj = evolve(model, rho0, 2.0 * window, opts.tol);

    // The window must contain essentially all of the emission.
    const int upper = model.emission_upper;
    {
        const int n = 2048;
        double total = 0.0, tail = 0.0;
        const double h = 2.0 * window / n;
        for (int i = 0; i <= n; ++i) {
            const double t = i * h;
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            const double p = traj.population(upper, t);
            total += w * p;
            if (t >= window) tail += w * p;
        }
        if (total > 0.0 && tail > 1e-4 * total) {
            throw WindowError("p34: emission extends past the pulse window");
        }
    }

    const Matrix a = model.raising_op();
    const Matrix b = model.lowering_op();

    InterferenceReport report;
    double prev = -1.0;
    for (int n = opts.initial_points; n <= opts.max_points; n *= 2) {
        const auto t_grid = linspace(0.0, window, n + 1);
        const auto tau_grid = linspace(0.0, window, n + 1);
        const CorrelationSurface g1 =
            regression_correlator(model, traj, a, b, t_grid, tau_grid, opts.tol);

        Eigen::MatrixXd num(n + 1, n + 1), den(n + 1, n + 1);
        std::vector<double> pop(t_grid.size());
        for (int i = 0; i <= n; ++i) pop[i] = traj.population(upper, t_grid[i]);
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                const double pp =
                    pop[i] * traj.population(upper, t_grid[i] + tau_grid[j]);
                den(i, j) = 0.5 * pp;
                num(i, j) = std::max(0.5 * (pp - std::norm(g1.values(i, j))), 0.0);
            }
        }
        const double ht = window / n;
        report.numerator_integral = trapezoid_2d(num, ht, ht);
        report.denominator_integral = trapezoid_2d(den, ht, ht);
        if (report.denominator_integral < 1e-12) {
            throw DegenerateInputError("p34: no emission in the pulse window");
        }
        report.p34 = report.numerator_integral / report.denominator_integral;
        report.t_points = report.tau_points = n + 1;
        if (prev >= 0.0 && std::abs(report.p34 - prev) < opts.grid_rel_change) break;
        prev = report.p34;
    }
    report.indistinguishability = 1.0 - report.p34;
    return report;
}

double HbtTrace::peak_area(int k) const
{
    if (k < 0 || k >= n_pulses) throw ParameterError("peak_area: bad peak index");
    const double lo = k == 0 ? 0.0 : k * pulse_period - 0.5 * pulse_period;
    const double hi = k * pulse_period + 0.5 * pulse_period;
    double area = 0.0;
    for (std::size_t j = 0; j + 1 < tau_grid.size(); ++j) {
        const double a = tau_grid[j], b = tau_grid[j + 1];
        if (a < lo || b > hi) continue;
        area += 0.5 * (values[j] + values[j + 1]) * (b - a);
    }
    return k == 0 ? 2.0 * area : area;
}

HbtTrace hbt_trace(const EmitterModel& model, int n_pulses,
                   std::vector<double> tau_grid, const HbtOptions& opts)
{
    if (n_pulses < 2) throw ParameterError("hbt_trace: need at least 2 pulses");
    if (model.pulses.empty()) throw ParameterError("hbt_trace: model has no pulse");
    const Matrix rho0 = opts.rho0 ? *opts.rho0 : default_initial_state(model);

    const double period = emission_window(model, rho0, 1e-7, opts.tol);
    if (tau_grid.empty()) {
        const double tau_max = std::min(3.5, n_pulses - 1.0) * period;
        const int n = static_cast<int>(std::ceil(
            opts.tau_points_per_period * tau_max / period));
        tau_grid = linspace(0.0, tau_max, n + 1);
    }
    const double tau_max = tau_grid.back();

    EmitterModel train = model;
    train.pulses.clear();
    for (int k = 0; k < n_pulses; ++k) {
        for (const auto& p : model.pulses) {
            GaussianPulse shifted = p;
            shifted.center += k * period;
            train.pulses.push_back(shifted);
        }
    }

    const double t_max = n_pulses * period - tau_max;
    if (t_max < period) {
        throw ParameterError("hbt_trace: tau grid too long for the pulse count");
    }
    const Trajectory traj = evolve(train, rho0, n_pulses * period, opts.tol);

    const int nt = static_cast<int>(std::ceil(
        opts.t_points_per_period * t_max / period));
    const auto t_grid = linspace(0.0, t_max, nt + 1);
    const CorrelationSurface g1 = regression_correlator(
        train, traj, train.raising_op(), train.lowering_op(), t_grid, tau_grid,
        opts.tol);
    const CorrelationSurface g2 = g2_34_surface(traj, g1);

    HbtTrace trace;
    trace.tau_grid = tau_grid;
    trace.pulse_period = period;
    trace.n_pulses = n_pulses;
    trace.values.resize(tau_grid.size());
    const double ht = t_max / nt;
    for (std::size_t j = 0; j < tau_grid.size(); ++j) {
        double s = 0.0;
        for (int i = 0; i <= nt; ++i) {
            const double w = (i == 0 || i == nt) ? 0.5 : 1.0;
            s += w * std::real(g2.values(i, j));
        }
        trace.values[j] = s * ht;
    }
    return trace;
}

}  // namespace sps
