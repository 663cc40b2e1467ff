#include "sps/dynamics.hpp"

#include "sps/parallel.hpp"

#include <cmath>

namespace sps {

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 2) throw ParameterError("linspace: need at least 2 points");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    v.back() = hi;
    return v;
}

Trajectory evolve(const EmitterModel& model, const Matrix& rho0, double t_end,
                  double tol)
{
    if (!(t_end > 0.0)) throw ParameterError("evolve: t_end must be positive");
    if (!is_valid_density_matrix(rho0)) {
        throw ParameterError("evolve: rho0 is not a valid density matrix");
    }
    const int dim = model.dim;
    auto rhs = [&model, dim](double t, const Vector& y) {
        return flatten(lindblad_apply(model, t, unflatten(y, dim)));
    };
    return Trajectory(model, integrate(rhs, flatten(rho0), 0.0, t_end, tol));
}

CorrelationSurface regression_correlator(const EmitterModel& model,
                                         const Trajectory& trajectory,
                                         const Matrix& a, const Matrix& b,
                                         const std::vector<double>& t_grid,
                                         const std::vector<double>& tau_grid,
                                         double tol)
{
    if (t_grid.empty() || tau_grid.empty()) {
        throw ParameterError("regression_correlator: empty grid");
    }
    const double eps = 1e-9 * (1.0 + std::abs(trajectory.t_end()));
    if (t_grid.front() < trajectory.t_begin() - eps ||
        t_grid.back() > trajectory.t_end() + eps) {
        throw ParameterError("regression_correlator: t grid outside trajectory span");
    }
    if (tau_grid.front() < 0.0) {
        throw ParameterError("regression_correlator: tau must be >= 0");
    }

    const int dim = model.dim;
    CorrelationSurface surf;
    surf.t_grid = t_grid;
    surf.tau_grid = tau_grid;
    surf.values.resize(t_grid.size(), tau_grid.size());

    const double tau_max = tau_grid.back();
    parallel_for(t_grid.size(), [&](std::size_t it) {
        const double t = t_grid[it];
        const Matrix m0 = b * trajectory.state(t);
        if (tau_max == 0.0) {
            surf.values(it, 0) = (a * m0).trace();
            return;
        }
        // Propagate in absolute time so the pulse keeps acting during tau.
        auto rhs = [&model, dim](double s, const Vector& y) {
            return flatten(lindblad_apply(model, s, unflatten(y, dim)));
        };
        const OdeSolution sol = integrate(rhs, flatten(m0), t, t + tau_max, tol);
        for (std::size_t j = 0; j < tau_grid.size(); ++j) {
            const Matrix m = unflatten(sol.eval(t + tau_grid[j]), dim);
            surf.values(it, j) = (a * m).trace();
        }
    });
    return surf;
}

}  // namespace sps
