// Master-equation time evolution and quantum-regression two-time correlators.
#ifndef SPS_DYNAMICS_HPP
#define SPS_DYNAMICS_HPP

#include "sps/integrator.hpp"
#include "sps/operators.hpp"

#include <string>
#include <vector>

namespace sps {

inline Vector flatten(const Matrix& m)
{
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unflatten(const Vector& v, int dim)
{
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

// Dense-output solution of the master equation for one model.
class Trajectory {
public:
    Trajectory(const EmitterModel& model, OdeSolution sol)
        : model_(model), sol_(std::move(sol)) {}

    const EmitterModel& model() const { return model_; }
    double t_begin() const { return sol_.t_begin(); }
    double t_end() const { return sol_.t_end(); }

    Matrix state(double t) const { return unflatten(sol_.eval(t), model_.dim); }

    Complex expectation(const Matrix& op, double t) const
    {
        return (op * state(t)).trace();
    }

    double population(int level, double t) const
    {
        return std::real(state(t)(level, level));
    }

private:
    EmitterModel model_;
    OdeSolution sol_;
};

// Integrate d rho/dt = L(rho) from rho0 at t=0 up to t_end.
Trajectory evolve(const EmitterModel& model, const Matrix& rho0, double t_end,
                  double tol = 1e-8);

// Two-time correlation samples G(t, tau) on a rectangular grid.
struct CorrelationSurface {
    enum class Kind { first_order, population_product, g2_surface };

    std::vector<double> t_grid;
    std::vector<double> tau_grid;
    Eigen::MatrixXcd values;  // values(i, j) = G(t_grid[i], tau_grid[j])
    Kind kind = Kind::first_order;
};

// G(t, tau) = <A(t+tau) B(t)>: propagate B*rho(t) in tau under the generator
// evaluated at absolute time t+tau, then trace against A. Columns in t are
// independent and computed in parallel.
CorrelationSurface regression_correlator(const EmitterModel& model,
                                         const Trajectory& trajectory,
                                         const Matrix& a, const Matrix& b,
                                         const std::vector<double>& t_grid,
                                         const std::vector<double>& tau_grid,
                                         double tol = 1e-8);

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace sps

#endif
