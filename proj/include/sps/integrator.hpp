// Adaptive Dormand-Prince 5(4) integrator with dense output, on complex
// vectors. The systems here are <= 16 complex components and non-stiff.
#ifndef SPS_INTEGRATOR_HPP
#define SPS_INTEGRATOR_HPP

#include "sps/operators.hpp"

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sps {

struct StiffnessError : std::runtime_error {
    double t_fail;
    explicit StiffnessError(double t)
        : std::runtime_error("step size underflow at t = " + std::to_string(t)),
          t_fail(t) {}
};

using OdeRhs = std::function<Vector(double, const Vector&)>;

// One accepted step together with the quartic interpolation polynomial
// (Hairer's contd5 coefficients).
struct DenseStep {
    double t0, h;
    std::array<Vector, 5> rcont;

    Vector eval(double t) const
    {
        const double s = (t - t0) / h;
        const double s1 = 1.0 - s;
        return rcont[0] +
               s * (rcont[1] + s1 * (rcont[2] + s * (rcont[3] + s1 * rcont[4])));
    }
};

class OdeSolution {
public:
    OdeSolution() = default;
    OdeSolution(double t0, Vector y0) : t_begin_(t0), t_end_(t0), y0_(std::move(y0)) {}

    void push(DenseStep step, Vector y_end)
    {
        t_end_ = step.t0 + step.h;
        steps_.push_back(std::move(step));
        y_end_ = std::move(y_end);
    }

    double t_begin() const { return t_begin_; }
    double t_end() const { return t_end_; }
    const Vector& y_end() const { return steps_.empty() ? y0_ : y_end_; }

    Vector eval(double t) const;

    std::size_t step_count() const { return steps_.size(); }

private:
    double t_begin_ = 0.0;
    double t_end_ = 0.0;
    Vector y0_;
    Vector y_end_;
    std::vector<DenseStep> steps_;
    mutable std::size_t hint_ = 0;  // last located step, monotone access is common
};

// Integrate y' = rhs(t, y) from t0 to t1 (t1 > t0), local error per step
// bounded by tol (mixed absolute/relative).
OdeSolution integrate(const OdeRhs& rhs, const Vector& y0, double t0, double t1,
                      double tol);

}  // namespace sps

#endif
