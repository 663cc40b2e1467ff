#include "sps/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace sps {

Vector OdeSolution::eval(double t) const
{
    if (steps_.empty()) {
        if (t != t_begin_) throw ParameterError("OdeSolution::eval: empty solution");
        return y0_;
    }
    const double eps = 1e-12 * (1.0 + std::abs(t_end_));
    if (t < t_begin_ - eps || t > t_end_ + eps) {
        throw ParameterError("OdeSolution::eval: t outside integration span");
    }
    t = std::clamp(t, t_begin_, t_end_);
    if (hint_ >= steps_.size()) hint_ = 0;
    // Try the hinted step first, then binary search.
    const auto in = [&](std::size_t i) {
        return t >= steps_[i].t0 && t <= steps_[i].t0 + steps_[i].h;
    };
    if (!in(hint_)) {
        std::size_t lo = 0, hi = steps_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (t > steps_[mid].t0 + steps_[mid].h) lo = mid + 1;
            else hi = mid;
        }
        hint_ = lo;
    }
    return steps_[hint_].eval(t);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - bhat, for the embedded error estimate.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output coefficients (Hairer, Norsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

double error_norm(const Vector& err, const Vector& y0, const Vector& y1, double tol)
{
    double sum = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = tol + tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = std::abs(err[i]) / sc;
        sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(err.size()));
}

}  // namespace

OdeSolution integrate(const OdeRhs& rhs, const Vector& y0, double t0, double t1,
                      double tol)
{
    if (!(t1 > t0)) throw ParameterError("integrate: t1 must exceed t0");
    if (!(tol > 0.0)) throw ParameterError("integrate: tol must be positive");

    OdeSolution sol(t0, y0);
    double t = t0;
    Vector y = y0;
    Vector k1 = rhs(t, y);  // FSAL
    double h = std::min((t1 - t0) / 16.0, 0.1);
    const double h_min = 1e-14 * (t1 - t0 + std::abs(t0));

    while (t < t1) {
        h = std::min(h, t1 - t);
        if (h < h_min) throw StiffnessError(t);

        const Vector k2 = rhs(t + h * a21, y + h * (a21 * k1));
        const Vector k3 = rhs(t + h * 0.3, y + h * (a31 * k1 + a32 * k2));
        const Vector k4 = rhs(t + h * 0.8, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vector k5 = rhs(t + h * (8.0 / 9.0),
                              y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vector k6 =
            rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vector y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vector k7 = rhs(t + h, y1);

        const Vector err =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = error_norm(err, y, y1, tol);

        if (en <= 1.0) {
            DenseStep step;
            step.t0 = t;
            step.h = h;
            const Vector ydiff = y1 - y;
            const Vector bspl = h * k1 - ydiff;
            step.rcont[0] = y;
            step.rcont[1] = ydiff;
            step.rcont[2] = bspl;
            step.rcont[3] = ydiff - h * k7 - bspl;
            step.rcont[4] =
                h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            sol.push(std::move(step), y1);

            t += h;
            y = y1;
            k1 = k7;
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(en, 1e-16), -0.2), 0.2, 5.0);
        h *= factor;
    }
    return sol;
}

}  // namespace sps
