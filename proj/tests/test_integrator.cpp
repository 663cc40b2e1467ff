#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sps/integrator.hpp"

using namespace sps;

TEST_CASE("exponential decay against closed form")
{
    OdeRhs rhs = [](double, const Vector& y) { return Vector(-0.7 * y); };
    Vector y0(1);
    y0 << 1.0;
    auto sol = integrate(rhs, y0, 0.0, 10.0, 1e-10);
    CHECK(std::abs(sol.y_end()(0) - std::exp(-7.0)) < 1e-10);
    // dense output, including off-node times
    for (double t : {0.37, 1.9, 5.21, 9.99}) {
        CHECK(std::abs(sol.eval(t)(0) - std::exp(-0.7 * t)) < 1e-9);
    }
}

TEST_CASE("complex rotation keeps unit modulus and phase")
{
    OdeRhs rhs = [](double, const Vector& y) { return Vector(I * y); };
    Vector y0(1);
    y0 << 1.0;
    auto sol = integrate(rhs, y0, 0.0, 20.0, 1e-11);
    const Complex expect = std::exp(I * 20.0);
    CHECK(std::abs(sol.y_end()(0) - expect) < 1e-8);
    CHECK(std::abs(std::abs(sol.eval(13.7)(0)) - 1.0) < 1e-8);
}

TEST_CASE("driven system with time-dependent rhs")
{
    // y' = -y + sin t, y(0)=0 -> y = (sin t - cos t + e^{-t}) / 2
    OdeRhs rhs = [](double t, const Vector& y) {
        Vector d(1);
        d(0) = -y(0) + std::sin(t);
        return d;
    };
    Vector y0 = Vector::Zero(1);
    auto sol = integrate(rhs, y0, 0.0, 8.0, 1e-10);
    auto exact = [](double t) { return 0.5 * (std::sin(t) - std::cos(t) + std::exp(-t)); };
    CHECK(std::abs(sol.y_end()(0) - exact(8.0)) < 1e-9);
    CHECK(std::abs(sol.eval(3.3)(0) - exact(3.3)) < 1e-9);
}

TEST_CASE("tolerance controls the error")
{
    OdeRhs rhs = [](double, const Vector& y) { return Vector(-y); };
    Vector y0(1);
    y0 << 1.0;
    auto loose = integrate(rhs, y0, 0.0, 5.0, 1e-5);
    auto tight = integrate(rhs, y0, 0.0, 5.0, 1e-11);
    const double exact = std::exp(-5.0);
    CHECK(std::abs(tight.y_end()(0) - exact) < std::abs(loose.y_end()(0) - exact) + 1e-13);
    CHECK(tight.step_count() > loose.step_count());
}

TEST_CASE("solution bookkeeping")
{
    OdeRhs rhs = [](double, const Vector& y) { return Vector(-y); };
    Vector y0(2);
    y0 << 1.0, 2.0;
    auto sol = integrate(rhs, y0, 1.0, 4.0, 1e-8);
    CHECK(sol.t_begin() == 1.0);
    CHECK(sol.t_end() == doctest::Approx(4.0));
    // non-monotone access pattern must still work
    const double a = std::real(sol.eval(3.5)(0));
    const double b = std::real(sol.eval(1.2)(0));
    const double c = std::real(sol.eval(2.8)(1));
    CHECK(a == doctest::Approx(std::exp(-2.5)).epsilon(1e-6));
    CHECK(b == doctest::Approx(std::exp(-0.2)).epsilon(1e-6));
    CHECK(c == doctest::Approx(2.0 * std::exp(-1.8)).epsilon(1e-6));
}
