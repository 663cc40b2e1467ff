// Complex operator algebra over few-level Hilbert spaces, Gaussian laser
// pulses, and builders for the two emitter models (incoherently pumped
// three-level dot, cavity-assisted Raman four-level system).
#ifndef SPS_OPERATORS_HPP
#define SPS_OPERATORS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace sps {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex I{0.0, 1.0};

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Projection operator sigma_{ij} = |i><j| on a dim-level space.
inline Matrix projector(int dim, int i, int j)
{
    if (i < 0 || j < 0 || i >= dim || j >= dim) {
        throw ParameterError("projector: level index out of range");
    }
    Matrix m = Matrix::Zero(dim, dim);
    m(i, j) = 1.0;
    return m;
}

// Gaussian envelope Omega_L(t) = peak * exp(-(t-center)^2 / (2 width^2)).
// "width" is the standard deviation of the envelope.
struct GaussianPulse {
    double peak_rabi = 0.0;
    double center = 0.0;
    double width = 1.0;

    double operator()(double t) const
    {
        const double x = (t - center) / width;
        return peak_rabi * std::exp(-0.5 * x * x);
    }
};

// One Lindblad term, contributing
//   rate/2 * (2 J rho J^dag - J^dag J rho - rho J^dag J)
// to the master equation.
struct Dissipator {
    double rate = 0.0;
    Matrix jump;
};

// A few-level emitter: H(t) = H_const + Omega_L(t) * H_pulse, plus a list of
// dissipators. The emission channel is identified by the upper-level index
// and the (upper, lower) coherence pair entering G^(1).
struct EmitterModel {
    int dim = 0;
    Matrix h_const;
    Matrix h_pulse;
    std::vector<GaussianPulse> pulses;
    double cw_rabi = 0.0;  // constant drive, used for cw runs
    std::vector<Dissipator> dissipators;
    int emission_upper = 0;
    int emission_lower = 0;

    double rabi_at(double t) const
    {
        double w = cw_rabi;
        for (const auto& p : pulses) w += p(t);
        return w;
    }

    Matrix hamiltonian_at(double t) const
    {
        return h_const + rabi_at(t) * h_pulse;
    }

    Matrix upper_population_op() const
    {
        return projector(dim, emission_upper, emission_upper);
    }
    // A = sigma_{upper,lower}, B = sigma_{lower,upper} of the G^(1) pair.
    Matrix raising_op() const { return projector(dim, emission_upper, emission_lower); }
    Matrix lowering_op() const { return projector(dim, emission_lower, emission_upper); }
};

// Time by which every pulse envelope is negligible (center + 6 widths).
inline double pulse_end_time(const EmitterModel& model)
{
    double t = 0.0;
    for (const auto& p : model.pulses) t = std::max(t, p.center + 6.0 * p.width);
    return t;
}

// Action of the Liouvillian on an arbitrary matrix M (not necessarily a
// density matrix; the quantum regression theorem propagates B*rho with the
// same generator).
Matrix lindblad_apply(const EmitterModel& model, double t, const Matrix& m);

// Incoherently pumped quantum dot, levels (g, e, p) = (0, 1, 2).
// Laser couples g<->p, relaxation p->e at gamma_relax, emission e->g at
// (purcell+1)*gamma_spon, pure dephasing on e adds gamma_deph to the e-g
// coherence decay.
EmitterModel build_incoherent_model(double gamma_spon, double purcell,
                                    double gamma_relax, double gamma_deph,
                                    const GaussianPulse& pulse);

// Cavity-assisted spin-flip Raman system, levels |1>..|4> = indices 0..3.
// H(t) = i g (s32 - s23) + i Omega_L(t) (s31 - s13); cavity leakage
// 2*kappa_cav on |2>->|4>, spontaneous emission from |3> branching with
// cos^2/sin^2(theta), pure dephasing on |3>.
EmitterModel build_raman_model(double gamma_spon, double g, double kappa_cav,
                               double theta, double gamma_deph,
                               const GaussianPulse& pulse);

// Driven two-level emitter (g, e); used for analytic checks.
EmitterModel build_two_level_model(double gamma_total, double gamma_deph,
                                   double cw_rabi);

// F_P = 2 g^2 / (kappa_cav * gamma_spon).
double purcell_factor(double g, double kappa_cav, double gamma_spon);

// g required for a given Purcell factor at fixed kappa_cav, gamma_spon.
double coupling_for_purcell(double purcell, double kappa_cav, double gamma_spon);

// Density-matrix sanity: trace 1, Hermitian, positive within tolerance.
bool is_valid_density_matrix(const Matrix& rho, double tol = 1e-8);

}  // namespace sps

#endif
