#include "sps/operators.hpp"

namespace sps {

Matrix lindblad_apply(const EmitterModel& model, double t, const Matrix& m)
{
    const Matrix h = model.hamiltonian_at(t);
    Matrix out = -I * (h * m - m * h);
    for (const auto& d : model.dissipators) {
        if (d.rate == 0.0) continue;
        const Matrix jm = d.jump * m;
        const Matrix jj = d.jump.adjoint() * d.jump;
        out.noalias() += d.rate * (jm * d.jump.adjoint());
        out.noalias() -= (0.5 * d.rate) * (jj * m + m * jj);
    }
    return out;
}

namespace {

void require_nonnegative(double v, const char* name)
{
    if (v < 0.0) throw ParameterError(std::string(name) + " must be >= 0");
}

}  // namespace

EmitterModel build_incoherent_model(double gamma_spon, double purcell,
                                    double gamma_relax, double gamma_deph,
                                    const GaussianPulse& pulse)
{
    require_nonnegative(gamma_spon, "gamma_spon");
    require_nonnegative(purcell, "purcell");
    require_nonnegative(gamma_relax, "gamma_relax");
    require_nonnegative(gamma_deph, "gamma_deph");

    constexpr int g = 0, e = 1, p = 2;
    EmitterModel model;
    model.dim = 3;
    model.h_const = Matrix::Zero(3, 3);
    // H_int = i Omega_L (sigma_pg - sigma_gp), written out as a Hermitian matrix.
    model.h_pulse = I * (projector(3, p, g) - projector(3, g, p));
    model.pulses = {pulse};

    const double gamma_total = (purcell + 1.0) * gamma_spon;
    model.dissipators.push_back({gamma_relax, projector(3, e, p)});
    model.dissipators.push_back({gamma_total, projector(3, g, e)});
    // Projector jump at rate 2*gamma_deph decays the e-g coherence at
    // exactly gamma_deph on top of gamma_total/2.
    model.dissipators.push_back({2.0 * gamma_deph, projector(3, e, e)});

    model.emission_upper = e;
    model.emission_lower = g;
    return model;
}

EmitterModel build_raman_model(double gamma_spon, double g, double kappa_cav,
                               double theta, double gamma_deph,
                               const GaussianPulse& pulse)
{
    require_nonnegative(gamma_spon, "gamma_spon");
    require_nonnegative(g, "g");
    require_nonnegative(kappa_cav, "kappa_cav");
    require_nonnegative(gamma_deph, "gamma_deph");
    if (theta < 0.0 || theta > M_PI_2) {
        throw ParameterError("theta must lie in [0, pi/2]");
    }

    // Levels |1>,|2>,|3>,|4> -> indices 0..3.
    constexpr int l1 = 0, l2 = 1, l3 = 2, l4 = 3;
    EmitterModel model;
    model.dim = 4;
    model.h_const = (I * g) * (projector(4, l3, l2) - projector(4, l2, l3));
    model.h_pulse = I * (projector(4, l3, l1) - projector(4, l1, l3));
    model.pulses = {pulse};

    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    // kappa_cav (2 s42 rho s24 - s22 rho - rho s22): field decay kappa_cav,
    // population decay 2*kappa_cav.
    model.dissipators.push_back({2.0 * kappa_cav, projector(4, l4, l2)});
    model.dissipators.push_back({gamma_spon * c2, projector(4, l1, l3)});
    model.dissipators.push_back({gamma_spon * s2, projector(4, l4, l3)});
    model.dissipators.push_back({2.0 * gamma_deph, projector(4, l3, l3)});

    model.emission_upper = l2;
    model.emission_lower = l4;
    return model;
}

EmitterModel build_two_level_model(double gamma_total, double gamma_deph,
                                   double cw_rabi)
{
    require_nonnegative(gamma_total, "gamma_total");
    require_nonnegative(gamma_deph, "gamma_deph");

    constexpr int g = 0, e = 1;
    EmitterModel model;
    model.dim = 2;
    model.h_const = Matrix::Zero(2, 2);
    model.h_pulse = I * (projector(2, e, g) - projector(2, g, e));
    model.cw_rabi = cw_rabi;
    model.dissipators.push_back({gamma_total, projector(2, g, e)});
    model.dissipators.push_back({2.0 * gamma_deph, projector(2, e, e)});
    model.emission_upper = e;
    model.emission_lower = g;
    return model;
}

double purcell_factor(double g, double kappa_cav, double gamma_spon)
{
    if (kappa_cav * gamma_spon <= 0.0) {
        throw ParameterError("purcell_factor: kappa_cav * gamma_spon must be > 0");
    }
    return 2.0 * g * g / (kappa_cav * gamma_spon);
}

double coupling_for_purcell(double purcell, double kappa_cav, double gamma_spon)
{
    require_nonnegative(purcell, "purcell");
    if (kappa_cav * gamma_spon <= 0.0) {
        throw ParameterError("coupling_for_purcell: kappa_cav * gamma_spon must be > 0");
    }
    return std::sqrt(0.5 * purcell * kappa_cav * gamma_spon);
}

bool is_valid_density_matrix(const Matrix& rho, double tol)
{
    if (rho.rows() != rho.cols()) return false;
    if (std::abs(rho.trace() - 1.0) > 10.0 * tol) return false;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 10.0 * tol) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    return es.eigenvalues().minCoeff() > -tol;
}

}  // namespace sps
