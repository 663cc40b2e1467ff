// Postselected controlled-sign gate on dual-rail qubits with two single-photon
// helpers, including timing-jitter degradation of the helper/qubit overlap.
#ifndef SPS_GATE_HPP
#define SPS_GATE_HPP

#include "sps/fock.hpp"

namespace sps {

struct UndefinedFidelityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Four-splitter network realizing diag(1, 1, 1, -1) on the (q0, q1) qubit
// amplitudes with success probability 2/27 when one photon is detected in
// each of modes 2 and 3. Frozen convention; see the matching test.
LinearNetwork cs_gate_network();

// Two-qubit amplitudes in the computational order a00, a01, a10, a11. Modes 0
// and 1 carry qubit occupation 0/1 photons (dual-rail halves that carry no
// photon are not tracked explicitly).
struct GateInput {
    Complex a00 = 1.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;
};

// helper_overlap: amplitude of the mode-3 helper photon on the matched
// spectral tag; the remainder goes to the orthogonal tag. Mode 2's helper and
// the qubit photons are always matched.
PhotonicState gate_input_state(const GateInput& in, Complex helper_overlap = 1.0);

// States conditioned on one photon in each of modes 2 and 3, grouped by the
// detected (tag2, tag3) combination; detectors resolve photon number but not
// the spectral tag, so branches add incoherently.
struct PostselectionResult {
    std::vector<PhotonicState> branches;  // detector modes stripped
    double success_probability = 0.0;
};

PostselectionResult postselect_11(const PhotonicState& state);

// Reference output: the postselected state for a perfectly matched helper,
// renormalized.
PhotonicState ideal_gate_output(const GateInput& in);

struct JitterModel {
    double tau = 1.0;  // exponential wave-packet decay time
    Complex overlap(double epsilon) const { return std::exp(-epsilon / (2.0 * tau)); }
};

// Fidelity of the postselected output against the ideal gate action for a
// fixed emission-time offset epsilon of the mode-3 helper.
double jittered_gate_fidelity(const GateInput& in, double epsilon, const JitterModel& jm = {});

// Mean two-photon interference visibility for emission times uniform on
// [0, epsilon0]: V = (tau/epsilon0) (1 - exp(-epsilon0/tau)).
double visibility(double epsilon0, double tau = 1.0);

// Gauss-Legendre nodes/weights on [-1, 1].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_legendre(int n);

// Fidelity averaged over epsilon uniform on [0, epsilon0].
double mean_gate_fidelity(const GateInput& in, double epsilon0, const JitterModel& jm = {},
                          int quad_points = 48);

// 4 basis states, 24 real two-amplitude superpositions, and 50 seeded
// Haar-random states.
std::vector<GateInput> gate_input_search_set();

struct FidelityCurvePoint {
    double epsilon0 = 0.0;       // in units of tau
    double visibility = 1.0;
    double min_fidelity = 1.0;
    std::size_t worst_input = 0; // index into the search set
};

// Default epsilon0/tau grid for the fidelity curve: brackets the 0.99
// crossing and reaches far enough for a stable rational fit.
std::vector<double> default_epsilon0_grid();

std::vector<FidelityCurvePoint> min_fidelity_curve(const std::vector<double>& epsilon0_over_tau,
                                                   const std::vector<GateInput>& inputs,
                                                   int quad_points = 48);

// F(V) ~ (c0 + c1 V + c2 V^2) / (1 + d1 V + d2 V^2), linear least squares.
struct RationalFit {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double d1 = 0.0, d2 = 0.0;
    double max_residual = 0.0;
    double operator()(double v) const
    {
        return (c0 + c1 * v + c2 * v * v) / (1.0 + d1 * v + d2 * v * v);
    }
};

RationalFit fit_fidelity_vs_visibility(const std::vector<FidelityCurvePoint>& curve);

}  // namespace sps

#endif
